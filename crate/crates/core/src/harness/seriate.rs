use std::path::{Path, PathBuf};

use super::config::AlgorithmId;
use crate::asii::asii;
use crate::baselines::{adaptive_sorting, batch_observe, naive_insertion, spectral_seriation};
use crate::error::{Result, SeriationError};
use crate::extension::{asii_extension, Discard};
use crate::matrix::SimilarityMatrix;
use crate::oracle::{NoiseModel, Oracle};
use crate::scenarios::{load_matrix_csv, save_matrix_csv};

/// Treats the matrix in `input` as the hidden `M` and recovers its ordering.
#[derive(Debug, Clone)]
pub struct SeriateRequest {
    pub input: PathBuf,
    pub algorithm: AlgorithmId,
    pub budget_t: u64,
    pub noise: NoiseModel,
    pub seed: u64,
    /// Required for `asii-ext`.
    pub delta_tilde: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SeriateOutput {
    /// Row indices of the input (0-based) in recovered order. Under
    /// `asii-ext` only kept items appear.
    pub order: Vec<usize>,
    pub reordered: SimilarityMatrix,
    pub discards: Vec<Discard>,
    pub queries: u64,
}

impl SeriateOutput {
    /// `rank,item` rows, ranks starting at 1.
    pub fn write_order(&self, path: &Path) -> Result<()> {
        let mut wtr = csv::Writer::from_path(path)?;
        wtr.write_record(["rank", "item"])?;
        for (r, item) in self.order.iter().enumerate() {
            wtr.write_record([(r + 1).to_string(), item.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn write_matrix(&self, path: &Path) -> Result<()> {
        save_matrix_csv(&self.reordered, path)
    }

    /// `item,kept_before,reason` rows in discard order.
    pub fn write_discards(&self, path: &Path) -> Result<()> {
        let mut wtr = csv::Writer::from_path(path)?;
        wtr.write_record(["item", "kept_before", "reason"])?;
        for d in &self.discards {
            wtr.write_record([d.item.to_string(), d.kept_before.to_string(), d.reason.as_str().into()])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

pub fn seriate_file(req: &SeriateRequest) -> Result<SeriateOutput> {
    seriate_matrix(load_matrix_csv(&req.input)?, req)
}

pub(crate) fn seriate_matrix(m: SimilarityMatrix, req: &SeriateRequest) -> Result<SeriateOutput> {
    let mut o = Oracle::new(m, req.noise, req.seed);
    let t = req.budget_t;
    let mut discards = Vec::new();
    let order = match req.algorithm {
        AlgorithmId::Asii => asii(&mut o, t, None)?.order(),
        AlgorithmId::Naive => naive_insertion(&mut o, t, None)?.order(),
        AlgorithmId::AdaptiveSorting => adaptive_sorting(&batch_observe(&mut o, t)?).order(),
        AlgorithmId::Spectral => spectral_seriation(&batch_observe(&mut o, t)?)?.order(),
        AlgorithmId::AsiiExt => {
            let tol = req
                .delta_tilde
                .ok_or_else(|| SeriationError::Config("asii-ext needs a tolerance".into()))?;
            let res = asii_extension(&mut o, t, tol, None)?;
            discards = res.discarded;
            res.kept.order().to_vec()
        }
    };
    Ok(SeriateOutput {
        reordered: o.matrix().submatrix(&order)?,
        order,
        discards,
        queries: o.ledger().total(),
    })
}

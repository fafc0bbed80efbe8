//! Synthetic Robinson matrices and CSV matrix I/O.

use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SeriationError};
use crate::matrix::SimilarityMatrix;
use crate::permutation::Permutation;
use crate::rng::Stream;

/// Relative slack allowed when checking a generated gap against `Δ`.
const GAP_RTOL: f64 = 1e-9;
/// Entry-wise asymmetry above which loading a CSV logs a warning.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioId {
    /// Toeplitz `Δ(n - |i - j|)`.
    S1,
    /// `Δ(n - |i - j|) max(j, n - i)^1.5`.
    S2,
    /// Like `S2` with a linear factor, boosted tenfold near the diagonal.
    S3,
    /// Random diagonal, entries lowered by `U(Δ, 10Δ)` steps away from it.
    S4,
    /// Matrix read from a CSV file.
    File,
}

impl ScenarioId {
    pub const SYNTHETIC: [ScenarioId; 4] = [Self::S1, Self::S2, Self::S3, Self::S4];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::S1 => "s1",
            Self::S2 => "s2",
            Self::S3 => "s3",
            Self::S4 => "s4",
            Self::File => "file",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = SeriationError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s1" | "1" => Ok(Self::S1),
            "s2" | "2" => Ok(Self::S2),
            "s3" | "3" => Ok(Self::S3),
            "s4" | "4" => Ok(Self::S4),
            "file" => Ok(Self::File),
            other => Err(SeriationError::Parse(format!("unknown scenario `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub id: ScenarioId,
    pub n: usize,
    pub delta: f64,
    /// Seeds the random entries of `S4`; ignored otherwise.
    pub seed: u64,
    pub path: Option<PathBuf>,
}

impl ScenarioSpec {
    pub fn synthetic(id: ScenarioId, n: usize, delta: f64, seed: u64) -> Self {
        Self {
            id,
            n,
            delta,
            seed,
            path: None,
        }
    }
}

/// Builds the Robinson matrix `R` of a scenario, before any permutation.
///
/// Synthetic outputs are checked to be strictly Robinson with minimal gap
/// at least `Δ`; a violation is reported with its witness.
pub fn generate(spec: &ScenarioSpec) -> Result<SimilarityMatrix> {
    if spec.id == ScenarioId::File {
        let path = spec
            .path
            .as_deref()
            .ok_or_else(|| SeriationError::Config("file scenario without a path".into()))?;
        return load_matrix_csv(path);
    }
    let (n, delta) = (spec.n, spec.delta);
    if n < 2 {
        return Err(SeriationError::Config(format!("scenario needs n >= 2, got {n}")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(SeriationError::Config(format!("delta must be positive, got {delta}")));
    }
    let m = match spec.id {
        ScenarioId::S1 => {
            SimilarityMatrix::from_upper(n, |i, j| delta * (n - (j - i)) as f64)?
        }
        ScenarioId::S2 => with_top_diagonal(n, delta, |i, j, d| {
            delta * (n - d) as f64 * (j.max(n - i) as f64).powf(1.5)
        })?,
        ScenarioId::S3 => with_top_diagonal(n, delta, |i, j, d| {
            let base = delta * (n - d) as f64 * j.max(n - i) as f64;
            if 4 * d <= n {
                10.0 * base
            } else {
                base
            }
        })?,
        ScenarioId::S4 => scenario_four(n, delta, &mut Stream::new(spec.seed))?,
        ScenarioId::File => unreachable!(),
    };
    validate(&m, delta, spec.id)?;
    Ok(m)
}

/// Fills `i > j` (1-based) from `f(i, j, i - j)`, mirrors it, and sets every
/// diagonal entry to the largest off-diagonal value plus `Δ`.
fn with_top_diagonal(
    n: usize,
    delta: f64,
    f: impl Fn(usize, usize, usize) -> f64,
) -> Result<SimilarityMatrix> {
    let mut data = vec![0.0; n * n];
    let mut top = f64::NEG_INFINITY;
    for i in 0..n {
        for j in 0..i {
            let v = f(i + 1, j + 1, i - j);
            data[i * n + j] = v;
            data[j * n + i] = v;
            top = top.max(v);
        }
    }
    for i in 0..n {
        data[i * n + i] = top + delta;
    }
    SimilarityMatrix::new(n, data)
}

fn scenario_four(n: usize, delta: f64, stream: &mut Stream) -> Result<SimilarityMatrix> {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = stream.uniform_in(1.0, 10.0);
    }
    for d in 1..n {
        for j in 0..n - d {
            let i = j + d;
            let v = data[(i - 1) * n + j].min(data[i * n + j + 1])
                - stream.uniform_in(delta, 10.0 * delta);
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    SimilarityMatrix::new(n, data)
}

fn validate(m: &SimilarityMatrix, delta: f64, id: ScenarioId) -> Result<()> {
    let report = m.minimal_gap();
    if report.gap < delta * (1.0 - GAP_RTOL) {
        return Err(SeriationError::Generation(format!(
            "{id} with n = {}, delta = {delta}: minimal gap {} at {:?}",
            m.n(),
            report.gap,
            report.witness
        )));
    }
    Ok(())
}

/// `M[i][j] = R[π_i][π_j]`: item `i` of the output sits at rank `π_i` of `R`.
pub fn apply_permutation(r: &SimilarityMatrix, p: &Permutation) -> Result<SimilarityMatrix> {
    let n = r.n();
    if p.len() != n {
        return Err(SeriationError::DimensionMismatch {
            expected: n,
            got: p.len(),
        });
    }
    SimilarityMatrix::from_upper(n, |i, j| r.get(p.rank(i) - 1, p.rank(j) - 1))
}

/// Reads a headerless square CSV. Entries are averaged with their mirror
/// image; a warning is logged if any pair differed by more than
/// [`SYMMETRY_TOLERANCE`].
pub fn read_matrix_csv<R: Read>(reader: R) -> Result<SimilarityMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .enumerate()
            .map(|(c, field)| {
                field.parse::<f64>().map_err(|_| {
                    SeriationError::Parse(format!("row {r}, column {c}: `{field}` is not a number"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(SeriationError::Shape("empty matrix file".into()));
    }
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(SeriationError::Shape(format!(
            "{n} rows but row {r} has {} columns",
            row.len()
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(SeriationError::NonFinite { row: i, col: j });
        }
    }
    let mut data = rows.concat();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (data[i * n + j], data[j * n + i]);
            worst = worst.max((a - b).abs());
            let mean = if a == b { a } else { 0.5 * (a + b) };
            data[i * n + j] = mean;
            data[j * n + i] = mean;
        }
    }
    if worst > SYMMETRY_TOLERANCE {
        log::warn!("matrix asymmetric by up to {worst:e}; symmetrized by averaging");
    }
    SimilarityMatrix::new(n, data)
}

pub fn load_matrix_csv(path: &Path) -> Result<SimilarityMatrix> {
    read_matrix_csv(std::fs::File::open(path)?)
}

/// Writes one row per line with shortest round-trip float formatting.
pub fn write_matrix_csv<W: Write>(m: &SimilarityMatrix, writer: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    for i in 0..m.n() {
        wtr.write_record(m.row(i).iter().map(|v| v.to_string()))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn save_matrix_csv(m: &SimilarityMatrix, path: &Path) -> Result<()> {
    write_matrix_csv(m, std::fs::File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(id: ScenarioId, n: usize, delta: f64, seed: u64) -> ScenarioSpec {
        ScenarioSpec::synthetic(id, n, delta, seed)
    }

    #[test]
    fn s1_first_row() {
        let m = generate(&spec(ScenarioId::S1, 5, 1.0, 0)).unwrap();
        assert_eq!(m.row(0), &[5.0, 4.0, 3.0, 2.0, 1.0]);
        assert_eq!(m.minimal_gap().gap, 1.0);
    }

    #[test]
    fn s2_s3_hand_values() {
        // n = 4, Δ = 1, 1-based (i, j) = (2, 1): (4 - 1) * max(1, 2)^1.5
        let m = generate(&spec(ScenarioId::S2, 4, 1.0, 0)).unwrap();
        assert!((m.get(1, 0) - 3.0 * 2f64.powf(1.5)).abs() < 1e-12);
        // (4, 1): d = 3 > 1, so (4 - 3) * max(1, 0) = 1
        let m = generate(&spec(ScenarioId::S3, 4, 1.0, 0)).unwrap();
        assert_eq!(m.get(3, 0), 1.0);
        // (2, 1): d = 1 <= 1, 10 * 3 * 2 = 60
        assert_eq!(m.get(1, 0), 60.0);
        // largest entry is (4, 3): 10 * 3 * max(3, 0) = 90
        assert_eq!(m.get(0, 0), 91.0);
    }

    #[test]
    fn every_scenario_valid_over_range() {
        for id in ScenarioId::SYNTHETIC {
            for n in 3..=30 {
                for seed in 0..20 {
                    let m = generate(&spec(id, n, 0.2, seed)).unwrap();
                    assert!(m.is_robinson(true), "{id} n = {n}");
                    assert!(m.minimal_gap().gap >= 0.2 * (1.0 - 1e-9), "{id} n = {n}");
                    if id != ScenarioId::S4 {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn s4_scan_n10() {
        for seed in 0..100 {
            let m = generate(&spec(ScenarioId::S4, 10, 0.2, seed)).unwrap();
            assert!(m.is_robinson(true));
            assert!(m.minimal_gap().gap >= 0.2);
        }
    }

    #[test]
    fn s4_is_seeded() {
        let a = generate(&spec(ScenarioId::S4, 8, 0.1, 3)).unwrap();
        let b = generate(&spec(ScenarioId::S4, 8, 0.1, 3)).unwrap();
        let c = generate(&spec(ScenarioId::S4, 8, 0.1, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn bad_parameters() {
        assert!(generate(&spec(ScenarioId::S1, 1, 1.0, 0)).is_err());
        assert!(generate(&spec(ScenarioId::S1, 5, 0.0, 0)).is_err());
        assert!(generate(&spec(ScenarioId::File, 5, 1.0, 0)).is_err());
    }

    #[test]
    fn apply_permutation_hand_example() {
        let r = SimilarityMatrix::from_rows(&[
            vec![3.0, 2.0, 1.0],
            vec![2.0, 3.0, 2.0],
            vec![1.0, 2.0, 3.0],
        ])
        .unwrap();
        let p = Permutation::new(vec![2, 1, 3]).unwrap();
        let m = apply_permutation(&r, &p).unwrap();
        assert_eq!(m.get(0, 0), 3.0);
        assert_eq!(m.get(0, 2), 2.0);
        assert_eq!(apply_permutation(&m, &p.inverse()).unwrap(), r);
        assert_eq!(apply_permutation(&r, &Permutation::identity(3)).unwrap(), r);
        assert!(apply_permutation(&r, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn reorder_undoes_permutation() {
        let r = generate(&spec(ScenarioId::S4, 9, 0.3, 1)).unwrap();
        let p = Permutation::random(9, &mut Stream::new(5));
        let m = apply_permutation(&r, &p).unwrap();
        assert_eq!(m.reorder(&p).unwrap(), r);
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        for id in ScenarioId::SYNTHETIC {
            let m = generate(&spec(id, 6, 0.37, 2)).unwrap();
            save_matrix_csv(&m, &path).unwrap();
            assert_eq!(load_matrix_csv(&path).unwrap(), m);
        }
    }

    #[test]
    fn csv_errors() {
        let shape = read_matrix_csv("1,2,3,4\n1,2,3,4\n1,2,3,4\n".as_bytes());
        assert!(matches!(shape, Err(SeriationError::Shape(_))));
        let nan = read_matrix_csv("1,NaN\nNaN,1\n".as_bytes());
        assert!(matches!(nan, Err(SeriationError::NonFinite { .. })));
        let junk = read_matrix_csv("1,x\n2,1\n".as_bytes());
        assert!(matches!(junk, Err(SeriationError::Parse(_))));
        assert!(read_matrix_csv("".as_bytes()).is_err());
    }

    #[test]
    fn mild_asymmetry_is_averaged() {
        let m = read_matrix_csv("1,0.5\n0.500000000001,1\n".as_bytes()).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert!((m.get(0, 1) - 0.5).abs() < 1e-11);
    }

    proptest! {
        #[test]
        fn permuting_preserves_entries(seed in any::<u64>(), n in 2usize..12) {
            let r = generate(&spec(ScenarioId::S4, n, 0.1, seed)).unwrap();
            let p = Permutation::random(n, &mut Stream::new(seed ^ 1));
            let m = apply_permutation(&r, &p).unwrap();
            let mut a = r.as_slice().to_vec();
            let mut b = m.as_slice().to_vec();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            prop_assert_eq!(a, b);
        }
    }
}

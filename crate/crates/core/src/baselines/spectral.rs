use super::batch::BatchObservation;
use super::jacobi::jacobi_eigen;
use crate::error::Result;
use crate::matrix::SimilarityMatrix;
use crate::permutation::Permutation;

/// Orders items by the Fiedler vector of `L = D - Y`, with `D` built from
/// off-diagonal row sums.
pub fn spectral_seriation(y: &BatchObservation) -> Result<Permutation> {
    spectral_order(&y.y)
}

pub fn spectral_order(y: &SimilarityMatrix) -> Result<Permutation> {
    let n = y.n();
    if n < 2 {
        return Ok(Permutation::identity(n));
    }
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        let mut degree = 0.0;
        for j in 0..n {
            if i != j {
                l[i * n + j] = -y.get(i, j);
                degree += y.get(i, j);
            }
        }
        l[i * n + i] = degree;
    }
    let eig = jacobi_eigen(&l, n)?;
    let fiedler = eig.vector(eig.ascending()[1]);
    Ok(fiedler_order(&fiedler).canonical())
}

/// Ranks items by ascending entry; equal entries keep index order.
pub fn fiedler_order(v: &[f64]) -> Permutation {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    Permutation::from_order(&order).expect("sort of 0..n")
}

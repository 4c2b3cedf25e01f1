//! γ-radonifying norms of finite-rank operators `H → Y` with `H` Euclidean.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::linalg::Matrix;
use crate::rademacher::{gaussian_moment_coords, gray_flips, rademacher_moment_coords, Method, MomentEstimate, NormedSpace, RandomConfig};
use crate::rng::derive_seed;
use crate::scalar::Scalar;

/// `Ψ: ℝ^h → Y`, stored as a `dim Y × h` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct GammaOperator<T> {
    pub matrix: Matrix<T>,
    pub codomain: NormedSpace<T>,
}

impl<T: Scalar> GammaOperator<T> {
    pub fn new(matrix: Matrix<T>, codomain: NormedSpace<T>) -> Result<Self> {
        ensure!(
            matrix.rows() == codomain.dim(),
            Dimension,
            "{} rows for a codomain of dimension {}",
            matrix.rows(),
            codomain.dim()
        );
        Ok(GammaOperator { matrix, codomain })
    }

    pub fn h_dim(&self) -> usize {
        self.matrix.cols()
    }
}

fn gamma_of<T: Scalar>(m: &Matrix<T>, y: &NormedSpace<T>, config: &RandomConfig) -> Result<MomentEstimate<T>> {
    let cols: Vec<Vec<T>> = (0..m.cols()).map(|k| m.column(k)).collect();
    let refs: Vec<&[T]> = cols.iter().map(|c| c.as_slice()).collect();
    gaussian_moment_coords(y, &refs, T::lit(2.0), config)
}

/// `(E‖Σ_k γ_k Ψe_k‖²)^{1/2}`; the weighted Frobenius norm when `Y` is
/// Euclidean, Gaussian Monte Carlo otherwise.
pub fn gamma_norm<T: Scalar>(psi: &GammaOperator<T>, config: &RandomConfig) -> Result<MomentEstimate<T>> {
    gamma_of(&psi.matrix, &psi.codomain, config)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct GammaMultiplierReport<T> {
    /// `‖Σ r_n Ψ_n f_n‖_{L²(Ω;Y)}`.
    pub lhs: T,
    /// `sup_n ‖f_n‖_H`.
    pub sup_f: T,
    /// `‖Σ r_n Ψ_n‖_{L²(Ω;γ(H,Y))}`.
    pub gamma_average: T,
    /// `lhs / (sup_f · gamma_average)`.
    pub ratio: T,
    /// False when the inner γ-norms were Monte Carlo estimates.
    pub exact: bool,
}

/// Empirical constant of `‖Σ r_n Ψ_n f_n‖ ≤ C sup_n‖f_n‖ ‖Σ r_n Ψ_n‖_{L²(Ω;γ)}`.
/// The outer Rademacher average is enumerated; the inner γ-norm of each
/// signed sum is exact or seeded Monte Carlo.
pub fn verify_gamma_multiplier<T: Scalar>(
    psis: &[GammaOperator<T>],
    fs: &[Vec<T>],
    config: &RandomConfig,
) -> Result<GammaMultiplierReport<T>> {
    config.validate()?;
    ensure!(!psis.is_empty(), InvalidParameter, "need at least one operator");
    ensure!(psis.len() == fs.len(), Dimension, "{} operators for {} vectors", psis.len(), fs.len());
    let y = &psis[0].codomain;
    let h = psis[0].h_dim();
    for (p, f) in psis.iter().zip(fs) {
        ensure!(&p.codomain == y, Dimension, "operators have different codomains");
        ensure!(p.h_dim() == h && f.len() == h, Dimension, "H-dimension mismatch");
    }
    let n = psis.len();
    ensure!(n <= config.exact_threshold, InvalidParameter, "outer enumeration is limited to {} terms", config.exact_threshold);

    let images: Vec<Vec<T>> = psis.iter().zip(fs).map(|(p, f)| p.matrix.mul_vec(f)).collect();
    let refs: Vec<&[T]> = images.iter().map(|v| v.as_slice()).collect();
    let lhs = rademacher_moment_coords(y, &refs, T::lit(2.0), config)?.value;
    let sup_f = fs.iter().map(|f| f.iter().map(|&v| v * v).sum::<T>().sqrt()).fold(T::zero(), T::max);

    // signs of the last operator fixed to +1: ‖−A‖_γ = ‖A‖_γ
    let mut sum = psis.iter().fold(Matrix::zeros(y.dim(), h), |mut acc, p| {
        acc.axpy(T::one(), &p.matrix);
        acc
    });
    let mut signs = vec![T::one(); n];
    let mut acc = T::zero();
    let mut exact = true;
    let mut visit = |m: &Matrix<T>, pattern: u64| -> Result<()> {
        let cfg = RandomConfig { seed: derive_seed(config.seed, pattern), ..*config };
        let g = gamma_of(m, y, &cfg)?;
        exact &= g.method == Method::Exact;
        acc += g.value * g.value;
        Ok(())
    };
    visit(&sum, 0)?;
    for (step, k) in gray_flips((n - 1) as u32).enumerate() {
        signs[k] = -signs[k];
        sum.axpy(T::lit(2.0) * signs[k], &psis[k].matrix);
        visit(&sum, step as u64 + 1)?;
    }
    let patterns = T::lit((1u64 << (n - 1)) as f64);
    let gamma_average = (acc / patterns).sqrt();
    let rhs = sup_f * gamma_average;
    let ratio = if rhs > T::zero() {
        lhs / rhs
    } else {
        ensure!(lhs == T::zero(), Internal, "right-hand side vanishes while the left-hand side is {lhs}");
        T::zero()
    };
    Ok(GammaMultiplierReport { lhs, sup_f, gamma_average, ratio, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn l2(d: usize) -> NormedSpace<f64> {
        NormedSpace::hilbert(d).unwrap()
    }

    #[test]
    fn frobenius_examples() {
        let cfg = RandomConfig::default();
        let id = GammaOperator::new(Matrix::identity(4), l2(4)).unwrap();
        assert_relative_eq!(gamma_norm(&id, &cfg).unwrap().value, 2.0, max_relative = 1e-15);
        let d = GammaOperator::new(Matrix::diag(&[3.0, 4.0]), l2(2)).unwrap();
        let g = gamma_norm(&d, &cfg).unwrap();
        assert_eq!(g.method, Method::Exact);
        assert_relative_eq!(g.value, 5.0, max_relative = 1e-15);
        let u = [1.0, -2.0, 2.0];
        let v = [0.6, 0.8];
        let r1 = GammaOperator::new(Matrix::outer(&u, &v), l2(3)).unwrap();
        assert_relative_eq!(gamma_norm(&r1, &cfg).unwrap().value, 3.0, max_relative = 1e-14);
    }

    #[test]
    fn single_operator_ratio_at_most_one() {
        let psi = GammaOperator::new(Matrix::from_rows(&[vec![1.0, 2.0], vec![-1.0, 0.5]]).unwrap(), l2(2)).unwrap();
        let rep = verify_gamma_multiplier(&[psi], &[vec![0.6, -0.8]], &RandomConfig::default()).unwrap();
        assert!(rep.exact);
        assert!(rep.ratio <= 1.0 + 1e-12);
    }

    #[test]
    fn zero_inputs() {
        let psi = GammaOperator::new(Matrix::zeros(2, 2), l2(2)).unwrap();
        let rep = verify_gamma_multiplier(&[psi.clone(), psi], &[vec![1.0, 0.0], vec![0.0, 1.0]], &RandomConfig::default())
            .unwrap();
        assert_eq!(rep.ratio, 0.0);
    }

    #[test]
    fn shape_checks() {
        assert!(GammaOperator::new(Matrix::<f64>::zeros(2, 3), l2(3)).is_err());
        let a = GammaOperator::new(Matrix::<f64>::zeros(2, 3), l2(2)).unwrap();
        let b = GammaOperator::new(Matrix::<f64>::zeros(2, 2), l2(2)).unwrap();
        let cfg = RandomConfig::default();
        assert!(verify_gamma_multiplier(&[a.clone(), b], &[vec![0.0; 3], vec![0.0; 2]], &cfg).is_err());
        assert!(verify_gamma_multiplier(&[a], &[vec![0.0; 2]], &cfg).is_err());
    }
}

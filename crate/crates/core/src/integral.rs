//! Integral operators `T_f x = ∫_S T(s) x f(s) dμ(s)` built from step
//! operator-valued functions, and experiments on the R-bounds of the
//! families they generate.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::linalg::Matrix;
use crate::measure::{lorentz_norm, lp_norm, DiscreteMeasureSpace, LorentzForm, StepFunction};
use crate::rademacher::{NormedSpace, RandomConfig};
use crate::rbound::{operator_norm, rbound_lower, rbound_ratio, Assignment, OperatorFamily, SearchConfig};
use crate::rng::stream_rng;
use crate::scalar::{abs_pow, conjugate_exponent, Scalar};

/// `T: S → B(X, Y)`, constant on each atom of `S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", try_from = "RawStep<T>", into = "RawStep<T>")]
pub struct OperatorValuedStep<T: Scalar> {
    space: DiscreteMeasureSpace<T>,
    domain: NormedSpace<T>,
    codomain: NormedSpace<T>,
    matrices: Vec<Matrix<T>>,
}

impl<T: Scalar> OperatorValuedStep<T> {
    pub fn new(
        space: DiscreteMeasureSpace<T>,
        domain: NormedSpace<T>,
        codomain: NormedSpace<T>,
        matrices: Vec<Matrix<T>>,
    ) -> Result<Self> {
        ensure!(
            matrices.len() == space.len(),
            Dimension,
            "{} matrices for {} atoms",
            matrices.len(),
            space.len()
        );
        for m in &matrices {
            ensure!(
                m.rows() == codomain.dim() && m.cols() == domain.dim(),
                Dimension,
                "{}x{} matrix does not map dimension {} to {}",
                m.rows(),
                m.cols(),
                domain.dim(),
                codomain.dim()
            );
        }
        Ok(OperatorValuedStep { space, domain, codomain, matrices })
    }

    pub fn space(&self) -> &DiscreteMeasureSpace<T> {
        &self.space
    }

    pub fn domain(&self) -> &NormedSpace<T> {
        &self.domain
    }

    pub fn codomain(&self) -> &NormedSpace<T> {
        &self.codomain
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.matrices
    }

    pub fn scaled(&self, c: T) -> Self {
        OperatorValuedStep { matrices: self.matrices.iter().map(|m| m.scale(c)).collect(), ..self.clone() }
    }

    /// `‖T‖_{L^r(S; B(X,Y))}`, exact when every atom's operator norm is.
    pub fn lr_norm(&self, r: T, config: &RandomConfig) -> Result<(T, bool)> {
        ensure!(r >= T::one(), InvalidParameter, "r must be >= 1, got {r}");
        let mut exact = true;
        let mut acc = T::zero();
        for (m, &w) in self.matrices.iter().zip(self.space.weights()) {
            let n = operator_norm(m, &self.domain, &self.codomain, config);
            exact &= n.exact;
            if r.is_infinite() {
                acc = acc.max(n.value);
            } else {
                acc += w * abs_pow(n.value, r);
            }
        }
        Ok((if r.is_infinite() { acc } else { acc.powf(r.recip()) }, exact))
    }

    /// The finite family `{T_f : f ∈ fs}`.
    pub fn family(&self, fs: &[StepFunction<T>]) -> Result<OperatorFamily<T>> {
        let ops = fs.iter().map(|f| apply_tf(self, f)).collect::<Result<Vec<_>>>()?;
        OperatorFamily::new(self.domain.clone(), self.codomain.clone(), ops)
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct RawStep<T> {
    weights: Vec<T>,
    domain: NormedSpace<T>,
    codomain: NormedSpace<T>,
    matrices: Vec<Vec<Vec<T>>>,
}

impl<T: Scalar> TryFrom<RawStep<T>> for OperatorValuedStep<T> {
    type Error = Error;

    fn try_from(raw: RawStep<T>) -> Result<Self> {
        let ms = raw.matrices.iter().map(|rows| Matrix::from_rows(rows)).collect::<Result<Vec<_>>>()?;
        Self::new(DiscreteMeasureSpace::new(raw.weights)?, raw.domain, raw.codomain, ms)
    }
}

impl<T: Scalar> From<OperatorValuedStep<T>> for RawStep<T> {
    fn from(t: OperatorValuedStep<T>) -> Self {
        RawStep {
            weights: t.space.weights().to_vec(),
            domain: t.domain,
            codomain: t.codomain,
            matrices: t.matrices.iter().map(Matrix::to_rows).collect(),
        }
    }
}

/// `T_f = Σ_i w_i f_i M_i`.
pub fn apply_tf<T: Scalar>(t: &OperatorValuedStep<T>, f: &StepFunction<T>) -> Result<Matrix<T>> {
    ensure!(f.space() == &t.space, Dimension, "function and operator live on different measure spaces");
    let mut out = Matrix::zeros(t.codomain.dim(), t.domain.dim());
    for ((m, &w), &v) in t.matrices.iter().zip(t.space.weights()).zip(f.values()) {
        if v != T::zero() {
            out.axpy(w * v, m);
        }
    }
    Ok(out)
}

/// Search budget of the integral-operator experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegralSearch {
    /// Functions per sampled sub-family.
    pub k: usize,
    /// Length of the searched assignments.
    pub n: usize,
    pub search: SearchConfig,
}

impl Default for IntegralSearch {
    fn default() -> Self {
        IntegralSearch { k: 8, n: 4, search: SearchConfig { restarts: 2, sweeps: 20, ..Default::default() } }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralReport {
    #[serde(rename = "empirical_C_max")]
    pub empirical_c_max: f64,
    #[serde(rename = "empirical_C_mean")]
    pub empirical_c_mean: f64,
    pub trials: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub seed: u64,
    /// The normalizing norm, e.g. `‖T‖_{L^r(S;B(X,Y))}`.
    pub normalizer: f64,
    /// Whether the normalizer is exact rather than a searched lower estimate.
    pub normalizer_exact: bool,
    /// Largest raw R-bound lower estimate over all trials.
    pub max_lower_bound: f64,
}

fn gaussian_in_ball<T: Scalar>(space: &DiscreteMeasureSpace<T>, r_dual: T, rng: &mut impl Rng) -> Result<StepFunction<T>> {
    loop {
        let v: Vec<T> = (0..space.len()).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect();
        let f = StepFunction::new(space.clone(), v)?;
        let n = lp_norm(&f, r_dual)?;
        if n > T::zero() {
            return Ok(f.map(|x| x / n));
        }
    }
}

/// Normalized indicator of atom `i` in `L^{r'}`.
fn indicator_in_ball<T: Scalar>(space: &DiscreteMeasureSpace<T>, i: usize, r_dual: T) -> Result<StepFunction<T>> {
    let mut v = vec![T::zero(); space.len()];
    v[i] = if r_dual.is_infinite() { T::one() } else { space.weights()[i].powf(-r_dual.recip()) };
    StepFunction::new(space.clone(), v)
}

fn run_trials<T: Scalar>(
    t: &OperatorValuedStep<T>,
    normalizer: T,
    normalizer_exact: bool,
    trials: usize,
    config: &RandomConfig,
    budget: &IntegralSearch,
    sample: impl Fn(usize, &mut rand_chacha::ChaCha8Rng) -> Result<Vec<StepFunction<T>>> + Sync,
) -> Result<IntegralReport> {
    ensure!(trials >= 1, InvalidParameter, "need at least one trial");
    ensure!(budget.k >= 1 && budget.n >= 1, InvalidParameter, "K and N must be positive");
    let bounds: Vec<Result<T>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = stream_rng(config.seed, 0x696e_7400_0000 + trial as u64);
            let fs = sample(trial, &mut rng)?;
            let family = t.family(&fs)?;
            if family.operators().iter().all(|m| m.frobenius_norm() == T::zero()) {
                return Ok(T::zero());
            }
            let cfg = RandomConfig { seed: crate::rng::derive_seed(config.seed, trial as u64), ..*config };
            Ok(rbound_lower(&family, budget.n, &cfg, &budget.search)?.lower_bound)
        })
        .collect();
    let bounds = bounds.into_iter().collect::<Result<Vec<T>>>()?;
    let max_lower_bound = bounds.iter().fold(T::zero(), |a, &b| a.max(b)).as_f64();
    let norm = normalizer.as_f64();
    let cs: Vec<f64> = bounds.iter().map(|b| if norm > 0.0 { b.as_f64() / norm } else { 0.0 }).collect();
    Ok(IntegralReport {
        empirical_c_max: cs.iter().cloned().fold(0.0, f64::max),
        empirical_c_mean: cs.iter().sum::<f64>() / cs.len() as f64,
        trials,
        k: budget.k,
        seed: config.seed,
        normalizer: norm,
        normalizer_exact,
        max_lower_bound,
    })
}

/// Samples sub-families of `{T_f : ‖f‖_{L^{r'}} ≤ 1}` and reports their
/// R-bound lower estimates divided by `‖T‖_{L^r(S;B(X,Y))}`. Each family
/// holds normalized indicators of random atoms (up to half of the slots)
/// and normalized Gaussian functions.
pub fn verify_integral_rbound<T: Scalar>(
    t: &OperatorValuedStep<T>,
    r: T,
    trials: usize,
    config: &RandomConfig,
    budget: &IntegralSearch,
) -> Result<IntegralReport> {
    let (norm, exact) = t.lr_norm(r, config)?;
    let r_dual = conjugate_exponent(r);
    let space = &t.space;
    run_trials(t, norm, exact, trials, config, budget, |_, rng| {
        let mut atoms: Vec<usize> = (0..space.len()).collect();
        atoms.shuffle(rng);
        let indicators = (budget.k / 2).min(space.len());
        let mut fs = Vec::with_capacity(budget.k);
        for &i in &atoms[..indicators] {
            fs.push(indicator_in_ball(space, i, r_dual)?);
        }
        while fs.len() < budget.k {
            fs.push(gaussian_in_ball(space, r_dual, rng)?);
        }
        Ok(fs)
    })
}

/// The set `L_{f_0}` of functions equimeasurable with `f_0`, on a space
/// whose atoms all carry the same weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct EquidistributionBall<T> {
    pub reference: StepFunction<T>,
}

impl<T: Scalar> EquidistributionBall<T> {
    pub fn new(reference: StepFunction<T>) -> Result<Self> {
        ensure!(
            reference.space().has_equal_weights(),
            Unsupported,
            "equimeasurable sampling needs equal atom weights"
        );
        Ok(EquidistributionBall { reference })
    }
}

/// `k` independent signed permutations of the reference function.
pub fn sample_equidistributed<T: Scalar>(
    ball: &EquidistributionBall<T>,
    k: usize,
    config: &RandomConfig,
) -> Result<Vec<StepFunction<T>>> {
    ensure!(ball.reference.space().has_equal_weights(), Unsupported, "equimeasurable sampling needs equal atom weights");
    let mut rng = stream_rng(config.seed, 0x6571_7569_0000);
    (0..k).map(|_| signed_permutation(&ball.reference, &mut rng)).collect()
}

fn signed_permutation<T: Scalar>(f: &StepFunction<T>, rng: &mut impl Rng) -> Result<StepFunction<T>> {
    let mut v = f.values().to_vec();
    v.shuffle(rng);
    for x in &mut v {
        if rng.random::<bool>() {
            *x = -*x;
        }
    }
    StepFunction::new(f.space().clone(), v)
}

/// Sub-families of `{T_f : f ∈ L_{f_0}}`, normalized by
/// `‖T‖_{L^r(S;B(X,Y))} ‖f_0‖_{L^{r',1}}`.
pub fn verify_equidistributed_rbound<T: Scalar>(
    t: &OperatorValuedStep<T>,
    ball: &EquidistributionBall<T>,
    r: T,
    trials: usize,
    config: &RandomConfig,
    budget: &IntegralSearch,
) -> Result<IntegralReport> {
    ensure!(ball.reference.space() == &t.space, Dimension, "reference function lives on a different measure space");
    let (norm, exact) = t.lr_norm(r, config)?;
    let lorentz = lorentz_norm(&ball.reference, conjugate_exponent(r), T::one(), LorentzForm::Rearrangement)?;
    run_trials(t, norm * lorentz, exact, trials, config, budget, |_, rng| {
        (0..budget.k).map(|_| signed_permutation(&ball.reference, rng)).collect()
    })
}

fn check_diag_inputs<T: Scalar>(t: &[T], alpha: &[T], q: T) -> Result<()> {
    ensure!(t.len() == alpha.len() && !t.is_empty(), Dimension, "t has {} entries, α has {}", t.len(), alpha.len());
    ensure!(q > T::lit(2.0), InvalidParameter, "q must exceed 2, got {q}");
    ensure!(alpha.iter().any(|&a| a != T::zero()), DegenerateInput, "α vanishes");
    Ok(())
}

/// `‖t α‖_{ℓ²} / ‖α‖_{ℓ^q}`: the R-bound quotient of the diagonal
/// functionals `x ↦ t(i) x(i)` on `ℓ^q` tested against `x_i = α(i) e_i`.
pub fn diag_counterexample_ratio<T: Scalar>(t: &[T], alpha: &[T], q: T) -> Result<T> {
    check_diag_inputs(t, alpha, q)?;
    let num = t.iter().zip(alpha).map(|(&a, &b)| (a * b) * (a * b)).sum::<T>().sqrt();
    Ok(num / NormedSpace::new(alpha.len(), q)?.norm(alpha))
}

/// The same quotient through the generic machinery: `T(i) = t(i) e_i^*` on
/// counting measure, `f_i = e_i`, exact sign enumeration.
pub fn diag_counterexample_pipeline<T: Scalar>(t: &[T], alpha: &[T], q: T) -> Result<T> {
    check_diag_inputs(t, alpha, q)?;
    let n = t.len();
    ensure!(n <= 20, InvalidParameter, "exact enumeration is limited to 20 terms, got {n}");
    let matrices = (0..n)
        .map(|i| {
            let mut row = vec![T::zero(); n];
            row[i] = t[i];
            Matrix::from_row_major(1, n, row)
        })
        .collect::<Result<Vec<_>>>()?;
    let space = DiscreteMeasureSpace::counting(n)?;
    let step = OperatorValuedStep::new(space.clone(), NormedSpace::new(n, q)?, NormedSpace::hilbert(1)?, matrices)?;
    let fs = (0..n).map(|i| indicator_in_ball(&space, i, T::infinity())).collect::<Result<Vec<_>>>()?;
    let family = step.family(&fs)?;
    let xs = (0..n)
        .map(|i| {
            let mut x = vec![T::zero(); n];
            x[i] = alpha[i];
            x
        })
        .collect();
    let cfg = RandomConfig { exact_threshold: 20, ..RandomConfig::default() };
    rbound_ratio(&family, &Assignment::new((0..n).collect(), xs), &cfg)
}

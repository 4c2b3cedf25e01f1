//! Lower bounds for type-p and cotype-q constants of finite-dimensional
//! spaces, and the mixed `L^q(S; L²(Ω; X))` norms used to check the
//! tensor-product contraction estimates.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::fit::{fit_loglog, LogLogFit};
use crate::measure::{lorentz_norm, max_distribution_functional, LorentzForm, StepFunction};
use crate::rademacher::{rademacher_moment_coords, NormedSpace, RandomConfig};
use crate::rbound::SearchConfig;
use crate::rng::stream_rng;
use crate::scalar::{abs_pow, serde_exponent, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Inequality {
    /// `(E‖Σ r_n x_n‖²)^{1/2} ≤ C (Σ‖x_n‖^p)^{1/p}`
    Type,
    /// `(Σ‖x_n‖^q)^{1/q} ≤ C (E‖Σ r_n x_n‖²)^{1/2}`
    Cotype,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct TypeCotypeReport<T> {
    pub space: NormedSpace<T>,
    pub inequality: Inequality,
    #[serde(with = "serde_exponent")]
    pub exponent: T,
    pub n: usize,
    pub constant_lower: T,
    pub witness: Vec<Vec<T>>,
    /// Ratio at the standard-basis probe `x_n = e_{n mod dim}`.
    pub basis_ratio: T,
    pub evaluations: usize,
}

fn power_sum_norm<T: Scalar>(space: &NormedSpace<T>, xs: &[Vec<T>], r: T) -> T {
    if r.is_infinite() {
        xs.iter().map(|x| space.norm(x)).fold(T::zero(), T::max)
    } else {
        xs.iter().map(|x| abs_pow(space.norm(x), r)).sum::<T>().powf(r.recip())
    }
}

/// The type or cotype quotient of one family of vectors; zero when the
/// denominator vanishes.
pub fn type_cotype_ratio<T: Scalar>(
    space: &NormedSpace<T>,
    inequality: Inequality,
    exponent: T,
    xs: &[Vec<T>],
    config: &RandomConfig,
) -> Result<T> {
    let refs: Vec<&[T]> = xs.iter().map(|v| v.as_slice()).collect();
    let rad = rademacher_moment_coords(space, &refs, T::lit(2.0), config)?.value;
    let sum = power_sum_norm(space, xs, exponent);
    let (num, den) = match inequality {
        Inequality::Type => (rad, sum),
        Inequality::Cotype => (sum, rad),
    };
    Ok(if den > T::zero() { num / den } else { T::zero() })
}

fn basis_probe<T: Scalar>(space: &NormedSpace<T>, n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| space.standard_basis(i % space.dim())).collect()
}

fn gaussian_vec<T: Scalar>(rng: &mut ChaCha8Rng, dim: usize) -> Vec<T> {
    (0..dim).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect()
}

fn estimate<T: Scalar>(
    space: &NormedSpace<T>,
    inequality: Inequality,
    exponent: T,
    n: usize,
    config: &RandomConfig,
    search: &SearchConfig,
) -> Result<TypeCotypeReport<T>> {
    ensure!(n >= 1, InvalidParameter, "N must be positive");
    config.validate()?;
    let eval = |xs: &[Vec<T>]| type_cotype_ratio(space, inequality, exponent, xs, config);
    let basis = basis_probe(space, n);
    let basis_ratio = eval(&basis)?;
    let mut evaluations = 1;
    let mut best = (basis_ratio, basis);

    let repeated = vec![space.standard_basis(0); n];
    let r = eval(&repeated)?;
    evaluations += 1;
    if r > best.0 {
        best = (r, repeated);
    }

    let runs: Vec<Result<(T, Vec<Vec<T>>, usize)>> = (0..search.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = stream_rng(config.seed, restart as u64);
            let mut xs: Vec<Vec<T>> = (0..n).map(|_| gaussian_vec(&mut rng, space.dim())).collect();
            let mut cur = eval(&xs)?;
            let mut evals = 1;
            let mut steps = vec![T::lit(search.step); n];
            for _ in 0..search.sweeps {
                if steps.iter().all(|&s| s < T::lit(1e-12)) {
                    break;
                }
                for k in 0..n {
                    if steps[k] < T::lit(1e-12) {
                        continue;
                    }
                    let scale = xs[k].iter().map(|&v| v * v).sum::<T>().sqrt().max(T::lit(1e-300));
                    let d: Vec<T> = gaussian_vec(&mut rng, space.dim());
                    let dn = d.iter().map(|&v| v * v).sum::<T>().sqrt().max(T::min_positive_value());
                    let mut improved = false;
                    for sign in [T::one(), -T::one()] {
                        let mut trial = xs.clone();
                        for (x, &di) in trial[k].iter_mut().zip(&d) {
                            *x += sign * steps[k] * scale * di / dn;
                        }
                        let r = eval(&trial)?;
                        evals += 1;
                        if r > cur {
                            cur = r;
                            xs = trial;
                            improved = true;
                            break;
                        }
                    }
                    if !improved {
                        steps[k] *= T::lit(0.5);
                    }
                }
            }
            Ok((cur, xs, evals))
        })
        .collect();
    for run in runs {
        let (r, xs, e) = run?;
        evaluations += e;
        if r > best.0 {
            best = (r, xs);
        }
    }
    Ok(TypeCotypeReport {
        space: space.clone(),
        inequality,
        exponent,
        n,
        constant_lower: best.0,
        witness: best.1,
        basis_ratio,
        evaluations,
    })
}

/// Best found `(E‖Σ r_n x_n‖²)^{1/2} / (Σ‖x_n‖^p)^{1/p}` over length-`n` families.
pub fn type_constant_lower<T: Scalar>(
    space: &NormedSpace<T>,
    p: T,
    n: usize,
    config: &RandomConfig,
    search: &SearchConfig,
) -> Result<TypeCotypeReport<T>> {
    ensure!(p >= T::one() && p <= T::lit(2.0), InvalidParameter, "type exponent must lie in [1, 2], got {p}");
    estimate(space, Inequality::Type, p, n, config, search)
}

/// Best found `(Σ‖x_n‖^q)^{1/q} / (E‖Σ r_n x_n‖²)^{1/2}` over length-`n` families.
pub fn cotype_constant_lower<T: Scalar>(
    space: &NormedSpace<T>,
    q: T,
    n: usize,
    config: &RandomConfig,
    search: &SearchConfig,
) -> Result<TypeCotypeReport<T>> {
    ensure!(q >= T::lit(2.0), InvalidParameter, "cotype exponent must be >= 2, got {q}");
    estimate(space, Inequality::Cotype, q, n, config, search)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub ns: Vec<usize>,
    pub constants: Vec<f64>,
    pub fit: LogLogFit,
    /// Slope positive by more than three standard errors: the exponent fails.
    pub fails: bool,
}

/// Fits `log C_N` against `log N`. A constant bounded in `N` has slope 0.
pub fn growth_exponent<T: Scalar>(
    space_for: impl Fn(usize) -> Result<NormedSpace<T>>,
    inequality: Inequality,
    exponent: T,
    ns: &[usize],
    config: &RandomConfig,
    search: &SearchConfig,
) -> Result<GrowthReport> {
    let mut constants = Vec::with_capacity(ns.len());
    for &n in ns {
        let space = space_for(n)?;
        let rep = estimate(&space, inequality, exponent, n, config, search)?;
        constants.push(rep.constant_lower.as_f64());
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let fit = fit_loglog(&xs, &constants)?;
    Ok(GrowthReport { ns: ns.to_vec(), constants, fails: fit.grows(3.0), fit })
}

/// `‖Σ r_n f_n x_n‖_{L^q(S; L²(Ω; X))}` with exact sign averages per atom
/// (maximum over atoms for `q = ∞`).
pub fn mixed_rademacher_norm<T: Scalar>(
    fs: &[StepFunction<T>],
    xs: &[Vec<T>],
    space: &NormedSpace<T>,
    q: T,
    config: &RandomConfig,
) -> Result<T> {
    ensure!(!fs.is_empty() && fs.len() == xs.len(), Dimension, "{} functions for {} vectors", fs.len(), xs.len());
    ensure!(q >= T::one(), InvalidParameter, "outer exponent must be >= 1");
    let measure = fs[0].space();
    ensure!(fs.iter().all(|f| f.space() == measure), Dimension, "functions live on different measure spaces");
    let mut acc = T::zero();
    for (s, &w) in measure.weights().iter().enumerate() {
        let scaled: Vec<Vec<T>> = fs
            .iter()
            .zip(xs)
            .map(|(f, x)| x.iter().map(|&v| v * f.values()[s]).collect())
            .collect();
        let refs: Vec<&[T]> = scaled.iter().map(|v| v.as_slice()).collect();
        let inner = rademacher_moment_coords(space, &refs, T::lit(2.0), config)?.value;
        if q.is_infinite() {
            acc = acc.max(inner);
        } else {
            acc += w * abs_pow(inner, q);
        }
    }
    Ok(if q.is_infinite() { acc } else { acc.powf(q.recip()) })
}

/// Disjoint normalized indicators `f_n = μ(S_1)^{-1/q} 1_{S_n}` on `N` atoms
/// of weight `atom_weight`. Returns `(‖Σ r_n f_n x_n‖^q, Σ‖x_n‖^q)`; the two
/// agree exactly.
pub fn cotype_indicator_construction<T: Scalar>(
    xs: &[Vec<T>],
    space: &NormedSpace<T>,
    q: T,
    atom_weight: T,
    config: &RandomConfig,
) -> Result<(T, T)> {
    ensure!(q.is_finite() && q >= T::one(), InvalidParameter, "q must be finite");
    let n = xs.len();
    let measure = crate::measure::DiscreteMeasureSpace::uniform(n, atom_weight)?;
    let height = atom_weight.powf(-q.recip());
    let fs: Vec<StepFunction<T>> = (0..n)
        .map(|k| {
            let mut v = vec![T::zero(); n];
            v[k] = height;
            StepFunction::new(measure.clone(), v)
        })
        .collect::<Result<_>>()?;
    let lhs = abs_pow(mixed_rademacher_norm(&fs, xs, space, q, config)?, q);
    let rhs = xs.iter().map(|x| abs_pow(space.norm(x), q)).sum();
    Ok((lhs, rhs))
}

/// Empirical constant in
/// `‖Σ r_n f_n x_n‖_{L^q(S;L²)} ≤ C ∫ max_n μ(|f_n|>t)^{1/q} dt · ‖Σ r_n x_n‖_{L²}`.
pub fn lorentz_contraction_constant<T: Scalar>(
    fs: &[StepFunction<T>],
    xs: &[Vec<T>],
    space: &NormedSpace<T>,
    q: T,
    config: &RandomConfig,
) -> Result<T> {
    let lhs = mixed_rademacher_norm(fs, xs, space, q, config)?;
    let functional = max_distribution_functional(fs, q)?;
    let refs: Vec<&[T]> = xs.iter().map(|v| v.as_slice()).collect();
    let rad = rademacher_moment_coords(space, &refs, T::lit(2.0), config)?.value;
    let rhs = functional * rad;
    Ok(if rhs > T::zero() { lhs / rhs } else { T::zero() })
}

/// Empirical constant in the reverse estimate
/// `‖f_1‖_{L^{p,∞}} ‖Σ r_n x_n‖_{L²} ≤ C ‖Σ r_n f_n x_n‖_{L^p(S;L²)}`
/// for identically distributed `f_n`.
pub fn reverse_lorentz_constant<T: Scalar>(
    fs: &[StepFunction<T>],
    xs: &[Vec<T>],
    space: &NormedSpace<T>,
    p: T,
    config: &RandomConfig,
) -> Result<T> {
    ensure!(!fs.is_empty(), InvalidParameter, "need at least one function");
    let weak = lorentz_norm(&fs[0], p, T::infinity(), LorentzForm::Rearrangement)?;
    let refs: Vec<&[T]> = xs.iter().map(|v| v.as_slice()).collect();
    let rad = rademacher_moment_coords(space, &refs, T::lit(2.0), config)?.value;
    let rhs = mixed_rademacher_norm(fs, xs, space, p, config)?;
    Ok(if rhs > T::zero() { weak * rad / rhs } else { T::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn quick() -> SearchConfig {
        SearchConfig { restarts: 4, sweeps: 20, ..Default::default() }
    }

    #[test]
    fn hilbert_constants_are_one() {
        let cfg = RandomConfig::with_seed(1);
        let l2 = NormedSpace::hilbert(3).unwrap();
        for n in [1, 2, 5] {
            let t = type_constant_lower(&l2, 2.0, n, &cfg, &quick()).unwrap();
            let c = cotype_constant_lower(&l2, 2.0, n, &cfg, &quick()).unwrap();
            assert_relative_eq!(t.constant_lower, 1.0, epsilon = 1e-9);
            assert_relative_eq!(c.constant_lower, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn single_vector_gives_one() {
        let cfg = RandomConfig::with_seed(2);
        let s = NormedSpace::new(3, 1.0).unwrap();
        let t = type_constant_lower(&s, 1.5, 1, &cfg, &quick()).unwrap();
        assert_relative_eq!(t.constant_lower, 1.0, epsilon = 1e-12);
        let s = NormedSpace::new(3, f64::INFINITY).unwrap();
        let c = cotype_constant_lower(&s, 3.0, 1, &cfg, &quick()).unwrap();
        assert_relative_eq!(c.constant_lower, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn basis_probe_closed_forms() {
        let cfg = RandomConfig::default();
        let search = SearchConfig { restarts: 0, ..Default::default() };
        for n in [2usize, 4, 9] {
            let l1 = NormedSpace::new(n, 1.0).unwrap();
            let t = type_constant_lower(&l1, 2.0, n, &cfg, &search).unwrap();
            assert_relative_eq!(t.basis_ratio, (n as f64).sqrt(), epsilon = 1e-12);
            let l4 = NormedSpace::new(n, 4.0).unwrap();
            let c = cotype_constant_lower(&l4, 4.0, n, &cfg, &search).unwrap();
            assert_relative_eq!(c.basis_ratio, 1.0, epsilon = 1e-12);
            let linf = NormedSpace::new(n, f64::INFINITY).unwrap();
            let c = cotype_constant_lower(&linf, 2.0, n, &cfg, &search).unwrap();
            assert_relative_eq!(c.basis_ratio, (n as f64).sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn witness_reproduces_constant() {
        let cfg = RandomConfig::with_seed(3);
        let s = NormedSpace::new(3, 1.5).unwrap();
        let rep = cotype_constant_lower(&s, 2.0, 4, &cfg, &quick()).unwrap();
        let again: f64 = type_cotype_ratio(&s, Inequality::Cotype, 2.0, &rep.witness, &cfg).unwrap();
        assert!((again - rep.constant_lower).abs() <= 1e-12);
    }

    #[test]
    fn exponent_ranges() {
        let cfg = RandomConfig::default();
        let s = NormedSpace::<f64>::hilbert(2).unwrap();
        assert!(type_constant_lower(&s, 2.5, 2, &cfg, &quick()).is_err());
        assert!(cotype_constant_lower(&s, 1.5, 2, &cfg, &quick()).is_err());
    }

    #[test]
    fn l1_fails_type_two_by_growth() {
        let cfg = RandomConfig::with_seed(4);
        let search = SearchConfig { restarts: 0, ..Default::default() };
        let rep = growth_exponent(|n| NormedSpace::new(n, 1.0), Inequality::Type, 2.0, &[2, 4, 8, 16], &cfg, &search)
            .unwrap();
        assert!((rep.fit.slope - 0.5).abs() < 1e-9);
        assert!(rep.fails);
        let rep = growth_exponent(NormedSpace::hilbert, Inequality::Type, 2.0, &[2, 4, 8, 16], &cfg, &search)
            .unwrap();
        assert!(rep.fit.slope.abs() < 1e-9);
        assert!(!rep.fails);
    }

    #[test]
    fn indicator_construction_is_exact() {
        let cfg = RandomConfig::default();
        let s = NormedSpace::new(3, 3.0).unwrap();
        let xs = vec![vec![1.0, -0.5, 0.2], vec![0.0, 2.0, 1.0], vec![0.3, 0.3, -0.3]];
        let (lhs, rhs) = cotype_indicator_construction(&xs, &s, 4.0, 0.25, &cfg).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }
}

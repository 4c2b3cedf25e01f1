//! Modulus-of-continuity Besov norms `Λ^s_{p,q}(I; Z)` on uniform grids.
//!
//! A [`GridFunction`] holds `n` samples at the midpoints of `n` equal cells
//! of `I = (a, b)`, so `L^p` integrals are cell sums. Translations are
//! restricted to whole cells.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::linalg::Matrix;
use crate::rademacher::{NormedSpace, RandomConfig};
use crate::rbound::operator_norm;
use crate::scalar::{abs_pow, serde_exponent, Scalar};

/// How operator-valued samples are measured.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMode {
    /// Whatever [`operator_norm`] returns, searched when no closed form applies.
    #[default]
    Estimate,
    /// Closed forms only; fails on pairs of spaces without one.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridValues<T> {
    Scalar(Vec<T>),
    Vector { space: NormedSpace<T>, values: Vec<Vec<T>> },
    Operator { domain: NormedSpace<T>, codomain: NormedSpace<T>, values: Vec<Matrix<T>>, mode: NormMode },
}

impl<T: Scalar> GridValues<T> {
    fn len(&self) -> usize {
        match self {
            GridValues::Scalar(v) => v.len(),
            GridValues::Vector { values, .. } => values.len(),
            GridValues::Operator { values, .. } => values.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", try_from = "RawGrid<T>", into = "RawGrid<T>")]
pub struct GridFunction<T: Scalar> {
    a: T,
    b: T,
    values: GridValues<T>,
}

impl<T: Scalar> GridFunction<T> {
    fn build(a: T, b: T, values: GridValues<T>) -> Result<Self> {
        ensure!(a.is_finite() && b.is_finite() && a < b, InvalidParameter, "interval ({a}, {b}) is empty");
        ensure!(values.len() >= 2, InvalidParameter, "need at least two samples, got {}", values.len());
        match &values {
            GridValues::Scalar(_) => {}
            GridValues::Vector { space, values } => {
                for v in values {
                    space.check(v)?;
                }
            }
            GridValues::Operator { domain, codomain, values, .. } => {
                for m in values {
                    ensure!(
                        m.rows() == codomain.dim() && m.cols() == domain.dim(),
                        Dimension,
                        "{}x{} matrix between spaces of dimension {} and {}",
                        m.rows(),
                        m.cols(),
                        domain.dim(),
                        codomain.dim()
                    );
                }
            }
        }
        Ok(GridFunction { a, b, values })
    }

    pub fn scalar(a: T, b: T, values: Vec<T>) -> Result<Self> {
        Self::build(a, b, GridValues::Scalar(values))
    }

    pub fn vector(a: T, b: T, space: NormedSpace<T>, values: Vec<Vec<T>>) -> Result<Self> {
        Self::build(a, b, GridValues::Vector { space, values })
    }

    pub fn operator(
        a: T,
        b: T,
        domain: NormedSpace<T>,
        codomain: NormedSpace<T>,
        values: Vec<Matrix<T>>,
        mode: NormMode,
    ) -> Result<Self> {
        Self::build(a, b, GridValues::Operator { domain, codomain, values, mode })
    }

    /// Samples `f` at the `n` cell midpoints of `(a, b)`.
    pub fn sample(a: T, b: T, n: usize, f: impl Fn(T) -> T) -> Result<Self> {
        ensure!(n >= 1, InvalidParameter, "need at least two samples, got {n}");
        let h = (b - a) / T::from_usize_lossy(n);
        let values = (0..n).map(|i| f(a + (T::from_usize_lossy(i) + T::lit(0.5)) * h)).collect();
        Self::scalar(a, b, values)
    }

    pub fn interval(&self) -> (T, T) {
        (self.a, self.b)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell width `(b − a) / n`.
    pub fn step(&self) -> T {
        (self.b - self.a) / T::from_usize_lossy(self.len())
    }

    /// Midpoint of cell `i`.
    pub fn point(&self, i: usize) -> T {
        self.a + (T::from_usize_lossy(i) + T::lit(0.5)) * self.step()
    }

    pub fn values(&self) -> &GridValues<T> {
        &self.values
    }

    pub fn scaled(&self, c: T) -> Self {
        let values = match &self.values {
            GridValues::Scalar(v) => GridValues::Scalar(v.iter().map(|&x| c * x).collect()),
            GridValues::Vector { space, values } => GridValues::Vector {
                space: space.clone(),
                values: values.iter().map(|v| v.iter().map(|&x| c * x).collect()).collect(),
            },
            GridValues::Operator { domain, codomain, values, mode } => GridValues::Operator {
                domain: domain.clone(),
                codomain: codomain.clone(),
                values: values.iter().map(|m| m.scale(c)).collect(),
                mode: *mode,
            },
        };
        GridFunction { a: self.a, b: self.b, values }
    }

    fn op_norm(domain: &NormedSpace<T>, codomain: &NormedSpace<T>, m: &Matrix<T>, mode: NormMode) -> Result<T> {
        let n = operator_norm(m, domain, codomain, &RandomConfig::default());
        ensure!(
            n.exact || mode == NormMode::Estimate,
            Unsupported,
            "no closed-form operator norm from ℓ^{} to ℓ^{}",
            domain.exponent(),
            codomain.exponent()
        );
        Ok(n.value)
    }

    /// `‖f_i‖`.
    pub fn value_norm(&self, i: usize) -> Result<T> {
        match &self.values {
            GridValues::Scalar(v) => Ok(v[i].abs()),
            GridValues::Vector { space, values } => Ok(space.norm(&values[i])),
            GridValues::Operator { domain, codomain, values, mode } => {
                Self::op_norm(domain, codomain, &values[i], *mode)
            }
        }
    }

    /// `‖f_j − f_i‖`.
    pub fn diff_norm(&self, i: usize, j: usize) -> Result<T> {
        match &self.values {
            GridValues::Scalar(v) => Ok((v[j] - v[i]).abs()),
            GridValues::Vector { space, values } => {
                let d: Vec<T> = values[j].iter().zip(&values[i]).map(|(&x, &y)| x - y).collect();
                Ok(space.norm(&d))
            }
            GridValues::Operator { domain, codomain, values, mode } => {
                Self::op_norm(domain, codomain, &(&values[j] - &values[i]), *mode)
            }
        }
    }

    /// `‖f‖_{L^p(I)}`.
    pub fn lp_norm(&self, p: T) -> Result<T> {
        ensure!(p >= T::one(), InvalidParameter, "p must be >= 1, got {p}");
        let norms = (0..self.len()).map(|i| self.value_norm(i)).collect::<Result<Vec<T>>>()?;
        if p.is_infinite() {
            return Ok(norms.into_iter().fold(T::zero(), T::max));
        }
        let s: T = norms.into_iter().map(|v| abs_pow(v, p)).sum();
        Ok((self.step() * s).powf(p.recip()))
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged, bound = "T: Scalar")]
enum RawValues<T> {
    Scalars(Vec<T>),
    Vectors(Vec<Vec<T>>),
    Matrices(Vec<Vec<Vec<T>>>),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct RawGrid<T> {
    a: T,
    b: T,
    values: RawValues<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    space: Option<NormedSpace<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<NormedSpace<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    codomain: Option<NormedSpace<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    norm_mode: Option<NormMode>,
}

impl<T: Scalar> TryFrom<RawGrid<T>> for GridFunction<T> {
    type Error = Error;

    fn try_from(raw: RawGrid<T>) -> Result<Self> {
        let values = match raw.values {
            RawValues::Scalars(v) => GridValues::Scalar(v),
            RawValues::Vectors(values) => {
                let dim = values.first().map_or(1, Vec::len);
                let space = match raw.space {
                    Some(s) => s,
                    None => NormedSpace::hilbert(dim)?,
                };
                GridValues::Vector { space, values }
            }
            RawValues::Matrices(ms) => {
                let values = ms.iter().map(|rows| Matrix::from_rows(rows)).collect::<Result<Vec<_>>>()?;
                let (r, c) = values.first().map_or((1, 1), |m| (m.rows(), m.cols()));
                let domain = match raw.domain {
                    Some(s) => s,
                    None => NormedSpace::hilbert(c)?,
                };
                let codomain = match raw.codomain {
                    Some(s) => s,
                    None => NormedSpace::hilbert(r)?,
                };
                GridValues::Operator { domain, codomain, values, mode: raw.norm_mode.unwrap_or_default() }
            }
        };
        GridFunction::build(raw.a, raw.b, values)
    }
}

impl<T: Scalar> From<GridFunction<T>> for RawGrid<T> {
    fn from(f: GridFunction<T>) -> Self {
        let mut raw = RawGrid {
            a: f.a,
            b: f.b,
            values: RawValues::Scalars(Vec::new()),
            space: None,
            domain: None,
            codomain: None,
            norm_mode: None,
        };
        match f.values {
            GridValues::Scalar(v) => raw.values = RawValues::Scalars(v),
            GridValues::Vector { space, values } => {
                raw.values = RawValues::Vectors(values);
                raw.space = Some(space);
            }
            GridValues::Operator { domain, codomain, values, mode } => {
                raw.values = RawValues::Matrices(values.iter().map(Matrix::to_rows).collect());
                raw.domain = Some(domain);
                raw.codomain = Some(codomain);
                raw.norm_mode = Some(mode);
            }
        }
        raw
    }
}

/// Which set the modulus integral runs over.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `∫_{I[h]} ‖f(r+h) − f(r)‖^p dr` with `I[h] = {r ∈ I : r+h ∈ I}`.
    #[default]
    Restrict,
    /// `∫_I ‖f̃(r+h) − f(r)‖^p dr` with `f̃` the extension of `f` by zero.
    ZeroExtend,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BesovParams<T> {
    pub s: T,
    #[serde(with = "serde_exponent")]
    pub p: T,
    #[serde(with = "serde_exponent")]
    pub q: T,
    #[serde(default)]
    pub convention: Convention,
    #[serde(default = "default_levels")]
    pub levels: usize,
}

fn default_levels() -> usize {
    12
}

impl<T: Scalar> BesovParams<T> {
    pub fn new(s: T, p: T, q: T) -> Self {
        BesovParams { s, p, q, convention: Convention::Restrict, levels: default_levels() }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.s > T::zero() && self.s < T::one(), InvalidParameter, "smoothness s must lie in (0, 1), got {}", self.s);
        ensure!(self.p >= T::one(), InvalidParameter, "p must be >= 1, got {}", self.p);
        ensure!(self.q >= T::one(), InvalidParameter, "q must be >= 1, got {}", self.q);
        ensure!(self.levels <= 60, InvalidParameter, "at most 60 dyadic levels");
        Ok(())
    }
}

/// Number of whole-cell shifts available at radius `t`: at least one,
/// at most `n`.
fn shifts_for(f: &GridFunction<impl Scalar>, t: f64) -> usize {
    let k = (t / f.step().as_f64() * (1.0 + 1e-12)).floor();
    (k.max(1.0) as usize).min(f.len())
}

/// `m(k)` for `k = 0..=kmax`: the `L^p` size of the difference at shift
/// `k` cells, maximized over both directions.
fn shift_moduli<T: Scalar>(f: &GridFunction<T>, p: T, convention: Convention, kmax: usize) -> Result<Vec<T>> {
    let n = f.len();
    let h = f.step();
    let norms = (0..n).map(|i| f.value_norm(i)).collect::<Result<Vec<T>>>()?;
    let combine = |acc: T, v: T| if p.is_infinite() { acc.max(v) } else { acc + abs_pow(v, p) };
    let finish = |acc: T| if p.is_infinite() { acc } else { (h * acc).powf(p.recip()) };
    (0..=kmax)
        .into_par_iter()
        .map(|k| {
            let mut diff = T::zero();
            for i in 0..n - k {
                diff = combine(diff, f.diff_norm(i, i + k)?);
            }
            Ok(match convention {
                Convention::Restrict => finish(diff),
                Convention::ZeroExtend => {
                    // positive shift loses the last k cells, negative the first k
                    let fwd = norms[n - k..].iter().fold(diff, |a, &v| combine(a, v));
                    let back = norms[..k].iter().fold(diff, |a, &v| combine(a, v));
                    finish(fwd).max(finish(back))
                }
            })
        })
        .collect()
}

/// `ϱ_p(f, t) = sup_{|h| ≤ t} ‖f(·+h) − f‖_p` over whole-cell shifts.
/// Radii below one cell use the one-cell value.
pub fn modulus_rho<T: Scalar>(f: &GridFunction<T>, t: T, p: T, convention: Convention) -> Result<T> {
    ensure!(t > T::zero(), InvalidParameter, "radius t must be positive, got {t}");
    ensure!(p >= T::one(), InvalidParameter, "p must be >= 1, got {p}");
    let m = shift_moduli(f, p, convention, shifts_for(f, t.as_f64()))?;
    Ok(m.into_iter().fold(T::zero(), T::max))
}

/// The pieces of a Besov norm evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct BesovNorm<T> {
    pub norm: T,
    pub lp_norm: T,
    pub seminorm: T,
    /// `ϱ_p(f, 2^{-j})` for `j = 0..=J`.
    pub moduli: Vec<T>,
}

/// `‖f‖_{L^p} + (Σ_{j=0}^{J} (2^{js} ϱ_p(f, 2^{-j}))^q ln 2)^{1/q}`, with the
/// sum replaced by a maximum for `q = ∞`.
pub fn besov_norm_detail<T: Scalar>(f: &GridFunction<T>, params: &BesovParams<T>) -> Result<BesovNorm<T>> {
    params.validate()?;
    let kmax = shifts_for(f, 1.0);
    let m = shift_moduli(f, params.p, params.convention, kmax)?;
    let mut prefix = m;
    for k in 1..prefix.len() {
        prefix[k] = prefix[k].max(prefix[k - 1]);
    }
    let two = T::lit(2.0);
    let mut moduli = Vec::with_capacity(params.levels + 1);
    let mut acc = T::zero();
    for j in 0..=params.levels {
        let t = 0.5f64.powi(j as i32);
        let rho = prefix[shifts_for(f, t)];
        moduli.push(rho);
        let term = two.powf(T::from_usize_lossy(j) * params.s) * rho;
        if params.q.is_infinite() {
            acc = acc.max(term);
        } else {
            acc += abs_pow(term, params.q) * T::LN_2();
        }
    }
    let seminorm = if params.q.is_infinite() { acc } else { acc.powf(params.q.recip()) };
    let lp_norm = f.lp_norm(params.p)?;
    Ok(BesovNorm { norm: lp_norm + seminorm, lp_norm, seminorm, moduli })
}

pub fn lambda_besov_norm<T: Scalar>(f: &GridFunction<T>, params: &BesovParams<T>) -> Result<T> {
    Ok(besov_norm_detail(f, params)?.norm)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct HolderReport<T> {
    pub holds: bool,
    pub violation_count: usize,
    /// The worst violating sample pairs `(i, j)`, `i < j`, one per `i`,
    /// ordered by difference quotient.
    pub violations: Vec<(usize, usize)>,
    /// `max ‖f_j − f_i‖ / |r_j − r_i|^α` over all pairs.
    pub max_quotient: T,
    /// `Λ^{1/r}_{r,1}` norm.
    pub besov_norm: T,
    pub lr_norm: T,
    /// `besov_norm / (A + ‖f‖_{L^r})`.
    pub fitted_constant: T,
}

const REPORTED_VIOLATIONS: usize = 16;

/// Checks `‖f(s+h) − f(s)‖ ≤ A|h|^α` on every pair of samples and evaluates
/// the `Λ^{1/r}_{r,1}` norm the hypothesis controls. On a bounded interval
/// the decay weight `(1+|s|)^{-α}` may be dropped, and it is. The dyadic
/// levels stop at the grid resolution.
pub fn holder_hypothesis_check<T: Scalar>(f: &GridFunction<T>, alpha: T, r: T, a: T) -> Result<HolderReport<T>> {
    ensure!(r >= T::one() && r.is_finite(), InvalidParameter, "r must be finite and >= 1, got {r}");
    ensure!(
        alpha > r.recip() && alpha < T::one(),
        InvalidParameter,
        "α must lie in (1/r, 1), got α = {alpha}, r = {r}"
    );
    ensure!(a >= T::zero(), InvalidParameter, "A must be nonnegative");
    let n = f.len();
    let h = f.step();
    // per row: violation count and the worst violating pair
    let rows: Vec<Result<(usize, Option<(T, usize)>, T)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut count = 0;
            let mut worst_violation: Option<(T, usize)> = None;
            let mut worst = T::zero();
            for j in i + 1..n {
                let dist = abs_pow(h * T::from_usize_lossy(j - i), alpha);
                let d = f.diff_norm(i, j)?;
                let quotient = d / dist;
                worst = worst.max(quotient);
                if d > a * dist * T::lit(1.0 + 1e-12) {
                    count += 1;
                    if worst_violation.is_none_or(|(w, _)| quotient > w) {
                        worst_violation = Some((quotient, j));
                    }
                }
            }
            Ok((count, worst_violation, worst))
        })
        .collect();
    let mut violation_count = 0;
    let mut ranked = Vec::new();
    let mut max_quotient = T::zero();
    for (i, row) in rows.into_iter().enumerate() {
        let (c, wv, w) = row?;
        violation_count += c;
        max_quotient = max_quotient.max(w);
        if let Some((q, j)) = wv {
            ranked.push((q, i, j));
        }
    }
    ranked.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal).then((x.1, x.2).cmp(&(y.1, y.2))));
    let violations: Vec<(usize, usize)> = ranked.into_iter().take(REPORTED_VIOLATIONS).map(|(_, i, j)| (i, j)).collect();
    // levels below one cell only repeat the one-cell modulus
    let resolvable = (1.0 / f.step().as_f64()).log2().floor().max(0.0) as usize;
    let params = BesovParams { levels: default_levels().min(resolvable), ..BesovParams::new(r.recip(), r, T::one()) };
    let detail = besov_norm_detail(f, &params)?;
    let denom = a + detail.lp_norm;
    Ok(HolderReport {
        holds: violation_count == 0,
        violation_count,
        violations,
        max_quotient,
        besov_norm: detail.norm,
        lr_norm: detail.lp_norm,
        fitted_constant: if denom > T::zero() { detail.norm / denom } else { T::zero() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn linear(n: usize) -> GridFunction<f64> {
        GridFunction::sample(0.0, 1.0, n, |r| r).unwrap()
    }

    #[test]
    fn constant_moduli() {
        let f = GridFunction::sample(0.0, 1.0, 256, |_| -3.0).unwrap();
        for t in [1.0 / 256.0, 0.1, 0.5, 1.0, 4.0] {
            assert_eq!(modulus_rho(&f, t, 2.0, Convention::Restrict).unwrap(), 0.0);
        }
        for (t, p) in [(0.25, 1.0), (0.5, 2.0), (1.0, 3.0), (2.0, 1.0)] {
            let expect = 3.0 * f64::min(t, 1.0).powf(1.0 / p);
            assert_relative_eq!(modulus_rho(&f, t, p, Convention::ZeroExtend).unwrap(), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn linear_modulus_small_t() {
        let f = linear(1024);
        for p in [1.0, 2.0_f64] {
            for t in [1.0 / 64.0, 1.0 / 8.0, 0.25_f64] {
                let expect = t * (1.0 - t).powf(1.0 / p);
                assert_relative_eq!(modulus_rho(&f, t, p, Convention::Restrict).unwrap(), expect, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn radius_below_one_cell() {
        let f = linear(16);
        let one = modulus_rho(&f, 1.0 / 16.0, 1.0, Convention::Restrict).unwrap();
        assert_eq!(modulus_rho(&f, 1e-6, 1.0, Convention::Restrict).unwrap(), one);
        assert!(modulus_rho(&f, 0.0, 1.0, Convention::Restrict).is_err());
    }

    #[test]
    fn constant_norm_is_its_lp_norm() {
        let f = GridFunction::sample(0.0, 1.0, 128, |_| 2.5).unwrap();
        for (p, q) in [(1.0, 1.0), (2.0, f64::INFINITY), (f64::INFINITY, 2.0)] {
            let d = besov_norm_detail(&f, &BesovParams::new(0.5, p, q)).unwrap();
            assert_eq!(d.seminorm, 0.0);
            assert_relative_eq!(d.norm, 2.5, max_relative = 1e-12);
        }
    }

    #[test]
    fn sup_over_levels_for_q_infinite() {
        let f = linear(512);
        let params = BesovParams { levels: 9, ..BesovParams::new(0.5, 1.0, f64::INFINITY) };
        let d = besov_norm_detail(&f, &params).unwrap();
        let expect = d.moduli.iter().enumerate().map(|(j, r)| 2f64.powf(0.5 * j as f64) * r).fold(0.0, f64::max);
        assert_relative_eq!(d.seminorm, expect, max_relative = 1e-14);
    }

    #[test]
    fn vector_and_operator_values() {
        let n = 64;
        let space = NormedSpace::new(2, 1.0).unwrap();
        let vals: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64 / n as f64, 0.0]).collect();
        let fv = GridFunction::vector(0.0, 1.0, space, vals).unwrap();
        let fs = GridFunction::sample(0.0, 1.0, n, |r| r - 0.5 / n as f64).unwrap();
        let p = BesovParams::new(0.5, 2.0, 1.0);
        assert_relative_eq!(lambda_besov_norm(&fv, &p).unwrap(), lambda_besov_norm(&fs, &p).unwrap(), max_relative = 1e-12);

        let l2 = NormedSpace::hilbert(2).unwrap();
        let ms: Vec<Matrix<f64>> = (0..n).map(|i| Matrix::diag(&[i as f64 / n as f64, 0.0])).collect();
        let fo = GridFunction::operator(0.0, 1.0, l2.clone(), l2, ms, NormMode::Exact).unwrap();
        assert_relative_eq!(lambda_besov_norm(&fo, &p).unwrap(), lambda_besov_norm(&fs, &p).unwrap(), max_relative = 1e-10);
    }

    #[test]
    fn exact_mode_rejects_searched_norms() {
        let x = NormedSpace::new(2, 3.0).unwrap();
        let y = NormedSpace::new(2, 1.5).unwrap();
        let ms = vec![Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap(); 4];
        let f = GridFunction::operator(0.0, 1.0, x, y, ms, NormMode::Exact).unwrap();
        assert_eq!(f.lp_norm(2.0).unwrap_err().kind(), "unsupported");
    }

    #[test]
    fn params_validation() {
        assert!(BesovParams::new(1.0, 1.0, 1.0).validate().is_err());
        assert!(BesovParams::new(0.5, 0.5, 1.0).validate().is_err());
        assert!(BesovParams::new(0.5, 1.0, f64::INFINITY).validate().is_ok());
        assert!(GridFunction::scalar(1.0, 0.0, vec![1.0, 2.0]).is_err());
        assert!(GridFunction::scalar(0.0, 1.0, vec![1.0]).is_err());
    }

    #[test]
    fn holder_examples() {
        let rep = holder_hypothesis_check(&linear(256), 0.9, 2.0, 1.0).unwrap();
        assert!(rep.holds && rep.besov_norm.is_finite());
        let c = GridFunction::sample(0.0, 1.0, 128, |_| 1.0).unwrap();
        let rep = holder_hypothesis_check(&c, 0.9, 2.0, 0.0).unwrap();
        assert!(rep.holds);
        assert_relative_eq!(rep.besov_norm, 1.0, max_relative = 1e-12);
        let jump = GridFunction::sample(0.0, 1.0, 128, |r| if r < 0.5 { 1.0 } else { 0.0 }).unwrap();
        let rep = holder_hypothesis_check(&jump, 0.9, 2.0, 1.0).unwrap();
        assert!(!rep.holds);
        assert!(rep.violations.contains(&(63, 64)));
        assert!(holder_hypothesis_check(&jump, 0.4, 2.0, 1.0).is_err());
    }

    #[test]
    fn grid_serde() {
        let f: GridFunction<f64> = serde_json::from_str(r#"{"a":0,"b":1,"values":[1,2,3]}"#).unwrap();
        assert_eq!(f.len(), 3);
        let v: GridFunction<f64> = serde_json::from_str(r#"{"a":0,"b":2,"values":[[1,0],[0,1]]}"#).unwrap();
        assert!(matches!(v.values(), GridValues::Vector { space, .. } if space.is_hilbert()));
        let m: GridFunction<f64> = serde_json::from_str(r#"{"a":0,"b":1,"values":[[[1,0]],[[0,1]]]}"#).unwrap();
        let back: GridFunction<f64> = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<GridFunction<f64>>(r#"{"a":0,"b":1,"values":[[1,0],[1]]}"#).is_err());
    }
}

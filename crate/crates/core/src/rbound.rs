//! Finite operator families and certified lower bounds for their R-bound.
//!
//! Any assignment `(T_{k_n}, x_n)` gives a true lower bound
//! `‖Σ r_n T_{k_n} x_n‖ / ‖Σ r_n x_n‖` (mean-square Rademacher norms). The
//! search routines only ever report such witnessed ratios. Between
//! Euclidean spaces the R-bound of a finite family equals its largest
//! operator norm, which [`hilbert_rbound`] returns exactly.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure, Result};
use crate::linalg::Matrix;
use crate::rademacher::{rademacher_moment_coords, NormedSpace, RandomConfig};
use crate::rng::stream_rng;
use crate::scalar::{serde_exponent, Scalar};

/// Finite set of matrices `codomain.dim × domain.dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFamily<T> {
    domain: NormedSpace<T>,
    codomain: NormedSpace<T>,
    operators: Vec<Matrix<T>>,
}

impl<T: Scalar> OperatorFamily<T> {
    pub fn new(domain: NormedSpace<T>, codomain: NormedSpace<T>, operators: Vec<Matrix<T>>) -> Result<Self> {
        ensure!(!operators.is_empty(), InvalidParameter, "operator family must not be empty");
        for (i, m) in operators.iter().enumerate() {
            ensure!(
                m.rows() == codomain.dim() && m.cols() == domain.dim(),
                Dimension,
                "operator {i} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                codomain.dim(),
                domain.dim()
            );
        }
        Ok(OperatorFamily { domain, codomain, operators })
    }

    /// Family on unweighted `ℓ^p → ℓ^q`, dimensions taken from the matrices.
    pub fn from_matrices(p: T, q: T, operators: Vec<Matrix<T>>) -> Result<Self> {
        ensure!(!operators.is_empty(), InvalidParameter, "operator family must not be empty");
        let (rows, cols) = (operators[0].rows(), operators[0].cols());
        Self::new(NormedSpace::new(cols, p)?, NormedSpace::new(rows, q)?, operators)
    }

    pub fn domain(&self) -> &NormedSpace<T> {
        &self.domain
    }

    pub fn codomain(&self) -> &NormedSpace<T> {
        &self.codomain
    }

    pub fn operators(&self) -> &[Matrix<T>] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn scaled(&self, c: T) -> Self {
        OperatorFamily {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            operators: self.operators.iter().map(|m| m.scale(c)).collect(),
        }
    }
}

impl<T: Scalar> Serialize for OperatorFamily<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(bound = "T: Scalar")]
        struct Raw<'a, T> {
            #[serde(with = "serde_exponent")]
            p: T,
            #[serde(with = "serde_exponent")]
            q: T,
            matrices: &'a [Matrix<T>],
        }
        Raw { p: self.domain.exponent(), q: self.codomain.exponent(), matrices: &self.operators }.serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for OperatorFamily<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Scalar")]
        struct Raw<T> {
            #[serde(with = "serde_exponent")]
            p: T,
            #[serde(with = "serde_exponent")]
            q: T,
            matrices: Vec<Matrix<T>>,
        }
        let raw = Raw::<T>::deserialize(d)?;
        OperatorFamily::from_matrices(raw.p, raw.q, raw.matrices).map_err(serde::de::Error::custom)
    }
}

/// A concrete choice `(T_{k_n}, x_n)_{n=1..N}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Assignment<T> {
    pub operator_indices: Vec<usize>,
    pub vectors: Vec<Vec<T>>,
}

impl<T: Scalar> Assignment<T> {
    pub fn new(operator_indices: Vec<usize>, vectors: Vec<Vec<T>>) -> Self {
        Assignment { operator_indices, vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn validate(&self, family: &OperatorFamily<T>) -> Result<()> {
        ensure!(
            self.operator_indices.len() == self.vectors.len(),
            Dimension,
            "{} operator indices for {} vectors",
            self.operator_indices.len(),
            self.vectors.len()
        );
        ensure!(!self.vectors.is_empty(), InvalidParameter, "empty assignment");
        for &k in &self.operator_indices {
            ensure!(k < family.len(), InvalidParameter, "operator index {k} out of range");
        }
        for x in &self.vectors {
            family.domain.check(x)?;
        }
        ensure!(
            self.vectors.iter().any(|x| x.iter().any(|v| !v.is_zero())),
            DegenerateInput,
            "all vectors of the assignment are zero"
        );
        Ok(())
    }
}

/// `‖Σ r_n T_{k_n} x_n‖_{L²(Ω;Y)} / ‖Σ r_n x_n‖_{L²(Ω;X)}`.
pub fn rbound_ratio<T: Scalar>(family: &OperatorFamily<T>, a: &Assignment<T>, config: &RandomConfig) -> Result<T> {
    a.validate(family)?;
    ratio_unchecked(family, &a.operator_indices, &a.vectors, config)
}

fn ratio_unchecked<T: Scalar>(
    family: &OperatorFamily<T>,
    indices: &[usize],
    xs: &[Vec<T>],
    config: &RandomConfig,
) -> Result<T> {
    let images: Vec<Vec<T>> = indices.iter().zip(xs).map(|(&k, x)| family.operators[k].mul_vec(x)).collect();
    let xr: Vec<&[T]> = xs.iter().map(|v| v.as_slice()).collect();
    let yr: Vec<&[T]> = images.iter().map(|v| v.as_slice()).collect();
    let two = T::lit(2.0);
    let den = rademacher_moment_coords(&family.domain, &xr, two, config)?.value;
    ensure!(den > T::zero(), DegenerateInput, "denominator moment vanishes");
    let num = rademacher_moment_coords(&family.codomain, &yr, two, config)?.value;
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Random,
    #[default]
    CoordinateAscent,
    ExhaustiveSmall,
}

/// Budget of the assignment search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// Independent random starting assignments.
    pub restarts: usize,
    /// Coordinate-ascent sweeps per restart.
    pub sweeps: usize,
    /// Initial relative perturbation size.
    pub step: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { strategy: Strategy::CoordinateAscent, restarts: 8, sweeps: 200, step: 0.1 }
    }
}

impl SearchConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        SearchConfig { strategy, ..Default::default() }
    }
}

const PROBE_DIRECTIONS: usize = 16;
const PROBE_SWEEPS: usize = 100;

/// Largest `N·|family|^N` handled by [`Strategy::ExhaustiveSmall`].
pub const EXHAUSTIVE_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RBoundEstimate<T> {
    pub lower_bound: T,
    pub witness: Assignment<T>,
    /// Number of ratio evaluations spent.
    pub iterations: usize,
    pub config: RandomConfig,
    pub search: SearchConfig,
}

#[derive(Clone)]
struct Candidate<T> {
    ratio: T,
    indices: Vec<usize>,
    vectors: Vec<Vec<T>>,
}

impl<T: Scalar> Candidate<T> {
    fn better_than(&self, other: &Self) -> bool {
        self.ratio > other.ratio
    }
}

struct Search<'a, T> {
    family: &'a OperatorFamily<T>,
    config: &'a RandomConfig,
    n: usize,
}

fn gaussian_vec<T: Scalar>(rng: &mut ChaCha8Rng, dim: usize) -> Vec<T> {
    (0..dim).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect()
}

impl<'a, T: Scalar> Search<'a, T> {
    fn eval(&self, indices: &[usize], xs: &[Vec<T>], evals: &mut usize) -> T {
        *evals += 1;
        // zero denominators only arise from all-zero perturbations; they are never improvements
        ratio_unchecked(self.family, indices, xs, self.config).unwrap_or_else(|_| T::zero())
    }

    fn candidate(&self, indices: Vec<usize>, vectors: Vec<Vec<T>>, evals: &mut usize) -> Candidate<T> {
        let ratio = self.eval(&indices, &vectors, evals);
        Candidate { ratio, indices, vectors }
    }

    /// Single-vector witnesses padded with zeros to length N: basis
    /// vectors, random directions, and a short ascent per operator. The
    /// probe budget is fixed so that larger search budgets only add work.
    fn probes(&self, search: &SearchConfig, evals: &mut usize) -> Candidate<T> {
        let dim = self.family.domain.dim();
        let per_op: Vec<(Candidate<T>, usize)> = (0..self.family.len())
            .into_par_iter()
            .map(|k| {
                let mut evals = 0;
                let pad = |x: Vec<T>| {
                    let mut v = vec![vec![T::zero(); dim]; self.n];
                    v[0] = x;
                    v
                };
                let idx = vec![k; self.n];
                let mut best = self.candidate(idx.clone(), pad(self.family.domain.standard_basis(0)), &mut evals);
                for j in 1..dim {
                    let c = self.candidate(idx.clone(), pad(self.family.domain.standard_basis(j)), &mut evals);
                    if c.better_than(&best) {
                        best = c;
                    }
                }
                let mut rng = stream_rng(self.config.seed, 0x7072_6f62_0000 + k as u64);
                for _ in 0..PROBE_DIRECTIONS {
                    let c = self.candidate(idx.clone(), pad(gaussian_vec(&mut rng, dim)), &mut evals);
                    if c.better_than(&best) {
                        best = c;
                    }
                }
                let best = self.ascend(best, PROBE_SWEEPS, search.step, false, &mut rng, Some(1), &mut evals);
                (best, evals)
            })
            .collect();
        let mut best: Option<Candidate<T>> = None;
        for (c, e) in per_op {
            *evals += e;
            if best.as_ref().is_none_or(|b| c.better_than(b)) {
                best = Some(c);
            }
        }
        best.expect("non-empty family")
    }

    fn random_start(&self, restart: usize) -> (Vec<usize>, Vec<Vec<T>>, ChaCha8Rng) {
        let mut rng = stream_rng(self.config.seed, restart as u64);
        let dim = self.family.domain.dim();
        let idx = (0..self.n).map(|_| rng.random_range(0..self.family.len())).collect();
        let xs = (0..self.n).map(|_| gaussian_vec(&mut rng, dim)).collect();
        (idx, xs, rng)
    }

    /// Alternates greedy index re-picks with accepted-if-better random
    /// perturbations `±d` of each vector; a vector's step size halves when
    /// both signs fail.
    #[allow(clippy::too_many_arguments)]
    fn ascend(
        &self,
        mut cur: Candidate<T>,
        sweeps: usize,
        step: f64,
        repick: bool,
        rng: &mut ChaCha8Rng,
        only_first: Option<usize>,
        evals: &mut usize,
    ) -> Candidate<T> {
        let dim = self.family.domain.dim();
        let active = only_first.unwrap_or(self.n).min(self.n);
        let mut steps = vec![T::lit(step); active];
        let floor = T::lit(1e-12);
        for _ in 0..sweeps {
            if repick && self.family.len() > 1 {
                for n in 0..active {
                    let orig = cur.indices[n];
                    for k in 0..self.family.len() {
                        if k == orig {
                            continue;
                        }
                        let mut idx = cur.indices.clone();
                        idx[n] = k;
                        let r = self.eval(&idx, &cur.vectors, evals);
                        if r > cur.ratio {
                            cur.ratio = r;
                            cur.indices = idx;
                        }
                    }
                }
            }
            let mut moved = false;
            for n in 0..active {
                if steps[n] < floor {
                    continue;
                }
                moved = true;
                let scale = cur.vectors[n].iter().map(|&v| v * v).sum::<T>().sqrt();
                let scale = if scale > T::zero() { scale } else { T::one() };
                let d: Vec<T> = gaussian_vec(rng, dim);
                let dn = d.iter().map(|&v| v * v).sum::<T>().sqrt().max(T::min_positive_value());
                let mut improved = false;
                for sign in [T::one(), -T::one()] {
                    let mut xs = cur.vectors.clone();
                    for (x, &di) in xs[n].iter_mut().zip(&d) {
                        *x += sign * steps[n] * scale * di / dn;
                    }
                    let r = self.eval(&cur.indices, &xs, evals);
                    if r > cur.ratio {
                        cur.ratio = r;
                        cur.vectors = xs;
                        improved = true;
                        break;
                    }
                }
                if !improved {
                    steps[n] *= T::lit(0.5);
                }
            }
            if !moved && !repick {
                break;
            }
        }
        cur
    }
}

/// Best witnessed ratio `‖Σ r_n T_{k_n} x_n‖ / ‖Σ r_n x_n‖` over the
/// strategy's search space, always including single-vector probes.
pub fn rbound_lower<T: Scalar>(
    family: &OperatorFamily<T>,
    n: usize,
    config: &RandomConfig,
    search: &SearchConfig,
) -> Result<RBoundEstimate<T>> {
    ensure!(n >= 1, InvalidParameter, "assignment length must be positive");
    config.validate()?;
    let s = Search { family, config, n };
    let mut evals = 0usize;
    let mut best = s.probes(search, &mut evals);

    let results: Vec<(Candidate<T>, usize)> = match search.strategy {
        Strategy::Random | Strategy::CoordinateAscent => (0..search.restarts)
            .into_par_iter()
            .map(|r| {
                let mut e = 0;
                let (idx, xs, mut rng) = s.random_start(r);
                let start = s.candidate(idx, xs, &mut e);
                let c = if search.strategy == Strategy::CoordinateAscent {
                    s.ascend(start, search.sweeps, search.step, true, &mut rng, None, &mut e)
                } else {
                    start
                };
                (c, e)
            })
            .collect(),
        Strategy::ExhaustiveSmall => {
            let f = family.len();
            let tuples = (f as f64).powi(n as i32);
            ensure!(
                tuples * n as f64 <= EXHAUSTIVE_LIMIT as f64,
                InvalidParameter,
                "exhaustive search needs N·|family|^N <= {EXHAUSTIVE_LIMIT}"
            );
            let tuples = tuples as usize;
            (0..tuples)
                .into_par_iter()
                .map(|t| {
                    let mut e = 0;
                    let mut code = t;
                    let idx: Vec<usize> = (0..n)
                        .map(|_| {
                            let k = code % f;
                            code /= f;
                            k
                        })
                        .collect();
                    let mut rng = stream_rng(config.seed, 0x6578_0000_0000 + t as u64);
                    let xs = (0..n).map(|_| gaussian_vec(&mut rng, family.domain.dim())).collect();
                    let start = s.candidate(idx, xs, &mut e);
                    (s.ascend(start, search.sweeps, search.step, false, &mut rng, None, &mut e), e)
                })
                .collect()
        }
    };
    for (c, e) in results {
        evals += e;
        if c.better_than(&best) {
            best = c;
        }
    }
    let witness = Assignment::new(best.indices, best.vectors);
    let lower_bound = rbound_ratio(family, &witness, config)?;
    Ok(RBoundEstimate { lower_bound, witness, iterations: evals, config: *config, search: *search })
}

/// Exact R-bound `max_k ‖T_k‖` when domain and codomain are Euclidean.
pub fn hilbert_rbound<T: Scalar>(family: &OperatorFamily<T>) -> Option<T> {
    if !(family.domain.is_hilbert() && family.codomain.is_hilbert()) {
        return None;
    }
    Some(
        family
            .operators
            .iter()
            .map(|m| operator_norm(m, &family.domain, &family.codomain, &RandomConfig::default()).value)
            .fold(T::zero(), T::max),
    )
}

/// Operator norm estimate with a flag telling whether it is exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct OperatorNorm<T> {
    pub value: T,
    pub exact: bool,
}

/// `‖A‖_{X→Y}`. Closed forms cover Euclidean pairs (weighted or not),
/// diagonal maps between identical spaces, domain `ℓ¹`, and codomain `ℓ^∞`;
/// everything else is a lower estimate from basis vectors, random
/// directions and local ascent.
pub fn operator_norm<T: Scalar>(
    m: &Matrix<T>,
    domain: &NormedSpace<T>,
    codomain: &NormedSpace<T>,
    config: &RandomConfig,
) -> OperatorNorm<T> {
    let exact = |value| OperatorNorm { value, exact: true };
    if domain.is_hilbert() && codomain.is_hilbert() {
        // D_Y^{1/2} A D_X^{-1/2} on unweighted ℓ²
        let mut scaled = m.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let wy = codomain.weights().map_or(T::one(), |w| w[i].sqrt());
                let wx = domain.weights().map_or(T::one(), |w| w[j].sqrt());
                scaled[(i, j)] = m[(i, j)] * wy / wx;
            }
        }
        return exact(scaled.spectral_norm());
    }
    if m.is_diagonal() && domain == codomain {
        return exact(m.diagonal().into_iter().fold(T::zero(), |a, d| a.max(d.abs())));
    }
    if domain.exponent() == T::one() {
        let v = (0..m.cols())
            .map(|j| codomain.norm(&m.column(j)) / domain.weights().map_or(T::one(), |w| w[j]))
            .fold(T::zero(), T::max);
        return exact(v);
    }
    if codomain.exponent().is_infinite() {
        let dual = if domain.exponent().is_infinite() {
            NormedSpace::new(domain.dim(), T::one()).expect("dim >= 1")
        } else {
            domain.dual().expect("1 < p < ∞")
        };
        let v = (0..m.rows()).map(|i| dual.norm(m.row(i))).fold(T::zero(), T::max);
        return exact(v);
    }
    OperatorNorm { value: operator_norm_search(m, domain, codomain, config), exact: false }
}

fn operator_norm_search<T: Scalar>(
    m: &Matrix<T>,
    domain: &NormedSpace<T>,
    codomain: &NormedSpace<T>,
    config: &RandomConfig,
) -> T {
    let ratio = |x: &[T]| {
        let d = domain.norm(x);
        if d > T::zero() {
            codomain.norm(&m.mul_vec(x)) / d
        } else {
            T::zero()
        }
    };
    let dim = domain.dim();
    let mut rng = stream_rng(config.seed, 0x6f70_6e6f_726d);
    let mut best_x = domain.standard_basis(0);
    let mut best = ratio(&best_x);
    for j in 1..dim {
        let e = domain.standard_basis(j);
        let r = ratio(&e);
        if r > best {
            best = r;
            best_x = e;
        }
    }
    for _ in 0..config.samples.min(256) {
        let x: Vec<T> = gaussian_vec(&mut rng, dim);
        let r = ratio(&x);
        if r > best {
            best = r;
            best_x = x;
        }
    }
    let mut step = T::lit(0.1);
    for _ in 0..2000 {
        if step < T::lit(1e-12) {
            break;
        }
        let scale = best_x.iter().map(|&v| v * v).sum::<T>().sqrt();
        let d: Vec<T> = gaussian_vec(&mut rng, dim);
        let dn = d.iter().map(|&v| v * v).sum::<T>().sqrt().max(T::min_positive_value());
        let x: Vec<T> = best_x.iter().zip(&d).map(|(&a, &b)| a + step * scale * b / dn).collect();
        let r = ratio(&x);
        if r > best {
            best = r;
            best_x = x;
        } else {
            step *= T::lit(0.7);
        }
    }
    best
}

/// `max_k ‖T_k‖`, exact where [`operator_norm`] has a closed form.
pub fn uniform_norm_lower<T: Scalar>(family: &OperatorFamily<T>, config: &RandomConfig) -> T {
    family
        .operators
        .iter()
        .map(|m| operator_norm(m, &family.domain, &family.codomain, config).value)
        .fold(T::zero(), T::max)
}

/// The adjoint family `{Tᵀ : Y* → X*}`.
pub fn adjoint_family<T: Scalar>(family: &OperatorFamily<T>) -> Result<OperatorFamily<T>> {
    let domain = family.codomain.dual()?;
    let codomain = family.domain.dual()?;
    OperatorFamily::new(domain, codomain, family.operators.iter().map(Matrix::transpose).collect())
}

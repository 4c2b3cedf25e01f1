//! Rademacher and Gaussian moments `(E‖Σ ε_n x_n‖^p)^{1/p}` in finite
//! dimensional weighted `ℓ^p` spaces.
//!
//! Up to `exact_threshold` summands the average is taken over every sign
//! pattern, walking a Gray code so that consecutive patterns differ in one
//! sign. Larger sums fall back to seeded Monte Carlo.

use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::rng::stream_rng;
use crate::scalar::{abs_pow, conjugate_exponent, serde_exponent, Scalar};

/// `ℝ^dim` with the norm `(Σ w_i |x_i|^p)^{1/p}` (max norm for `p = ∞`,
/// where weights are ignored).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", try_from = "RawSpace<T>")]
pub struct NormedSpace<T> {
    dim: usize,
    #[serde(with = "serde_exponent")]
    exponent: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<T>>,
}

#[derive(Deserialize)]
#[serde(bound = "T: Scalar")]
struct RawSpace<T> {
    dim: usize,
    #[serde(with = "serde_exponent")]
    exponent: T,
    #[serde(default)]
    weights: Option<Vec<T>>,
}

impl<T: Scalar> TryFrom<RawSpace<T>> for NormedSpace<T> {
    type Error = crate::Error;

    fn try_from(raw: RawSpace<T>) -> Result<Self> {
        match raw.weights {
            None => Self::new(raw.dim, raw.exponent),
            Some(w) => {
                ensure!(w.len() == raw.dim, Dimension, "{} weights for dimension {}", w.len(), raw.dim);
                Self::weighted(raw.exponent, w)
            }
        }
    }
}

impl<T: Scalar> NormedSpace<T> {
    pub fn new(dim: usize, exponent: T) -> Result<Self> {
        ensure!(dim >= 1, InvalidParameter, "space dimension must be positive");
        ensure!(exponent >= T::one(), InvalidParameter, "ℓ^p exponent must be >= 1, got {exponent}");
        Ok(NormedSpace { dim, exponent, weights: None })
    }

    pub fn weighted(exponent: T, weights: Vec<T>) -> Result<Self> {
        let mut s = Self::new(weights.len(), exponent)?;
        ensure!(
            weights.iter().all(|w| *w > T::zero() && w.is_finite()),
            InvalidParameter,
            "coordinate weights must be positive"
        );
        if weights.iter().any(|&w| w != T::one()) {
            s.weights = Some(weights);
        }
        Ok(s)
    }

    /// Euclidean `ℓ²_dim`.
    pub fn hilbert(dim: usize) -> Result<Self> {
        Self::new(dim, T::lit(2.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponent(&self) -> T {
        self.exponent
    }

    pub fn weights(&self) -> Option<&[T]> {
        self.weights.as_deref()
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.is_none()
    }

    /// True when the norm comes from an inner product.
    pub fn is_hilbert(&self) -> bool {
        self.exponent == T::lit(2.0)
    }

    pub fn check(&self, x: &[T]) -> Result<()> {
        ensure!(x.len() == self.dim, Dimension, "vector of length {} in a space of dimension {}", x.len(), self.dim);
        Ok(())
    }

    pub fn norm(&self, x: &[T]) -> T {
        debug_assert_eq!(x.len(), self.dim);
        let p = self.exponent;
        if p.is_infinite() {
            return x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        }
        let s = self.norm_pow(x, p);
        if p == T::lit(2.0) {
            s.sqrt()
        } else {
            s.powf(p.recip())
        }
    }

    /// `Σ w_i |x_i|^p` for finite `p`.
    fn norm_pow(&self, x: &[T], p: T) -> T {
        match &self.weights {
            None => x.iter().map(|&v| abs_pow(v, p)).sum(),
            Some(w) => x.iter().zip(w).map(|(&v, &w)| w * abs_pow(v, p)).sum(),
        }
    }

    /// The dual space `ℓ^{p'}` with dual weights `w^{1-p'}`.
    pub fn dual(&self) -> Result<Self> {
        let p = self.exponent;
        ensure!(
            p > T::one() && p.is_finite(),
            UnsupportedDual,
            "{p} (only 1 < p < ∞ is supported)"
        );
        let q = conjugate_exponent(p);
        Ok(NormedSpace {
            dim: self.dim,
            exponent: q,
            weights: self.weights.as_ref().map(|w| w.iter().map(|&w| w.powf(T::one() - q)).collect()),
        })
    }

    pub fn standard_basis(&self, i: usize) -> Vec<T> {
        let mut e = vec![T::zero(); self.dim];
        e[i] = T::one();
        e
    }
}

/// Element of a [`NormedSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T> {
    space: Arc<NormedSpace<T>>,
    coords: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    pub fn new(space: Arc<NormedSpace<T>>, coords: Vec<T>) -> Result<Self> {
        space.check(&coords)?;
        Ok(Vector { space, coords })
    }

    pub fn space(&self) -> &Arc<NormedSpace<T>> {
        &self.space
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn norm(&self) -> T {
        self.space.norm(&self.coords)
    }
}

/// Seed, Monte-Carlo sample count, and the largest number of summands
/// averaged exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RandomConfig {
    pub seed: u64,
    pub samples: usize,
    pub exact_threshold: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { seed: 0, samples: 100_000, exact_threshold: 20 }
    }
}

impl RandomConfig {
    pub fn with_seed(seed: u64) -> Self {
        RandomConfig { seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.samples >= 1, InvalidParameter, "samples must be positive");
        ensure!(self.exact_threshold <= 30, InvalidParameter, "exact_threshold must be <= 30");
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MomentEstimate<T> {
    pub value: T,
    pub method: Method,
    /// Sign patterns enumerated (exact) or random draws (Monte Carlo).
    pub samples: u64,
    pub seed: u64,
    pub stderr: T,
}

impl<T: Scalar> MomentEstimate<T> {
    fn exact(value: T, samples: u64, seed: u64) -> Self {
        MomentEstimate { value, method: Method::Exact, samples, seed, stderr: T::zero() }
    }
}

/// Flip positions of the binary reflected Gray code on `bits` bits: the
/// `k`-th item is the bit that changes between codes `k` and `k + 1`.
pub fn gray_flips(bits: u32) -> impl Iterator<Item = usize> {
    debug_assert!(bits < 64);
    (1u64..(1u64 << bits)).map(|i| i.trailing_zeros() as usize)
}

/// Visits `Σ ε_n x_n` for every sign pattern with `ε_N = +1`; the other
/// half follows from `‖-s‖ = ‖s‖`. The callback gets the current sum.
pub(crate) fn for_each_signed_sum<T: Scalar>(xs: &[&[T]], dim: usize, mut visit: impl FnMut(&[T])) {
    let n = xs.len();
    debug_assert!(n >= 1);
    let free = (n - 1) as u32;
    let mut signs = vec![T::one(); n];
    let mut sum = vec![T::zero(); dim];
    let resync = |signs: &[T], sum: &mut [T]| {
        sum.iter_mut().for_each(|s| *s = T::zero());
        for (x, &e) in xs.iter().zip(signs) {
            for (s, &v) in sum.iter_mut().zip(x.iter()) {
                *s += e * v;
            }
        }
    };
    resync(&signs, &mut sum);
    visit(&sum);
    let two = T::lit(2.0);
    for (step, k) in gray_flips(free).enumerate() {
        signs[k] = -signs[k];
        if (step + 1) % 1024 == 0 {
            resync(&signs, &mut sum);
        } else {
            let c = two * signs[k];
            for (s, &v) in sum.iter_mut().zip(xs[k].iter()) {
                *s += c * v;
            }
        }
        visit(&sum);
    }
}

fn check_vectors<T: Scalar>(vectors: &[Vector<T>]) -> Result<(Arc<NormedSpace<T>>, Vec<&[T]>)> {
    ensure!(!vectors.is_empty(), InvalidParameter, "need at least one vector");
    let space = vectors[0].space.clone();
    for v in vectors {
        ensure!(
            Arc::ptr_eq(&v.space, &space) || *v.space == *space,
            Dimension,
            "vectors belong to different spaces"
        );
    }
    Ok((space, vectors.iter().map(|v| v.coords.as_slice()).collect()))
}

fn check_moment_exponent<T: Scalar>(p: T) -> Result<()> {
    ensure!(p >= T::one() && p.is_finite(), InvalidParameter, "moment exponent must be in [1, ∞), got {p}");
    Ok(())
}

/// `(E‖Σ r_n x_n‖^p)^{1/p}` over a Rademacher sequence.
pub fn rademacher_moment<T: Scalar>(vectors: &[Vector<T>], p: T, config: &RandomConfig) -> Result<MomentEstimate<T>> {
    let (space, xs) = check_vectors(vectors)?;
    rademacher_moment_coords(&space, &xs, p, config)
}

/// Same as [`rademacher_moment`] on raw coordinate slices of `space`.
pub fn rademacher_moment_coords<T: Scalar>(
    space: &NormedSpace<T>,
    xs: &[&[T]],
    p: T,
    config: &RandomConfig,
) -> Result<MomentEstimate<T>> {
    check_moment_exponent(p)?;
    config.validate()?;
    ensure!(!xs.is_empty(), InvalidParameter, "need at least one vector");
    for x in xs {
        space.check(x)?;
    }
    if xs.len() <= config.exact_threshold {
        let patterns = 1u64 << xs.len();
        Ok(MomentEstimate::exact(exact_rademacher(space, xs, p), patterns, config.seed))
    } else {
        Ok(monte_carlo(space, xs, p, config, Coefficients::Rademacher))
    }
}

/// Exhaustive average over all sign patterns.
pub(crate) fn exact_rademacher<T: Scalar>(space: &NormedSpace<T>, xs: &[&[T]], p: T) -> T {
    let mut acc = T::zero();
    let mut count = 0u64;
    let two = T::lit(2.0);
    for_each_signed_sum(xs, space.dim(), |s| {
        let nrm = space.norm(s);
        acc += if p == two { nrm * nrm } else { abs_pow(nrm, p) };
        count += 1;
    });
    let mean = acc / T::lit(count as f64);
    if p == two {
        mean.sqrt()
    } else {
        mean.powf(p.recip())
    }
}

/// `(E‖Σ γ_n x_n‖^p)^{1/p}` over independent standard Gaussians. Exact
/// (`(Σ‖x_n‖²)^{1/2}`) for Euclidean spaces and `p = 2`.
pub fn gaussian_moment<T: Scalar>(vectors: &[Vector<T>], p: T, config: &RandomConfig) -> Result<MomentEstimate<T>> {
    let (space, xs) = check_vectors(vectors)?;
    gaussian_moment_coords(&space, &xs, p, config)
}

pub fn gaussian_moment_coords<T: Scalar>(
    space: &NormedSpace<T>,
    xs: &[&[T]],
    p: T,
    config: &RandomConfig,
) -> Result<MomentEstimate<T>> {
    check_moment_exponent(p)?;
    config.validate()?;
    ensure!(!xs.is_empty(), InvalidParameter, "need at least one vector");
    for x in xs {
        space.check(x)?;
    }
    if space.is_hilbert() && p == T::lit(2.0) {
        let s: T = xs.iter().map(|x| space.norm(x).powi(2)).sum();
        return Ok(MomentEstimate::exact(s.sqrt(), 0, config.seed));
    }
    Ok(monte_carlo(space, xs, p, config, Coefficients::Gaussian))
}

#[derive(Clone, Copy)]
enum Coefficients {
    Rademacher,
    Gaussian,
}

/// Fixed partition count, so results do not depend on the thread pool.
const MC_PARTITIONS: usize = 8;

fn monte_carlo<T: Scalar>(
    space: &NormedSpace<T>,
    xs: &[&[T]],
    p: T,
    config: &RandomConfig,
    coeffs: Coefficients,
) -> MomentEstimate<T> {
    let total = config.samples;
    let parts: Vec<(f64, f64, usize)> = (0..MC_PARTITIONS)
        .into_par_iter()
        .map(|part| {
            let count = total / MC_PARTITIONS + usize::from(part < total % MC_PARTITIONS);
            let mut rng = stream_rng(config.seed, part as u64);
            let mut sum = vec![T::zero(); space.dim()];
            let (mut s1, mut s2) = (0.0f64, 0.0f64);
            for _ in 0..count {
                sum.iter_mut().for_each(|s| *s = T::zero());
                for x in xs {
                    let c = match coeffs {
                        Coefficients::Rademacher => {
                            if rng.random::<bool>() {
                                T::one()
                            } else {
                                -T::one()
                            }
                        }
                        Coefficients::Gaussian => T::lit(rng.sample::<f64, _>(StandardNormal)),
                    };
                    for (s, &v) in sum.iter_mut().zip(x.iter()) {
                        *s += c * v;
                    }
                }
                let y = abs_pow(space.norm(&sum), p).as_f64();
                s1 += y;
                s2 += y * y;
            }
            (s1, s2, count)
        })
        .collect();
    let (s1, s2, n) = parts
        .iter()
        .fold((0.0, 0.0, 0usize), |(a, b, c), &(x, y, z)| (a + x, b + y, c + z));
    let nf = n as f64;
    let mean = s1 / nf;
    let var = if n > 1 { ((s2 - nf * mean * mean) / (nf - 1.0)).max(0.0) } else { 0.0 };
    let pf = p.as_f64();
    let value = mean.powf(1.0 / pf);
    // delta method for m ↦ m^{1/p}
    let stderr = if mean > 0.0 { value / (pf * mean) * (var / nf).sqrt() } else { 0.0 };
    MomentEstimate {
        value: T::lit(value),
        method: Method::MonteCarlo,
        samples: n as u64,
        seed: config.seed,
        stderr: T::lit(stderr),
    }
}

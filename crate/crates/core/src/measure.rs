//! Finite atomic measure spaces, `L^p` norms, non-increasing rearrangements
//! and Lorentz `L^{p,q}` norms.
//!
//! Every integral here is evaluated in closed form on piecewise-constant
//! data, so the two Lorentz formulas agree to rounding.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure, Result};
use crate::scalar::{abs_pow, Scalar};

/// Finitely many atoms with positive weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteMeasureSpace<T> {
    weights: Vec<T>,
}

impl<T: Scalar> DiscreteMeasureSpace<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        ensure!(!weights.is_empty(), InvalidParameter, "measure space needs at least one atom");
        ensure!(
            weights.iter().all(|w| *w > T::zero() && w.is_finite()),
            InvalidParameter,
            "atom weights must be positive and finite"
        );
        Ok(DiscreteMeasureSpace { weights })
    }

    /// `n` atoms of weight `w`.
    pub fn uniform(n: usize, w: T) -> Result<Self> {
        Self::new(vec![w; n])
    }

    /// Counting measure on `n` points.
    pub fn counting(n: usize) -> Result<Self> {
        Self::uniform(n, T::one())
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_measure(&self) -> T {
        self.weights.iter().copied().sum()
    }

    pub fn has_equal_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == self.weights[0])
    }
}

impl<'de, T: Scalar> Deserialize<'de> for DiscreteMeasureSpace<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Scalar")]
        struct Raw<T> {
            weights: Vec<T>,
        }
        let raw = Raw::<T>::deserialize(d)?;
        DiscreteMeasureSpace::new(raw.weights).map_err(serde::de::Error::custom)
    }
}

/// Scalar function on a [`DiscreteMeasureSpace`], one value per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction<T> {
    space: DiscreteMeasureSpace<T>,
    values: Vec<T>,
}

impl<T: Scalar> StepFunction<T> {
    pub fn new(space: DiscreteMeasureSpace<T>, values: Vec<T>) -> Result<Self> {
        ensure!(
            values.len() == space.len(),
            Dimension,
            "{} values for {} atoms",
            values.len(),
            space.len()
        );
        ensure!(values.iter().all(|v| v.is_finite()), InvalidParameter, "non-finite value");
        Ok(StepFunction { space, values })
    }

    pub fn from_parts(weights: Vec<T>, values: Vec<T>) -> Result<Self> {
        Self::new(DiscreteMeasureSpace::new(weights)?, values)
    }

    pub fn zero(space: DiscreteMeasureSpace<T>) -> Self {
        let n = space.len();
        StepFunction { space, values: vec![T::zero(); n] }
    }

    /// Midpoint samples of `f` on `n` equal cells of `(a, b)`.
    pub fn from_grid(a: T, b: T, n: usize, f: impl Fn(T) -> T) -> Result<Self> {
        ensure!(a < b && n > 0, InvalidParameter, "need a < b and n > 0");
        let h = (b - a) / T::from_usize_lossy(n);
        let values = (0..n)
            .map(|i| f(a + (T::from_usize_lossy(i) + T::lit(0.5)) * h))
            .collect();
        Self::new(DiscreteMeasureSpace::uniform(n, h)?, values)
    }

    pub fn space(&self) -> &DiscreteMeasureSpace<T> {
        &self.space
    }

    pub fn weights(&self) -> &[T] {
        self.space.weights()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        StepFunction { space: self.space.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// `a·self + b·other` on the same space.
    pub fn linear_combination(&self, a: T, other: &Self, b: T) -> Result<Self> {
        ensure!(self.space == other.space, Dimension, "step functions live on different spaces");
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| a * x + b * y).collect();
        Ok(StepFunction { space: self.space.clone(), values })
    }

    /// `μ(|f| > t)`.
    pub fn distribution(&self, t: T) -> T {
        self.values
            .iter()
            .zip(self.weights())
            .filter(|(v, _)| v.abs() > t)
            .map(|(_, &w)| w)
            .sum()
    }
}

impl<T: Scalar> Serialize for StepFunction<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a, T> {
            weights: &'a [T],
            values: &'a [T],
        }
        Raw { weights: self.weights(), values: &self.values }.serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for StepFunction<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Scalar")]
        struct Raw<T> {
            weights: Vec<T>,
            values: Vec<T>,
        }
        let raw = Raw::<T>::deserialize(d)?;
        StepFunction::from_parts(raw.weights, raw.values).map_err(serde::de::Error::custom)
    }
}

/// The non-increasing rearrangement `f*` of a step function, stored as
/// `(value, length)` steps with strictly decreasing values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RearrangedProfile<T> {
    steps: Vec<(T, T)>,
}

impl<T: Scalar> RearrangedProfile<T> {
    pub fn steps(&self) -> &[(T, T)] {
        &self.steps
    }

    pub fn total_length(&self) -> T {
        self.steps.iter().map(|s| s.1).sum()
    }

    /// `f*(s) = inf{t > 0 : μ(|f| > t) ≤ s}`.
    pub fn eval(&self, s: T) -> T {
        let mut end = T::zero();
        for &(v, len) in &self.steps {
            end += len;
            if s < end {
                return v;
            }
        }
        T::zero()
    }

    /// Right endpoints `c_k` of the steps.
    fn cumulative(&self) -> Vec<T> {
        let mut acc = T::zero();
        self.steps
            .iter()
            .map(|&(_, len)| {
                acc += len;
                acc
            })
            .collect()
    }
}

/// `(Σ w_i |f_i|^p)^{1/p}`, or the maximum of `|f_i|` for `p = ∞`.
pub fn lp_norm<T: Scalar>(f: &StepFunction<T>, p: T) -> Result<T> {
    ensure!(p >= T::one(), InvalidParameter, "L^p norm needs p >= 1, got {p}");
    if p.is_infinite() {
        return Ok(f.values.iter().fold(T::zero(), |m, v| m.max(v.abs())));
    }
    let sum: T = f.values.iter().zip(f.weights()).map(|(&v, &w)| w * abs_pow(v, p)).sum();
    Ok(sum.powf(p.recip()))
}

/// Sorts `|f|` in decreasing order, carrying atom weights as step lengths.
/// Ties keep atom order; equal values are merged into one step.
pub fn decreasing_rearrangement<T: Scalar>(f: &StepFunction<T>) -> RearrangedProfile<T> {
    let mut order: Vec<usize> = (0..f.values.len()).collect();
    // stable: ties stay in index order
    order.sort_by(|&i, &j| {
        f.values[j].abs().partial_cmp(&f.values[i].abs()).expect("finite values")
    });
    let mut steps: Vec<(T, T)> = Vec::new();
    for i in order {
        let v = f.values[i].abs();
        let w = f.weights()[i];
        match steps.last_mut() {
            Some(last) if last.0 == v => last.1 += w,
            _ => steps.push((v, w)),
        }
    }
    RearrangedProfile { steps }
}

/// Which of the two equivalent integral formulas to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LorentzForm {
    /// `(∫ t^{q/p} f*(t)^q dt/t)^{1/q}`
    #[default]
    Rearrangement,
    /// `(∫ p t^q μ(|f|>t)^{q/p} dt/t)^{1/q}`
    Distribution,
}

/// Lorentz norm `‖f‖_{L^{p,q}}`, exact on step data.
pub fn lorentz_norm<T: Scalar>(f: &StepFunction<T>, p: T, q: T, form: LorentzForm) -> Result<T> {
    ensure!(p >= T::one(), InvalidParameter, "Lorentz norm needs p >= 1, got {p}");
    ensure!(q >= T::one(), InvalidParameter, "Lorentz norm needs q >= 1, got {q}");
    if p.is_infinite() {
        ensure!(q.is_infinite(), InvalidParameter, "L^{{∞,q}} is only defined for q = ∞");
        return lp_norm(f, p);
    }
    let profile = decreasing_rearrangement(f);
    let cum = profile.cumulative();
    let values: Vec<T> = profile.steps.iter().map(|s| s.0).collect();

    if q.is_infinite() {
        // sup_t t^{1/p} f*(t), approached at the right end of each step
        let sup = values
            .iter()
            .zip(&cum)
            .fold(T::zero(), |m, (&v, &c)| m.max(v * c.powf(p.recip())));
        return Ok(sup);
    }

    let r = q / p;
    let integral: T = match form {
        LorentzForm::Rearrangement => {
            let mut prev = T::zero();
            let mut acc = T::zero();
            for (&v, &c) in values.iter().zip(&cum) {
                acc += abs_pow(v, q) * (c.powf(r) - prev.powf(r));
                prev = c;
            }
            acc * p / q
        }
        LorentzForm::Distribution => {
            // μ(|f| > t) = c_k for t in [v_{k+1}, v_k)
            let mut acc = T::zero();
            for k in 0..values.len() {
                let next = values.get(k + 1).copied().unwrap_or_else(T::zero);
                acc += cum[k].powf(r) * (abs_pow(values[k], q) - abs_pow(next, q));
            }
            acc * p / q
        }
    };
    Ok(integral.max(T::zero()).powf(q.recip()))
}

/// `∫_0^∞ max_n μ(|f_n| > t)^{1/q} dt`, exact on step data.
pub fn max_distribution_functional<T: Scalar>(fs: &[StepFunction<T>], q: T) -> Result<T> {
    ensure!(!fs.is_empty(), InvalidParameter, "need at least one function");
    ensure!(q >= T::one(), InvalidParameter, "need q >= 1");
    let mut breaks: Vec<T> = fs.iter().flat_map(|f| f.values.iter().map(|v| v.abs())).collect();
    breaks.push(T::zero());
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    breaks.dedup();
    let mut acc = T::zero();
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // constant on [lo, hi)
        let m = fs.iter().map(|f| f.distribution(lo)).fold(T::zero(), T::max);
        acc += m.powf(q.recip()) * (hi - lo);
    }
    Ok(acc)
}

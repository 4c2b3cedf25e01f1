//! Floating-point abstraction shared by every numeric routine in the crate.
//!
//! All algorithms are written against [`Scalar`] so that they run in either
//! `f32` or `f64`. The crate root exports `f64` aliases for everyday use.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + rustfft::FftNum
    + 'static
{
    /// Converts an `f64` literal. Every supported scalar can represent
    /// (a rounding of) any finite `f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar conversion from f64")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("scalar conversion from usize")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar conversion to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `|x|^p` with the convention `0^p = 0`.
#[inline]
pub(crate) fn abs_pow<T: Scalar>(x: T, p: T) -> T {
    let a = x.abs();
    if a.is_zero() {
        T::zero()
    } else if p == T::one() {
        a
    } else if p == T::lit(2.0) {
        a * a
    } else {
        a.powf(p)
    }
}

/// Conjugate exponent `p'` with `1/p + 1/p' = 1`.
pub fn conjugate_exponent<T: Scalar>(p: T) -> T {
    if p == T::one() {
        T::infinity()
    } else if p.is_infinite() {
        T::one()
    } else {
        p / (p - T::one())
    }
}


/// Serde adapter for exponents in `[1, ∞]`: infinity is written as the
/// string `"inf"` because JSON has no infinite numbers.
pub mod serde_exponent {
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    use super::Scalar;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr<T> {
        Num(T),
        Text(String),
    }

    pub fn serialize<T: Scalar, S: Serializer>(p: &T, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            "inf".serialize(s)
        } else {
            p.serialize(s)
        }
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        match Repr::<T>::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => Ok(T::infinity()),
                other => Err(de::Error::custom(format!("not an exponent: {other:?}"))),
            },
        }
    }
}

//! Numerical laboratory for R-boundedness of operator families.
//!
//! The crate evaluates Rademacher averages exactly (Gray-code enumeration)
//! or by seeded Monte Carlo, searches for lower bounds of R-bounds and of
//! type/cotype constants, computes Lorentz and Besov norms of discretized
//! functions, and runs the semigroup and integral-operator experiments built
//! on top of those primitives.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the bottom of this file fix the scalar to `f64`.

pub mod besov;
pub mod error;
pub mod fit;
pub mod gamma;
pub mod integral;
pub mod linalg;
pub mod measure;
pub mod rademacher;
pub mod rbound;
pub mod rng;
pub mod scalar;
pub mod semigroup;
pub mod typecotype;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type Matrix = linalg::Matrix<f64>;
pub type DiscreteMeasureSpace = measure::DiscreteMeasureSpace<f64>;
pub type StepFunction = measure::StepFunction<f64>;
pub type RearrangedProfile = measure::RearrangedProfile<f64>;
pub type NormedSpace = rademacher::NormedSpace<f64>;
pub type Vector = rademacher::Vector<f64>;
pub type MomentEstimate = rademacher::MomentEstimate<f64>;
pub type OperatorFamily = rbound::OperatorFamily<f64>;
pub type Assignment = rbound::Assignment<f64>;
pub type RBoundEstimate = rbound::RBoundEstimate<f64>;
pub type GridFunction = besov::GridFunction<f64>;
pub type BesovParams = besov::BesovParams<f64>;
pub type TypeCotypeReport = typecotype::TypeCotypeReport<f64>;
pub type OperatorValuedStep = integral::OperatorValuedStep<f64>;
pub type GammaOperator = gamma::GammaOperator<f64>;
pub type SharpnessConfig = semigroup::SharpnessConfig<f64>;

//! Exact computations with degenerations of linear series on a curve made of
//! two smooth rational components glued at one node.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: exact matrices, canonical subspaces, Plücker coordinates.
//! * [`torus`]: the one-dimensional torus acting on `Grass(n, W1 ⊕ W2)`,
//!   orbit limits, degrees and orbit-closure intersections.
//! * [`delta`]: the index set `Δ(δ)` and numerical data.
//! * [`model`]: explicit section spaces of the twist sequence on the curve.
//! * [`series`]: level-δ limit linear series and their validation.
//! * [`chain`]: the map from exact minimal series to continuous linear series
//!   (chains of orbit closures) and its validators.
//! * [`oracle`]: independent brute-force checks via Plücker scaling.
//! * [`generate`] and [`io`]: seeded instance generation and JSON formats.
//!
//! Linear algebra and torus geometry are generic over an exact field
//! ([`Scalar`]); the curve-level modules fix the scalar to [`Rational`].

pub mod chain;
pub mod delta;
pub mod error;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod series;
pub mod torus;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rationals, the scalar used by the curve-level modules.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals; fine for small hand-sized examples, may overflow.
pub type Rational64 = num_rational::Ratio<i64>;

pub type QMatrix = linalg::Matrix<Rational>;
pub type QSubspace = linalg::Subspace<Rational>;

pub use chain::{build_chain, evaluate_at_base_points, ChainComponent, ContinuousChain};
pub use delta::{DeltaSet, NumericalData};
pub use model::CurveModel;
pub use series::LevelDeltaLLS;
pub use torus::{BlockProfile, Direction, TorusSplit};

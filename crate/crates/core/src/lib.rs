//! Exact computation of the weak crossed G-algebra carried by the equivariant
//! zeroth Hochschild homology of a twisted Frobenius algebra bundle.
//!
//! The pipeline is [`bundle::TwistedBundle`] → [`hochschild::HochschildBundle`]
//! → [`crossed::CrossedAlgebra`], with [`characters`] computing 2-characters
//! and [`builders`] producing the standard instance families. Every identity
//! is checked with exact arithmetic over the rationals or a prime field.

pub mod algebra;
pub mod builders;
pub mod bundle;
pub mod characters;
pub mod crossed;
pub mod group;
pub mod hochschild;
pub mod instance;
pub mod linalg;
pub mod report;
pub mod suite;

pub use algebra::{AlgebraData, Copairing};
pub use bundle::TwistedBundle;
pub use crossed::CrossedAlgebra;
pub use group::FiniteGroup;
pub use hochschild::HochschildBundle;
pub use linalg::{Field, Matrix, Scalar, Subspace};
pub use report::{Check, Report, Status, Witness};

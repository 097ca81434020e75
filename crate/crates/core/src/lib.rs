//! Exact computations with Lie algebra crossed modules, Chevalley-Eilenberg
//! cohomology and explicit 3-cocycles.

pub mod catalog;
pub mod ce;
pub mod check;
pub mod crossed;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use lie::{FiniteLieAlgebra, LieAlgebra, WittAlgebra};
pub use scalar::{Element, ModElem, Scalar, Vector};

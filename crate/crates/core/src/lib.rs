//! Exact homotopy transfer of A∞-structures along deformation retracts.

pub mod ainfty;
pub mod coalgebra;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod io;
pub mod lemmas;
pub mod matrix;
pub mod multilinear;
pub mod op;
pub mod properties;
pub mod random;
pub mod retract;
pub mod scalar;
pub mod transfer;

pub use ainfty::{AInftyAlgebra, AInftyMorphism, CheckReport};
pub use error::{Error, Result};
pub use graded::{BasisElement, GradedMap, GradedSpace, Index, Shape, Tensor};
pub use multilinear::MultilinearMap;
pub use op::Op;
pub use retract::DeformationRetract;
pub use scalar::{Field, Scalar};

//! Stratifying systems and signed τ-exceptional sequences induced by
//! τ-rigid modules over bound quiver algebras on prime fields.

pub mod error;
pub mod exceptional;
pub mod hom;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod serial;
pub mod strat;
pub mod tilting;
pub mod torsion;
pub mod universe;

pub use error::{Error, Result};
pub use hom::{decompose, hom_basis, hom_dim, is_isomorphic, HomSpace};
pub use linalg::{Field, Matrix};
pub use module::{direct_sum, RepMorphism, Representation, StructureKind};
pub use quiver::{parse_algebra, Algebra, AlgebraBuilder, Path};

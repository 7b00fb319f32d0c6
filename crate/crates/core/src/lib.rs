//! Exact computations for modified Rota-Baxter Leibniz algebras given by
//! structure constants over the rationals: axiom checkers, the derived
//! constructions, the cohomology of the operator and of the pair, truncated
//! formal deformations, and abelian extensions.

pub mod algebra;
pub mod cohomology;
pub mod defect;
pub mod deformation;
mod error;
pub mod extension;
pub mod linalg;
pub mod rep;

pub use algebra::{LeibnizAlgebra, OperatorContext};
pub use cohomology::{Cochain, CohomologyReport, ConeCochain, MrbComplex};
pub use defect::{Defect, DefectReport};
pub use deformation::{FormalIso, TruncatedDeformation};
pub use error::{Error, Result};
pub use extension::{CocyclePair, ExtensionData};
pub use linalg::{Matrix, MultiIndex, Scalar};
pub use rep::Representation;

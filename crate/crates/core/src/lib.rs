pub mod decomp;
pub mod error;
pub mod grcore;
pub mod linalg;
pub mod measure;
pub mod presets;
pub mod properties;
pub mod quiver;
pub mod reports;
pub mod rep;
pub mod segments;
pub mod tame;

pub use decomp::{are_isomorphic, decompose, is_indecomposable, Budgets};
pub use error::{Error, Result};
pub use grcore::{GrEngine, GrResult};
pub use linalg::{Field, Matrix, Subspace};
pub use measure::GrMeasure;
pub use quiver::Quiver;
pub use rep::{hom_basis, Morphism, Rep};

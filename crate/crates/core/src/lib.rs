pub mod artinian;
pub mod complex;
pub mod degree;
pub mod domain;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod series;
pub mod verify;

pub use complex::{Orientation, SimplicialComplex};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use poly::{RatFunc, SparsePoly, VarId};

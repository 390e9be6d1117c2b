//! Linear systems of parameters and the degree map of the artinian reduction.

mod face;
mod lsop;
mod map;
mod specialize;

pub use face::{face_monomials, FaceMonomial};
pub use lsop::{FactoredBracket, Lsop};
pub use map::{degree_kx, degree_poly, degree_reduce, DegreeMap};
pub use specialize::{random_point, specialization_field, PowerDegree, Specializer, Target};

//! Graded pieces of the artinian reduction and its Gorenstein quotient:
//! Hilbert functions, monomial bases, Hodge-Riemann forms and Lefschetz checks.

mod basis;
mod gram;
mod hilbert;
mod reduction;

pub use basis::{pairing_matrix, pairing_rank, select_basis, verify_basis, BasisOptions, GradedBasis};
pub use gram::{
    anisotropy_witness, exact_ord_profile, gram_in, gram_report, hr_gram_exact, lefschetz_check, subset_key, AnisotropyWitness,
    GramDeterminant, GramReport, LefschetzOutcome, PrimitiveDeterminant,
};
pub use hilbert::{gorenstein_prediction, hilbert_report, multiplication_rank, HilbertReport};
pub use reduction::{Reduction, MAX_DRAWS};

//! Exact integer and rational lattice algebra.
//!
//! Everything here is generic over the integer scalar through
//! [`LatticeScalar`]; the rest of the crate instantiates it at [`crate::Int`].
//! No floating point is used anywhere: rank and divisibility decisions are
//! exact by construction.

mod charseq;
mod congruence;
mod matrix;
mod snf;

pub use charseq::{character_sequence, CharacterSequence, FinAbPresentation, QuotientClass};
pub use congruence::{solve_congruences, CosetFamily};
pub use matrix::{IntMatrix, LatticeScalar};
pub use snf::{
    cokernel, coset_reps, hermite_normal_form, kernel_basis, lattice_contains, lattice_eq,
    smith_normal_form, solve_integer, SmithDecomposition,
};

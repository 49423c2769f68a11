//! Exact computations on both sides of toric mirror symmetry.
//!
//! The B-side is the Cox presentation of a toric stack: class-group-graded
//! line bundles on `(A^n \ Z)/G` with sheaf cohomology computed by the
//! chamber method.  The A-side is constructible sheaves on low-dimensional
//! tori, modelled as representations of the entrance-path category of a
//! cell complex, with microsupport constrained to a conic Lagrangian built
//! from the fan data.  The `verify` module cross-checks the two sides.
//!
//! All arithmetic is exact.  The lattice and linear-algebra layers are
//! generic over the scalar via `num-traits` bounds; the concrete aliases
//! used everywhere else are [`Int`] (arbitrary-precision integers) and
//! [`Rat`] (arbitrary-precision rationals).

pub mod cellsheaf;
pub mod cox;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod onedim;
pub mod skeleton;
pub mod verify;

pub use error::Error;

/// Exact integer scalar used by the concrete API surface.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar used by the concrete API surface.
pub type Rat = num_rational::BigRational;
/// Integer matrix over [`Int`].
pub type IMat = lattice::IntMatrix<Int>;

/// Shorthand for an `Int` from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for an exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

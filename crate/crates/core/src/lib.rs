//! Exact computations for algebraic actions of finitely generated groups.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact: integers
//! are arbitrary precision and every non-integer quantity is a rational, so
//! verdicts come with certificates that can be re-checked without tolerances.
//!
//! Modules:
//!
//! * [`group`]: normal forms for free abelian, Heisenberg and `Z^k ⋊ Z` groups
//!   and their finite quotients.
//! * [`linalg`]: Smith/Hermite normal forms, integer kernels, lattices.
//! * [`ring`]: the integral group ring, lopsided elements and their `l^1`
//!   inverses.
//! * [`poly`]: rational polynomials, cyclotomic factors, Sturm sequences.
//! * [`toral`]: matrix-group actions on tori (fixed points, expansiveness,
//!   finite-orbit characters, ergodicity).
//! * [`cohomology`]: cocycles, coboundaries and `H^1` for actions on finite
//!   modules.
//! * [`shift`]: principal actions `Z[G]/Z[G]f` on finite quotients and
//!   homoclinic points.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cohomology;
mod error;
pub mod group;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod shift;
pub mod toral;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

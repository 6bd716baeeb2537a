//! Exact computational commutative algebra for fiber cones of ideals.
//!
//! Polynomials live over a prime field `F_p`. Ideals of the polynomial ring are
//! read as ideals of its localization at the maximal ideal of the variables:
//! every ideal handed to the filtration machinery is replaced by its primary
//! component at the origin, after which global and local colengths agree.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod catalog;
pub mod complex;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod reduction;
pub mod verifier;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use ideal::{Ideal, IdealMemo};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::{PolyRing, Polynomial};

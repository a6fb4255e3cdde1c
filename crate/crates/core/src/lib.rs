//! Blob algebra cell modules, Gram matrices and the Jantzen sum formula for the
//! infinite dihedral group.

pub mod blob;
pub mod coxeter;
pub mod diagram;
pub mod error;
pub mod gram;
pub mod jantzen;
pub mod jw;
pub mod linalg;
pub mod poly;
pub mod suite;
pub mod tl;

pub use error::{Error, Result};
pub use poly::{BivarPoly, LaurentPoly, Monomial, Rational, UniPoly};

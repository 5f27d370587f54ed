//! Exact residue calculus for double stable Grothendieck polynomials and
//! K-theoretic Thom polynomials.

pub mod algebra;
pub mod error;
pub mod grothendieck;
pub mod par;
pub mod residue;
pub mod thom;
pub mod verify;

pub use error::{Error, Result};

//! Exact computations on SL2 character varieties of finitely generated
//! groups: trace polynomials, reconstruction of representations from their
//! characters, twisted cohomology and Reidemeister torsion.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod saito;
pub mod skein;
pub mod torsion;
pub mod words;

pub use error::{Error, ErrorKind, Result};

//! Computational kernel for local cohomology with respect to a pair of
//! ideals `(I, J)` over polynomial rings.

pub mod cech;
pub mod depth;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod ring;
pub mod session;
pub mod suites;
pub mod support;
pub mod torsion;

pub use error::{Error, Result};

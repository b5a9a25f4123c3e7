//! Numerical radii of complex matrices, numerical-radius inequalities for
//! 2x2 operator matrices, and bounds for the zeros of monic polynomials
//! derived from them, together with the independent checks (eigensolvers,
//! a simultaneous root finder, brute-force grids) that verify every bound.

pub mod eigen;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod numradius;
pub mod opbounds;
pub mod parse;
pub mod poly;
pub mod random;
pub mod zerobounds;

pub use error::{Error, Result};
pub use matrix::{Complex, ComplexMatrix};

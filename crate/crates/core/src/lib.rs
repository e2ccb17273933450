//! Hochschild cohomology of complete intersections through the DG Clifford model.

pub mod abelian;
pub mod algebra;
pub mod bar;
pub mod calculus;
pub mod cliffdg;
pub mod cyclic;
pub mod coeff;
pub mod error;
pub mod poly;

pub use error::{Error, Result};

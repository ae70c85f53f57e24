//! Numerical verification of universal eigenvalue inequalities for the
//! Laplacian: exact model spectra, Bessel zeros, Yang-type and Li-Yau bounds,
//! the Cheng-Yang recursion, Riesz means and heat traces.

pub mod bessel;
pub mod cheng_yang;
pub mod error;
pub mod numerics;
pub mod report;
pub mod riesz_heat;
pub mod spectra;
pub mod suite;
pub mod universal_bounds;

pub use error::{Error, Result};

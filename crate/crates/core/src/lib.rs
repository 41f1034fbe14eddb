//! Exact and numerical tools for the Hessian (Hesse derivative) of plane
//! cubics and the rational map it induces on j-invariants,
//! `H(j) = (6912 - j)^3 / (27 j^2)`.

pub mod cubics;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod numeric;
pub mod orbits;
pub mod hmap;
pub mod ratfun;

pub use error::{Error, Result};

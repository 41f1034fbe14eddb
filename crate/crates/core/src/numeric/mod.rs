//! High-precision complex arithmetic and simultaneous root finding.

pub mod aberth;
pub mod bigfloat;

pub use aberth::{aberth, initial_guesses, newton_polish, HornerTarget, NewtonTarget, Scalar};
pub use bigfloat::{BigComplex, Float};

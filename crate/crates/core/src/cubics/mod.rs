//! Plane cubics: ternary forms, the Hessian and polars, Weierstrass
//! j-invariants, and the Hesse pencil.

pub mod form;
pub mod pencil;
pub mod weierstrass;

pub use form::{det3, hessian_form, polar, polar_conic_degenerate, polar_conic_matrix, Mat3, Monomial, TriForm};
pub use pencil::{
    fiber_orbit, fiber_orbit_capped, hesse_hessian, pencil_a, pencil_b, pencil_haw_t, pencil_j, pullback,
    FiberCertificate, FactorOutcome, FactorResult,
};
pub use weierstrass::{verify_weierstrass_hessian, verify_h_of_j, weierstrass_j, WeierstrassHessianReport, WeierstrassParams};

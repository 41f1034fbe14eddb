//! Exact arithmetic: rationals, univariate polynomials over a pluggable
//! coefficient ring, polynomial gcd and the quotient rings `Q[t]/(m)`.

mod gcd;
mod poly;
mod quot;
mod ring;
mod text;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use gcd::{
    ext_gcd, poly_gcd, primitive_part, rational_roots, squarefree_decomposition, to_integer_poly,
    RationalRoots,
};
pub use poly::UniPoly;
pub use quot::{Modulus, QuotElem};
pub use ring::{Field, Ring, Unital};
pub use text::{format_poly, parse_poly, parse_rational};

/// Reduced fraction with positive denominator; zero is `0/1`.
pub type ExactRational = BigRational;

pub type RatPoly = UniPoly<ExactRational>;

pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// `n / d`, panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

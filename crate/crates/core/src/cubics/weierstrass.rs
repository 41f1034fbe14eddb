//! Weierstrass cubics `y^2 z - x^3 - a x z^2 - b z^3` and symbolic checks of
//! how the Hessian acts on their j-invariants.
//!
//! The symbols `a`, `b` live in `Q[a][b]`, polynomials in `b` whose
//! coefficients are polynomials in `a`. Rational-function identities are
//! checked by cross-multiplying, so no bivariate gcd is ever needed.

use num_traits::Zero;
use serde::Serialize;

use super::form::{hessian_form, TriForm};
use crate::exact::{ExactRational, RatPoly, UniPoly};
use crate::hmap::HMap;
use crate::ratfun::ExtRational;

/// `Q[a][b]`.
pub type BiPoly = UniPoly<RatPoly>;

fn sym_a() -> BiPoly {
    BiPoly::constant(RatPoly::var())
}

fn sym_b() -> BiPoly {
    BiPoly::var()
}

fn k(n: i64) -> BiPoly {
    BiPoly::constant(RatPoly::from_ints(&[n]))
}

fn lift(q: &ExactRational) -> BiPoly {
    BiPoly::constant(RatPoly::constant(q.clone()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassParams {
    pub a: ExactRational,
    pub b: ExactRational,
}

impl WeierstrassParams {
    pub fn new(a: ExactRational, b: ExactRational) -> Self {
        Self { a, b }
    }

    /// `4 a^3 + 27 b^2`.
    pub fn discriminant(&self) -> ExactRational {
        ExactRational::from_integer(4.into()) * &self.a * &self.a * &self.a
            + ExactRational::from_integer(27.into()) * &self.b * &self.b
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.discriminant().is_zero()
    }

    pub fn form(&self) -> TriForm<ExactRational> {
        weierstrass_form(&self.a, &self.b)
    }
}

/// `y^2 z - x^3 - a x z^2 - b z^3`.
pub fn weierstrass_form<R: crate::exact::Ring>(a: &R, b: &R) -> TriForm<R> {
    let one = a.one_like();
    TriForm::from_terms(
        3,
        [
            ([0, 2, 1], one.clone()),
            ([3, 0, 0], one.neg()),
            ([1, 0, 2], a.neg()),
            ([0, 0, 3], b.neg()),
        ],
    )
}

/// `1728 * 4 a^3 / (4 a^3 + 27 b^2)`, infinite on singular curves.
pub fn weierstrass_j(p: &WeierstrassParams) -> ExtRational {
    let d = p.discriminant();
    if d.is_zero() {
        return ExtRational::Infinity;
    }
    let num = ExactRational::from_integer(6912.into()) * &p.a * &p.a * &p.a;
    ExtRational::Finite(num / d)
}

/// Intermediate quantities of the symbolic Hessian computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeierstrassHessianReport {
    /// The Hessian equals `24 x y^2 - 8 a^2 z^3 + 24 a x^2 z + 72 b x z^2`.
    pub hessian_matches: bool,
    /// After `x <-> z`, `x -> a^2 x + 3 b z`, `z -> a^2 z` only the monomials
    /// `y^2 z`, `x^3`, `x z^2`, `z^3` remain.
    pub normal_form_reached: bool,
    /// `j` of that normal form equals `1728 * 4 (a^3+9b^2)^3 / (a^6 (4a^3+27b^2))`.
    pub hessian_j_matches: bool,
    /// ... which equals `j(C) (a^3 + 9 b^2)^3 / a^9`.
    pub identity_holds: bool,
}

impl WeierstrassHessianReport {
    pub fn passed(&self) -> bool {
        self.hessian_matches && self.normal_form_reached && self.hessian_j_matches && self.identity_holds
    }
}

/// `a^3 + 9 b^2`.
fn c_ab() -> BiPoly {
    &sym_a().pow(3) + &(&k(9) * &sym_b().pow(2))
}

/// `4 a^3 + 27 b^2`.
fn disc_ab() -> BiPoly {
    &(&k(4) * &sym_a().pow(3)) + &(&k(27) * &sym_b().pow(2))
}

pub fn verify_weierstrass_hessian() -> WeierstrassHessianReport {
    let (a, b) = (sym_a(), sym_b());
    let f = weierstrass_form(&a, &b);
    let h = hessian_form(&f);
    let expected = TriForm::from_terms(
        3,
        [
            ([1, 2, 0], k(24)),
            ([0, 0, 3], &k(-8) * &a.pow(2)),
            ([2, 0, 1], &k(24) * &a),
            ([1, 0, 2], &k(72) * &b),
        ],
    );
    let hessian_matches = h == expected;

    // g(x, y, z) = h(a^2 z, y, a^2 x + 3 b z)
    let zero = BiPoly::zero();
    let a2 = a.pow(2);
    let sub = [
        [zero.clone(), zero.clone(), a2.clone()],
        [zero.clone(), BiPoly::one(), zero.clone()],
        [a2, zero, &k(3) * &b],
    ];
    let g = h.substitute_linear(&sub);
    let allowed = [[0, 2, 1], [3, 0, 0], [1, 0, 2], [0, 0, 3]];
    let normal_form_reached = g.terms().all(|(m, _)| allowed.contains(m));
    let get = |m: [u32; 3]| g.coeff(&m).cloned().unwrap_or_else(BiPoly::zero);
    let (alpha, beta, gamma, delta) = (get([0, 2, 1]), get([3, 0, 0]), get([1, 0, 2]), get([0, 0, 3]));

    // alpha y^2 z + beta x^3 + gamma x z^2 + delta z^3 has
    // j = 1728 * 4 gamma^3 / (4 gamma^3 + 27 beta delta^2)
    let j_num = &k(6912) * &gamma.pow(3);
    let j_den = &(&k(4) * &gamma.pow(3)) + &(&(&k(27) * &beta) * &delta.pow(2));
    let want_num = &k(6912) * &c_ab().pow(3);
    let want_den = &a.pow(6) * &disc_ab();
    let hessian_j_matches = !alpha.is_zero()
        && !j_den.is_zero()
        && &j_num * &want_den == &want_num * &j_den;

    // j(C) (a^3 + 9 b^2)^3 / a^9 with j(C) = 6912 a^3 / (4 a^3 + 27 b^2)
    let rhs_num = &(&k(6912) * &a.pow(3)) * &c_ab().pow(3);
    let rhs_den = &disc_ab() * &a.pow(9);
    let identity_holds = &j_num * &rhs_den == &rhs_num * &j_den;

    WeierstrassHessianReport {
        hessian_matches,
        normal_form_reached,
        hessian_j_matches,
        identity_holds,
    }
}

/// `H(j(a, b)) = j(a, b) (a^3 + 9 b^2)^3 / a^9` in `Q(a, b)`, with `H` read
/// from `map` so that a wrong map fails.
pub fn verify_h_of_j(map: &HMap) -> bool {
    let a = sym_a();
    let n = &k(6912) * &a.pow(3);
    let d = disc_ab();
    let f = map.ratfun();
    let deg = f.degree();
    // homogenize numerator and denominator of H at n / d
    let hom = |p: &RatPoly| -> BiPoly {
        let mut acc = BiPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&(&lift(c) * &n.pow(i as u32)) * &d.pow((deg - i) as u32));
            }
        }
        acc
    };
    let (hn, hd) = (hom(f.num()), hom(f.den()));
    let lhs = &hn * &(&d * &a.pow(9));
    let rhs = &hd * &(&n * &c_ab().pow(3));
    !hd.is_zero() && lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn j_special_values() {
        assert_eq!(weierstrass_j(&WeierstrassParams::new(int(1), int(0))), int(1728).into());
        assert_eq!(weierstrass_j(&WeierstrassParams::new(int(0), int(1))), int(0).into());
        assert_eq!(weierstrass_j(&WeierstrassParams::new(int(-3), int(2))), ExtRational::Infinity);
    }

    #[test]
    fn hessian_identities() {
        let r = verify_weierstrass_hessian();
        assert!(r.passed(), "{r:?}");
        assert!(verify_h_of_j(&HMap::new()));
        assert!(!verify_h_of_j(&HMap::with_constants(6913, 27)));
    }

    #[test]
    fn specialization_a1_b1() {
        let j = weierstrass_j(&WeierstrassParams::new(int(1), int(1)));
        assert_eq!(j, rat(6912, 31).into());
        let hj = HMap::new().eval_exact(&j).unwrap();
        assert_eq!(hj, (rat(6912, 31) * int(1000)).into());
    }
}

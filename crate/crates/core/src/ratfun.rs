//! Reduced rational functions in one variable over `Q`.
//!
//! A [`RatFun`] keeps exactly the numerator and denominator produced by its
//! construction, minus their monic gcd. Nothing else is rescaled, so leading
//! coefficients of composites are meaningful (for iterates of `H` they are
//! `(-1)^n` and `27^n`). Equality is by cross-multiplication.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use num_bigint::BigInt;

use crate::exact::{
    format_poly, parse_poly, poly_gcd, ExactRational, QuotElem, RatPoly, UniPoly,
};
use crate::numeric::bigfloat::{log2_abs, BigComplex};

/// A point of the Riemann sphere with an exact rational coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(ExactRational),
    Infinity,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&ExactRational> {
        match self {
            Self::Finite(q) => Some(q),
            Self::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }
}

impl From<ExactRational> for ExtRational {
    fn from(q: ExactRational) -> Self {
        Self::Finite(q)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(q) => write!(f, "{q}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

/// A point of the Riemann sphere with a high-precision complex coordinate.
#[derive(Clone, Debug)]
pub enum ExtPoint {
    Finite(BigComplex),
    Infinity,
}

impl ExtPoint {
    pub fn finite(&self) -> Option<&BigComplex> {
        match self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }
}

impl PartialEq for ExtPoint {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Infinity, Self::Infinity) => true,
            (Self::Finite(a), Self::Finite(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RatFun {
    num: RatPoly,
    den: RatPoly,
}

impl RatFun {
    /// Build `num / den`, removing the monic gcd of the two.
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::OutOfRange("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: RatPoly::one(),
            });
        }
        let g = poly_gcd(&num, &den);
        if g.is_constant() {
            return Ok(Self { num, den });
        }
        Ok(Self {
            num: num.exact_div(&g).expect("gcd divides numerator"),
            den: den.exact_div(&g).expect("gcd divides denominator"),
        })
    }

    pub fn polynomial(p: RatPoly) -> Self {
        Self {
            num: p,
            den: RatPoly::one(),
        }
    }

    pub fn identity() -> Self {
        Self::polynomial(RatPoly::var())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::polynomial(RatPoly::constant(c))
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    fn deg_or_zero(p: &RatPoly) -> usize {
        p.degree().unwrap_or(0)
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        Self::deg_or_zero(&self.num).max(Self::deg_or_zero(&self.den))
    }

    /// Difference degree `deg num - deg den`; the zero function counts as 0.
    pub fn ddeg(&self) -> i64 {
        Self::deg_or_zero(&self.num) as i64 - Self::deg_or_zero(&self.den) as i64
    }

    pub fn is_reduced(&self) -> bool {
        poly_gcd(&self.num, &self.den).is_constant()
    }

    /// `self(inner(z))` as `p(u/v) v^N / q(u/v) v^N` with `N = degree(self)`,
    /// followed by a gcd pass. The flag reports whether that pass removed
    /// anything; for two difference-degree-one inputs it never does.
    pub fn compose_checked(&self, inner: &RatFun) -> (RatFun, bool) {
        let n = self.degree();
        let integral = [&self.num, &self.den, &inner.num, &inner.den]
            .iter()
            .all(|p| p.coeffs().iter().all(|c| c.is_integer()));
        let (num, den) = if integral {
            // same formula over Z, which skips per-coefficient normalization
            let z = |p: &RatPoly| p.map(|c| c.to_integer());
            let (u, v) = (z(&inner.num), z(&inner.den));
            let vpow = powers(&v, n);
            let back = |p: UniPoly<BigInt>| p.map(|c| ExactRational::from_integer(c.clone()));
            (
                back(homogenize(&z(&self.num), &u, &vpow, n)),
                back(homogenize(&z(&self.den), &u, &vpow, n)),
            )
        } else {
            let vpow = powers(&inner.den, n);
            (
                homogenize(&self.num, &inner.num, &vpow, n),
                homogenize(&self.den, &inner.num, &vpow, n),
            )
        };
        if num.is_zero() {
            return (RatFun { num, den: RatPoly::one() }, true);
        }
        let g = poly_gcd(&num, &den);
        if g.is_constant() {
            return (RatFun { num, den }, true);
        }
        (
            RatFun {
                num: num.exact_div(&g).expect("gcd divides"),
                den: den.exact_div(&g).expect("gcd divides"),
            },
            false,
        )
    }

    pub fn compose(&self, inner: &RatFun) -> RatFun {
        self.compose_checked(inner).0
    }

    /// `n`-fold self-composition, built as `f ∘ f^(n-1)`.
    pub fn iterate(&self, n: usize) -> RatFun {
        assert!(n >= 1, "iterate needs n >= 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn derivative(&self) -> RatFun {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RatFun::new(num, den).expect("nonzero denominator")
    }

    /// `1 / f(1/w)`: the map read in the chart at infinity on both sides.
    pub fn conjugate_by_inversion(&self) -> RatFun {
        let d = self.degree();
        let reversed = |p: &RatPoly| -> RatPoly {
            let mut c = vec![ExactRational::zero(); d + 1];
            for (k, a) in p.coeffs().iter().enumerate() {
                c[d - k] = a.clone();
            }
            RatPoly::from_coeffs(c)
        };
        RatFun::new(reversed(&self.den), reversed(&self.num)).expect("nonzero numerator")
    }

    /// Exact evaluation on the sphere.
    pub fn eval_exact(&self, x: &ExtRational) -> Result<ExtRational> {
        match x {
            ExtRational::Infinity => Ok(self.value_at_infinity()),
            ExtRational::Finite(q) => {
                let n = self.num.eval(q);
                let d = self.den.eval(q);
                match (n.is_zero(), d.is_zero()) {
                    (true, true) => Err(Error::Indeterminate),
                    (false, true) => Ok(ExtRational::Infinity),
                    _ => Ok(ExtRational::Finite(n / d)),
                }
            }
        }
    }

    fn value_at_infinity(&self) -> ExtRational {
        if self.num.is_zero() {
            return ExtRational::Finite(ExactRational::zero());
        }
        match self.ddeg() {
            k if k > 0 => ExtRational::Infinity,
            0 => ExtRational::Finite(
                self.num.leading().unwrap() / self.den.leading().unwrap(),
            ),
            _ => ExtRational::Finite(ExactRational::zero()),
        }
    }

    /// Evaluation at a residue class; fails if the denominator is a zero
    /// divisor there.
    pub fn eval_quot(&self, x: &QuotElem) -> Result<QuotElem> {
        let m = x.modulus();
        let n = m.eval_poly(&self.num, x)?;
        let d = m.eval_poly(&self.den, x)?;
        n.try_mul(&d.invert()?)
    }

    /// Numerical evaluation at `prec` bits. A finite point is a pole when
    /// the denominator is below `2^(-prec/2)` relative to the size of its
    /// terms while the numerator is not.
    pub fn eval_ext(&self, x: &ExtPoint, prec: usize) -> Result<ExtPoint> {
        let z = match x {
            ExtPoint::Infinity => {
                return Ok(match self.value_at_infinity() {
                    ExtRational::Infinity => ExtPoint::Infinity,
                    ExtRational::Finite(q) => ExtPoint::Finite(BigComplex::from_rational(&q, prec)),
                });
            }
            ExtPoint::Finite(z) => z,
        };
        let (n, n_scale) = eval_with_scale(&self.num, z, prec);
        let (d, d_scale) = eval_with_scale(&self.den, z, prec);
        let thresh = -(prec as f64) / 2.0;
        let small = |v: &BigComplex, scale: f64| v.log2_abs() - scale.max(f64::MIN) <= thresh;
        match (small(&n, n_scale), small(&d, d_scale)) {
            (true, true) => Err(Error::Indeterminate),
            (false, true) => Ok(ExtPoint::Infinity),
            _ => Ok(ExtPoint::Finite(n.div(&d))),
        }
    }

    pub fn to_text(&self, var: &str) -> String {
        format!("{} / {}", format_poly(&self.num, var), format_poly(&self.den, var))
    }

    /// Inverse of [`RatFun::to_text`]; the separator is ` / ` with spaces, so
    /// rational coefficients like `3456/7` are unaffected.
    pub fn parse(s: &str) -> Result<RatFun> {
        match s.split_once(" / ") {
            Some((n, d)) => {
                let strip = |t: &str| {
                    let t = t.trim();
                    t.strip_prefix('(')
                        .and_then(|t| t.strip_suffix(')'))
                        .unwrap_or(t)
                        .to_string()
                };
                RatFun::new(parse_poly(&strip(n))?, parse_poly(&strip(d))?)
            }
            None => Ok(RatFun::polynomial(parse_poly(s)?)),
        }
    }
}

fn powers<R: crate::exact::Unital>(v: &UniPoly<R>, n: usize) -> Vec<UniPoly<R>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(UniPoly::one());
    for k in 1..=n {
        let next = &out[k - 1] * v;
        out.push(next);
    }
    out
}

/// `sum p_k u^k v^(n-k)` by Horner in `u`.
fn homogenize<R: crate::exact::Unital>(p: &UniPoly<R>, u: &UniPoly<R>, vpow: &[UniPoly<R>], n: usize) -> UniPoly<R> {
    let mut acc = UniPoly::constant(p.coeff(n).cloned().unwrap_or_else(R::zero));
    for k in (0..n).rev() {
        acc = &acc * u;
        if let Some(c) = p.coeff(k).filter(|c| !c.is_zero()) {
            acc = &acc + &vpow[n - k].scale(c);
        }
    }
    acc
}

/// Horner value together with `log2 sum |a_k| |z|^k`.
fn eval_with_scale(p: &RatPoly, z: &BigComplex, prec: usize) -> (BigComplex, f64) {
    let mut acc = BigComplex::zero(prec);
    let mut scale = crate::numeric::bigfloat::float_from_int(0, prec);
    let absz = z.abs();
    for c in p.coeffs().iter().rev() {
        let cf = BigComplex::from_rational(c, prec);
        acc = acc.mul(z).add(&cf);
        scale = &(&scale * &absz) + &cf.abs();
    }
    (acc, log2_abs(&scale))
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &self.den * &other.num
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn h() -> RatFun {
        RatFun::new(RatPoly::from_ints(&[6912, -1]).pow(3), RatPoly::from_ints(&[0, 0, 27])).unwrap()
    }

    #[test]
    fn degrees_of_h() {
        assert_eq!(h().degree(), 3);
        assert_eq!(h().ddeg(), 1);
        let c = RatFun::constant(int(5));
        assert_eq!((c.degree(), c.ddeg()), (0, 0));
    }

    #[test]
    fn compose_with_identity() {
        assert_eq!(h().compose(&RatFun::identity()), h());
        assert_eq!(RatFun::identity().compose(&h()), h());
    }

    #[test]
    fn second_iterate_matches_closed_form() {
        let h2 = h().iterate(2);
        let inner = RatPoly::from_ints(&[-330225942528, 143327232, 165888, 1]);
        let num = inner.pow(3);
        let den = &(&RatPoly::from_ints(&[-6912, 1]).pow(6) * &RatPoly::from_ints(&[0, 0, 1]))
            .scale(&int(729));
        assert_eq!(h2, RatFun::new(num.clone(), den.clone()).unwrap());
        // same representation, not only the same function
        assert_eq!(h2.num(), &num);
        assert_eq!(h2.den(), den);
        let (_, clean) = h().compose_checked(&h());
        assert!(clean);
    }

    #[test]
    fn derivative_of_h() {
        let expected = RatFun::new(
            -(&RatPoly::from_ints(&[6912, -1]).pow(2) * &RatPoly::from_ints(&[13824, 1])),
            RatPoly::from_ints(&[0, 0, 0, 27]),
        )
        .unwrap();
        assert_eq!(h().derivative(), expected);
        assert!(RatFun::constant(int(3)).derivative().num().is_zero());
    }

    #[test]
    fn chain_rule() {
        let lhs = h().iterate(2).derivative();
        let dh = h().derivative();
        let rhs_num = &dh.compose(&h()).num().clone() * dh.num();
        let rhs_den = &dh.compose(&h()).den().clone() * dh.den();
        assert_eq!(lhs, RatFun::new(rhs_num, rhs_den).unwrap());
    }

    #[test]
    fn exact_special_values() {
        let f = h();
        let zero = ExtRational::Finite(int(0));
        assert_eq!(f.eval_exact(&zero).unwrap(), ExtRational::Infinity);
        assert_eq!(f.eval_exact(&ExtRational::Infinity).unwrap(), ExtRational::Infinity);
        assert_eq!(f.eval_exact(&int(6912).into()).unwrap(), int(0).into());
        assert_eq!(f.eval_exact(&int(1728).into()).unwrap(), int(1728).into());
    }

    #[test]
    fn numeric_special_values() {
        let f = h();
        let at = |q: ExactRational| ExtPoint::Finite(BigComplex::from_rational(&q, 256));
        assert!(f.eval_ext(&at(int(0)), 256).unwrap().is_infinite());
        assert!(f.eval_ext(&ExtPoint::Infinity, 256).unwrap().is_infinite());
        let v = f.eval_ext(&at(int(6912)), 256).unwrap();
        assert!(v.finite().unwrap().is_zero());
        let w = f.eval_ext(&at(rat(1, 3)), 256).unwrap();
        let exact = f.eval_exact(&rat(1, 3).into()).unwrap();
        assert!(w
            .finite()
            .unwrap()
            .close_to(&BigComplex::from_rational(exact.finite().unwrap(), 256), -240.0));
    }

    #[test]
    fn unreduced_input_is_reduced() {
        let f = RatFun::new(RatPoly::from_ints(&[-1, 0, 1]), RatPoly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(f.den(), &RatPoly::one());
        assert_eq!(f.num(), &RatPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn text_roundtrip() {
        let s = h().to_text("z");
        assert_eq!(s, "-z^3 + 20736*z^2 - 143327232*z + 330225942528 / 27*z^2");
        let back = RatFun::parse(&s).unwrap();
        assert_eq!(back.to_text("z"), s);
    }

    #[test]
    fn chart_at_infinity() {
        // 1/H(1/w) = 27 w / (6912 w - 1)^3, derivative -27 at 0
        let g = h().conjugate_by_inversion();
        let dg = g.derivative().eval_exact(&int(0).into()).unwrap();
        assert_eq!(dg, int(-27).into());
    }
}

use std::fmt;
use std::sync::Arc;

use super::gcd::ext_gcd;
use super::ring::{Field, Ring, Unital};
use super::{ExactRational, RatPoly};
use crate::error::{Error, Result};

/// A monic modulus `m(t)` of degree at least one, shared by reference
/// between all residues built from it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modulus(Arc<RatPoly>);

impl Modulus {
    pub fn new(m: &RatPoly) -> Result<Self> {
        match m.degree() {
            Some(d) if d >= 1 => Ok(Self(Arc::new(m.monic()))),
            _ => Err(Error::InvalidModulus(
                "modulus must have degree at least 1".into(),
            )),
        }
    }

    pub fn poly(&self) -> &RatPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("modulus is nonzero")
    }

    fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub fn elem(&self, rep: &RatPoly) -> QuotElem {
        QuotElem::new(rep.clone(), self.clone())
    }

    /// Class of the generator `t`.
    pub fn generator(&self) -> QuotElem {
        self.elem(&RatPoly::var())
    }

    pub fn constant(&self, c: ExactRational) -> QuotElem {
        self.elem(&RatPoly::constant(c))
    }

    /// `p(x)` for a rational polynomial `p` and a residue `x`.
    pub fn eval_poly(&self, p: &RatPoly, x: &QuotElem) -> Result<QuotElem> {
        let mut acc = self.constant(<ExactRational as Unital>::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.try_mul(x)?.try_add(&self.constant(c.clone()))?;
        }
        Ok(acc)
    }
}

/// Residue class in `Q[t]/(m)` with representative of degree `< deg m`.
#[derive(Clone, Debug)]
pub struct QuotElem {
    rep: RatPoly,
    modulus: Modulus,
}

impl QuotElem {
    pub fn new(rep: RatPoly, modulus: Modulus) -> Self {
        let rep = rep.rem(modulus.poly()).expect("monic modulus");
        Self { rep, modulus }
    }

    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus.same(&other.modulus) {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            rep: &self.rep + &other.rep,
            modulus: self.modulus.clone(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            rep: &self.rep - &other.rep,
            modulus: self.modulus.clone(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(&self.rep * &other.rep, self.modulus.clone()))
    }

    /// Inverse via extended gcd with the modulus. A non-constant gcd is
    /// returned inside the error so the caller can split the modulus.
    pub fn invert(&self) -> Result<Self> {
        let (g, s, _) = ext_gcd(&self.rep, self.modulus.poly());
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible { gcd: g });
        }
        Ok(Self::new(s, self.modulus.clone()))
    }
}

impl PartialEq for QuotElem {
    fn eq(&self, other: &Self) -> bool {
        self.modulus.same(&other.modulus) && self.rep == other.rep
    }
}

impl fmt::Display for QuotElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod ({})",
            super::format_poly(&self.rep, "t"),
            super::format_poly(self.modulus.poly(), "t")
        )
    }
}

// The ring interface panics on mismatched moduli; the fallible `try_*`
// methods are the checked entry points.
impl Ring for QuotElem {
    fn zero_like(&self) -> Self {
        Self {
            rep: RatPoly::zero(),
            modulus: self.modulus.clone(),
        }
    }
    fn one_like(&self) -> Self {
        self.modulus.constant(<ExactRational as Unital>::one())
    }
    fn int_like(&self, n: i64) -> Self {
        self.modulus.constant(ExactRational::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("same modulus")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("same modulus")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("same modulus")
    }
    fn neg(&self) -> Self {
        Self {
            rep: -&self.rep,
            modulus: self.modulus.clone(),
        }
    }
    fn mul_int(&self, n: i64) -> Self {
        Self {
            rep: self.rep.scale(&ExactRational::from_int(n)),
            modulus: self.modulus.clone(),
        }
    }
}

impl Field for QuotElem {
    fn try_inv(&self) -> Option<Self> {
        self.invert().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m6() -> Modulus {
        Modulus::new(&RatPoly::from_ints(&[-8, 0, 0, -20, 0, 0, 1])).unwrap()
    }

    #[test]
    fn t_times_t5_reduces() {
        let m = m6();
        let t = m.generator();
        let t5 = m.elem(&RatPoly::monomial(<ExactRational as Unital>::one(), 5));
        assert_eq!(t.mul(&t5).rep(), &RatPoly::from_ints(&[8, 0, 0, 20]));
    }

    #[test]
    fn t3_squared_reduces_twice() {
        // t^6 = 20 t^3 + 8
        let m = m6();
        let t3 = m.elem(&RatPoly::monomial(<ExactRational as Unital>::one(), 3));
        assert_eq!(t3.mul(&t3).rep(), &RatPoly::from_ints(&[8, 0, 0, 20]));
        let t9 = t3.mul(&t3).mul(&t3);
        // t^9 = 20 t^6 + 8 t^3 = 20(20 t^3 + 8) + 8 t^3 = 408 t^3 + 160
        assert_eq!(t9.rep(), &RatPoly::from_ints(&[160, 0, 0, 408]));
    }

    #[test]
    fn inverse_of_t() {
        let m = m6();
        let t = m.generator();
        let inv = t.invert().unwrap();
        assert_eq!(t.mul(&inv), t.one_like());
        let one = t.one_like();
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn zero_divisor_reports_gcd() {
        let m = Modulus::new(&RatPoly::from_ints(&[-1, 0, 1])).unwrap();
        let x = m.elem(&RatPoly::from_ints(&[-1, 1]));
        match x.invert() {
            Err(Error::NotInvertible { gcd }) => assert_eq!(gcd, RatPoly::from_ints(&[-1, 1])),
            other => panic!("expected NotInvertible, got {other:?}"),
        }
    }

    #[test]
    fn mismatched_moduli() {
        let a = m6().generator();
        let b = Modulus::new(&RatPoly::from_ints(&[3, 0, 1]))
            .unwrap()
            .generator();
        assert!(matches!(a.try_add(&b), Err(Error::ModulusMismatch)));
        assert_eq!(a.try_add(&a.zero_like()).unwrap(), a);
    }
}

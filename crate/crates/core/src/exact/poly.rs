use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{Field, Ring, Unital};

/// Dense univariate polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * var^k`
    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Option<&R> {
        self.coeffs.get(k)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_int(k as i64))
                .collect(),
        )
    }

    /// Repeated squaring. The zero polynomial has no coefficient to take a
    /// unit from, so `zero.pow(0)` is returned as zero.
    pub fn pow(&self, mut e: u32) -> Self {
        let Some(first) = self.coeffs.first() else {
            return Self::zero();
        };
        let mut acc = Self::constant(first.one_like());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `var -> inner`, i.e. `self(inner(var))`.
    pub fn compose_poly(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// Coefficient-wise map into another ring.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Unital> UniPoly<R> {
    pub fn one() -> Self {
        Self::constant(R::one())
    }

    /// The polynomial variable itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| R::from_int(c)).collect())
    }
}

impl<R: Field> UniPoly<R> {
    /// Euclidean division; `None` when the divisor is zero or its leading
    /// coefficient is not invertible.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let d_deg = divisor.degree()?;
        let lead_inv = divisor.leading()?.try_inv()?;
        let Some(n_deg) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if n_deg < d_deg {
            return Some((Self::zero(), self.clone()));
        }
        let zero = lead_inv.zero_like();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![zero.clone(); n_deg - d_deg + 1];
        for k in (0..=n_deg - d_deg).rev() {
            let top = &rem[k + d_deg];
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&lead_inv);
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&q.mul(dc));
            }
            // exact cancellation of the leading term
            rem[k + d_deg] = zero.clone();
            quot[k] = q;
        }
        rem.truncate(d_deg);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Option<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading().and_then(Field::try_inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Quotient when `divisor` is known to divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }
}

impl<R: Ring> Add for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn add(self, rhs: Self) -> UniPoly<R> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add(s);
        }
        UniPoly::from_coeffs(out)
    }
}

impl<R: Ring> Sub for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn sub(self, rhs: Self) -> UniPoly<R> {
        self + &(-rhs)
    }
}

impl<R: Ring> Neg for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        UniPoly {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }
}

impl<R: Ring> Mul for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn mul(self, rhs: Self) -> UniPoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for UniPoly<R> {
            type Output = UniPoly<R>;
            fn $m(self, rhs: Self) -> UniPoly<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> Neg for UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        -&self
    }
}

/// Polynomials over a context-free ring form a ring themselves; this is how
/// `Q[a][b]` is built for the symbolic Weierstrass computations.
impl<R: Unital> Ring for UniPoly<R> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn int_like(&self, n: i64) -> Self {
        Self::constant(R::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_int(&self, n: i64) -> Self {
        self.scale(&R::from_int(n))
    }
}

impl<R: Unital> Unital for UniPoly<R> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn from_int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }
}

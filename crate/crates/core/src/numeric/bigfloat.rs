//! Binary floating point with a per-value working precision, and complex
//! numbers built on it. Exponents are unbounded, which matters here: the
//! periodic-point polynomials have coefficients far outside `f64` range.

use std::fmt;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_base::{BitTest, UnsignedAbs};
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};

use crate::exact::ExactRational;

pub type Float = FBig<HalfEven, 2>;

pub fn bigint_to_ibig(b: &BigInt) -> IBig {
    let (sign, bytes) = b.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

pub fn float_from_int(n: i64, prec: usize) -> Float {
    Float::from(n).with_precision(prec).value()
}

pub fn float_from_f64(x: f64, prec: usize) -> Float {
    Float::try_from(x)
        .expect("finite f64")
        .with_precision(prec)
        .value()
}

pub fn float_from_rational(q: &ExactRational, prec: usize) -> Float {
    let n = Float::from(bigint_to_ibig(q.numer()))
        .with_precision(prec)
        .value();
    let d = Float::from(bigint_to_ibig(q.denom()))
        .with_precision(prec)
        .value();
    n / d
}

/// `2^k` at the given precision.
pub fn pow2(k: isize, prec: usize) -> Float {
    Float::from_parts(IBig::from(1), k).with_precision(prec).value()
}

/// `log2 |x|`, `-inf` for zero. Accurate to about `f64` precision.
pub fn log2_abs(x: &Float) -> f64 {
    let repr = x.repr();
    let sig = repr.significand().unsigned_abs();
    if sig == UBig::ZERO {
        return f64::NEG_INFINITY;
    }
    let bits = sig.bit_len();
    let keep = 60usize;
    let (top, shift) = if bits > keep {
        (&sig >> (bits - keep), (bits - keep) as f64)
    } else {
        (sig.clone(), 0.0)
    };
    let top: u64 = top.try_into().expect("at most 60 bits");
    (top as f64).log2() + shift + repr.exponent() as f64
}

pub fn to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

/// Real cube root by Newton iteration from an `f64` seed.
pub fn cbrt(a: &Float, prec: usize) -> Float {
    let seed = to_f64(a).cbrt();
    let mut y = float_from_f64(seed, prec);
    let three = float_from_int(3, prec);
    for _ in 0..(prec / 16 + 8) {
        let y2 = &y * &y;
        let next = &y - &((&(&y2 * &y) - a) / (&three * &y2));
        if next == y {
            break;
        }
        y = next;
    }
    y
}

/// Decimal rendering with about `prec * log10(2)` significant digits.
pub fn to_decimal_string(x: &Float) -> String {
    let digits = ((x.precision() as f64) * std::f64::consts::LOG10_2).ceil() as usize;
    let dec = x.to_decimal().value();
    dec.with_precision(digits.max(1)).value().to_string()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(float_from_int(0, prec), float_from_int(0, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Self::new(float_from_f64(re, prec), float_from_f64(im, prec))
    }

    pub fn from_rational(q: &ExactRational, prec: usize) -> Self {
        Self::new(float_from_rational(q, prec), float_from_int(0, prec))
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn scale(&self, s: &Float) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.re == Float::ZERO && self.im == Float::ZERO
    }

    /// Division; the caller guarantees a nonzero divisor.
    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let n = self.mul(&o.conj());
        Self::new(&n.re / &d, &n.im / &d)
    }

    pub fn log2_abs(&self) -> f64 {
        let a = log2_abs(&self.re);
        let b = log2_abs(&self.im);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2.0f64).powf(2.0 * (lo - hi))).log2()
    }

    pub fn mul_pow2(&self, k: isize) -> Self {
        let s = pow2(k, self.precision());
        self.scale(&s)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    /// `|self - other| <= 2^log2_tol * max(|self|, |other|, 1)`
    pub fn close_to(&self, other: &Self, log2_tol: f64) -> bool {
        let d = self.sub(other).log2_abs();
        let scale = self.log2_abs().max(other.log2_abs()).max(0.0);
        d <= scale + log2_tol
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        if im >= 0.0 {
            write!(f, "{re:.6e} + {im:.6e}i")
        } else {
            write!(f, "{re:.6e} - {:.6e}i", -im)
        }
    }
}

//! Aberth-Ehrlich simultaneous root iteration.
//!
//! The iteration only needs the Newton correction `p(z)/p'(z)` at each
//! approximation, supplied by a [`NewtonTarget`]. That lets callers evaluate
//! the correction along whatever route is numerically best (Horner on the
//! coefficients, or a recurrence that never expands the polynomial).

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::bigfloat::BigComplex;
use crate::exact::RatPoly;

/// Complex scalar the iteration can run on.
pub trait Scalar: Clone + Send + Sync {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// A constant of the same kind (and precision) as `self`.
    fn constant(&self, re: f64, im: f64) -> Self;
    fn log2_abs(&self) -> f64;
    fn mul_pow2(&self, k: i32) -> Self;
}

impl Scalar for Complex64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn constant(&self, re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn log2_abs(&self) -> f64 {
        self.norm().log2()
    }
    fn mul_pow2(&self, k: i32) -> Self {
        self * 2f64.powi(k)
    }
}

impl Scalar for BigComplex {
    fn add(&self, o: &Self) -> Self {
        BigComplex::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BigComplex::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BigComplex::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        BigComplex::div(self, o)
    }
    fn constant(&self, re: f64, im: f64) -> Self {
        BigComplex::from_f64(re, im, self.precision())
    }
    fn log2_abs(&self) -> f64 {
        BigComplex::log2_abs(self)
    }
    fn mul_pow2(&self, k: i32) -> Self {
        BigComplex::mul_pow2(self, k as isize)
    }
}

pub trait NewtonTarget<C: Scalar>: Sync {
    fn degree(&self) -> usize;
    /// `p(z) / p'(z)`, or `None` where `p'` vanishes.
    fn newton_ratio(&self, z: &C) -> Option<C>;
}

/// Horner evaluation of explicit coefficients (lowest degree first).
pub struct HornerTarget<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> HornerTarget<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(coeffs.len() >= 2, "need a nonconstant polynomial");
        Self { coeffs }
    }
}

impl<C: Scalar> NewtonTarget<C> for HornerTarget<C> {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn newton_ratio(&self, z: &C) -> Option<C> {
        let mut p = self.coeffs.last().unwrap().clone();
        let mut dp = z.constant(0.0, 0.0);
        for c in self.coeffs.iter().rev().skip(1) {
            dp = dp.mul(z).add(&p);
            p = p.mul(z).add(c);
        }
        if dp.log2_abs() == f64::NEG_INFINITY {
            return None;
        }
        Some(p.div(&dp))
    }
}

/// `f64` coefficients of a rational polynomial, all scaled by a common power
/// of two so the largest has magnitude near one. Roots are unchanged.
pub fn scaled_f64_coeffs(p: &RatPoly) -> Vec<Complex64> {
    let logs: Vec<f64> = p.coeffs().iter().map(rational_log2_abs).collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    p.coeffs()
        .iter()
        .zip(&logs)
        .map(|(c, &l)| {
            if l == f64::NEG_INFINITY || l - top < -1000.0 {
                return Complex64::new(0.0, 0.0);
            }
            let sign = if c.numer().sign() == num_bigint::Sign::Minus {
                -1.0
            } else {
                1.0
            };
            Complex64::new(sign * (l - top).exp2(), 0.0)
        })
        .collect()
}

/// `log2 |q|` from the leading bits of numerator and denominator.
pub fn rational_log2_abs(q: &crate::exact::ExactRational) -> f64 {
    fn big_log2(b: &num_bigint::BigInt) -> f64 {
        let bits = b.bits();
        if bits == 0 {
            return f64::NEG_INFINITY;
        }
        let shift = bits.saturating_sub(60);
        let top: num_bigint::BigUint = b.magnitude() >> shift;
        let top: u64 = top.try_into().expect("at most 60 bits");
        (top as f64).log2() + shift as f64
    }
    big_log2(q.numer()) - big_log2(q.denom())
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(k, log2 |a_k|)`, so that each annulus gets as many points as the
/// polynomial has roots of that size.
pub fn initial_guesses(p: &RatPoly) -> Vec<Complex64> {
    let deg = p.degree().expect("nonzero polynomial");
    let pts: Vec<(usize, f64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| (k, rational_log2_abs(c)))
        .filter(|(_, l)| l.is_finite())
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (k1, l1) = hull[hull.len() - 2];
            let (k2, l2) = hull[hull.len() - 1];
            // drop the middle point if it lies on or below the chord
            let cross = (k2 as f64 - k1 as f64) * (pt.1 - l1) - (l2 - l1) * (pt.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(deg);
    // zero roots from vanishing low coefficients
    let low = hull[0].0;
    for _ in 0..low {
        out.push(Complex64::new(0.0, 0.0));
    }
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (k1, l1) = w[0];
        let (k2, l2) = w[1];
        let m = k2 - k1;
        let radius = ((l1 - l2) / m as f64).exp2();
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 / m as f64)
                + 2.0 * std::f64::consts::PI * (k1 as f64 / deg as f64)
                + sigma;
            out.push(Complex64::from_polar(radius, theta));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct AberthOutcome<C> {
    pub roots: Vec<C>,
    pub converged: bool,
    pub iterations: usize,
}

/// Jacobi-style Aberth sweeps: each sweep reads the previous approximations
/// only, so the result is independent of evaluation order.
pub fn aberth<C: Scalar, T: NewtonTarget<C>>(
    target: &T,
    start: Vec<C>,
    max_iter: usize,
    tol_bits: f64,
) -> AberthOutcome<C> {
    let n = start.len();
    let mut roots = start;
    let mut done = vec![false; n];
    for it in 0..max_iter {
        let step = |i: usize| -> Option<C> {
            if done[i] {
                return None;
            }
            let z = &roots[i];
            let ratio = target.newton_ratio(z)?;
            let mut sum = z.constant(0.0, 0.0);
            for (j, w) in roots.iter().enumerate() {
                if j != i {
                    let d = z.sub(w);
                    if d.log2_abs() == f64::NEG_INFINITY {
                        continue;
                    }
                    sum = sum.add(&z.constant(1.0, 0.0).div(&d));
                }
            }
            let denom = z.constant(1.0, 0.0).sub(&ratio.mul(&sum));
            Some(ratio.div(&denom))
        };
        #[cfg(feature = "parallel")]
        let steps: Vec<Option<C>> = (0..n).into_par_iter().map(step).collect();
        #[cfg(not(feature = "parallel"))]
        let steps: Vec<Option<C>> = (0..n).map(step).collect();

        let mut all_done = true;
        for (i, s) in steps.into_iter().enumerate() {
            if let Some(w) = s {
                let scale = roots[i].log2_abs().max(-60.0);
                let lw = w.log2_abs();
                roots[i] = roots[i].sub(&w);
                if !(lw.is_finite()) || lw <= scale - tol_bits {
                    done[i] = lw.is_finite() || lw == f64::NEG_INFINITY;
                }
            }
            all_done &= done[i];
        }
        if all_done {
            return AberthOutcome {
                roots,
                converged: true,
                iterations: it + 1,
            };
        }
    }
    AberthOutcome {
        roots,
        converged: false,
        iterations: max_iter,
    }
}

/// Plain Newton refinement of a single approximation.
pub fn newton_polish<C: Scalar, T: NewtonTarget<C>>(
    target: &T,
    mut z: C,
    max_iter: usize,
    tol_bits: f64,
) -> C {
    for _ in 0..max_iter {
        let Some(w) = target.newton_ratio(&z) else {
            break;
        };
        let lw = w.log2_abs();
        z = z.sub(&w);
        if lw == f64::NEG_INFINITY || lw <= z.log2_abs().max(-60.0) - tol_bits {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RatPoly;

    #[test]
    fn roots_of_unity_shifted() {
        // (z^3 - 8)(z + 1000)
        let p = &RatPoly::from_ints(&[-8, 0, 0, 1]) * &RatPoly::from_ints(&[1000, 1]);
        let target = HornerTarget::new(scaled_f64_coeffs(&p));
        let out = aberth(&target, initial_guesses(&p), 500, 48.0);
        assert!(out.converged);
        let mut mags: Vec<f64> = out.roots.iter().map(|z| z.norm()).collect();
        mags.sort_by(f64::total_cmp);
        assert!((mags[0] - 2.0).abs() < 1e-10);
        assert!((mags[3] - 1000.0).abs() < 1e-8);
    }

    #[test]
    fn big_precision_polish() {
        let p = RatPoly::from_ints(&[-2, 0, 1]);
        let coeffs: Vec<BigComplex> = p
            .coeffs()
            .iter()
            .map(|c| BigComplex::from_rational(c, 256))
            .collect();
        let target = HornerTarget::new(coeffs);
        let z = newton_polish(&target, BigComplex::from_f64(1.4, 0.0, 256), 50, 250.0);
        let sq = z.mul(&z);
        assert!(sq.close_to(&BigComplex::from_f64(2.0, 0.0, 256), -245.0));
    }
}

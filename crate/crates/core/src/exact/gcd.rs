//! Polynomial gcd over `Q`.
//!
//! Inputs are cleared to primitive integer polynomials. Coprimality is first
//! tested modulo a few word-size primes that divide neither leading
//! coefficient: the degree of the gcd modulo such a prime bounds the degree
//! of the rational gcd from above, so a constant modular gcd is a proof. When
//! no prime certifies coprimality the primitive pseudo-remainder sequence
//! (fraction-free Euclid with content stripping) computes the gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::Field;
use super::{ExactRational, RatPoly, UniPoly};

const PRIMES: [u64; 5] = [
    2_305_843_009_213_693_951, // 2^61 - 1
    4_611_686_018_427_387_847, // 2^62 - 57
    9_223_372_036_854_775_783, // 2^63 - 25
    1_000_000_007,
    998_244_353,
];

/// Scale a rational polynomial to integer coefficients. Returns the integer
/// coefficients and the positive factor that was applied.
pub fn to_integer_poly(p: &RatPoly) -> (Vec<BigInt>, BigInt) {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    (coeffs, lcm)
}

/// Content-free integer polynomial with positive leading coefficient.
pub fn primitive_part(coeffs: &[BigInt]) -> Vec<BigInt> {
    let content = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return Vec::new();
    }
    let sign = if coeffs.last().is_some_and(Signed::is_negative) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let content = content * sign;
    coeffs.iter().map(|c| c / &content).collect()
}

fn int_poly_to_rat(coeffs: &[BigInt]) -> RatPoly {
    UniPoly::from_coeffs(
        coeffs
            .iter()
            .map(|c| ExactRational::from_integer(c.clone()))
            .collect(),
    )
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` (`lc(b)^k * a mod b`), both nonzero.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn prs_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() {
        (primitive_part(a), primitive_part(b))
    } else {
        (primitive_part(b), primitive_part(a))
    };
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(&r);
    }
    a
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn reduce_mod(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = coeffs
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64"))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Degree of gcd over `F_p`; `None` if both inputs vanish.
fn gcd_degree_mod(a: &[BigInt], b: &[BigInt], p: u64) -> Option<usize> {
    let mut a = reduce_mod(a, p);
    let mut b = reduce_mod(b, p);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let q = mul_mod(*a.last().unwrap(), inv, p);
            for (i, bc) in b.iter().enumerate() {
                let sub = mul_mod(q, *bc, p);
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().checked_sub(1)
}

fn modular_coprime(a: &[BigInt], b: &[BigInt]) -> bool {
    for &p in &PRIMES {
        let pb = BigInt::from(p);
        let la = a.last().unwrap();
        let lb = b.last().unwrap();
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        if gcd_degree_mod(a, b, p) == Some(0) {
            return true;
        }
    }
    false
}

/// Monic greatest common divisor over `Q`.
///
/// If one input is zero the monic normalization of the other is returned;
/// zero is returned only when both inputs are zero.
pub fn poly_gcd(f: &RatPoly, g: &RatPoly) -> RatPoly {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return RatPoly::zero(),
        (true, false) => return g.monic(),
        (false, true) => return f.monic(),
        _ => {}
    }
    if f.is_constant() || g.is_constant() {
        return RatPoly::one();
    }
    let (fi, _) = to_integer_poly(f);
    let (gi, _) = to_integer_poly(g);
    if modular_coprime(&fi, &gi) {
        return RatPoly::one();
    }
    int_poly_to_rat(&prs_gcd(&fi, &gi)).monic()
}

/// Extended Euclid over a field: returns `(g, s, t)` with `s*a + t*b = g`
/// and `g` monic (zero only if both inputs are zero).
pub fn ext_gcd<F: Field>(
    a: &UniPoly<F>,
    b: &UniPoly<F>,
) -> (UniPoly<F>, UniPoly<F>, UniPoly<F>) {
    let unit = a
        .leading()
        .or(b.leading())
        .map(|c| UniPoly::constant(c.one_like()));
    let Some(one) = unit else {
        return (UniPoly::zero(), UniPoly::zero(), UniPoly::zero());
    };
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), one);
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor over a field");
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = r0
        .leading()
        .and_then(Field::try_inv)
        .expect("leading coefficient of a field polynomial is invertible");
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

/// Yun's square-free decomposition: `p = c * prod f_i^i` with `f_i` monic,
/// square-free and pairwise coprime. Factors equal to one are omitted.
pub fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let mut a = poly_gcd(&p, &dp);
    let mut b = p.exact_div(&a).expect("gcd divides p");
    let mut c = dp.exact_div(&a).expect("gcd divides p'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        a = poly_gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides b");
        c = d.exact_div(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Rational roots with multiplicities, plus the cofactor left after
/// dividing all of them out.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalRoots {
    pub roots: Vec<(ExactRational, u32)>,
    pub residual: RatPoly,
}

pub fn rational_roots(p: &RatPoly) -> RationalRoots {
    let mut roots = Vec::new();
    let mut residual = p.clone();
    for (factor, mult) in squarefree_decomposition(p) {
        for r in squarefree_rational_roots(&factor) {
            let lin = RatPoly::from_coeffs(vec![-r.clone(), ExactRational::one()]);
            for _ in 0..mult {
                residual = residual.exact_div(&lin).expect("verified root divides");
            }
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    RationalRoots { roots, residual }
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn sign_variations(chain: &[RatPoly], x: &ExactRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| {
            let v = q.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Real roots isolated with Sturm sequences and bisected until each
/// isolating interval is shorter than `1/lc`; a rational root of the
/// primitive integer form has denominator dividing `lc`, so the only
/// candidate left in such an interval is tested exactly.
fn squarefree_rational_roots(f: &RatPoly) -> Vec<ExactRational> {
    let (ints, _) = to_integer_poly(f);
    let ints = primitive_part(&ints);
    let lc = ints.last().unwrap().clone();
    let f = int_poly_to_rat(&ints);
    let mut found = Vec::new();
    if f.degree() == Some(0) {
        return found;
    }
    // Cauchy bound
    let bound = ints[..ints.len() - 1]
        .iter()
        .map(|c| ExactRational::new(c.abs(), lc.clone()))
        .max()
        .unwrap_or_else(ExactRational::zero)
        + ExactRational::one();
    let chain = sturm_chain(&f);
    let count = |lo: &ExactRational, hi: &ExactRational| {
        sign_variations(&chain, lo) - sign_variations(&chain, hi)
    };
    let width_target = ExactRational::new(BigInt::one(), lc.clone());
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        // half-open (lo, hi]
        let n = count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo < width_target {
            let cand_num = (&hi * ExactRational::from_integer(lc.clone())).floor();
            let cand = cand_num / ExactRational::from_integer(lc.clone());
            if cand > lo && cand <= hi && f.eval(&cand).is_zero() {
                found.push(cand);
            }
            continue;
        }
        let mid = (&lo + &hi) / ExactRational::from_integer(BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn gcd_shared_linear_factor() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn gcd_of_h_numerator_and_denominator_is_one() {
        let num = p(&[6912, -1]).pow(3);
        let den = p(&[0, 0, 27]);
        assert_eq!(poly_gcd(&num, &den), RatPoly::one());
    }

    #[test]
    fn gcd_zero_input_convention() {
        assert_eq!(poly_gcd(&RatPoly::zero(), &p(&[6, 3])), p(&[2, 1]));
        assert!(poly_gcd(&RatPoly::zero(), &RatPoly::zero()).is_zero());
    }

    #[test]
    fn prs_fallback_finds_nontrivial_gcd() {
        let h = p(&[7, -3, 2]);
        let f = &p(&[1, 1, 1, 5]) * &h;
        let g = &p(&[-4, 0, 9]) * &h;
        assert_eq!(poly_gcd(&f, &g), h.monic());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[-8, 0, 0, -20, 0, 0, 1]);
        let b = p(&[0, 1]);
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(g, RatPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn squarefree_parts() {
        // (z - 1728)(z + 13824)^2
        let f = &p(&[-1728, 1]) * &p(&[13824, 1]).pow(2);
        let parts = squarefree_decomposition(&f);
        assert_eq!(parts, vec![(p(&[-1728, 1]), 1), (p(&[13824, 1]), 2)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // 7 (z - 3456/7)(z^2 + 3) (2z + 1)^2
        let f = &(&p(&[-3456, 7]) * &p(&[3, 0, 1])) * &p(&[1, 2]).pow(2);
        let rr = rational_roots(&f);
        assert_eq!(rr.roots, vec![(rat(-1, 2), 2), (rat(3456, 7), 1)]);
        assert_eq!(rr.residual.degree(), Some(2));
        assert_eq!(rr.residual.monic(), p(&[3, 0, 1]));
        assert!(rational_roots(&p(&[5])).roots.is_empty());
        assert_eq!(rational_roots(&p(&[0, 1])).roots, vec![(int(0), 1)]);
    }
}

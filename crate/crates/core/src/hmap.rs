//! Dynamics of `H(j) = (6912 - j)^3 / (27 j^2)` on the Riemann sphere.
//!
//! Periodic points of period dividing `n` are the roots of `P_n - z Q_n`
//! where `P_n / Q_n` is the `n`-th iterate. They are located without ever
//! evaluating the expanded polynomial: the pair `(P_n, Q_n)` and its
//! derivative obey the recurrence
//!
//! ```text
//! w = c v - u
//! (u, v, u', v') -> (w^3, k u^2 v, 3 w^2 w', k (2 u u' v + u^2 v'))
//! ```
//!
//! started from `(z, 1, 1, 0)`. The step is homogeneous of degree three, so
//! the tuple is rescaled by a power of two after every step and never
//! overflows, even in `f64`.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{int, poly_gcd, rat, rational_roots, ExactRational, Modulus, RatPoly};
use crate::numeric::aberth::{aberth, initial_guesses, newton_polish, NewtonTarget, Scalar};
use crate::numeric::bigfloat::{to_decimal_string, BigComplex};
use crate::ratfun::{ExtPoint, ExtRational, RatFun};

/// Default cap on `n` for numerical root finding and orbit grouping.
pub const NUMERIC_CAP: usize = 4;
/// Default cap on `n` for exact fixed-point polynomials.
pub const EXACT_CAP: usize = 6;
/// Half-width of the band around `|lambda| = 1` classified as indifferent.
pub const INDIFFERENT_BAND: f64 = 1e-9;

/// The four period-two points that are neither fixed nor quadratic surds
/// are the roots of this quartic (coefficients lowest degree first).
pub const PERIOD_TWO_QUARTIC: [i64; 5] = [
    2282521714753536,
    -5283615080448,
    4586471424,
    -89856,
    13,
];

/// `z -> (c - z)^3 / (k z^2)`. The standard map has `c = 6912`, `k = 27`;
/// other constants exist so that verification code can be exercised
/// against a deliberately wrong map.
#[derive(Clone, Debug)]
pub struct HMap {
    c: i64,
    k: i64,
    f: RatFun,
    df: RatFun,
}

impl Default for HMap {
    fn default() -> Self {
        Self::new()
    }
}

impl HMap {
    pub fn new() -> Self {
        Self::with_constants(6912, 27)
    }

    pub fn with_constants(c: i64, k: i64) -> Self {
        assert!(c != 0 && k != 0, "constants must be nonzero");
        let f = RatFun::new(
            RatPoly::from_ints(&[c, -1]).pow(3),
            RatPoly::from_ints(&[0, 0, k]),
        )
        .expect("nonzero denominator");
        let df = f.derivative();
        Self { c, k, f, df }
    }

    pub fn constants(&self) -> (i64, i64) {
        (self.c, self.k)
    }

    pub fn ratfun(&self) -> &RatFun {
        &self.f
    }

    pub fn derivative(&self) -> &RatFun {
        &self.df
    }

    pub fn iterate(&self, n: usize) -> RatFun {
        self.f.iterate(n)
    }

    pub fn eval_exact(&self, x: &ExtRational) -> Result<ExtRational> {
        self.f.eval_exact(x)
    }

    /// `P_n(z) - z Q_n(z)`, of degree `3^n`.
    pub fn fixed_point_poly(&self, n: usize) -> RatPoly {
        let it = self.iterate(n);
        it.num() - &(it.den() * &RatPoly::var())
    }

    pub fn squarefree_check(&self, n: usize) -> SquarefreeCertificate {
        let p = self.fixed_point_poly(n);
        let g = poly_gcd(&p, &p.derivative());
        SquarefreeCertificate {
            n,
            degree: p.degree().unwrap_or(0),
            gcd_degree: g.degree().unwrap_or(0),
            squarefree: g.is_constant(),
        }
    }

    fn target(&self, n: usize) -> IterateTarget {
        IterateTarget {
            c: self.c as f64,
            k: self.k as f64,
            n,
        }
    }

    /// All `3^n` finite periodic points of period dividing `n`, polished to
    /// `precision_bits` and sorted by real then imaginary part.
    pub fn find_periodic_points(&self, n: usize, precision_bits: usize) -> Result<Vec<BigComplex>> {
        if n == 0 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        let prec = precision_bits;
        let p = self.fixed_point_poly(n);
        let expected = p.degree().expect("nonzero");
        let target = self.target(n);

        let rough = aberth::<Complex64, _>(&target, initial_guesses(&p), 2000, 46.0);
        let start: Vec<BigComplex> = rough
            .roots
            .iter()
            .map(|z| BigComplex::from_f64(z.re, z.im, prec))
            .collect();
        let polished = self.polish_all(&target, start.clone(), prec);
        if let Ok(roots) = validate(&p, polished, prec) {
            return Ok(roots);
        }

        // fall back to simultaneous iteration at full precision
        let full = aberth::<BigComplex, _>(&target, start, 400, prec as f64 - 8.0);
        let polished = self.polish_all(&target, full.roots, prec);
        validate(&p, polished, prec).map_err(|found| Error::RootFindingFailed { found, expected })
    }

    fn polish_all(&self, target: &IterateTarget, start: Vec<BigComplex>, prec: usize) -> Vec<BigComplex> {
        let tol = prec as f64 - 8.0;
        let snap = -(prec as f64) / 4.0;
        let one = |z: BigComplex| -> BigComplex {
            let z = newton_polish(target, z, 200, tol);
            // a real root found from off the axis keeps a tiny imaginary part
            if z.im == crate::numeric::bigfloat::Float::ZERO || z.im_log2() > snap + z.log2_abs().max(0.0) {
                return z;
            }
            let real = BigComplex::new(z.re.clone(), crate::numeric::bigfloat::float_from_int(0, prec));
            newton_polish(target, real, 50, tol)
        };
        #[cfg(feature = "parallel")]
        let out = start.into_par_iter().map(one).collect();
        #[cfg(not(feature = "parallel"))]
        let out = start.into_iter().map(one).collect();
        out
    }

    /// Cycles among the periodic points of period dividing `n`, excluding
    /// the fixed point at infinity (see [`HMap::fixed_point_extras`]).
    pub fn group_orbits(&self, n: usize, precision_bits: usize) -> Result<Vec<OrbitRecord>> {
        let prec = precision_bits;
        let points = self.find_periodic_points(n, prec)?;
        let tol = -(prec as f64) / 4.0;

        let image_of = |i: usize| -> Result<usize> {
            let img = self.f.eval_ext(&ExtPoint::Finite(points[i].clone()), prec)?;
            let img = img.finite().ok_or(Error::OrbitMatchingFailed { index: i })?.clone();
            let hits: Vec<usize> = (0..points.len())
                .filter(|&j| img.close_to(&points[j], tol))
                .collect();
            match hits.len() {
                0 => Err(Error::OrbitMatchingFailed { index: i }),
                1 => Ok(hits[0]),
                _ => Err(Error::OrbitMatchingAmbiguous { index: i }),
            }
        };
        #[cfg(feature = "parallel")]
        let sigma: Result<Vec<usize>> = (0..points.len()).into_par_iter().map(image_of).collect();
        #[cfg(not(feature = "parallel"))]
        let sigma: Result<Vec<usize>> = (0..points.len()).map(image_of).collect();
        let sigma = sigma?;

        let mut hit = vec![false; points.len()];
        for &s in &sigma {
            if std::mem::replace(&mut hit[s], true) {
                return Err(Error::OrbitMatchingAmbiguous { index: s });
            }
        }

        let mut seen = vec![false; points.len()];
        let mut records = Vec::new();
        for start in 0..points.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = sigma[i];
            }
            if !n.is_multiple_of(cycle.len()) {
                return Err(Error::OrbitMatchingFailed { index: start });
            }
            let mut lambda = BigComplex::from_f64(1.0, 0.0, prec);
            for &j in &cycle {
                let d = self.df.eval_ext(&ExtPoint::Finite(points[j].clone()), prec)?;
                let d = d.finite().ok_or(Error::Indeterminate)?.clone();
                lambda = lambda.mul(&d);
            }
            records.push(OrbitRecord {
                points: cycle.iter().map(|&j| ExtPoint::Finite(points[j].clone())).collect(),
                exact_period: cycle.len(),
                classification: Stability::classify(&lambda),
                multiplier: lambda,
            });
        }
        records.sort_by_key(|r| r.exact_period);
        Ok(records)
    }

    /// [`HMap::group_orbits`] followed by the record for infinity.
    pub fn all_orbits(&self, n: usize, precision_bits: usize) -> Result<Vec<OrbitRecord>> {
        let mut records = self.group_orbits(n, precision_bits)?;
        records.insert(0, self.fixed_point_extras(precision_bits));
        Ok(records)
    }

    /// Multiplier of the fixed point at infinity, read two ways: as the
    /// derivative of `1/H(1/w)` at `w = 0`, and as `1 / lim H'(z)`.
    pub fn infinity_multiplier(&self) -> Result<InfinityMultiplier> {
        let chart = self
            .f
            .conjugate_by_inversion()
            .derivative()
            .eval_exact(&ExtRational::Finite(int(0)))?;
        let limit = self.df.eval_exact(&ExtRational::Infinity)?;
        let reciprocal = match &limit {
            ExtRational::Finite(q) if !q.is_zero() => ExtRational::Finite(q.recip()),
            ExtRational::Finite(_) => ExtRational::Infinity,
            ExtRational::Infinity => ExtRational::Finite(int(0)),
        };
        Ok(InfinityMultiplier {
            consistent: chart == reciprocal,
            chart,
            derivative_limit: limit,
            reciprocal,
        })
    }

    pub fn fixed_point_extras(&self, precision_bits: usize) -> OrbitRecord {
        let m = self.infinity_multiplier().expect("H fixes infinity");
        let lambda = match m.chart {
            ExtRational::Finite(q) => BigComplex::from_rational(&q, precision_bits),
            ExtRational::Infinity => panic!("infinite multiplier at a fixed point"),
        };
        OrbitRecord {
            points: vec![ExtPoint::Infinity],
            exact_period: 1,
            classification: Stability::classify(&lambda),
            multiplier: lambda,
        }
    }

    /// Critical points with their orders: zeros of `H'`, plus multiple poles
    /// and infinity when the local degree there exceeds one.
    pub fn critical_points(&self) -> Vec<CriticalPoint> {
        let mut out = Vec::new();
        for (r, m) in rational_roots(self.df.num()).roots {
            out.push(CriticalPoint {
                point: ExtRational::Finite(r),
                order: m,
                origin: CriticalOrigin::DerivativeZero,
            });
        }
        for (r, m) in rational_roots(self.f.den()).roots {
            if m >= 2 {
                out.push(CriticalPoint {
                    point: ExtRational::Finite(r),
                    order: m - 1,
                    origin: CriticalOrigin::Pole,
                });
            }
        }
        let local = self.f.ddeg().unsigned_abs() as u32;
        if local >= 2 {
            out.push(CriticalPoint {
                point: ExtRational::Infinity,
                order: local - 1,
                origin: CriticalOrigin::Infinity,
            });
        }
        out
    }

    /// Exact forward orbit of `x` until the first repeated value.
    pub fn exact_orbit(&self, x: &ExtRational, max_steps: usize) -> Result<CriticalOrbit> {
        let mut orbit = vec![x.clone()];
        for _ in 0..max_steps {
            let next = self.f.eval_exact(orbit.last().unwrap())?;
            if let Some(pos) = orbit.iter().position(|y| *y == next) {
                orbit.push(next);
                let period = orbit.len() - 1 - pos;
                return Ok(CriticalOrbit {
                    start: x.clone(),
                    preperiod: pos,
                    period,
                    strictly_preperiodic: pos > 0,
                    orbit,
                });
            }
            orbit.push(next);
        }
        Err(Error::OutOfRange(format!("orbit of {x} did not close within {max_steps} steps")))
    }

    pub fn pcf_verify(&self) -> Result<PcfReport> {
        let orbits = self
            .critical_points()
            .iter()
            .map(|c| self.exact_orbit(&c.point, 64))
            .collect::<Result<Vec<_>>>()?;
        let no_periodic = orbits.iter().all(|o| o.strictly_preperiodic);
        Ok(PcfReport {
            postcritically_finite: true,
            no_periodic_critical_points: no_periodic,
            julia_set_is_sphere: no_periodic,
            orbits,
        })
    }

    /// Solutions of `H(j) = v` through `num(j) - v den(j)`.
    pub fn preimages_of(&self, v: &ExactRational) -> Preimages {
        let poly = self.f.num() - &self.f.den().scale(v);
        let rr = rational_roots(&poly);
        Preimages {
            poly,
            roots: rr.roots,
            residual: rr.residual,
        }
    }

    /// Exact checks of the closed forms of the non-real fixed points in
    /// `Q[t]/(t^2 + 3)`, `t = i sqrt 3`.
    pub fn fixed_point_closed_forms(&self) -> Result<ClosedFormCertificate> {
        let m = Modulus::new(&RatPoly::from_ints(&[3, 0, 1]))?;
        let p1 = self.fixed_point_poly(1);
        let mut entries = Vec::new();
        for (label, slope) in [("3456/7*(-1 + 3*t)", 3), ("3456/7*(-1 - 3*t)", -3), ("3456/7*(-1 + t)", 1), ("3456/7*(-1 - t)", -1)] {
            let z = m.elem(&RatPoly::from_coeffs(vec![rat(-3456, 7), rat(3456 * slope, 7)]));
            let value = m.eval_poly(&p1, &z)?;
            let mult = self.df.eval_quot(&z)?;
            entries.push(SurdCheck {
                value: label.to_string(),
                is_root: value.rep().is_zero(),
                image: None,
                multiplier: Some(crate::exact::format_poly(mult.rep(), "t")),
            });
        }
        Ok(ClosedFormCertificate {
            modulus: crate::exact::format_poly(m.poly(), "t"),
            entries,
        })
    }

    /// Exact checks of the quadratic-surd period-two points in
    /// `Q[t]/(t^2 - 3)`, `t = sqrt 3`, for both the `5 +- 3 sqrt 3` and the
    /// `5 +- sqrt 3` readings.
    pub fn period_two_surds(&self) -> Result<ClosedFormCertificate> {
        let m = Modulus::new(&RatPoly::from_ints(&[-3, 0, 1]))?;
        let p2 = self.fixed_point_poly(2);
        let mut entries = Vec::new();
        for (label, a) in [("3456*(5 - 3*t)", -3), ("3456*(5 + 3*t)", 3), ("3456*(5 - t)", -1), ("3456*(5 + t)", 1)] {
            let z = m.elem(&RatPoly::from_ints(&[3456 * 5, 3456 * a]));
            let value = m.eval_poly(&p2, &z)?;
            let image = self.f.eval_quot(&z)?;
            entries.push(SurdCheck {
                value: label.to_string(),
                is_root: value.rep().is_zero(),
                image: Some(crate::exact::format_poly(image.rep(), "t")),
                multiplier: None,
            });
        }
        Ok(ClosedFormCertificate {
            modulus: crate::exact::format_poly(m.poly(), "t"),
            entries,
        })
    }

    /// Whether `P_2 - z Q_2` factors exactly as the fixed-point cubic, the
    /// surd quadratic `z^2 - 34560 z - 23887872` and the quartic above.
    pub fn period_two_factorization_holds(&self) -> bool {
        let p2 = self.fixed_point_poly(2);
        let quad = RatPoly::from_ints(&[-23887872, -34560, 1]);
        let quartic = RatPoly::from_ints(&PERIOD_TWO_QUARTIC);
        let product = &(&self.fixed_point_poly(1) * &quad) * &quartic;
        match (p2.leading(), product.leading()) {
            (Some(a), Some(b)) => p2 == product.scale(&(a / b)),
            _ => false,
        }
    }
}

/// Newton ratio of `P_n - z Q_n` through the recurrence in the module docs.
#[derive(Clone, Copy, Debug)]
pub struct IterateTarget {
    c: f64,
    k: f64,
    n: usize,
}

impl IterateTarget {
    /// `(h, h')` up to a common positive factor.
    pub fn value_and_derivative<C: Scalar>(&self, z: &C) -> (C, C) {
        let one = z.constant(1.0, 0.0);
        let (mut u, mut v, mut du, mut dv) = (z.clone(), one.clone(), one, z.constant(0.0, 0.0));
        let c = z.constant(self.c, 0.0);
        let k = z.constant(self.k, 0.0);
        let three = z.constant(3.0, 0.0);
        let two = z.constant(2.0, 0.0);
        for _ in 0..self.n {
            let w = c.mul(&v).sub(&u);
            let dw = c.mul(&dv).sub(&du);
            let w2 = w.mul(&w);
            let u2 = u.mul(&u);
            let nu = w2.mul(&w);
            let nv = k.mul(&u2).mul(&v);
            let ndu = three.mul(&w2).mul(&dw);
            let ndv = k.mul(&two.mul(&u).mul(&du).mul(&v).add(&u2.mul(&dv)));
            let top = [&nu, &nv, &ndu, &ndv]
                .iter()
                .map(|x| x.log2_abs())
                .filter(|l| l.is_finite())
                .fold(f64::NEG_INFINITY, f64::max);
            let shift = if top.is_finite() { -(top.round() as i32) } else { 0 };
            u = nu.mul_pow2(shift);
            v = nv.mul_pow2(shift);
            du = ndu.mul_pow2(shift);
            dv = ndv.mul_pow2(shift);
        }
        let h = u.sub(&z.mul(&v));
        let dh = du.sub(&v).sub(&z.mul(&dv));
        (h, dh)
    }
}

impl<C: Scalar> NewtonTarget<C> for IterateTarget {
    fn degree(&self) -> usize {
        3usize.pow(self.n as u32)
    }

    fn newton_ratio(&self, z: &C) -> Option<C> {
        let (h, dh) = self.value_and_derivative(z);
        if dh.log2_abs() == f64::NEG_INFINITY {
            return None;
        }
        Some(h.div(&dh))
    }
}

/// `log2 (|p(z)| / sum |a_k| |z|^k)`.
pub fn relative_residual_log2(p: &RatPoly, z: &BigComplex, prec: usize) -> f64 {
    let mut acc = BigComplex::zero(prec);
    let mut scale = crate::numeric::bigfloat::float_from_int(0, prec);
    let absz = z.abs();
    for c in p.coeffs().iter().rev() {
        let cf = BigComplex::from_rational(c, prec);
        acc = acc.mul(z).add(&cf);
        scale = &(&scale * &absz) + &cf.abs();
    }
    acc.log2_abs() - crate::numeric::bigfloat::log2_abs(&scale)
}

/// Residual and separation checks; on failure returns the number of
/// distinct roots that passed.
fn validate(p: &RatPoly, roots: Vec<BigComplex>, prec: usize) -> std::result::Result<Vec<BigComplex>, usize> {
    let expected = p.degree().unwrap_or(0);
    let limit = -(prec as f64) / 2.0;
    let cluster = -(prec as f64) / 4.0;
    let good: Vec<bool> = roots
        .iter()
        .map(|z| relative_residual_log2(p, z, prec) <= limit)
        .collect();
    let mut reps: Vec<&BigComplex> = Vec::new();
    for (z, ok) in roots.iter().zip(&good) {
        if *ok && !reps.iter().any(|r| r.close_to(z, cluster)) {
            reps.push(z);
        }
    }
    if reps.len() != expected || roots.len() != expected {
        return Err(reps.len());
    }
    let mut roots = roots;
    sort_points(&mut roots);
    Ok(roots)
}

/// Deterministic order: real part (to ten significant digits), then
/// imaginary part.
pub fn sort_points(points: &mut [BigComplex]) {
    let key = |z: &BigComplex| {
        let (re, im) = z.to_f64_pair();
        let q: f64 = format!("{re:.9e}").parse().unwrap_or(re);
        (q, im)
    };
    points.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
}

trait ImLog2 {
    fn im_log2(&self) -> f64;
}

impl ImLog2 for BigComplex {
    fn im_log2(&self) -> f64 {
        crate::numeric::bigfloat::log2_abs(&self.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Attracting,
    Repelling,
    Indifferent,
}

impl Stability {
    pub fn classify(lambda: &BigComplex) -> Self {
        let (re, im) = lambda.to_f64_pair();
        let r = re.hypot(im);
        if (r - 1.0).abs() < INDIFFERENT_BAND {
            Self::Indifferent
        } else if r > 1.0 {
            Self::Repelling
        } else {
            Self::Attracting
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Attracting => "attracting",
            Self::Repelling => "repelling",
            Self::Indifferent => "indifferent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub points: Vec<ExtPoint>,
    pub exact_period: usize,
    pub multiplier: BigComplex,
    pub classification: Stability,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexJson {
    pub re: String,
    pub im: String,
}

impl ComplexJson {
    pub fn from_big(z: &BigComplex) -> Self {
        Self {
            re: to_decimal_string(&z.re),
            im: to_decimal_string(&z.im),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum PointJson {
    Finite(ComplexJson),
    Infinity(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecordJson {
    pub points: Vec<PointJson>,
    pub exact_period: usize,
    pub multiplier: ComplexJson,
    pub classification: Stability,
    pub precision_bits: usize,
}

impl OrbitRecord {
    pub fn to_json(&self) -> OrbitRecordJson {
        OrbitRecordJson {
            points: self
                .points
                .iter()
                .map(|p| match p {
                    ExtPoint::Finite(z) => PointJson::Finite(ComplexJson::from_big(z)),
                    ExtPoint::Infinity => PointJson::Infinity("inf".into()),
                })
                .collect(),
            exact_period: self.exact_period,
            multiplier: ComplexJson::from_big(&self.multiplier),
            classification: self.classification,
            precision_bits: self.multiplier.precision(),
        }
    }

    pub fn multiplier_abs(&self) -> f64 {
        let (re, im) = self.multiplier.to_f64_pair();
        re.hypot(im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquarefreeCertificate {
    pub n: usize,
    pub degree: usize,
    pub gcd_degree: usize,
    pub squarefree: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfinityMultiplier {
    pub chart: ExtRational,
    pub derivative_limit: ExtRational,
    pub reciprocal: ExtRational,
    pub consistent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalOrigin {
    DerivativeZero,
    Pole,
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub point: ExtRational,
    pub order: u32,
    pub origin: CriticalOrigin,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalOrbit {
    pub start: ExtRational,
    /// The orbit up to and including the first repeated value.
    pub orbit: Vec<ExtRational>,
    pub preperiod: usize,
    pub period: usize,
    pub strictly_preperiodic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PcfReport {
    pub orbits: Vec<CriticalOrbit>,
    pub postcritically_finite: bool,
    pub no_periodic_critical_points: bool,
    pub julia_set_is_sphere: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Preimages {
    pub poly: RatPoly,
    pub roots: Vec<(ExactRational, u32)>,
    pub residual: RatPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurdCheck {
    pub value: String,
    pub is_root: bool,
    pub image: Option<String>,
    pub multiplier: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedFormCertificate {
    pub modulus: String,
    pub entries: Vec<SurdCheck>,
}

impl ClosedFormCertificate {
    pub fn entry(&self, value: &str) -> Option<&SurdCheck> {
        self.entries.iter().find(|e| e.value == value)
    }
}

/// Absolute value of a rational as an `f64`, for diagnostics.
pub fn rational_abs_f64(q: &ExactRational) -> f64 {
    use num_traits::ToPrimitive;
    q.abs().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_cubic() {
        let h = HMap::new();
        assert_eq!(
            h.fixed_point_poly(1),
            RatPoly::from_ints(&[330225942528, -143327232, 20736, -28])
        );
        assert!(h.fixed_point_poly(1).eval(&int(1728)).is_zero());
        assert_eq!(h.fixed_point_poly(2).degree(), Some(9));
    }

    #[test]
    fn squarefree_small_n() {
        let h = HMap::new();
        for n in 1..=3 {
            let c = h.squarefree_check(n);
            assert!(c.squarefree, "n = {n}");
            assert_eq!(c.degree, 3usize.pow(n as u32));
        }
    }

    #[test]
    fn recurrence_matches_expanded_polynomial() {
        let h = HMap::new();
        let p = h.fixed_point_poly(2);
        let t = h.target(2);
        let z = Complex64::new(0.37, -1.2);
        let (v, dv) = t.value_and_derivative(&z);
        let exact_v = horner_f64(&p, z);
        let exact_dv = horner_f64(&p.derivative(), z);
        let r1 = v / dv;
        let r2 = exact_v / exact_dv;
        assert!((r1 - r2).norm() < 1e-9 * r2.norm());
    }

    fn horner_f64(p: &RatPoly, z: Complex64) -> Complex64 {
        use num_traits::ToPrimitive;
        p.coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap())
    }

    #[test]
    fn fixed_points_numeric() {
        let h = HMap::new();
        let pts = h.find_periodic_points(1, 256).unwrap();
        assert_eq!(pts.len(), 3);
        let real: Vec<_> = pts.iter().filter(|z| z.im == crate::numeric::bigfloat::Float::ZERO).collect();
        assert_eq!(real.len(), 1);
        assert!(real[0].close_to(&BigComplex::from_f64(1728.0, 0.0, 256), -200.0));
    }

    #[test]
    fn fixed_point_multipliers() {
        let h = HMap::new();
        let orbits = h.group_orbits(1, 256).unwrap();
        assert_eq!(orbits.len(), 3);
        for o in &orbits {
            assert_eq!(o.classification, Stability::Repelling);
        }
        let d = h.derivative().eval_exact(&int(1728).into()).unwrap();
        assert_eq!(d, int(-3).into());
        let inf = h.fixed_point_extras(256);
        assert_eq!(inf.multiplier.to_f64_pair(), (-27.0, 0.0));
        let m = h.infinity_multiplier().unwrap();
        assert!(m.consistent);
        assert_eq!(m.derivative_limit, rat(-1, 27).into());
    }

    #[test]
    fn closed_forms() {
        let h = HMap::new();
        let c = h.fixed_point_closed_forms().unwrap();
        assert!(c.entry("3456/7*(-1 + 3*t)").unwrap().is_root);
        assert!(c.entry("3456/7*(-1 - 3*t)").unwrap().is_root);
        assert!(!c.entry("3456/7*(-1 + t)").unwrap().is_root);
        let mult = c.entry("3456/7*(-1 + 3*t)").unwrap().multiplier.clone().unwrap();
        assert_eq!(mult, "-1/2*t - 3/2");
        let s = h.period_two_surds().unwrap();
        let plus = s.entry("3456*(5 + 3*t)").unwrap();
        assert!(plus.is_root);
        assert_eq!(plus.image.as_deref(), Some("-10368*t + 17280"));
        assert!(!s.entry("3456*(5 + t)").unwrap().is_root);
        assert!(h.period_two_factorization_holds());
    }

    #[test]
    fn critical_points_and_pcf() {
        let h = HMap::new();
        let cps = h.critical_points();
        let pts: Vec<_> = cps.iter().map(|c| (c.point.clone(), c.order)).collect();
        assert!(pts.contains(&(int(6912).into(), 2)));
        assert!(pts.contains(&(int(-13824).into(), 1)));
        assert!(pts.contains(&(int(0).into(), 1)));
        assert_eq!(cps.len(), 3);
        let r = h.pcf_verify().unwrap();
        assert!(r.julia_set_is_sphere);
        let o = r.orbits.iter().find(|o| o.start == int(6912).into()).unwrap();
        assert_eq!(
            o.orbit,
            vec![int(6912).into(), int(0).into(), ExtRational::Infinity, ExtRational::Infinity]
        );
    }

    #[test]
    fn preimages() {
        let h = HMap::new();
        let p = h.preimages_of(&int(1728));
        assert_eq!(p.roots, vec![(int(-13824), 2), (int(1728), 1)]);
        assert!(p.residual.is_constant());
        let z = h.preimages_of(&int(0));
        assert_eq!(z.roots, vec![(int(6912), 3)]);
    }

    #[test]
    fn corrupted_map_breaks_fixed_point() {
        let h = HMap::with_constants(6913, 27);
        assert!(!h.fixed_point_poly(1).eval(&int(1728)).is_zero());
    }
}

//! The Hesse pencil `E_t = V(x^3 + y^3 + z^3 - 3 t x y z)`, with the
//! triangle `E_inf = V(x y z)`.
//!
//! The Hessian sends `E_t` to `E_s`, `s = (4 - t^3) / (3 t^2)`. Fibers over
//! an algebraic `t` are handled in `Q[t]/(m)`; a zero divisor met while
//! inverting `3 t^2` splits `m` and the orbit is restarted on both factors.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::form::{hessian_form, TriForm};
use crate::error::{Error, Result};
use crate::exact::{format_poly, int, ExactRational, Modulus, RatPoly};
use crate::ratfun::ExtRational;

/// Default iteration bound for [`fiber_orbit`].
pub const DEFAULT_MAX_N: usize = 24;
/// Default cap on the bit size of residue coefficients.
pub const DEFAULT_HEIGHT_CAP_BITS: u64 = 200_000;

/// `a(t) = -27 t (t^3 + 8)`.
pub fn pencil_a_poly() -> RatPoly {
    RatPoly::from_ints(&[0, -216, 0, 0, -27])
}

/// `b(t) = 54 (t^6 - 20 t^3 - 8)`.
pub fn pencil_b_poly() -> RatPoly {
    RatPoly::from_ints(&[-432, 0, 0, -1080, 0, 0, 54])
}

pub fn pencil_a(t: &ExactRational) -> ExactRational {
    pencil_a_poly().eval(t)
}

pub fn pencil_b(t: &ExactRational) -> ExactRational {
    pencil_b_poly().eval(t)
}

/// `6912 a(t)^3` and `4 a(t)^3 + 27 b(t)^2`, so that `j(E_t)` is their ratio.
pub fn pencil_j_parts() -> (RatPoly, RatPoly) {
    let a3 = pencil_a_poly().pow(3);
    let b2 = pencil_b_poly().pow(2);
    (a3.scale(&int(6912)), &a3.scale(&int(4)) + &b2.scale(&int(27)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilJ {
    pub j: ExtRational,
    /// `4 a^3 + 27 b^2 = 0` or the triangle fiber.
    pub singular: bool,
}

pub fn pencil_j(t: &ExtRational) -> PencilJ {
    let ExtRational::Finite(t) = t else {
        return PencilJ {
            j: ExtRational::Infinity,
            singular: true,
        };
    };
    let (n, d) = pencil_j_parts();
    let d = d.eval(t);
    if d.is_zero() {
        return PencilJ {
            j: ExtRational::Infinity,
            singular: true,
        };
    }
    PencilJ {
        j: ExtRational::Finite(n.eval(t) / d),
        singular: false,
    }
}

/// `s = (4 - t^3) / (3 t^2)`; `0` and the triangle both go to the triangle.
pub fn pencil_haw_t(t: &ExtRational) -> ExtRational {
    match t {
        ExtRational::Infinity => ExtRational::Infinity,
        ExtRational::Finite(t) if t.is_zero() => ExtRational::Infinity,
        ExtRational::Finite(t) => {
            ExtRational::Finite((int(4) - t * t * t) / (int(3) * t * t))
        }
    }
}

/// `x^3 + y^3 + z^3 - 3 t x y z` over `Q[t]`.
pub fn hesse_form_symbolic() -> TriForm<RatPoly> {
    TriForm::from_terms(
        3,
        [
            ([3, 0, 0], RatPoly::one()),
            ([0, 3, 0], RatPoly::one()),
            ([0, 0, 3], RatPoly::one()),
            ([1, 1, 1], RatPoly::from_ints(&[0, -3])),
        ],
    )
}

pub fn hesse_form_at(t: &ExactRational) -> TriForm<ExactRational> {
    TriForm::from_terms(
        3,
        [
            ([3, 0, 0], int(1)),
            ([0, 3, 0], int(1)),
            ([0, 0, 3], int(1)),
            ([1, 1, 1], int(-3) * t),
        ],
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct HesseHessian {
    /// `c(t)` with `Haw(E_t) = c(t) (x^3 + y^3 + z^3) + e(t) x y z`.
    pub scalar: RatPoly,
    pub xyz_coeff: RatPoly,
    /// `e(t) = -3 s c(t)` with `s = (4 - t^3) / (3 t^2)`, cross-multiplied.
    pub matches_s_fiber: bool,
}

pub fn hesse_hessian() -> HesseHessian {
    let h = hessian_form(&hesse_form_symbolic());
    let get = |m: [u32; 3]| h.coeff(&m).cloned().unwrap_or_else(RatPoly::zero);
    let c = get([3, 0, 0]);
    let e = get([1, 1, 1]);
    let only_pencil_terms = h
        .terms()
        .all(|(m, _)| [[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1]].contains(m));
    let symmetric = get([0, 3, 0]) == c && get([0, 0, 3]) == c;
    // t^2 e = -(4 - t^3) c
    let lhs = &RatPoly::from_ints(&[0, 0, 1]) * &e;
    let rhs = -&(&RatPoly::from_ints(&[4, 0, 0, -1]) * &c);
    HesseHessian {
        matches_s_fiber: only_pencil_terms && symmetric && !c.is_zero() && lhs == rhs,
        scalar: c,
        xyz_coeff: e,
    }
}

/// Condition on `t` equivalent to `g(j(E_t)) = 0`:
/// `sum g_k (6912 a^3)^k (4 a^3 + 27 b^2)^(deg g - k)`, made monic.
pub fn pullback(g: &RatPoly) -> RatPoly {
    let deg = g.degree().expect("nonzero j-condition");
    let (n, d) = pencil_j_parts();
    let mut acc = RatPoly::zero();
    for (k, c) in g.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &(&n.pow(k as u32) * &d.pow((deg - k) as u32)).scale(c);
        }
    }
    acc.monic()
}

/// `t^6 - 20 t^3 - 8`, the zeros of `b`: harmonic fibers.
pub fn harmonic_minpoly() -> RatPoly {
    RatPoly::from_ints(&[-8, 0, 0, -20, 0, 0, 1])
}

/// `a^6 + 9 a^3 b^2 + 27 b^4` in terms of `t`, made monic.
pub fn order_three_condition() -> RatPoly {
    let a3 = pencil_a_poly().pow(3);
    let b2 = pencil_b_poly().pow(2);
    (&(&a3.pow(2) + &(&a3 * &b2).scale(&int(9))) + &b2.pow(2).scale(&int(27))).monic()
}

/// Quadratic with roots `3456 (5 +- k sqrt 3)`.
pub fn surd_j_condition(k: i64) -> RatPoly {
    let c = 3456i64;
    RatPoly::from_ints(&[c * c * (25 - 3 * k * k), -10 * c, 1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FactorOutcome {
    Returned { orbit_length: usize },
    ReachedTriangle { step: usize },
    NoReturnWithinBound { max_n: usize },
    HeightCapReached { step: usize, cap_bits: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorResult {
    pub factor: String,
    pub degree: usize,
    #[serde(flatten)]
    pub outcome: FactorOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCertificate {
    pub modulus: String,
    /// Least `n` with `t_n = t_0` on every factor, when there is one.
    pub orbit_length: Option<usize>,
    pub split_factors: Vec<String>,
    pub per_factor_results: Vec<FactorResult>,
}

impl FiberCertificate {
    pub fn lengths(&self) -> Vec<Option<usize>> {
        self.per_factor_results
            .iter()
            .map(|r| match r.outcome {
                FactorOutcome::Returned { orbit_length } => Some(orbit_length),
                _ => None,
            })
            .collect()
    }
}

fn height_bits(p: &RatPoly) -> u64 {
    p.coeffs()
        .iter()
        .map(|c| c.numer().bits() + c.denom().bits())
        .max()
        .unwrap_or(0)
}

enum Step {
    Done(FactorOutcome),
    Split(RatPoly),
}

fn run_factor(m: &RatPoly, max_n: usize, cap_bits: u64) -> Result<Step> {
    let modulus = Modulus::new(m)?;
    let t0 = modulus.generator();
    let four = modulus.constant(int(4));
    let three = modulus.constant(int(3));
    let mut t = t0.clone();
    for step in 1..=max_n {
        let t2 = t.try_mul(&t)?;
        let inv = match three.try_mul(&t2)?.invert() {
            Ok(inv) => inv,
            Err(Error::NotInvertible { gcd }) => {
                if gcd.degree() == m.degree() {
                    return Ok(Step::Done(FactorOutcome::ReachedTriangle { step }));
                }
                return Ok(Step::Split(gcd));
            }
            Err(e) => return Err(e),
        };
        t = four.try_sub(&t2.try_mul(&t)?)?.try_mul(&inv)?;
        if t == t0 {
            return Ok(Step::Done(FactorOutcome::Returned { orbit_length: step }));
        }
        if height_bits(t.rep()) > cap_bits {
            return Ok(Step::Done(FactorOutcome::HeightCapReached { step, cap_bits }));
        }
    }
    Ok(Step::Done(FactorOutcome::NoReturnWithinBound { max_n }))
}

/// Iterate the pencil map on the class of `t` in `Q[t]/(m)` and report the
/// least `n <= max_n` with `t_n = t_0`.
pub fn fiber_orbit(m: &RatPoly, max_n: usize) -> Result<FiberCertificate> {
    fiber_orbit_capped(m, max_n, DEFAULT_HEIGHT_CAP_BITS)
}

pub fn fiber_orbit_capped(m: &RatPoly, max_n: usize, cap_bits: u64) -> Result<FiberCertificate> {
    if m.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidModulus("modulus must be nonconstant".into()));
    }
    let mut stack = vec![m.monic()];
    let mut split_factors = Vec::new();
    let mut results = Vec::new();
    while let Some(f) = stack.pop() {
        match run_factor(&f, max_n, cap_bits)? {
            Step::Done(outcome) => results.push(FactorResult {
                factor: format_poly(&f, "t"),
                degree: f.degree().unwrap_or(0),
                outcome,
            }),
            Step::Split(g) => {
                let g = g.monic();
                let h = f.exact_div(&g).expect("gcd divides the modulus").monic();
                split_factors.push(format_poly(&g, "t"));
                split_factors.push(format_poly(&h, "t"));
                stack.push(h);
                stack.push(g);
            }
        }
    }
    results.sort_by(|a, b| (a.degree, &a.factor).cmp(&(b.degree, &b.factor)));
    let orbit_length = results
        .iter()
        .map(|r| match r.outcome {
            FactorOutcome::Returned { orbit_length } => Some(orbit_length),
            _ => None,
        })
        .try_fold(1usize, |acc, n| n.map(|n| acc.lcm(&n)));
    Ok(FiberCertificate {
        modulus: format_poly(&m.monic(), "t"),
        orbit_length,
        split_factors,
        per_factor_results: results,
    })
}

/// Exact comparison of the two printed readings of the order-four fibers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurdReadingReport {
    pub reading: String,
    /// Whether the `j` values are periodic of exact period two under `H`.
    pub j_period_two: bool,
    pub fiber: FiberCertificate,
}

/// Run both readings `3456 (5 +- k sqrt 3)`, `k = 1, 3`, through the same
/// checks. `max_n` and the height cap bound the work on the reading whose
/// fibers do not return.
pub fn surd_readings(map: &crate::hmap::HMap, max_n: usize, cap_bits: u64) -> Result<Vec<SurdReadingReport>> {
    let surds = map.period_two_surds()?;
    let mut out = Vec::new();
    for k in [3i64, 1] {
        let label = if k == 1 { "3456*(5 + t)" } else { "3456*(5 + 3*t)" };
        let j_period_two = surds.entry(label).is_some_and(|e| e.is_root);
        let fiber = fiber_orbit_capped(&pullback(&surd_j_condition(k)), max_n, cap_bits)?;
        out.push(SurdReadingReport {
            reading: format!("3456*(5 +- {}sqrt(3))", if k == 1 { String::new() } else { format!("{k}*") }),
            j_period_two,
            fiber,
        });
    }
    Ok(out)
}

/// Rational `t` with `t^3 = 1` or the triangle: the singular fibers.
pub fn is_singular_fiber(t: &ExtRational) -> bool {
    match t {
        ExtRational::Infinity => true,
        ExtRational::Finite(t) => (t * t * t) == int(1),
    }
}

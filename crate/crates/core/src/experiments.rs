//! Empirical probes of the real and p-adic dynamics of `H`.
//!
//! Every real orbit of `H` is chaotic (the Julia set is the whole sphere), so
//! a floating-point orbit drifts away from the true orbit of its seed after a
//! number of steps proportional to the precision. The statistics below
//! describe the finite-precision model. Two checks bound how much that
//! matters: agreement with the exact rational orbit over a short horizon,
//! and stability of the frequencies when the precision is halved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Serialize, Serializer};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{int, ExactRational};
use crate::hmap::HMap;
use crate::numeric::bigfloat::{cbrt, float_from_f64, float_from_int, float_from_rational, log2_abs, to_f64, Float};
use crate::ratfun::ExtRational;

/// Which half-open interval an iterate falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `(-inf, -13824)`
    LOuter,
    /// `[-13824, 0)`
    LInner,
    /// `[0, 1728)`
    MLow,
    /// `[1728, 6912)`
    MHigh,
    /// `[6912, T)`
    RNear,
    /// `[T, inf)`
    RFar,
    /// Within tolerance of a threshold or of the pole.
    Boundary,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RefinedCounts {
    pub l_outer: u64,
    pub l_inner: u64,
    pub m_low: u64,
    pub m_high: u64,
    pub r_near: u64,
    pub r_far: u64,
}

impl RefinedCounts {
    fn bump(&mut self, r: Region) {
        match r {
            Region::LOuter => self.l_outer += 1,
            Region::LInner => self.l_inner += 1,
            Region::MLow => self.m_low += 1,
            Region::MHigh => self.m_high += 1,
            Region::RNear => self.r_near += 1,
            Region::RFar => self.r_far += 1,
            Region::Boundary => {}
        }
    }

    pub fn as_array(&self) -> [u64; 6] {
        [self.l_outer, self.l_inner, self.m_low, self.m_high, self.r_near, self.r_far]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalStats {
    pub n: u64,
    pub precision_bits: usize,
    pub counts: RefinedCounts,
    pub boundary_hits: u64,
    /// `-13824, 0, 1728, 6912, 6912 (19 + 15 cbrt 2 + 12 cbrt 4)` as used.
    pub thresholds: [f64; 5],
}

impl IntervalStats {
    pub fn l(&self) -> u64 {
        self.counts.l_outer + self.counts.l_inner
    }

    pub fn m(&self) -> u64 {
        self.counts.m_low + self.counts.m_high
    }

    pub fn r(&self) -> u64 {
        self.counts.r_near + self.counts.r_far
    }

    pub fn coarse_frequencies(&self) -> [f64; 3] {
        let n = self.n as f64;
        [self.l() as f64 / n, self.m() as f64 / n, self.r() as f64 / n]
    }

    pub fn refined_frequencies(&self) -> [f64; 6] {
        let n = self.n as f64;
        self.counts.as_array().map(|c| c as f64 / n)
    }
}

/// `6912 (19 + 15 cbrt 2 + 12 cbrt 4)`.
pub fn upper_threshold(prec: usize) -> Float {
    let c = cbrt(&float_from_int(2, prec), prec);
    let inner = &(&float_from_int(19, prec) + &(&float_from_int(15, prec) * &c))
        + &(&float_from_int(12, prec) * &(&c * &c));
    &float_from_int(6912, prec) * &inner
}

struct Classifier {
    bounds: [Float; 5],
    tol_log2: f64,
}

impl Classifier {
    fn new(prec: usize) -> Self {
        Self {
            bounds: [
                float_from_int(-13824, prec),
                float_from_int(0, prec),
                float_from_int(1728, prec),
                float_from_int(6912, prec),
                upper_threshold(prec),
            ],
            tol_log2: -(prec as f64) / 4.0,
        }
    }

    fn classify(&self, x: &Float) -> Region {
        for b in &self.bounds {
            let scale = log2_abs(b).max(0.0);
            if log2_abs(&(x - b)) <= scale + self.tol_log2 {
                return Region::Boundary;
            }
        }
        let regions = [Region::LOuter, Region::LInner, Region::MLow, Region::MHigh, Region::RNear];
        for (b, r) in self.bounds.iter().zip(regions) {
            if x < b {
                return r;
            }
        }
        Region::RFar
    }

    fn thresholds(&self) -> [f64; 5] {
        std::array::from_fn(|i| to_f64(&self.bounds[i]))
    }
}

/// One step of `(c - x)^3 / (k x^2)` in floating point.
fn float_step(c: &Float, k: &Float, x: &Float) -> Float {
    let w = c - x;
    &(&(&w * &w) * &w) / &(k * &(x * x))
}

/// Iterates `H^1(j0), ..., H^n(j0)` at `precision_bits` and counts them by
/// region. Boundary hits are counted separately and the orbit continues.
pub fn real_orbit_stats(map: &HMap, j0: &Float, n: u64, precision_bits: usize) -> Result<IntervalStats> {
    let prec = precision_bits;
    let classes = real_orbit_regions(map, j0, n, prec)?;
    let mut counts = RefinedCounts::default();
    let mut hits = 0;
    for r in classes {
        if r == Region::Boundary {
            hits += 1;
        }
        counts.bump(r);
    }
    Ok(IntervalStats {
        n,
        precision_bits: prec,
        counts,
        boundary_hits: hits,
        thresholds: Classifier::new(prec).thresholds(),
    })
}

/// Region of each iterate `H^1(j0), ..., H^n(j0)`.
pub fn real_orbit_regions(map: &HMap, j0: &Float, n: u64, prec: usize) -> Result<Vec<Region>> {
    Ok(real_orbit_trace(map, j0, n, prec)?.into_iter().map(|(_, r)| r).collect())
}

/// Iterates `H^1(j0), ..., H^n(j0)` with their regions, rounded to `f64`
/// for display. Fails once an iterate leaves `[2^(-prec/2), 2^(prec/2)]`
/// in magnitude, where the fixed precision no longer tracks it.
pub fn real_orbit_trace(map: &HMap, j0: &Float, n: u64, prec: usize) -> Result<Vec<(f64, Region)>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let (c, k) = map.constants();
    let (c, k) = (float_from_int(c, prec), float_from_int(k, prec));
    let classifier = Classifier::new(prec);
    let limit = prec as f64 / 2.0;
    let mut x = j0.clone().with_precision(prec).value();
    let mut out = Vec::with_capacity(n as usize);
    for step in 1..=n as usize {
        if x == Float::ZERO {
            return Err(Error::PrecisionExhausted { step });
        }
        x = float_step(&c, &k, &x);
        let l = log2_abs(&x);
        if l > limit || (x != Float::ZERO && l < -limit) {
            return Err(Error::PrecisionExhausted { step });
        }
        out.push((to_f64(&x), classifier.classify(&x)));
    }
    Ok(out)
}

/// Exact region of a rational. The upper threshold is irrational, so the
/// comparison doubles the working precision until the gap is resolved.
fn exact_region(x: &ExtRational) -> Region {
    let ExtRational::Finite(q) = x else {
        return Region::Boundary;
    };
    let ints = [-13824i64, 0, 1728, 6912];
    if ints.iter().any(|b| *q == int(*b)) {
        return Region::Boundary;
    }
    let regions = [Region::LOuter, Region::LInner, Region::MLow, Region::MHigh];
    for (b, r) in ints.iter().zip(regions) {
        if *q < int(*b) {
            return r;
        }
    }
    let mut bits = 128;
    loop {
        let t = upper_threshold(bits);
        let gap = &float_from_rational(q, bits) - &t;
        if log2_abs(&gap) > log2_abs(&t) - bits as f64 + 8.0 {
            return if gap < Float::ZERO { Region::RNear } else { Region::RFar };
        }
        bits *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementReport {
    pub steps: usize,
    pub agree: bool,
    pub first_disagreement: Option<usize>,
}

/// Compares the exact and floating regions of `H^1(j0), ..., H^n(j0)`.
/// The exact iterates roughly triple in size per step, so `n` is small.
pub fn exact_float_agreement(map: &HMap, j0: &ExactRational, n: usize, prec: usize) -> Result<AgreementReport> {
    let float_regions = real_orbit_regions(map, &float_from_rational(j0, prec), n as u64, prec)?;
    let mut x = ExtRational::Finite(j0.clone());
    for (i, fr) in float_regions.iter().enumerate() {
        x = map.eval_exact(&x)?;
        if exact_region(&x) != *fr {
            return Ok(AgreementReport {
                steps: n,
                agree: false,
                first_disagreement: Some(i + 1),
            });
        }
    }
    Ok(AgreementReport {
        steps: n,
        agree: true,
        first_disagreement: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub runs: usize,
    pub n: u64,
    pub precision_bits: usize,
    /// Seeds are drawn uniformly from `[lo, hi)`.
    pub lo: f64,
    pub hi: f64,
    /// Runs are stable when the coarse frequencies at full and half
    /// precision differ by at most this much.
    pub stability_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            runs: 32,
            n: 10_000,
            precision_bits: 512,
            lo: -20_000.0,
            hi: 20_000.0,
            stability_tol: 0.01,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRow {
    pub run: usize,
    pub seed: u64,
    pub j0: f64,
    pub n: u64,
    pub precision_bits: usize,
    pub stats: Option<IntervalStats>,
    pub stable: bool,
    /// Largest coarse-frequency change when the precision is halved.
    pub stability_gap: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub rows: Vec<RunRow>,
    pub mean_coarse: [f64; 3],
    pub mean_refined: [f64; 6],
    pub stable_fraction: f64,
}

/// Draws a seed in `[lo, hi)` that is not within `1e-6` relative of a
/// threshold or the pole.
fn draw_seed(rng: &mut ChaCha20Rng, lo: f64, hi: f64) -> f64 {
    loop {
        let x: f64 = rng.gen_range(lo..hi);
        let bad = [-13824.0, 0.0, 1728.0, 6912.0, 393_622.0]
            .iter()
            .any(|b: &f64| (x - b).abs() <= 1e-6 * b.abs().max(1.0));
        if !bad {
            return x;
        }
    }
}

pub fn run_one(map: &HMap, cfg: &SweepConfig, run: usize) -> RunRow {
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    rng.set_stream(run as u64);
    let j0 = draw_seed(&mut rng, cfg.lo, cfg.hi);
    let full = real_orbit_stats(map, &float_from_f64(j0, cfg.precision_bits), cfg.n, cfg.precision_bits);
    let half_prec = cfg.precision_bits / 2;
    let half = real_orbit_stats(map, &float_from_f64(j0, half_prec), cfg.n, half_prec);
    let (stats, stable, gap, error) = match (full, half) {
        (Ok(f), Ok(h)) => {
            let gap = f
                .coarse_frequencies()
                .iter()
                .zip(h.coarse_frequencies())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            (Some(f), gap <= cfg.stability_tol, Some(gap), None)
        }
        (Ok(f), Err(e)) => (Some(f), false, None, Some(format!("half precision: {e}"))),
        (Err(e), _) => (None, false, None, Some(e.to_string())),
    };
    RunRow {
        run,
        seed: cfg.seed,
        j0,
        n: cfg.n,
        precision_bits: cfg.precision_bits,
        stats,
        stable,
        stability_gap: gap,
        error,
    }
}

/// Independent seeded runs; results do not depend on scheduling.
pub fn sweep(map: &HMap, cfg: &SweepConfig) -> SweepReport {
    #[cfg(feature = "parallel")]
    let rows: Vec<RunRow> = (0..cfg.runs).into_par_iter().map(|r| run_one(map, cfg, r)).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<RunRow> = (0..cfg.runs).map(|r| run_one(map, cfg, r)).collect();

    let ok: Vec<&IntervalStats> = rows.iter().filter_map(|r| r.stats.as_ref()).collect();
    let denom = ok.len().max(1) as f64;
    let mut mean_coarse = [0.0; 3];
    let mut mean_refined = [0.0; 6];
    for s in &ok {
        for (m, f) in mean_coarse.iter_mut().zip(s.coarse_frequencies()) {
            *m += f / denom;
        }
        for (m, f) in mean_refined.iter_mut().zip(s.refined_frequencies()) {
            *m += f / denom;
        }
    }
    let stable_fraction = rows.iter().filter(|r| r.stable).count() as f64 / rows.len().max(1) as f64;
    SweepReport {
        config: cfg.clone(),
        rows,
        mean_coarse,
        mean_refined,
        stable_fraction,
    }
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "run,seed,j0,n,precision_bits,l_outer,l_inner,m_low,m_high,r_near,r_far,boundary_hits,stable,stability_gap,error\n",
        );
        for r in &self.rows {
            let counts = r
                .stats
                .as_ref()
                .map(|s| {
                    let c = s.counts.as_array();
                    format!("{},{},{},{},{},{},{}", c[0], c[1], c[2], c[3], c[4], c[5], s.boundary_hits)
                })
                .unwrap_or_else(|| ",,,,,,".into());
            out.push_str(&format!(
                "{},{},{:e},{},{},{},{},{},{}\n",
                r.run,
                r.seed,
                r.j0,
                r.n,
                r.precision_bits,
                counts,
                r.stable,
                r.stability_gap.map(|g| g.to_string()).unwrap_or_default(),
                r.error.as_deref().unwrap_or("").replace(',', ";"),
            ));
        }
        out
    }
}

/// A p-adic valuation, `+inf` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    PosInf,
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::PosInf => s.serialize_str("+inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub fn valuation(x: &ExactRational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::PosInf;
    }
    let p = BigInt::from(p);
    Valuation::Finite(int_valuation(x.numer(), &p) - int_valuation(x.denom(), &p))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PadicTrace {
    pub prime: u64,
    pub j0: String,
    /// `v_p(H^i(j0))` for the finite iterates, `i = 0, 1, ...`.
    pub valuations: Vec<Valuation>,
    /// `v_p(H^(i+1)(j0) - H^i(j0))` for consecutive finite iterates.
    pub difference_valuations: Vec<Valuation>,
    /// Index of the first iterate equal to infinity, where the trace stops.
    pub infinity_at: Option<usize>,
    /// Difference valuations over the last quarter never decrease and end
    /// higher than they start (or at `+inf`). Evidence only.
    pub cauchy_trend: bool,
}

pub const DEFAULT_PADIC_CAP_BITS: u64 = 1_000_000;

fn size_bits(q: &ExactRational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

pub fn padic_orbit(map: &HMap, j0: &ExactRational, p: u64, n: usize, cap_bits: u64) -> Result<PadicTrace> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if j0.is_zero() {
        return Err(Error::OutOfRange("j0 = 0 is the pole of H".into()));
    }
    let mut values = vec![j0.clone()];
    let mut infinity_at = None;
    for step in 1..=n {
        match map.eval_exact(&ExtRational::Finite(values.last().unwrap().clone()))? {
            ExtRational::Infinity => {
                infinity_at = Some(step);
                break;
            }
            ExtRational::Finite(q) => {
                if size_bits(&q) > cap_bits {
                    return Err(Error::ExactBlowup { step, cap_bits });
                }
                values.push(q);
            }
        }
    }
    let valuations: Vec<Valuation> = values.iter().map(|q| valuation(q, p)).collect();
    let difference_valuations: Vec<Valuation> =
        values.windows(2).map(|w| valuation(&(&w[1] - &w[0]), p)).collect();
    let cauchy_trend = trend(&difference_valuations);
    Ok(PadicTrace {
        prime: p,
        j0: j0.to_string(),
        valuations,
        difference_valuations,
        infinity_at,
        cauchy_trend,
    })
}

fn trend(d: &[Valuation]) -> bool {
    if d.len() < 2 {
        return false;
    }
    let tail = &d[d.len() - (d.len() / 4).max(2)..];
    let monotone = tail.windows(2).all(|w| w[0] <= w[1]);
    let last = *tail.last().unwrap();
    monotone && (last == Valuation::PosInf || last > tail[0])
}

/// `log2` of the magnitude of an iterate, for diagnostics in reports.
pub fn magnitude_log2(q: &ExactRational) -> f64 {
    q.to_f64().map(|x| x.abs().log2()).unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn upper_threshold_value() {
        let t = to_f64(&upper_threshold(256));
        assert!((t - 393_622.0).abs() < 1.0, "{t}");
    }

    #[test]
    fn fixed_point_is_all_hits() {
        let h = HMap::new();
        let s = real_orbit_stats(&h, &float_from_int(1728, 256), 50, 256).unwrap();
        assert_eq!(s.boundary_hits, 50);
        assert_eq!(s.l() + s.m() + s.r(), 0);
    }

    #[test]
    fn counts_are_conserved_and_deterministic() {
        let h = HMap::new();
        let j0 = float_from_f64(2.0, 256);
        let a = real_orbit_stats(&h, &j0, 2000, 256).unwrap();
        let b = real_orbit_stats(&h, &j0, 2000, 256).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.l() + a.m() + a.r() + a.boundary_hits, 2000);
    }

    #[test]
    fn right_region_maps_left() {
        let h = HMap::new();
        let regions = real_orbit_regions(&h, &float_from_f64(3.0, 256), 3000, 256).unwrap();
        for w in regions.windows(2) {
            if matches!(w[0], Region::RNear | Region::RFar) {
                assert!(matches!(w[1], Region::LOuter | Region::LInner | Region::Boundary));
            }
        }
    }

    #[test]
    fn exact_and_float_agree_briefly() {
        let h = HMap::new();
        let r = exact_float_agreement(&h, &int(2), 8, 512).unwrap();
        assert!(r.agree, "{r:?}");
    }

    #[test]
    fn padic_examples() {
        let h = HMap::new();
        let t = padic_orbit(&h, &int(1728), 5, 10, DEFAULT_PADIC_CAP_BITS).unwrap();
        assert!(t.difference_valuations.iter().all(|v| *v == Valuation::PosInf));
        assert!(t.cauchy_trend);

        let t = padic_orbit(&h, &int(6912), 2, 10, DEFAULT_PADIC_CAP_BITS).unwrap();
        assert_eq!(t.valuations, vec![Valuation::Finite(8), Valuation::PosInf]);
        assert_eq!(t.infinity_at, Some(2));

        let t = padic_orbit(&h, &int(1), 3, 1, DEFAULT_PADIC_CAP_BITS).unwrap();
        assert_eq!(t.valuations[1], Valuation::Finite(-3));

        assert!(matches!(padic_orbit(&h, &int(2), 4, 3, DEFAULT_PADIC_CAP_BITS), Err(Error::NotPrime(4))));
        assert!(matches!(padic_orbit(&h, &int(2), 3, 30, 10_000), Err(Error::ExactBlowup { .. })));
    }

    #[test]
    fn valuation_is_additive() {
        let x = rat(2 * 2 * 3, 5);
        let y = rat(7, 2 * 9);
        for p in [2, 3, 5, 7] {
            let (Valuation::Finite(a), Valuation::Finite(b), Valuation::Finite(c)) =
                (valuation(&x, p), valuation(&y, p), valuation(&(&x * &y), p))
            else {
                panic!()
            };
            assert_eq!(a + b, c);
        }
    }

    #[test]
    fn json_uses_inf_sentinel() {
        let js = serde_json::to_string(&vec![Valuation::Finite(2), Valuation::PosInf]).unwrap();
        assert_eq!(js, r#"[2,"+inf"]"#);
    }
}

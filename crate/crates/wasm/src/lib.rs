//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string; errors come back as
//! `{"error": "..."}` so the page needs no exception handling.

use hesse_core::cubics::fiber_orbit_capped;
use hesse_core::cubics::pencil::DEFAULT_HEIGHT_CAP_BITS;
use hesse_core::exact::{parse_poly, parse_rational};
use hesse_core::experiments::{real_orbit_stats, real_orbit_trace, IntervalStats, Region};
use hesse_core::hmap::{HMap, OrbitRecordJson};
use hesse_core::numeric::bigfloat::float_from_rational;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Browser-side caps, lower than the library's.
pub const MAX_PERIOD: usize = 3;
pub const MAX_STEPS: u64 = 20_000;
pub const MAX_FIBER_STEPS: usize = 12;

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e),
    }
}

fn error_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

#[derive(Serialize)]
pub struct Periodic {
    pub n: usize,
    pub precision_bits: usize,
    pub orbits: Vec<OrbitRecordJson>,
}

pub fn periodic_points_impl(n: usize, precision_bits: usize) -> Result<Periodic, String> {
    if n == 0 || n > MAX_PERIOD {
        return Err(format!("period must be in 1..={MAX_PERIOD}"));
    }
    if precision_bits < 64 {
        return Err("precision must be at least 64 bits".into());
    }
    let orbits = HMap::new().all_orbits(n, precision_bits).map_err(|e| e.to_string())?;
    Ok(Periodic {
        n,
        precision_bits,
        orbits: orbits.iter().map(|o| o.to_json()).collect(),
    })
}

/// Cycles of period dividing `n`, with multipliers and stability.
#[wasm_bindgen]
pub fn periodic_points(n: usize, precision_bits: usize) -> String {
    to_json(periodic_points_impl(n, precision_bits))
}

#[derive(Serialize)]
pub struct RealOrbit {
    pub stats: IntervalStats,
    pub values: Vec<f64>,
    pub regions: Vec<Region>,
}

pub fn real_orbit_impl(j0: &str, n: u64, precision_bits: usize) -> Result<RealOrbit, String> {
    if n == 0 || n > MAX_STEPS {
        return Err(format!("steps must be in 1..={MAX_STEPS}"));
    }
    if precision_bits < 64 {
        return Err("precision must be at least 64 bits".into());
    }
    let q = parse_rational(j0).map_err(|e| e.to_string())?;
    let map = HMap::new();
    let x = float_from_rational(&q, precision_bits);
    let stats = real_orbit_stats(&map, &x, n, precision_bits).map_err(|e| e.to_string())?;
    let (values, regions) = real_orbit_trace(&map, &x, n, precision_bits)
        .map_err(|e| e.to_string())?
        .into_iter()
        .unzip();
    Ok(RealOrbit { stats, values, regions })
}

/// Interval counts and the iterates of a real orbit from a rational seed.
#[wasm_bindgen]
pub fn real_orbit(j0: &str, n: u32, precision_bits: usize) -> String {
    to_json(real_orbit_impl(j0, n as u64, precision_bits))
}

pub fn pencil_orbit_impl(minpoly: &str, max_n: usize) -> Result<hesse_core::cubics::FiberCertificate, String> {
    if max_n == 0 || max_n > MAX_FIBER_STEPS {
        return Err(format!("steps must be in 1..={MAX_FIBER_STEPS}"));
    }
    let m = parse_poly(minpoly).map_err(|e| e.to_string())?;
    fiber_orbit_capped(&m, max_n, DEFAULT_HEIGHT_CAP_BITS).map_err(|e| e.to_string())
}

/// Orbit certificate of the pencil fibers cut out by `minpoly`.
#[wasm_bindgen]
pub fn pencil_orbit(minpoly: &str, max_n: usize) -> String {
    to_json(pencil_orbit_impl(minpoly, max_n))
}

//! `hesse`: scriptable front end to the hesse-core library.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on a
//! usage error, 3 when a computation raises an error.

mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hesse_core::cubics::pencil::{DEFAULT_HEIGHT_CAP_BITS, DEFAULT_MAX_N};
use hesse_core::cubics::fiber_orbit_capped;
use hesse_core::exact::{parse_poly, parse_rational};
use hesse_core::experiments::{
    padic_orbit, real_orbit_stats, sweep, SweepConfig, DEFAULT_PADIC_CAP_BITS,
};
use hesse_core::hmap::{HMap, NUMERIC_CAP};
use hesse_core::numeric::bigfloat::float_from_rational;
use hesse_core::orbits::{CountMethod, OrbitCountTable};
use hesse_core::ratfun::ExtPoint;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hesse", version, about = "Exact and numeric dynamics of the Hessian map on j-invariants")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the exact verification suite.
    Verify {
        /// Replace the constant 6912 in H (negative control).
        #[arg(long, hide = true)]
        corrupt_constant: Option<i64>,
    },
    /// Periodic orbits of period dividing N with multipliers.
    Periodic {
        #[arg(long)]
        n: usize,
        #[arg(long, env = "HESSE_PRECISION", default_value_t = 256)]
        precision: usize,
        /// Largest N accepted.
        #[arg(long, default_value_t = NUMERIC_CAP)]
        cap: usize,
    },
    /// Number of cycles of each exact length.
    Orbits {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Orbit of a Hesse-pencil fiber under the Hessian.
    Pencil {
        /// File holding one polynomial in t.
        #[arg(long)]
        minpoly: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_CAP_BITS)]
        height_cap_bits: u64,
    },
    /// Interval frequencies along real orbits.
    Stats {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        #[arg(long, env = "HESSE_PRECISION", default_value_t = 512)]
        precision: usize,
        #[arg(long, default_value_t = 32)]
        runs: usize,
        #[arg(long, default_value_t = -20_000.0, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value_t = 20_000.0, allow_negative_numbers = true)]
        hi: f64,
        /// Single orbit from this rational seed instead of a sweep.
        #[arg(long, allow_hyphen_values = true)]
        j0: Option<String>,
    },
    /// p-adic valuations along an exact orbit.
    Padic {
        #[arg(long, allow_hyphen_values = true)]
        j0: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_PADIC_CAP_BITS)]
        cap_bits: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Recursive,
}

enum Failure {
    Usage(String),
    Check(String),
    Compute(hesse_core::Error),
}

impl From<hesse_core::Error> for Failure {
    fn from(e: hesse_core::Error) -> Self {
        Failure::Compute(e)
    }
}

struct Rendered {
    json: Value,
    csv: String,
    text: String,
}

impl Rendered {
    fn pick(self, f: Format) -> String {
        match f {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json") + "\n",
            Format::Csv => self.csv,
            Format::Text => self.text,
        }
    }
}

fn precision_ok(p: usize) -> Result<(), Failure> {
    if p < 64 {
        return Err(Failure::Usage(format!("precision must be at least 64 bits, got {p}")));
    }
    Ok(())
}

fn cmd_verify(corrupt: Option<i64>) -> (Rendered, Option<String>) {
    let map = match corrupt {
        Some(c) => HMap::with_constants(c, 27),
        None => HMap::new(),
    };
    let checks = verify::run_suite(&map);
    let failed = checks.iter().find(|c| !c.passed).map(|c| c.name.to_string());
    let r = Rendered {
        json: verify::to_json(&checks),
        csv: verify::to_csv(&checks),
        text: verify::to_text(&checks),
    };
    (r, failed)
}

fn cmd_periodic(n: usize, precision: usize, cap: usize) -> Result<Rendered, Failure> {
    precision_ok(precision)?;
    if n == 0 || n > cap {
        return Err(Failure::Usage(format!("n must be in 1..={cap}, got {n}")));
    }
    if cap > NUMERIC_CAP {
        eprintln!("warning: periodic cap raised to {cap}; degree 3^n root finding grows quickly");
    }
    let map = HMap::new();
    let records = map.all_orbits(n, precision)?;
    let json_records: Vec<_> = records.iter().map(|r| r.to_json()).collect();
    let mut csv = String::from("orbit,exact_period,point_re,point_im,multiplier_re,multiplier_im,classification\n");
    let mut text = format!("period dividing {n} at {precision} bits: {} orbits\n", records.len());
    for (i, r) in records.iter().enumerate() {
        let j = r.to_json();
        text.push_str(&format!(
            "[{i}] period {}  {}  |multiplier| = {:.6}  multiplier = {} + {} i\n",
            r.exact_period,
            r.classification.as_str(),
            r.multiplier_abs(),
            short(&j.multiplier.re),
            short(&j.multiplier.im)
        ));
        for p in &r.points {
            let (re, im) = match p {
                ExtPoint::Finite(z) => {
                    let c = hesse_core::hmap::ComplexJson::from_big(z);
                    (c.re, c.im)
                }
                ExtPoint::Infinity => ("inf".to_string(), String::new()),
            };
            text.push_str(&format!("      {} {}\n", short(&re), if im.is_empty() { String::new() } else { format!("+ {} i", short(&im)) }));
            csv.push_str(&format!(
                "{i},{},{re},{im},{},{},{}\n",
                r.exact_period,
                j.multiplier.re,
                j.multiplier.im,
                r.classification.as_str()
            ));
        }
    }
    Ok(Rendered {
        json: json!({"schema": "hesse.periodic/1", "n": n, "precision_bits": precision, "orbits": json_records}),
        csv,
        text,
    })
}

fn short(s: &str) -> String {
    let x: f64 = s.parse().unwrap_or(f64::NAN);
    format!("{x:.12e}")
}

fn cmd_orbits(max: u64, method: Method) -> Result<Rendered, Failure> {
    if max == 0 {
        return Err(Failure::Usage("max must be at least 1".into()));
    }
    let method = match method {
        Method::Closed => CountMethod::Closed,
        Method::Recursive => CountMethod::Recursive,
    };
    let t = OrbitCountTable::build(max, method)?;
    let text = t.entries.iter().map(|(n, b)| format!("{n}\t{b}\n")).collect();
    let mut js = serde_json::to_value(&t).expect("json");
    js["schema"] = json!("hesse.orbits/1");
    Ok(Rendered { json: js, csv: t.to_csv(), text })
}

fn cmd_pencil(path: &PathBuf, max_n: usize, cap: u64) -> Result<Rendered, Failure> {
    let src = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let m = parse_poly(src.trim()).map_err(|e| Failure::Usage(format!("malformed minpoly file: {e}")))?;
    if max_n > DEFAULT_MAX_N {
        eprintln!("warning: max-n raised to {max_n}; each step composes in the quotient ring");
    }
    let cert = fiber_orbit_capped(&m, max_n, cap)?;
    let mut csv = String::from("factor,degree,outcome,detail\n");
    let mut text = format!(
        "modulus {}\norbit length {}\n",
        cert.modulus,
        cert.orbit_length.map(|l| l.to_string()).unwrap_or_else(|| "none".into())
    );
    for f in &cert.per_factor_results {
        let o = serde_json::to_value(&f.outcome).expect("json");
        let kind = o["outcome"].as_str().unwrap_or("").to_string();
        let detail = o
            .as_object()
            .map(|m| {
                m.iter()
                    .filter(|(k, _)| *k != "outcome")
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default();
        csv.push_str(&format!("\"{}\",{},{kind},{detail}\n", f.factor, f.degree));
        text.push_str(&format!("  degree {:>3}  {kind} {detail}\n", f.degree));
    }
    let mut js = serde_json::to_value(&cert).expect("json");
    js["schema"] = json!("hesse.pencil/1");
    Ok(Rendered { json: js, csv, text })
}

#[allow(clippy::too_many_arguments)]
fn cmd_stats(seed: u64, n: u64, precision: usize, runs: usize, lo: f64, hi: f64, j0: Option<String>) -> Result<Rendered, Failure> {
    precision_ok(precision)?;
    if n == 0 || runs == 0 {
        return Err(Failure::Usage("n and runs must be positive".into()));
    }
    let map = HMap::new();
    if let Some(j0) = j0 {
        let q = parse_rational(&j0).map_err(|e| Failure::Usage(e.to_string()))?;
        let s = real_orbit_stats(&map, &float_from_rational(&q, precision), n, precision)?;
        let c = s.counts.as_array();
        let csv = format!(
            "j0,n,precision_bits,l_outer,l_inner,m_low,m_high,r_near,r_far,boundary_hits\n{j0},{n},{precision},{},{},{},{},{},{},{}\n",
            c[0], c[1], c[2], c[3], c[4], c[5], s.boundary_hits
        );
        let f = s.coarse_frequencies();
        let text = format!(
            "j0 = {j0}, n = {n}, {precision} bits\nL/n = {:.4}  M/n = {:.4}  R/n = {:.4}\nrefined {:?}\nboundary hits {}\n",
            f[0], f[1], f[2], c, s.boundary_hits
        );
        let mut js = serde_json::to_value(&s).expect("json");
        js["schema"] = json!("hesse.stats.single/1");
        js["j0"] = json!(j0);
        return Ok(Rendered { json: js, csv, text });
    }
    if lo >= hi {
        return Err(Failure::Usage("need lo < hi".into()));
    }
    let cfg = SweepConfig {
        seed,
        runs,
        n,
        precision_bits: precision,
        lo,
        hi,
        ..SweepConfig::default()
    };
    let report = sweep(&map, &cfg);
    let text = format!(
        "{runs} runs, n = {n}, {precision} bits, seed {seed}\nmean L/n, M/n, R/n = {:.4?}\nmean refined = {:.4?}\nstable fraction = {:.3}\n",
        report.mean_coarse, report.mean_refined, report.stable_fraction
    );
    let mut js = serde_json::to_value(&report).expect("json");
    js["schema"] = json!("hesse.stats/1");
    Ok(Rendered { json: js, csv: report.to_csv(), text })
}

fn cmd_padic(j0: &str, p: u64, n: usize, cap: u64) -> Result<Rendered, Failure> {
    let q = parse_rational(j0).map_err(|e| Failure::Usage(e.to_string()))?;
    let t = match padic_orbit(&HMap::new(), &q, p, n, cap) {
        Err(e @ (hesse_core::Error::NotPrime(_) | hesse_core::Error::OutOfRange(_))) => {
            return Err(Failure::Usage(e.to_string()))
        }
        r => r?,
    };
    let js_val = serde_json::to_value(&t).expect("json");
    let mut csv = String::from("i,valuation,difference_valuation\n");
    for (i, v) in js_val["valuations"].as_array().into_iter().flatten().enumerate() {
        let d = js_val["difference_valuations"].get(i).map(plain).unwrap_or_default();
        csv.push_str(&format!("{i},{},{d}\n", plain(v)));
    }
    let text = format!(
        "j0 = {}, p = {p}\nvaluations  {}\ndifferences {}\ninfinity at {}\ncauchy trend {}\n",
        t.j0,
        join(&js_val["valuations"]),
        join(&js_val["difference_valuations"]),
        t.infinity_at.map(|i| i.to_string()).unwrap_or_else(|| "never".into()),
        t.cauchy_trend
    );
    let mut js = js_val;
    js["schema"] = json!("hesse.padic/1");
    Ok(Rendered { json: js, csv, text })
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn join(v: &Value) -> String {
    v.as_array().into_iter().flatten().map(plain).collect::<Vec<_>>().join(" ")
}

fn write_out(common: &Common, body: &str) -> Result<(), Failure> {
    match &common.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).ok();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Verify { corrupt_constant } => {
            let (r, failed) = cmd_verify(*corrupt_constant);
            write_out(&cli.common, &r.pick(cli.common.format)).and(match failed {
                Some(name) => Err(Failure::Check(name)),
                None => Ok(()),
            })
        }
        cmd => {
            let r = match cmd {
                Cmd::Periodic { n, precision, cap } => cmd_periodic(*n, *precision, *cap),
                Cmd::Orbits { max, method } => cmd_orbits(*max, *method),
                Cmd::Pencil { minpoly, max_n, height_cap_bits } => cmd_pencil(minpoly, *max_n, *height_cap_bits),
                Cmd::Stats { seed, n, precision, runs, lo, hi, j0 } => {
                    cmd_stats(*seed, *n, *precision, *runs, *lo, *hi, j0.clone())
                }
                Cmd::Padic { j0, p, n, cap_bits } => cmd_padic(j0, *p, *n, *cap_bits),
                Cmd::Verify { .. } => unreachable!(),
            };
            r.and_then(|r| write_out(&cli.common, &r.pick(cli.common.format)))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(name)) => {
            eprintln!("error: check failed: {name}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

//! The exact verification suite behind `hesse verify`.

use hesse_core::cubics::{hesse_hessian, verify_weierstrass_hessian, verify_h_of_j};
use hesse_core::exact::int;
use hesse_core::hmap::{HMap, EXACT_CAP};
use hesse_core::orbits::{count_orbits_closed, count_orbits_recursive_memo, moebius_divisor_sum};
use serde_json::{json, Value};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn weierstrass_hessian() -> Check {
    let r = verify_weierstrass_hessian();
    check("weierstrass_hessian_j", r.passed(), format!("{r:?}"))
}

fn h_of_j(map: &HMap) -> Check {
    check("h_of_j_identity", verify_h_of_j(map), "H(j(a,b)) j-identity in Q(a,b)")
}

fn pcf(map: &HMap) -> Check {
    match map.pcf_verify() {
        Ok(r) => {
            let orbits: Vec<String> = r
                .orbits
                .iter()
                .map(|o| o.orbit.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" -> "))
                .collect();
            check(
                "pcf_critical_orbits",
                r.postcritically_finite && r.no_periodic_critical_points && r.julia_set_is_sphere,
                orbits.join("; "),
            )
        }
        Err(e) => check("pcf_critical_orbits", false, e.to_string()),
    }
}

fn leading_coefficients(map: &HMap) -> Check {
    for n in 1..=EXACT_CAP {
        let f = map.iterate(n);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let want_den = (0..n).fold(int(1), |acc, _| acc * int(27));
        let ok = f.degree() == 3usize.pow(n as u32)
            && f.ddeg() == 1
            && f.num().leading() == Some(&int(sign))
            && f.den().leading() == Some(&want_den)
            && f.is_reduced();
        if !ok {
            return check("iterate_leading_coefficients", false, format!("fails at n = {n}"));
        }
    }
    check("iterate_leading_coefficients", true, format!("n = 1..{EXACT_CAP}"))
}

fn moebius_lemma() -> Check {
    let bad = (1..=10_000u64).find(|&n| moebius_divisor_sum(n) != if n == 1 { 1 } else { 0 });
    match bad {
        None => check("moebius_divisor_sums", true, "n = 1..10000"),
        Some(n) => check("moebius_divisor_sums", false, format!("fails at n = {n}")),
    }
}

fn orbit_counts() -> Check {
    let mut memo = Default::default();
    for n in 1..=24 {
        let same = match (count_orbits_recursive_memo(n, &mut memo), count_orbits_closed(n)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        if !same {
            return check("orbit_counts_recursive_eq_closed", false, format!("fails at n = {n}"));
        }
    }
    check("orbit_counts_recursive_eq_closed", true, "n = 1..24")
}

fn fixed_points(map: &HMap) -> Check {
    let rational = map.eval_exact(&int(1728).into()).ok() == Some(int(1728).into());
    match map.fixed_point_closed_forms() {
        Ok(c) => {
            let pair = [("3456/7*(-1 + 3*t)", "-1/2*t - 3/2"), ("3456/7*(-1 - 3*t)", "1/2*t - 3/2")];
            let ok = pair.iter().all(|(v, m)| {
                c.entry(v).is_some_and(|e| e.is_root && e.multiplier.as_deref() == Some(*m))
            });
            check(
                "fixed_point_closed_forms",
                rational && ok,
                format!("1728 and 3456/7 (-1 +- 3t) over {}, multipliers -3/2 -+ t/2", c.modulus),
            )
        }
        Err(e) => check("fixed_point_closed_forms", false, e.to_string()),
    }
}

fn period_two(map: &HMap) -> Check {
    let sq = map.squarefree_check(2);
    let fact = map.period_two_factorization_holds();
    let surds = map
        .period_two_surds()
        .map(|c| {
            let swap = [("3456*(5 + 3*t)", "-10368*t + 17280"), ("3456*(5 - 3*t)", "10368*t + 17280")];
            swap.iter()
                .all(|(v, img)| c.entry(v).is_some_and(|e| e.is_root && e.image.as_deref() == Some(*img)))
        })
        .unwrap_or(false);
    check(
        "period_two_structure",
        sq.squarefree && sq.degree == 9 && fact && surds,
        format!("degree {}, squarefree {}, factorization {fact}, surds {surds}", sq.degree, sq.squarefree),
    )
}

fn hesse_pencil() -> Check {
    let h = hesse_hessian();
    check("hesse_pencil_hessian", h.matches_s_fiber, format!("{h:?}"))
}

pub fn run_suite(map: &HMap) -> Vec<Check> {
    vec![
        weierstrass_hessian(),
        h_of_j(map),
        pcf(map),
        leading_coefficients(map),
        moebius_lemma(),
        orbit_counts(),
        fixed_points(map),
        period_two(map),
        hesse_pencil(),
    ]
}

pub fn to_json(checks: &[Check]) -> Value {
    json!({
        "schema": "hesse.verify/1",
        "passed": checks.iter().all(|c| c.passed),
        "check_count": checks.len(),
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect::<Vec<_>>(),
    })
}

pub fn to_csv(checks: &[Check]) -> String {
    let mut out = String::from("name,passed\n");
    for c in checks {
        out.push_str(&format!("{},{}\n", c.name, c.passed));
    }
    out
}

pub fn to_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{mark} {}  ({})\n", c.name, c.detail));
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}

use hesse_core::cubics::pencil::is_singular_fiber;
use hesse_core::cubics::{hessian_form, pencil_haw_t, pencil_j, polar, polar_conic_degenerate, Mat3, TriForm};
use hesse_core::exact::{int, poly_gcd, rat, ExactRational, Modulus, RatPoly};
use hesse_core::experiments::{exact_float_agreement, padic_orbit, real_orbit_stats, valuation, Valuation};
use hesse_core::hmap::HMap;
use hesse_core::numeric::bigfloat::float_from_rational;
use hesse_core::orbits::{count_orbits_closed, moebius_divisor_sum, CountMethod, OrbitCountTable};
use hesse_core::ratfun::{ExtRational, RatFun};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn q() -> impl Strategy<Value = ExactRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_q() -> impl Strategy<Value = ExactRational> {
    q().prop_filter("nonzero", |x| !x.is_zero())
}

fn poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    proptest::collection::vec(q(), 1..=max_deg + 1).prop_map(RatPoly::from_coeffs)
}

/// Polynomial of exact degree `d`.
fn poly_of_degree(d: usize) -> impl Strategy<Value = RatPoly> {
    (proptest::collection::vec(q(), d), nonzero_q()).prop_map(|(mut c, lead)| {
        c.push(lead);
        RatPoly::from_coeffs(c)
    })
}

/// Reduced map `num / den` with `deg num = d`, `deg den = d - 1`.
fn ddeg_one(d: usize) -> impl Strategy<Value = RatFun> {
    (poly_of_degree(d), poly_of_degree(d - 1))
        .prop_filter_map("reduced of full degree", move |(n, m)| {
            let f = RatFun::new(n, m).ok()?;
            (f.num().degree() == Some(d) && f.den().degree() == Some(d - 1)).then_some(f)
        })
}

fn modulus() -> impl Strategy<Value = Modulus> {
    (1usize..=4)
        .prop_flat_map(|d| proptest::collection::vec(-6i64..=6, d))
        .prop_map(|mut c| {
            c.push(1);
            Modulus::new(&RatPoly::from_ints(&c)).expect("monic modulus")
        })
}

fn cubic() -> impl Strategy<Value = TriForm<ExactRational>> {
    form(3)
}

fn form(d: u32) -> impl Strategy<Value = TriForm<ExactRational>> {
    let n = ((d + 1) * (d + 2) / 2) as usize;
    proptest::collection::vec(-5i64..=5, n).prop_map(move |c| {
        let mut terms = Vec::new();
        let mut it = c.into_iter();
        for a in 0..=d {
            for b in 0..=d - a {
                terms.push(([a, b, d - a - b], int(it.next().unwrap())));
            }
        }
        TriForm::from_terms(d, terms)
    })
}

fn invertible() -> impl Strategy<Value = Mat3> {
    proptest::array::uniform3(proptest::array::uniform3(-4i64..=4))
        .prop_map(|m| Mat3(m.map(|r| r.map(int))))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn point() -> impl Strategy<Value = [ExactRational; 3]> {
    proptest::array::uniform3(-6i64..=6)
        .prop_filter("not the origin", |p| p.iter().any(|x| *x != 0))
        .prop_map(|p| p.map(int))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_of_common_multiple(f in poly(4), g in poly(4), h in poly_of_degree(2)) {
        prop_assume!(!f.is_zero() || !g.is_zero());
        let lhs = poly_gcd(&(&f * &h), &(&g * &h));
        let rhs = (&h.monic() * &poly_gcd(&f, &g)).monic();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_ring_axioms(m in modulus(), a in poly(5), b in poly(5), c in poly(5)) {
        let (x, y, z) = (m.elem(&a), m.elem(&b), m.elem(&c));
        let xy_z = x.try_mul(&y).unwrap().try_mul(&z).unwrap();
        let x_yz = x.try_mul(&y.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(&xy_z, &x_yz);
        let lhs = x.try_mul(&y.try_add(&z).unwrap()).unwrap();
        let rhs = x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        match x.invert() {
            Ok(inv) => prop_assert_eq!(x.try_mul(&inv).unwrap(), m.constant(int(1))),
            Err(hesse_core::Error::NotInvertible { gcd }) => {
                prop_assert!(gcd.degree().unwrap_or(0) >= 1 || x.rep().is_zero());
                prop_assert!(m.poly().rem(&gcd).unwrap().is_zero());
            }
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn rationals_with_unit_denominator_act_like_integers(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        prop_assert_eq!(int(a) + int(b), int(a + b));
        prop_assert_eq!(int(a) - int(b), int(a - b));
        prop_assert_eq!(int(a) * int(b), int(a * b));
        if b != 0 && a % b == 0 {
            prop_assert_eq!(int(a) / int(b), int(a / b));
        }
    }

    #[test]
    fn composition_degree_law(f in ddeg_one(3), g in ddeg_one(2)) {
        let h = f.compose(&g);
        prop_assert_eq!(h.degree(), 6);
        prop_assert_eq!(h.ddeg(), 1);
    }

    #[test]
    fn composition_is_associative(f in ddeg_one(2), g in ddeg_one(2), h in ddeg_one(2)) {
        prop_assert_eq!(f.compose(&g.compose(&h)), f.compose(&g).compose(&h));
    }

    #[test]
    fn pencil_routes_agree(t in q()) {
        let t: ExtRational = t.into();
        prop_assume!(!is_singular_fiber(&t) && !pencil_j(&t).singular);
        let lhs = pencil_j(&pencil_haw_t(&t)).j;
        let rhs = HMap::new().eval_exact(&pencil_j(&t).j).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn stats_conserve_and_repeat(n0 in -50i64..50, d in 1i64..9, n in 1u64..400) {
        let j0 = rat(n0, d);
        prop_assume!(!j0.is_zero());
        let h = HMap::new();
        let x = float_from_rational(&j0, 256);
        if let Ok(a) = real_orbit_stats(&h, &x, n, 256) {
            prop_assert_eq!(a.l() + a.m() + a.r() + a.boundary_hits, n);
            prop_assert_eq!(&a, &real_orbit_stats(&h, &x, n, 256).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn second_iterate_matches_two_steps(x in q()) {
        let h = HMap::new();
        let x: ExtRational = x.into();
        let once = h.eval_exact(&h.eval_exact(&x).unwrap()).unwrap();
        prop_assert_eq!(h.iterate(2).eval_exact(&x).unwrap(), once);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn hessian_covariance(f in cubic(), a in invertible()) {
        let det = a.det();
        let lhs = hessian_form(&f.substitute_linear(&a.0));
        let moved = hessian_form(&f).substitute_linear(&a.0);
        prop_assert!(lhs.proportional(&moved));
        prop_assert_eq!(lhs, moved.scale(&(&det * &det)));
    }

    #[test]
    fn polar_covariance(f in cubic(), a in invertible(), p in point()) {
        let inv = a.inverse().unwrap();
        let lhs = polar(&f.substitute_linear(&inv.0), &a.apply(&p));
        let rhs = polar(&f, &p).substitute_linear(&inv.0);
        prop_assert!(lhs.proportional(&rhs));
    }

    #[test]
    fn hessian_degree_law(f in (3u32..=5).prop_flat_map(form)) {
        let h = hessian_form(&f);
        prop_assert!(h.is_zero() || h.degree() == 3 * (f.degree() - 2));
    }

    #[test]
    fn polar_conic_degenerate_iff_on_hessian(f in cubic(), p in point()) {
        let on_hessian = hessian_form(&f).eval(&p).is_zero();
        prop_assert_eq!(polar_conic_degenerate(&f, &p), on_hessian);
    }

    #[test]
    fn fermat_hessian_points_give_degenerate_conics(s in q(), axis in 0usize..3) {
        // Hess(x^3 + y^3 + z^3) = 216 xyz vanishes on the coordinate lines.
        let f = TriForm::from_terms(3, [([3, 0, 0], int(1)), ([0, 3, 0], int(1)), ([0, 0, 3], int(1))]);
        let mut p = [int(1), s.clone(), s + int(2)];
        p[axis] = int(0);
        prop_assert!(polar_conic_degenerate(&f, &p));
    }

    #[test]
    fn valuations_are_additive_on_iterates(j0 in nonzero_q(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let h = HMap::new();
        let t = padic_orbit(&h, &j0, p, 3, 1 << 20).unwrap();
        prop_assert!(t.valuations.len() >= 2 || t.infinity_at.is_some());
        let mut x: ExtRational = j0.clone().into();
        let mut values = vec![j0];
        for _ in 0..3 {
            x = h.eval_exact(&x).unwrap();
            match &x {
                ExtRational::Finite(v) => values.push(v.clone()),
                ExtRational::Infinity => break,
            }
        }
        for w in values.windows(2) {
            if let (Valuation::Finite(a), Valuation::Finite(b), Valuation::Finite(c)) =
                (valuation(&w[0], p), valuation(&w[1], p), valuation(&(&w[0] * &w[1]), p))
            {
                prop_assert_eq!(a + b, c);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// The exact iterates roughly triple in size per step, so the horizon
    /// stops at 8.
    #[test]
    fn float_path_classifies_like_exact_path(n0 in -50i64..50, d in 1i64..9) {
        let j0 = rat(n0, d);
        prop_assume!(!j0.is_zero());
        let r = exact_float_agreement(&HMap::new(), &j0, 8, 512);
        if let Ok(r) = r {
            prop_assert!(r.agree, "{r:?}");
        }
    }
}

#[test]
fn leading_coefficients_and_degrees_of_iterates() {
    let h = HMap::new();
    let mut lead = int(1);
    for n in 1..=6usize {
        lead *= int(27);
        let f = h.iterate(n);
        assert_eq!(f.num().degree(), Some(3usize.pow(n as u32)));
        assert_eq!(f.den().degree(), Some(3usize.pow(n as u32) - 1));
        assert_eq!(f.num().leading(), Some(&int(if n % 2 == 0 { 1 } else { -1 })));
        assert_eq!(f.den().leading(), Some(&lead));
    }
}

#[test]
fn periodic_points_count_conserve_and_repel() {
    let h = HMap::new();
    for n in 1..=4usize {
        assert_eq!(h.find_periodic_points(n, 256).unwrap().len(), 3usize.pow(n as u32));
        assert!(h.squarefree_check(n).squarefree);
        let records = h.group_orbits(n, 256).unwrap();
        let points: usize = records.iter().map(|r| r.exact_period).sum();
        assert_eq!(points, 3usize.pow(n as u32));
        let exact = records.iter().filter(|r| r.exact_period == n).count();
        assert_eq!(BigInt::from(exact), count_orbits_closed(n as u64).unwrap());
        for r in &records {
            assert!(r.multiplier_abs() > 1.0 - 1e-6);
            assert_ne!(r.classification, hesse_core::hmap::Stability::Attracting);
        }
    }
}

#[test]
fn moebius_sums_vanish() {
    assert_eq!(moebius_divisor_sum(1), 1);
    assert!((2..=10_000).all(|n| moebius_divisor_sum(n) == 0));
}

#[test]
fn necklace_counts_conserve_points() {
    assert!(OrbitCountTable::build(24, CountMethod::Recursive).unwrap().conserves_points());
    assert!(OrbitCountTable::build(24, CountMethod::Closed).unwrap().conserves_points());
}

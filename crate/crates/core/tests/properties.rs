mod common;

use std::collections::BTreeSet;

use boundary_slopes::diagram::{
    adjacent, curve_system_at, is_nonhorizontal_edge, left_neighbors, uv_of_vertex, Edge, Vertex,
};
use boundary_slopes::edgepath::{r_cycle, Edgepath, Segment};
use boundary_slopes::enumerate::{infinity_systems, minimal_skeletons, solve_systems};
use boundary_slopes::knots::parse;
use boundary_slopes::surface::twist;
use boundary_slopes::{candidate_surfaces, frac, validate_admissible, Fraction, MontesinosKnot};
use common::{coprime, ends_level, knot_strategy, mirror_system, oracle};
use proptest::prelude::*;

fn tangle(x: Fraction) -> Vertex {
    Vertex::Tangle(x)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn same_rational(f: Fraction, n: i128, d: i128) -> bool {
    f.num() as i128 * d == n * f.den() as i128
}

fn any_fraction(bound: i64) -> impl Strategy<Value = Fraction> {
    (-bound..=bound, 1..=bound).prop_map(|(p, q)| Fraction::new(p, q).unwrap())
}

/// A non-integral vertex and one of its two leftward non-horizontal edges.
fn nh_edge(max_den: i64) -> impl Strategy<Value = Edge> {
    (2..=max_den, -3 * max_den..=3 * max_den, any::<bool>())
        .prop_filter("reduced", |(q, p, _)| coprime(*p, *q))
        .prop_map(|(q, p, pick)| {
            let nh: Vec<Edge> = left_neighbors(frac(p, q))
                .into_iter()
                .filter(|e| matches!(e, Edge::NonHorizontal { .. }))
                .collect();
            nh[pick as usize]
        })
}

fn unit_fraction() -> impl Strategy<Value = Fraction> {
    (1..=60i64).prop_flat_map(|d| (0..=d).prop_map(move |n| frac(n, d)))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(10_000))]

    #[test]
    fn normalize_is_idempotent_and_scale_free(p in -1_000_000i64..1_000_000, q in 1i64..1_000_000, k in 1i64..1000, neg in any::<bool>()) {
        let x = Fraction::new(p, q).unwrap();
        prop_assert_eq!(Fraction::new(x.num(), x.den()).unwrap(), x);
        let k = if neg { -k } else { k };
        prop_assert_eq!(Fraction::new(k * p, k * q).unwrap(), x);
        prop_assert!(x.den() > 0);
        prop_assert_eq!(gcd(x.num() as i128, x.den() as i128), 1);
    }

    #[test]
    fn arithmetic_matches_cross_multiplication(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let (x, y) = (frac(a, b), frac(c, d));
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        prop_assert!(same_rational(x + y, a * d + c * b, b * d));
        prop_assert!(same_rational(x - y, a * d - c * b, b * d));
        prop_assert!(same_rational(x * y, a * c, b * d));
        if c != 0 {
            prop_assert!(same_rational(x / y, a * d, b * c));
        }
        prop_assert_eq!(x < y, a * d < c * b);
        prop_assert_eq!(x == y, a * d == c * b);
    }
}

proptest! {
    #![proptest_config(config(2000))]

    #[test]
    fn continued_fraction_reconstructs(x in any_fraction(1000)) {
        let cf = x.continued_fraction();
        prop_assert_eq!(Fraction::from_continued_fraction(&cf).unwrap(), x);
    }

    #[test]
    fn curve_systems_match_coordinates(e in nh_edge(60), t in unit_fraction()) {
        let p = e.point_at(t);
        let cs = curve_system_at(p).unwrap();
        let total = cs.a + cs.b;
        prop_assert_eq!(frac(cs.b, total), p.u);
        prop_assert_eq!(frac(cs.c, total), p.v);
    }

    #[test]
    fn fraction_from_u_round_trips(e in nh_edge(60), t in unit_fraction()) {
        let p = e.point_at(t);
        let back = e.fraction_from_u(p.u).unwrap();
        prop_assert_eq!(back, t);
        prop_assert_eq!(e.point_at(back).u, p.u);
    }

    #[test]
    fn vertex_points_have_vertex_curve_systems(q in 1i64..80, p in -200i64..200) {
        let x = frac(p, q);
        let cs = curve_system_at(uv_of_vertex(tangle(x))).unwrap();
        prop_assert_eq!(cs.uv(), uv_of_vertex(tangle(x)));
    }

    #[test]
    fn subdividing_the_final_segment_keeps_invariants(e in nh_edge(40), t in unit_fraction(), cut in unit_fraction()) {
        prop_assume!(!t.is_zero());
        let src = match e.source() { Vertex::Tangle(s) => s, _ => unreachable!() };
        let whole = Edgepath::through(&[tangle(src), e.target()], t).unwrap();
        let mid = t * cut;
        let split = Edgepath {
            tangle: src,
            segments: vec![
                Segment { edge: e, start: Fraction::ZERO, end: mid },
                Segment { edge: e, start: mid, end: t },
            ],
        };
        prop_assert_eq!(split.final_r_value(), whole.final_r_value());
        prop_assert_eq!(split.length(), whole.length());
        prop_assert_eq!(split.end_point(), whole.end_point());
    }
}

#[test]
fn mediants_close_farey_triangles() {
    let pool: Vec<Fraction> = (1..=50i64)
        .flat_map(|q| {
            (0..=q)
                .filter(move |&p| coprime(p, q))
                .map(move |p| frac(p, q))
        })
        .collect();
    let mut edges = 0;
    for (i, &x) in pool.iter().enumerate() {
        for &y in &pool[i + 1..] {
            if !is_nonhorizontal_edge(x, y) {
                continue;
            }
            edges += 1;
            let m = frac(x.num() + y.num(), x.den() + y.den());
            assert_eq!(m.den(), x.den() + y.den());
            assert!(
                is_nonhorizontal_edge(m, x) && is_nonhorizontal_edge(m, y),
                "{x} {y}"
            );
        }
    }
    assert!(edges > 1000);
}

#[test]
fn left_neighbors_match_determinant_scan() {
    for q in 2..=50i64 {
        for p in -2 * q..=2 * q {
            if !coprime(p, q) {
                continue;
            }
            let mut brute = BTreeSet::new();
            for s in 1..q {
                for r in -3 * s..=3 * s {
                    if coprime(r, s) && (p * s - q * r).abs() == 1 {
                        brute.insert(frac(r, s));
                    }
                }
            }
            let found: BTreeSet<Fraction> = left_neighbors(frac(p, q))
                .into_iter()
                .map(|e| match e {
                    Edge::NonHorizontal { left, .. } => left,
                    other => panic!("unexpected {other:?}"),
                })
                .collect();
            assert_eq!(brute.len(), 2, "{p}/{q}");
            assert_eq!(found, brute, "{p}/{q}");
        }
    }
    let zero = left_neighbors(Fraction::ZERO);
    assert_eq!(zero.len(), 3);
    assert!(zero.contains(&Edge::Infinity(0)));
}

#[test]
fn full_edge_r_values_match_line_intersection() {
    let mut checked = 0;
    for q in 2..=30i64 {
        for p in -2 * q..=2 * q {
            if !coprime(p, q) {
                continue;
            }
            for e in left_neighbors(frac(p, q)) {
                let Edge::NonHorizontal { left, right } = e else {
                    continue;
                };
                let path =
                    Edgepath::through(&[tangle(right), tangle(left)], Fraction::ONE).unwrap();
                let (us, vs) = oracle::uv((right.num(), right.den()));
                let (ut, vt) = oracle::uv((left.num(), left.den()));
                let at_one = vs + (vs - vt) / (us - ut) * (Fraction::ONE - us);
                let expected = if vt < vs { -at_one.den() } else { at_one.den() };
                assert_eq!(path.final_r_value().unwrap(), expected, "{right} -> {left}");
                assert_eq!(expected.abs(), right.den() - left.den());
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn skeleton_counts_are_bounded_and_complete() {
    for q in 2..=20i64 {
        for p in 1 - q..q {
            if p == 0 || !coprime(p, q) {
                continue;
            }
            let x = frac(p, q);
            let found: BTreeSet<Vec<Vertex>> = minimal_skeletons(x, Fraction::ZERO, 0)
                .into_iter()
                .map(|s| s.vertices)
                .collect();
            let brute: BTreeSet<Vec<Vertex>> = oracle::all_paths((p, q), 0)
                .into_iter()
                .filter(|path| path.len() >= 2 && path.last().unwrap().1 == 1)
                .filter(|path| path.windows(2).all(|w| !(w[0].1 == 1 && w[1].1 == 1)))
                .map(|path| path.iter().map(|&(a, b)| tangle(frac(a, b))).collect())
                .collect();
            assert_eq!(found, brute, "{x}");
            let cf = x.continued_fraction().len() as u32;
            assert!(
                found.len() <= 2usize.pow(cf),
                "{x}: {} > 2^{cf}",
                found.len()
            );
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn enumerated_systems_are_admissible(k in knot_strategy(7)) {
        let t = k.tangles();
        for sys in solve_systems(t).unwrap().iter().chain(&infinity_systems(t).unwrap()) {
            prop_assert!(validate_admissible(sys, t).is_ok(), "{k}: {:?}", validate_admissible(sys, t));
            for w in sys.paths.iter().flat_map(|p| p.vertices().windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()) {
                prop_assert!(adjacent(w.0, w.1) || matches!((w.0, w.1), (Vertex::Tangle(a), Vertex::Tangle(b)) if a.is_integer() && b.is_integer()));
            }
        }
    }

    #[test]
    fn mirroring_negates_v_and_r_values(k in knot_strategy(7)) {
        let mirrored: BTreeSet<_> = solve_systems(k.mirror().tangles()).unwrap().into_iter().collect();
        for sys in solve_systems(k.tangles()).unwrap() {
            let m = mirror_system(&sys);
            prop_assert!(mirrored.contains(&m), "{k}: mirror of a system is missing");
            prop_assert_eq!(twist(&m), -twist(&sys));
            for (a, b) in sys.paths.iter().zip(&m.paths) {
                prop_assert_eq!(b.end_point().v, -a.end_point().v);
                if let (Ok(ra), Ok(rb)) = (a.final_r_value(), b.final_r_value()) {
                    prop_assert_eq!(rb, if ends_level(a) { ra } else { -ra });
                }
            }
        }
    }

    #[test]
    fn rotation_rotates_r_cycles(k in knot_strategy(7)) {
        let pairs = |k: &MontesinosKnot| -> BTreeSet<(Fraction, Option<Vec<i64>>)> {
            solve_systems(k.tangles()).unwrap().iter().map(|s| (s.common_u, r_cycle(s).ok())).collect()
        };
        let rotated: BTreeSet<_> = pairs(&k)
            .into_iter()
            .map(|(u, rc)| (u, rc.map(|mut v| { v.rotate_left(1); v })))
            .collect();
        prop_assert_eq!(rotated, pairs(&k.rotated(1)));
    }

    #[test]
    fn canonical_form_is_symmetric(k in knot_strategy(9)) {
        let key = k.canonical_form();
        for r in 0..k.len() {
            prop_assert_eq!(k.rotated(r).canonical_form(), key.clone());
            prop_assert_eq!(k.rotated(r).reversed().canonical_form(), key.clone());
        }
        let text = key.to_string();
        let again = parse(&text).unwrap().knot;
        prop_assert_eq!(again.to_string(), text);
        prop_assert_eq!(again.canonical_form(), key);
    }
}

#[test]
fn slope_denominators_divide_sheets_on_the_family() {
    for n in (3..=21).step_by(2) {
        let k = MontesinosKnot::pretzel(&[2, -3, n]).unwrap();
        for s in candidate_surfaces(&k).unwrap().surfaces {
            assert_eq!(
                s.sheets % s.slope.den(),
                0,
                "P(2,-3,{n}) slope {} m {}",
                s.slope,
                s.sheets
            );
        }
    }
}

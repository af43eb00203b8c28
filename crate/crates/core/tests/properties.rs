use proptest::prelude::*;

use tetrify_core::generators::gen_random_convex;
use tetrify_core::geometry::orient3d_det;
use tetrify_core::polyhedron::{is_simplicial, volume6};
use tetrify_core::solver::{check_solution, Edge, SolveSpec, SolveStats};
use tetrify_core::*;

fn point() -> impl Strategy<Value = Point3> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(x, y, z)| Point3::from_ints(x, y, z))
}

fn simplex() -> impl Strategy<Value = Vec<Point3>> {
    prop::collection::vec(point(), 1..=4).prop_filter("non-degenerate", |s| {
        point_in_simplex(&Point3::default(), s).is_ok()
    })
}

fn solved(p: &Polyhedron, spec: &SolveSpec) -> SolveResult {
    let c = enumerate_candidates(p).unwrap();
    let mut r = solve(p, &c, spec).unwrap();
    r.stats = SolveStats { millis: 0, ..r.stats };
    r
}

proptest! {
    #[test]
    fn orientation_flips_under_transpositions(a in point(), b in point(), c in point(), d in point()) {
        let s = orient3d(&a, &b, &c, &d);
        prop_assert_eq!(orient3d(&b, &a, &c, &d), -s);
        prop_assert_eq!(orient3d(&a, &c, &b, &d), -s);
        prop_assert_eq!(orient3d(&a, &b, &d, &c), -s);
    }

    #[test]
    fn volume_survives_even_permutations(a in point(), b in point(), c in point(), d in point()) {
        let v = orient3d_det(&a, &b, &c, &d);
        prop_assert_eq!(&orient3d_det(&b, &c, &a, &d), &v);
        prop_assert_eq!(&orient3d_det(&b, &a, &d, &c), &v);
        prop_assert_eq!(&orient3d_det(&d, &c, &b, &a), &v);
    }

    #[test]
    fn proper_intersection_is_symmetric(s1 in simplex(), s2 in simplex()) {
        prop_assert_eq!(
            simplices_properly_intersect(&s1, &s2).unwrap(),
            simplices_properly_intersect(&s2, &s1).unwrap()
        );
    }

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let r = Rat::new(n, d);
        prop_assert_eq!(r.to_string().parse::<Rat>().unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_polytopes_validate(n in 4usize..=10, seed in any::<u64>()) {
        let p = gen_random_convex(n, seed).unwrap();
        let report = validate(&p);
        prop_assert!(report.is_ok());
        prop_assert!(report.convex);
        prop_assert_eq!(p.vertex_count(), n);
        prop_assert!(is_simplicial(&p).unwrap());
        prop_assert_eq!(p.face_count() + 4, 2 * n);
    }

    #[test]
    fn volume_ignores_relabelling(n in 5usize..=8, seed in any::<u64>(), shift in 1usize..8) {
        let p = gen_random_convex(n, seed).unwrap();
        let relabel = |i: usize| (i + shift) % n;
        let mut vertices = p.vertices().to_vec();
        for (i, v) in p.vertices().iter().enumerate() {
            vertices[relabel(i)] = v.clone();
        }
        let faces = p.faces().iter().map(|f| f.iter().map(|&i| relabel(i)).collect()).collect();
        let q = Polyhedron::new(vertices, faces);
        prop_assert_eq!(volume6(&q).unwrap(), volume6(&p).unwrap());
    }

    #[test]
    fn star_size_on_simplicial(n in 5usize..=9, seed in any::<u64>(), v in 0usize..9) {
        let p = gen_random_convex(n, seed).unwrap();
        let v = v % n;
        let t = star_triangulation(&p, v).unwrap();
        prop_assert_eq!(t.len(), p.face_count() - p.degree(v));
        prop_assert!(t.len() + 7 <= 2 * n);
        prop_assert_eq!(check_triangulation(&p, &t, None), Ok(true));
    }

    #[test]
    fn constraints_never_lower_the_minimum(n in 6usize..=8, seed in any::<u64>(), a in 0usize..8, b in 0usize..8) {
        let p = gen_random_convex(n, seed).unwrap();
        prop_assume!(a % n != b % n);
        let e = Edge::new(a % n, b % n).unwrap();
        let base = solved(&p, &SolveSpec::minimize()).value.unwrap();
        for spec in [SolveSpec::minimize().force(e), SolveSpec::minimize().forbid(e)] {
            let r = solved(&p, &spec);
            if let (Some(v), Some(w)) = (r.value, r.witness.as_ref()) {
                prop_assert!(v >= base);
                prop_assert_eq!(check_solution(&p, w, &spec), Ok(true));
            }
        }
    }

    #[test]
    fn solving_is_deterministic(n in 6usize..=8, seed in any::<u64>()) {
        let p = gen_random_convex(n, seed).unwrap();
        for spec in [SolveSpec::minimize(), SolveSpec::maximize()] {
            prop_assert_eq!(solved(&p, &spec), solved(&p, &spec));
        }
    }

    #[test]
    fn decide_matches_minimum(n in 6usize..=8, seed in any::<u64>()) {
        let p = gen_random_convex(n, seed).unwrap();
        let min = solved(&p, &SolveSpec::minimize()).value.unwrap();
        prop_assert_eq!(solved(&p, &SolveSpec::decide(min)).status, Status::Infeasible);
        prop_assert_eq!(solved(&p, &SolveSpec::decide(min + 1)).status, Status::Feasible);
    }
}

mod common;

use proptest::prelude::*;
use subdiv_core::analysis::{estimate_displacement, locality_check};
use subdiv_core::metric::{
    delta, sup_distance, ElementSequence, FnCurve, MetricSpace, ParamGrid, ParamRule,
};
use subdiv_core::schemes::{subdivide, Averaged, Elementary, HermiteBezier, LaneRiesenfeld, Refinement};
use subdiv_core::spaces::{
    bezier_average, metric_pairs, quantile_coupling, wasserstein_average, wasserstein_distance, Atom, Euclidean,
    FiniteSet, HermitePair, HermiteSpace, Measure, SetSpace, Sphere, SpherePoint,
};

fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0..5.0f64, dim)
}

fn points(dim: usize, lo: usize, hi: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(point(dim), lo..=hi)
}

fn ints(lo: usize, hi: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec((-20i32..20).prop_map(|x| vec![x as f64]), lo..=hi)
}

fn measure() -> impl Strategy<Value = Measure> {
    prop::collection::vec((-5.0..5.0f64, 0.05..1.0f64), 1..=6).prop_map(|raw| {
        let total: f64 = raw.iter().map(|a| a.1).sum();
        Measure::new(raw.into_iter().map(|(x, w)| Atom { x, w: w / total }).collect()).unwrap()
    })
}

fn unit2() -> impl Strategy<Value = Vec<f64>> {
    (0.0..std::f64::consts::TAU).prop_map(|a| vec![a.cos(), a.sin()])
}

proptest! {
    #[test]
    fn sphere_points_are_unit(v in point(4).prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))) {
        let p = SpherePoint::new(v).unwrap();
        let n = p.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((n - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn metric_pairs_cover_both_sets(a in points(2, 1, 8), b in points(2, 1, 8)) {
        let (a, b) = (FiniteSet::new(a).unwrap(), FiniteSet::new(b).unwrap());
        let pairs = metric_pairs(&a, &b).unwrap();
        let e = Euclidean::new(2);
        for i in 0..a.len() {
            prop_assert!(pairs.pairs.iter().any(|p| p.0 == i));
        }
        for k in 0..b.len() {
            prop_assert!(pairs.pairs.iter().any(|p| p.1 == k));
        }
        for (p, q) in pairs.resolve(&a, &b) {
            let d = e.distance(&p.to_vec(), &q.to_vec()).unwrap();
            let da = b.points().iter().map(|y| e.distance(&p.to_vec(), y).unwrap()).fold(f64::INFINITY, f64::min);
            let db = a.points().iter().map(|x| e.distance(x, &q.to_vec()).unwrap()).fold(f64::INFINITY, f64::min);
            prop_assert!((d - da).abs() <= 1e-9 || (d - db).abs() <= 1e-9);
        }
    }

    #[test]
    fn metric_pairs_match_brute_force_on_lattice(
        a in prop::collection::vec(prop::collection::vec(-3i32..=3, 2), 1..=8),
        b in prop::collection::vec(prop::collection::vec(-3i32..=3, 2), 1..=8),
    ) {
        let conv = |s: Vec<Vec<i32>>| FiniteSet::new(s.into_iter().map(|p| p.into_iter().map(f64::from).collect()).collect()).unwrap();
        let (a, b) = (conv(a), conv(b));
        let mut oracle = common::brute_metric_pairs(&a, &b);
        oracle.sort_unstable();
        prop_assert_eq!(metric_pairs(&a, &b).unwrap().pairs, oracle);
    }

    #[test]
    fn measures_are_canonical(m in measure()) {
        prop_assert!((m.total_mass() - 1.0).abs() <= 1e-12);
        prop_assert!(m.atoms().windows(2).all(|w| w[0].x < w[1].x));
    }

    #[test]
    fn coupling_is_monotone_with_correct_marginals(mu in measure(), nu in measure()) {
        let c = quantile_coupling(&mu, &nu).unwrap();
        let total: f64 = c.chunks.iter().map(|k| k.mass).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(c.chunks.windows(2).all(|w| w[0].x <= w[1].x && w[0].y <= w[1].y));
        for a in mu.atoms() {
            let m: f64 = c.chunks.iter().filter(|k| k.x == a.x).map(|k| k.mass).sum();
            prop_assert!((m - a.w).abs() <= 1e-12);
        }
        for b in nu.atoms() {
            let m: f64 = c.chunks.iter().filter(|k| k.y == b.x).map(|k| k.mass).sum();
            prop_assert!((m - b.w).abs() <= 1e-12);
        }
    }

    #[test]
    fn wasserstein_matches_transport_lp(mu in measure(), nu in measure()) {
        let lp = common::transport_lp(&mu, &nu, 2.0).sqrt();
        prop_assert!((wasserstein_distance(&mu, &nu, 2.0).unwrap() - lp).abs() <= 1e-9);
    }

    #[test]
    fn wasserstein_geodesic(mu in measure(), nu in measure(), w in 0.0..1.0f64, p in prop::sample::select(vec![1.0, 2.0, 3.0])) {
        let d = wasserstein_distance(&mu, &nu, p).unwrap();
        let a = wasserstein_average(w, &mu, &nu).unwrap();
        let dw = wasserstein_distance(&mu, &a, p).unwrap();
        prop_assert!((dw - w * d).abs() <= 1e-8 * d.max(1e-9));
    }

    #[test]
    fn bezier_endpoint_tangency(
        p0 in point(2), p1 in point(2), v0 in unit2(), v1 in unit2(), c in 0.1..2.0f64,
    ) {
        let (a, b) = (HermitePair::new(p0, v0.clone()).unwrap(), HermitePair::new(p1, v1.clone()).unwrap());
        prop_assume!(a != b);
        let s = Sphere::new(2);
        let start = bezier_average(1e-12, &a, &b, c).unwrap();
        let end = bezier_average(1.0 - 1e-12, &a, &b, c).unwrap();
        prop_assert!(s.distance(&start.v, &a.v).unwrap() <= 1e-9);
        prop_assert!(s.distance(&end.v, &b.v).unwrap() <= 1e-9);
    }

    #[test]
    fn grid_refinement_nests_and_halves_mesh(
        n in 2usize..12, spacing in 0.1..3.0f64, closed in any::<bool>(), dual in any::<bool>(),
    ) {
        let rule = if dual { ParamRule::Dual } else { ParamRule::Primal };
        let g = ParamGrid::uniform(n, 0.5, spacing, rule, closed).unwrap();
        let f = g.refine_full();
        prop_assert!(f.mesh() <= g.zeta() * g.mesh() * (1.0 + 1e-12));
        if !dual {
            for t in g.knots() {
                prop_assert!(f.knots().contains(t));
            }
        }
        for (j, t) in f.knots().iter().enumerate() {
            let parent = j / 2;
            let lo = g.knots()[parent];
            let hi = g.right(parent).unwrap_or(lo);
            prop_assert!(*t >= lo && *t <= hi.max(lo));
        }
    }

    #[test]
    fn finer_sampling_never_lowers_sup(pts in points(2, 3, 8), s in 2usize..40) {
        let e = Euclidean::new(2);
        let seq = ElementSequence::open(pts).unwrap();
        let run = subdivide(&e, &Averaged::chaikin(), seq, 3).unwrap();
        let f = run.interpolant(3);
        let (lo, hi) = run.level(3).grid().domain();
        let g = FnCurve::new(lo, hi, |t: f64| Ok(vec![t.sin(), t.cos()]));
        let coarse = sup_distance(&e, &f, &g, s + 1).unwrap();
        let fine = sup_distance(&e, &f, &g, 2 * s + 1).unwrap();
        prop_assert!(fine >= coarse);
    }

    #[test]
    fn interpolatory_schemes_keep_even_points(pts in points(3, 2, 8), closed in any::<bool>()) {
        let seq = if closed { ElementSequence::closed(pts).unwrap() } else { ElementSequence::open(pts).unwrap() };
        let out = Elementary.refine(&Euclidean::new(3), &seq).unwrap();
        for (j, p) in seq.elements().iter().enumerate() {
            prop_assert_eq!(&out.points.elements()[2 * j], p);
        }
        let r = estimate_displacement(&Euclidean::new(3), &Elementary, seq, 3).unwrap();
        prop_assert_eq!(r.c_s, 0.0);
    }

    #[test]
    fn hermite_bezier_is_interpolatory(angles in prop::collection::vec(0.0..std::f64::consts::TAU, 2..6)) {
        let data: Vec<HermitePair> = angles
            .iter()
            .enumerate()
            .map(|(i, a)| HermitePair::new(vec![i as f64, (i * i) as f64 * 0.1], vec![a.cos(), a.sin()]).unwrap())
            .collect();
        let h = HermiteSpace::bezier(2);
        let seq = ElementSequence::open(data).unwrap();
        match HermiteBezier.refine(&h, &seq) {
            Ok(out) => {
                for (j, p) in seq.elements().iter().enumerate() {
                    prop_assert_eq!(&out.points.elements()[2 * j], p);
                }
            }
            Err(e) => prop_assert!(e.is_numerical()),
        }
    }

    #[test]
    fn elementary_halves_delta_on_intrinsic_spaces(pts in points(2, 2, 8), sets in prop::collection::vec(points(2, 1, 4), 2..5)) {
        let e = Euclidean::new(2);
        let seq = ElementSequence::open(pts).unwrap();
        let out = Elementary.refine(&e, &seq).unwrap().points;
        prop_assert!(delta(&e, &out).unwrap() <= 0.5 * delta(&e, &seq).unwrap() + 1e-12);

        let s = SetSpace::new(2);
        let seq = ElementSequence::open(sets.into_iter().map(|p| FiniteSet::new(p).unwrap()).collect()).unwrap();
        let out = Elementary.refine(&s, &seq).unwrap().points;
        prop_assert!(delta(&s, &out).unwrap() <= 0.5 * delta(&s, &seq).unwrap() + 1e-12);
    }

    #[test]
    fn chaikin_equals_mask_convolution(data in ints(3, 10)) {
        let seq = ElementSequence::open(data.clone()).unwrap();
        let out = Averaged::chaikin().refine(&Euclidean::new(1), &seq).unwrap();
        // Chaikin mask a = (1/4, 3/4, 3/4, 1/4) on offsets -2..=1: out_i = sum_j a_{i-2j} p_j.
        let a = |k: i64| match k { -2 | 1 => 0.25, -1 | 0 => 0.75, _ => 0.0 };
        for (q, y) in out.points.elements().iter().enumerate() {
            let i = (out.first_index + q) as i64;
            let x: f64 = data.iter().enumerate().map(|(j, p)| a(i - 2 * j as i64) * p[0]).sum();
            prop_assert_eq!(y[0], x);
        }
    }

    #[test]
    fn locality_within_twice_range(pts in points(1, 10, 14), j in 4usize..6, bump in 0.5..3.0f64, k in 1usize..=4) {
        let e = Euclidean::new(1);
        let seq = ElementSequence::open(pts).unwrap();
        let v = vec![seq.elements()[j][0] + bump];
        for r in [
            locality_check(&e, &Elementary, &seq, j, v.clone(), k).unwrap(),
            locality_check(&e, &Averaged::chaikin(), &seq, j, v.clone(), k).unwrap(),
            locality_check(&e, &LaneRiesenfeld::new(2), &seq, j, v.clone(), k).unwrap(),
        ] {
            prop_assert!(r.within_bound(), "{:?}", r);
        }
    }

    #[test]
    fn closed_levels_double_exactly(pts in points(2, 3, 7), levels in 1usize..4) {
        let n = pts.len();
        let seq = ElementSequence::closed(pts).unwrap();
        let run = subdivide(&Euclidean::new(2), &LaneRiesenfeld::new(3), seq, levels).unwrap();
        for (k, l) in run.levels().iter().enumerate() {
            prop_assert_eq!(l.points().len(), n << k);
            prop_assert_eq!(l.grid().len(), n << k);
        }
    }
}

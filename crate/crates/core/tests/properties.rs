use std::collections::BTreeMap;

use bicomb::barycenter::{bn, BaryConfig};
use bicomb::counterexample::hull_point;
use bicomb::dynamics::{banach_density_estimate, empirical_measure, invariance_residual, orbit, VisitSet};
use bicomb::rational::ratio;
use bicomb::spaces::{Euclidean, IsometryDescriptor, SparseSeq, SpiderTree, TreePoint};
use bicomb::wasserstein::w1_via_expansion;
use bicomb::{pushforward, quantize, w1_atomic, w1_uniform, AtomicMeasure, GeodesicSpace, Isometry};
use itertools::Itertools;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| ratio(p, q))
}

fn sparse_seq() -> impl Strategy<Value = SparseSeq> {
    prop::collection::btree_map(-30i64..=30, rational(), 0..8)
        .prop_map(|m: BTreeMap<i64, BigRational>| SparseSeq::from_entries(m).unwrap())
}

fn line_measure() -> impl Strategy<Value = AtomicMeasure<Vec<f64>>> {
    prop::collection::btree_map(-50i32..=50, 1i64..=3, 1..5).prop_map(|atoms| {
        let total: i64 = atoms.values().sum();
        let line = Euclidean::new(1).unwrap();
        AtomicMeasure::new(&line, atoms.into_iter().map(|(x, w)| (vec![x as f64 / 4.0], ratio(w, total))).collect()).unwrap()
    })
}

fn plane_points(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 2), n)
}

fn tree_point() -> impl Strategy<Value = TreePoint> {
    (0usize..3, 0.0f64..=1.0).prop_map(|(leg, r)| TreePoint { leg, r })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn star_norm_is_equivalent_to_l1(x in sparse_seq()) {
        let l1 = x.l1_norm();
        let l1_sq = &l1 * &l1;
        let star_sq = x.star_norm_sq();
        prop_assert!(l1_sq <= star_sq);
        prop_assert!(star_sq <= ratio(2, 1) * l1_sq);
    }

    #[test]
    fn star_norm_is_homogeneous_and_shift_invariant(x in sparse_seq(), c in rational(), m in -20i64..20) {
        prop_assert_eq!(x.scale(&c).star_norm_sq(), &c * &c * x.star_norm_sq());
        prop_assert_eq!(x.shift(m).star_norm_sq(), x.star_norm_sq());
    }

    #[test]
    fn star_norm_triangle(x in sparse_seq(), y in sparse_seq()) {
        prop_assert!(x.add(&y).star_norm() <= x.star_norm() + y.star_norm() + 1e-12);
    }

    #[test]
    fn hull_norm_identity(weights in prop::collection::vec(1i64..=9, 1..12), offset in -100i64..100) {
        let total: i64 = weights.iter().sum();
        let coeffs: Vec<_> = weights.iter().map(|&w| ratio(w, total)).collect();
        let offsets: Vec<i64> = (0..weights.len() as i64).map(|i| offset + 3 * i).collect();
        let h = hull_point(&coeffs, &offsets).unwrap();
        let sq: BigRational = coeffs.iter().map(|a| a * a).sum();
        let star_sq = h.point.star_norm_sq();
        prop_assert_eq!(&star_sq, &(ratio(1, 1) + sq));
        prop_assert!(star_sq > ratio(1, 1) && star_sq <= ratio(2, 1));
    }

    #[test]
    fn w1_is_a_metric(mu in line_measure(), nu in line_measure(), rho in line_measure()) {
        let line = Euclidean::new(1).unwrap();
        let d = |a: &AtomicMeasure<Vec<f64>>, b: &AtomicMeasure<Vec<f64>>| w1_atomic(&line, a, b);
        prop_assert!((d(&mu, &nu) - d(&nu, &mu)).abs() <= 1e-12);
        prop_assert!(d(&mu, &mu).abs() <= 1e-12);
        prop_assert!(d(&mu, &rho) <= d(&mu, &nu) + d(&nu, &rho) + 1e-9);
    }

    #[test]
    fn w1_flow_matches_expansion(mu in line_measure(), nu in line_measure()) {
        let line = Euclidean::new(1).unwrap();
        let flow = w1_atomic(&line, &mu, &nu);
        let expanded = w1_via_expansion(&line, &mu, &nu, 10_000).unwrap();
        prop_assert!((flow - expanded).abs() <= 1e-9);
    }

    #[test]
    fn w1_dominates_lipschitz_integrals(mu in line_measure(), nu in line_measure(), anchor in -15.0f64..15.0) {
        let line = Euclidean::new(1).unwrap();
        let w = w1_atomic(&line, &mu, &nu);
        let integral = |m: &AtomicMeasure<Vec<f64>>, f: &dyn Fn(f64) -> f64| -> f64 {
            m.atoms().iter().map(|(p, mass)| f(p[0]) * bicomb::rational::to_f64(mass)).sum()
        };
        let tests: [&dyn Fn(f64) -> f64; 3] = [&|x| x, &|x| -x, &|x| (x - anchor).abs()];
        for f in tests {
            prop_assert!(integral(&mu, f) - integral(&nu, f) <= w + 1e-9);
        }
    }

    #[test]
    fn w1_is_isometry_invariant(xs in plane_points(4), ys in plane_points(3), turns in 1i64..12) {
        let plane = Euclidean::new(2).unwrap();
        let rot = plane.bind(&IsometryDescriptor::rotation_turns(ratio(turns, 12))).unwrap();
        let mu = AtomicMeasure::uniform(&plane, &xs).unwrap();
        let nu = AtomicMeasure::uniform(&plane, &ys).unwrap();
        let before = w1_atomic(&plane, &mu, &nu);
        let after = w1_atomic(&plane, &pushforward(&plane, &rot, &mu), &pushforward(&plane, &rot, &nu));
        prop_assert!((before - after).abs() <= 1e-9);
    }

    #[test]
    fn assignment_matches_permutations(n in 1usize..=6, seed in any::<u64>()) {
        use rand::Rng;
        let plane = Euclidean::new(2).unwrap();
        let mut rng = bicomb::space::seeded_rng(seed);
        let mut pts = || (0..n).map(|_| vec![rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)]).collect::<Vec<_>>();
        let (xs, ys) = (pts(), pts());
        let brute = (0..n)
            .permutations(n)
            .map(|tau| xs.iter().zip(&tau).map(|(x, &j)| plane.distance(x, &ys[j])).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        prop_assert!((w1_uniform(&plane, &xs, &ys).unwrap() - brute / n as f64).abs() <= 1e-12);
    }

    #[test]
    fn quantize_is_a_close_rational_measure(weights in prop::collection::vec(1i64..=20, 1..6), q in 1u64..40) {
        let line = Euclidean::new(1).unwrap();
        let total: i64 = weights.iter().sum();
        let pts: Vec<(Vec<f64>, f64)> = weights.iter().enumerate().map(|(i, &w)| (vec![i as f64], w as f64)).collect();
        let out = quantize(&line, &pts, q).unwrap();
        let mass: BigRational = out.masses().cloned().sum();
        prop_assert_eq!(mass, ratio(1, 1));
        for m in out.masses() {
            prop_assert!((m * ratio(q as i64, 1)).is_integer());
        }
        let exact = AtomicMeasure::new(
            &line,
            weights.iter().enumerate().map(|(i, &w)| (vec![i as f64], ratio(w, total))).collect(),
        )
        .unwrap();
        // each mass moves by less than 1/q, and mass moves at most the diameter
        let diameter = (weights.len() - 1) as f64;
        let bound = diameter * weights.len() as f64 / (2.0 * q as f64);
        prop_assert!(w1_atomic(&line, &exact, &out) <= bound + 1e-9);
    }

    #[test]
    fn b3_is_permutation_invariant_on_trees(a in tree_point(), b in tree_point(), c in tree_point()) {
        let tree = SpiderTree::new(vec![1.0; 3]).unwrap();
        let cfg = BaryConfig::recursive();
        let canon = |p: TreePoint| tree.point(p.leg, p.r).unwrap();
        let (a, b, c) = (canon(a), canon(b), canon(c));
        let first = bn(&tree, &[a, b, c], &cfg).unwrap();
        for perm in [[b, c, a], [c, a, b], [b, a, c]] {
            prop_assert!(tree.distance(&bn(&tree, &perm, &cfg).unwrap(), &first) <= 1e-12);
        }
    }

    #[test]
    fn periodic_density_is_close_to_its_frequency(p in 1usize..12, mask in 1u32..4096, k in 1usize..200) {
        let residues: Vec<usize> = (0..p).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!residues.is_empty());
        let r = residues.len() as f64;
        // the shifts must cover a full period for the lower bound
        let shifts = k + p;
        let horizon = k + shifts;
        let visits = VisitSet::from_indices(horizon, (0..horizon).filter(|i| residues.contains(&(i % p))));
        let estimate = banach_density_estimate(&visits, k, shifts).unwrap();
        let frequency = r / p as f64;
        prop_assert!((0.0..=1.0).contains(&estimate));
        prop_assert!(estimate >= frequency - 1e-12);
        prop_assert!(estimate < frequency + r / k as f64 + 1e-12);
    }

    #[test]
    fn cesaro_invariance_residual_is_bounded(k in 1usize..60, turns in 1i64..9, tx in -2.0f64..2.0) {
        let plane = Euclidean::new(2).unwrap();
        let x0 = vec![1.0, 0.5];
        let isos = [
            IsometryDescriptor::rotation_turns(ratio(1, turns)),
            IsometryDescriptor::translation(vec![tx, 0.25]),
        ];
        for desc in &isos {
            let iso = plane.bind(desc).unwrap();
            let trace = orbit(&plane, &iso, &x0, k + 1).unwrap();
            for w in trace.points().windows(2) {
                prop_assert_eq!(&iso.apply(&w[0]), &w[1]);
            }
            let mu = empirical_measure(&plane, &trace, 0, k).unwrap();
            let bound = plane.distance(&x0, &trace.points()[k]) / k as f64;
            prop_assert!(invariance_residual(&plane, &iso, &mu) <= bound + 1e-9);
        }
    }
}

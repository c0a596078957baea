//! Property checks shared by the property tests and the acceptance suite.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestCaseError, TestRunner};

use kconvex::exactgeom::{orientation, rat, Orientation, Point, Rational, Vector};
use kconvex::fixtures::{amoeba, pseudo_triangle, random_simple_polygon};
use kconvex::regions::IntervalSet;
use kconvex::shape::{pocket_chains_unchecked, ShapeError};
use kconvex::stabbing::{stabbing_number, stabbing_oracle, Interval};
use kconvex::transversals::Ggp;
use kconvex::twoconvex::recognize_2convex;

fn run<S: Strategy>(cases: u32, strat: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(0x006b_636f_6e76_6578),
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config).run(&strat, test).map_err(|e| e.to_string())
}

fn interval_set() -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec((-20i64..20, 0i64..6), 0..5).prop_map(|v| {
        IntervalSet::from_intervals(v.into_iter().map(|(lo, w)| Interval::new(rat(lo), rat(lo + w))).collect())
    })
}

/// Half-integer probes cover endpoints and interiors of integer intervals.
fn probes() -> Vec<Rational> {
    (-50..60).map(|i| Rational::new(i.into(), 2.into())).collect()
}

fn point() -> impl Strategy<Value = Point> {
    (-1000i64..1000, -1000i64..1000, 1i64..50, 1i64..50)
        .prop_map(|(x, y, a, b)| Point::new(Rational::new(x.into(), a.into()), Rational::new(y.into(), b.into())))
}

pub fn interval_membership() -> Result<(), String> {
    run(256, (interval_set(), interval_set()), |(a, b)| {
        let (u, i) = (a.union(&b), a.intersection(&b));
        for t in probes() {
            prop_assert_eq!(u.contains(&t), a.contains(&t) || b.contains(&t));
            prop_assert_eq!(i.contains(&t), a.contains(&t) && b.contains(&t));
        }
        Ok(())
    })
}

pub fn interval_laws() -> Result<(), String> {
    run(256, (interval_set(), interval_set(), interval_set()), |(a, b, c)| {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.intersection(&b), b.intersection(&a));
        prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
        prop_assert_eq!(a.intersection(&b).intersection(&c), a.intersection(&b.intersection(&c)));
        prop_assert_eq!(a.union(&a), a.clone());
        prop_assert_eq!(a.intersection(&a), a.clone());
        prop_assert_eq!(a.intersection(&b.union(&c)), a.intersection(&b).union(&a.intersection(&c)));
        prop_assert_eq!(a.union(&a.intersection(&b)), a.clone());
        for w in a.intervals().windows(2) {
            prop_assert!(w[0].hi < w[1].lo);
        }
        Ok(())
    })
}

pub fn orientation_symmetries() -> Result<(), String> {
    run(256, (point(), point(), point(), -100i64..100, -100i64..100), |(p, q, r, dx, dy)| {
        let o = orientation(&p, &q, &r);
        prop_assert_eq!(orientation(&q, &r, &p), o);
        prop_assert_eq!(orientation(&q, &p, &r).sign(), -o.sign());
        let t = Vector::new(rat(dx), rat(dy));
        prop_assert_eq!(orientation(&p.add(&t), &q.add(&t), &r.add(&t)), o);
        let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
        prop_assert_eq!(o, Orientation::from_sign(&det));
        Ok(())
    })
}

pub fn orientation_detects_collinear() -> Result<(), String> {
    run(256, (point(), point(), -40i64..40, 1i64..40), |(p, q, n, d)| {
        let s = Rational::new(n.into(), d.into());
        let r = p.add(&q.sub(&p).scale(&s));
        prop_assert_eq!(orientation(&p, &q, &r), Orientation::Collinear);
        let bump = Vector::new(rat(0), Rational::new(1.into(), 1_000_000_007i64.into()));
        if q.x != p.x {
            prop_assert_ne!(orientation(&p, &q, &r.add(&bump)), Orientation::Collinear);
        }
        Ok(())
    })
}

pub fn canonicalization_involution() -> Result<(), String> {
    run(256, prop::collection::vec(prop::sample::select(vec!["A", "B", "C", "D"]), 0..9), |seq| {
        let s: Vec<String> = seq.iter().map(|x| x.to_string()).collect();
        let mut r = s.clone();
        r.reverse();
        let g = Ggp::canonical(s.clone());
        prop_assert_eq!(&g, &Ggp::canonical(r));
        prop_assert_eq!(&Ggp::canonical(g.ids().to_vec()), &g);
        prop_assert!(g.ids() <= s.as_slice());
        Ok(())
    })
}

pub fn oracle_never_exceeds_exact() -> Result<(), String> {
    run(64, (4usize..30, 0u64..10_000), |(n, seed)| {
        let p = random_simple_polygon(n, seed).unwrap();
        prop_assert!(stabbing_oracle(&p, 200, seed) <= stabbing_number(&p).value);
        Ok(())
    })
}

pub fn accepted_inputs_follow_pocket_pattern() -> Result<(), String> {
    run(64, (4usize..9, 0u64..100_000), |(n, seed)| {
        let p = random_simple_polygon(n, seed).unwrap();
        if recognize_2convex(&p).is_two_convex {
            prop_assert!(pocket_chains_unchecked(&p).is_ok());
        }
        Ok(())
    })
}

pub fn pocket_pattern_on_two_convex_fixtures() -> Result<(), String> {
    run(64, (1usize..8, 1usize..8, 1usize..8, 3usize..7), |(a, b, c, k)| {
        for p in [pseudo_triangle(a, b, c).unwrap(), amoeba(k).unwrap()] {
            prop_assert!(recognize_2convex(&p).is_two_convex);
            let r = pocket_chains_unchecked(&p);
            prop_assert!(!matches!(r, Err(ShapeError::PatternViolation { .. })), "{:?}", r);
        }
        Ok(())
    })
}

pub type Check = (&'static str, fn() -> Result<(), String>);

pub const ALL: [Check; 8] = [
    ("interval membership", interval_membership),
    ("interval laws", interval_laws),
    ("orientation symmetries", orientation_symmetries),
    ("orientation collinearity", orientation_detects_collinear),
    ("canonicalization involution", canonicalization_involution),
    ("oracle never exceeds exact", oracle_never_exceeds_exact),
    ("pocket pattern on accepted inputs", accepted_inputs_follow_pocket_pattern),
    ("pocket pattern on 2-convex fixtures", pocket_pattern_on_two_convex_fixtures),
];

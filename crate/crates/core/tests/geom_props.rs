mod common;

use geogirth_core::exact::{orient2d, sign_dist2_minus_sq, sign_dist2_minus_sum_sq};
use geogirth_core::geom::{disk_edge, lift_point, lift_site, tx_edge, Normalization};
use geogirth_core::Site;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use std::cmp::Ordering;

fn q(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap()
}

fn sign(v: BigRational) -> Ordering {
    if v.is_zero() {
        Ordering::Equal
    } else if v.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn dist2(a: &Site, b: &Site) -> BigRational {
    let (dx, dy) = (q(a.x) - q(b.x), q(a.y) - q(b.y));
    &dx * &dx + &dy * &dy
}

fn disk_edge_exact(a: &Site, b: &Site) -> bool {
    let s = q(a.r) + q(b.r);
    dist2(a, b) <= &s * &s
}

fn tx_edge_exact(a: &Site, b: &Site) -> bool {
    dist2(a, b) <= q(a.r) * q(a.r)
}

/// Coordinates on a coarse dyadic lattice, so exact ties are common.
fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![(-64i32..64).prop_map(|k| k as f64 / 8.0), -8.0..8.0f64]
}

fn site(id: usize) -> impl Strategy<Value = Site> {
    (coord(), coord(), prop_oneof![(1i32..64).prop_map(|k| k as f64 / 8.0), 0.01..6.0f64])
        .prop_map(move |(x, y, r)| Site::new(id, x, y, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20_000))]

    #[test]
    fn predicates_match_rationals(a in site(0), b in site(1)) {
        prop_assert_eq!(disk_edge(&a, &b), disk_edge_exact(&a, &b));
        prop_assert_eq!(tx_edge(&a, &b), tx_edge_exact(&a, &b));
        prop_assert_eq!(tx_edge(&b, &a), tx_edge_exact(&b, &a));
        let want = sign(dist2(&a, &b) - q(a.r) * q(a.r));
        prop_assert_eq!(sign_dist2_minus_sq(b.x, b.y, a.x, a.y, a.r), want);
        let s = q(a.r) + q(b.r);
        prop_assert_eq!(sign_dist2_minus_sum_sq(b.x, b.y, a.x, a.y, a.r, b.r), sign(dist2(&a, &b) - &s * &s));
    }

    #[test]
    fn orientation_matches_rationals(a in site(0), b in site(1), c in site(2)) {
        let det = (q(b.x) - q(a.x)) * (q(c.y) - q(a.y)) - (q(b.y) - q(a.y)) * (q(c.x) - q(a.x));
        prop_assert_eq!(orient2d(a.pos(), b.pos(), c.pos()), sign(det));
    }

    #[test]
    fn mutual_reach_implies_disk_edge(a in site(0), b in site(1)) {
        if tx_edge(&a, &b) && tx_edge(&b, &a) {
            prop_assert!(disk_edge(&a, &b));
        }
    }

    #[test]
    fn lifting_matches_membership(s in site(0), px in coord(), py in coord()) {
        let p = Site::new(1, px, py, 1.0);
        let inside = dist2(&s, &p) <= q(s.r) * q(s.r);
        prop_assert_eq!(lift_site(&s).violated_by(&lift_point(px, py)), inside);
        prop_assert_eq!(s.contains_point(px, py), inside);
    }
}

#[test]
fn disk_edge_without_either_arc() {
    let a = Site::new(0, 0.0, 0.0, 1.0);
    let b = Site::new(1, 1.5, 0.0, 1.0);
    assert!(disk_edge(&a, &b));
    assert!(!tx_edge(&a, &b) && !tx_edge(&b, &a));
}

#[test]
fn lifting_examples() {
    let s = Site::new(0, 0.0, 0.0, 1.0);
    assert!(!lift_site(&s).violated_by(&lift_point(2.0, 0.0)));
    assert!(lift_site(&s).violated_by(&lift_point(1.0, 0.0)));
    assert!(lift_site(&s).violated_by(&lift_point(0.5, 0.5)));
}

#[test]
fn lifting_random_pairs() {
    let mut r = common::rng(7);
    for _ in 0..100_000 {
        let s = Site::new(0, r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(0.01..2.0));
        let (px, py) = (r.gen_range(-4.0..4.0), r.gen_range(-4.0..4.0));
        let p = Site::new(1, px, py, 1.0);
        assert_eq!(lift_site(&s).violated_by(&lift_point(px, py)), tx_edge(&s, &p));
    }
}

#[test]
fn normalization_preserves_edges() {
    for seed in 0..40 {
        let mut r = common::rng(80_000 + seed);
        let s = common::mixed(&mut r, 60, seed as usize);
        let norm = Normalization::for_sites(&s);
        let t: Vec<Site> = s.iter().map(|x| norm.apply(x)).collect();
        for x in &t {
            assert!(x.x - x.r > 0.0 && x.x + x.r < 1.0 && x.y - x.r > 0.0 && x.y + x.r < 1.0);
        }
        for i in 0..s.len() {
            for j in 0..s.len() {
                if i != j {
                    assert_eq!(disk_edge(&s[i], &s[j]), disk_edge(&t[i], &t[j]), "seed {seed} pair {i} {j}");
                    assert_eq!(tx_edge(&s[i], &s[j]), tx_edge(&t[i], &t[j]), "seed {seed} pair {i} {j}");
                }
            }
        }
    }
}

#[test]
fn rationals_sanity() {
    assert_eq!(q(0.5), BigRational::new(BigInt::from(1), BigInt::from(2)));
}

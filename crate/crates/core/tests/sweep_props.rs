mod common;

use geogirth_core::geom::{circle_circle_points, disk_edge};
use geogirth_core::graph::build_disk_graph_brute;
use geogirth_core::sweep::{
    arc_intersections_bounded, build_plane_or_witness, containment_edges, find_crossing_brute, SweepOutcome,
};

#[test]
fn intersections_match_pairwise_enumeration() {
    for seed in 0..200 {
        let mut r = common::rng(seed);
        let s = common::mixed(&mut r, 30 + (seed as usize % 70), seed as usize);
        let mut got: Vec<(usize, usize)> = match arc_intersections_bounded(&s, usize::MAX - 1) {
            Ok(v) => v.iter().map(|i| (i.a, i.b)).collect(),
            Err(_) => unreachable!(),
        };
        let mut want = Vec::new();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                for _ in circle_circle_points(&s[i], &s[j]).unwrap() {
                    want.push((i, j));
                }
            }
        }
        got.sort();
        want.sort();
        assert_eq!(got, want, "seed {seed}");
    }
}

#[test]
fn plane_outcome_matches_brute() {
    let mut planes = 0;
    for seed in 0..300 {
        let mut r = common::rng(1000 + seed);
        let n = 8 + (seed as usize % 120);
        let s = common::mixed(&mut r, n, seed as usize);
        let g = build_disk_graph_brute(&s);
        let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
        let plane_brute = edges.len() <= 3 * n - 6 && find_crossing_brute(&s, &edges).is_none();
        match build_plane_or_witness(&s) {
            SweepOutcome::Plane(p) => {
                planes += 1;
                assert!(plane_brute, "seed {seed}");
                let pe: Vec<(usize, usize)> = p.edges().map(|(u, v, _)| (u, v)).collect();
                assert_eq!(pe, edges, "seed {seed}");
            }
            SweepOutcome::NotPlane(t) => {
                let [a, b, c] = t.ids;
                assert!(disk_edge(&s[a], &s[b]) && disk_edge(&s[b], &s[c]) && disk_edge(&s[a], &s[c]));
            }
        }
    }
    assert!(planes > 30, "{planes}");
}

#[test]
fn containment_plus_crossings_is_all_edges() {
    for seed in 0..100 {
        let mut r = common::rng(5000 + seed);
        let s = common::mixed(&mut r, 64, 2);
        let mut e = containment_edges(&s);
        let xs = arc_intersections_bounded(&s, usize::MAX - 1).unwrap();
        e.extend(xs.iter().map(|i| (i.a, i.b)));
        e.sort();
        e.dedup();
        let g = build_disk_graph_brute(&s);
        let want: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
        assert_eq!(e, want, "seed {seed}");
    }
}

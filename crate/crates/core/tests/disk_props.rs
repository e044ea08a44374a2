mod common;

use geogirth_core::disk_triangle::{decide_perimeter, find_triangle_disk, shortest_triangle_disk};
use geogirth_core::graph::{brute_shortest_triangle, brute_triangle, build_disk_graph_brute};

#[test]
fn presence_matches_oracle() {
    for seed in 0..500 {
        let mut r = common::rng(10_000 + seed);
        let n = 3 + (seed as usize * 7) % 62;
        let s = common::mixed(&mut r, n, seed as usize);
        let g = build_disk_graph_brute(&s);
        let want = brute_triangle(&g).is_some();
        let got = find_triangle_disk(&s);
        assert_eq!(got.is_some(), want, "seed {seed}");
        if let Some(t) = got {
            let [a, b, c] = t.ids;
            assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c));
        }
    }
}

#[test]
fn decision_matches_oracle() {
    for seed in 0..300 {
        let mut r = common::rng(20_000 + seed);
        let n = 3 + (seed as usize * 5) % 46;
        let s = common::mixed(&mut r, n, seed as usize);
        let best = brute_shortest_triangle(&build_disk_graph_brute(&s)).map(|t| t.perimeter);
        let w = match best {
            Some(p) => p * [0.5, 0.999_999, 1.0, 1.000_001, 2.0][seed as usize % 5],
            None => 1.0 + seed as f64,
        };
        let want = best.map_or(false, |p| p <= w);
        assert_eq!(decide_perimeter(&s, w), want, "seed {seed} w {w} best {best:?}");
    }
}

#[test]
fn shortest_matches_oracle() {
    for seed in 0..200 {
        let mut r = common::rng(30_000 + seed);
        let n = 3 + (seed as usize * 11) % 46;
        let s = common::mixed(&mut r, n, seed as usize);
        let want = brute_shortest_triangle(&build_disk_graph_brute(&s));
        let got = shortest_triangle_disk(&s, seed);
        match (got, want) {
            (None, None) => {}
            (Some(g), Some(w)) => {
                assert!(((g.perimeter - w.perimeter) / w.perimeter).abs() <= 1e-9, "seed {seed}");
                assert_eq!(g.sorted_ids(), w.sorted_ids(), "seed {seed}");
            }
            other => panic!("seed {seed}: {other:?}"),
        }
    }
}

mod common;

use std::cmp::Ordering;

use geogirth_core::geom::Site;
use geogirth_core::range::r1::{descend_quadtrees, neighborhood, r1_brute, solve_r1, Prepared, R1Outcome, ALPHA};
use geogirth_core::range::tree::RadiusTree;
use geogirth_core::range::zorder::{cell_key, point_key, z_compare, CompressedQuadtree, GridCell, LinearizedQuadtree, MAX_LEVEL};
use rand::Rng;

fn random_cell(r: &mut impl Rng, max_level: u8) -> GridCell {
    let level = r.gen_range(0..=max_level);
    let n = 1u64 << level;
    GridCell {
        level,
        ix: r.gen_range(0..n),
        iy: r.gen_range(0..n),
    }
}

/// Z-order by spelling out the root path of both cells.
fn z_compare_slow(a: &GridCell, b: &GridCell) -> Ordering {
    let path = |c: &GridCell| -> Vec<u8> {
        (0..c.level)
            .map(|d| {
                let k = c.level - 1 - d;
                let bx = ((c.ix >> k) & 1) as u8;
                let by = ((c.iy >> k) & 1) as u8;
                ["NW", "NE", "SW", "SE"].iter().position(|&q| q == [["SW", "SE"], ["NW", "NE"]][by as usize][bx as usize]).unwrap() as u8
            })
            .collect()
    };
    let (pa, pb) = (path(a), path(b));
    for (x, y) in pa.iter().zip(&pb) {
        if x != y {
            return x.cmp(y);
        }
    }
    pb.len().cmp(&pa.len())
}

#[test]
fn z_order_matches_path_oracle() {
    let mut r = common::rng(1);
    for _ in 0..100_000 {
        let a = random_cell(&mut r, 12);
        let mut b = random_cell(&mut r, 12);
        if r.gen::<f64>() < 0.3 && a.level > 0 {
            b = a.ancestor(r.gen_range(0..a.level));
        }
        assert_eq!(z_compare(&a, &b), z_compare_slow(&a, &b), "{a:?} {b:?}");
    }
}

#[test]
fn cell_keys_follow_z_order() {
    let mut r = common::rng(11);
    for _ in 0..100_000 {
        let a = random_cell(&mut r, MAX_LEVEL);
        let mut b = random_cell(&mut r, MAX_LEVEL);
        if r.gen::<f64>() < 0.3 && a.level > 0 {
            b = a.ancestor(r.gen_range(0..a.level));
        } else if r.gen::<f64>() < 0.3 {
            b = a.ancestor(a.level.min(b.level));
        }
        assert_eq!(cell_key(&a).cmp(&cell_key(&b)), z_compare(&a, &b), "{a:?} {b:?}");
    }
}

#[test]
fn z_order_is_total() {
    let mut r = common::rng(2);
    for _ in 0..100_000 {
        let c: Vec<GridCell> = (0..3).map(|_| random_cell(&mut r, 4)).collect();
        assert_eq!(z_compare(&c[0], &c[1]), z_compare(&c[1], &c[0]).reverse());
        if z_compare(&c[0], &c[1]) != Ordering::Greater && z_compare(&c[1], &c[2]) != Ordering::Greater {
            assert_ne!(z_compare(&c[0], &c[2]), Ordering::Greater);
        }
        if z_compare(&c[0], &c[1]) == Ordering::Equal {
            assert_eq!(c[0], c[1]);
        }
    }
}

fn points(r: &mut impl Rng, n: usize) -> Vec<GridCell> {
    let mut p: Vec<GridCell> = (0..n).map(|_| GridCell::of_point(r.gen(), r.gen(), MAX_LEVEL)).collect();
    p.sort_by_key(point_key);
    p
}

#[test]
fn point_keys_follow_z_order() {
    let mut r = common::rng(3);
    let p = points(&mut r, 2000);
    for w in p.windows(2) {
        assert_eq!(z_compare(&w[0], &w[1]), Ordering::Less);
    }
}

#[test]
fn quadtree_structure() {
    let mut r = common::rng(4);
    for n in [1usize, 2, 3, 10, 500] {
        let p = points(&mut r, n);
        let q = CompressedQuadtree::from_sorted_points(&p);
        assert!(q.nodes.len() <= 2 * n);
        assert_eq!(q.nodes.last().unwrap().cell, GridCell::ROOT);
        for w in q.nodes.windows(2) {
            assert_eq!(z_compare(&w[0].cell, &w[1].cell), Ordering::Less);
        }
        for (k, node) in q.nodes.iter().enumerate() {
            if let Some(par) = node.parent {
                assert!(par > k && q.nodes[par].cell.contains(&node.cell));
            }
            // only the root may have a single child
            if node.cell != GridCell::ROOT {
                assert!(node.is_leaf() || node.children.len() >= 2);
            }
            let inside = p.iter().filter(|c| node.cell.contains(c)).count();
            assert_eq!(inside, node.hi - node.lo);
        }
        for c in &p {
            assert!(q.nodes.iter().any(|nd| nd.is_leaf() && nd.cell == *c));
        }
    }
}

#[test]
fn predecessor_contract() {
    let mut r = common::rng(5);
    let p = points(&mut r, 300);
    let lq = LinearizedQuadtree::from_sorted_points(&p);
    for i in 0..10_000 {
        // aim near existing points half of the time
        let sigma = if i % 2 == 0 {
            p[r.gen_range(0..p.len())].ancestor(r.gen_range(0..=14))
        } else {
            random_cell(&mut r, 14)
        };
        let direct: Vec<usize> = (0..p.len()).filter(|&k| sigma.contains(&p[k])).collect();
        match lq.z_predecessor(&sigma) {
            None => assert!(direct.is_empty()),
            Some(t) => {
                let tau = lq.cells[t];
                if tau.overlaps(&sigma) {
                    let (lo, hi) = lq.ranges[t];
                    assert_eq!(direct, (lo as usize..hi as usize).collect::<Vec<_>>(), "{sigma:?}");
                } else {
                    assert!(direct.is_empty(), "{sigma:?}");
                }
            }
        }
    }
}

#[test]
fn radius_tree_intervals() {
    let mut r = common::rng(6);
    let s = common::uniform(&mut r, 200, 10.0, 0.01, 3.0);
    let t = RadiusTree::build(&s);
    let total: usize = (0..t.nodes().len()).map(|v| t.interval(v).len()).sum();
    assert!(total <= 2 * 200 * 8);
    for v in 0..t.nodes().len() {
        let iv = t.interval(v);
        assert!(iv.windows(2).all(|w| s[w[0]].radius_cmp(&s[w[1]]) == Ordering::Less));
        let n = t.node(v);
        if let (Some(a), Some(b)) = (n.left, n.right) {
            assert_eq!([t.interval(a), t.interval(b)].concat(), iv);
        } else {
            assert_eq!(iv.len(), 1);
        }
    }
    for _ in 0..10_000 {
        let r1 = r.gen_range(0.0..3.2);
        let r2 = if r.gen() { None } else { Some(r1 + r.gen_range(0.0..2.0)) };
        let mut got: Vec<usize> = t.canonical_nodes(r1, r2).iter().flat_map(|&v| t.interval(v).to_vec()).collect();
        let n_got = got.len();
        got.sort();
        got.dedup();
        assert_eq!(got.len(), n_got, "intervals overlap");
        let want: Vec<usize> = (0..s.len()).filter(|&i| s[i].r >= r1 && r2.map_or(true, |b| s[i].r < b)).collect();
        assert_eq!(got, want);
        assert!(t.canonical_nodes(r1, r2).len() <= 2 * 8);
    }
}

#[test]
fn quadtrees_per_node_match_rebuild() {
    let mut r = common::rng(7);
    let s = common::uniform(&mut r, 200, 5.0, 0.01, 1.0);
    let p = Prepared::new(&s);
    for (v, list, lq) in descend_quadtrees(&p) {
        let mut own = p.tree.interval(v).to_vec();
        own.sort_by_key(|&i| point_key(&p.points[i]));
        assert_eq!(list, own);
        let pts: Vec<GridCell> = own.iter().map(|&i| p.points[i]).collect();
        assert_eq!(lq, CompressedQuadtree::from_sorted_points(&pts).linearize());
        if p.tree.node(v).is_leaf() {
            assert_eq!(lq.len(), 2);
        }
    }
}

#[test]
fn neighborhoods_are_exact() {
    let mut r = common::rng(8);
    for _ in 0..100_000 {
        let s = Site::new(0, r.gen_range(0.01..0.99), r.gen_range(0.01..0.99), 10f64.powf(r.gen_range(-6.0..0.15)));
        let cells = neighborhood(&s);
        assert!(!cells.is_empty() && cells.len() <= 25);
        let level = cells[0].level;
        let side = cells[0].side();
        let meets = |ix: i64, iy: i64| {
            let (x0, y0) = (ix as f64 * side, iy as f64 * side);
            let dx = (x0 - s.x).max(s.x - x0 - side).max(0.0);
            let dy = (y0 - s.y).max(s.y - y0 - side).max(0.0);
            dx * dx + dy * dy <= s.r * s.r
        };
        let home = GridCell::of_point(s.x, s.y, level);
        let n = 1i64 << level;
        for dx in -3..=3i64 {
            for dy in -3..=3i64 {
                let (ix, iy) = (home.ix as i64 + dx, home.iy as i64 + dy);
                if ix < 0 || iy < 0 || ix >= n || iy >= n {
                    continue;
                }
                let listed = cells.iter().any(|c| c.ix as i64 == ix && c.iy as i64 == iy);
                if meets(ix, iy) {
                    assert!(listed, "{s:?} misses ({ix}, {iy})");
                }
            }
        }
        for c in &cells {
            let (x0, y0) = c.corner();
            let dx = (x0 - s.x).max(s.x - x0 - side).max(0.0);
            let dy = (y0 - s.y).max(s.y - y0 - side).max(0.0);
            assert!((dx * dx + dy * dy).sqrt() <= s.r * (1.0 + 1e-9) + 1e-14);
        }
    }
}

#[test]
fn r1_matches_filter() {
    let mut crowded = 0;
    for seed in 0..100u64 {
        let mut r = common::rng(300 + seed);
        let n = 1 + (seed as usize * 37) % 256;
        let s = common::mixed(&mut r, n, seed as usize);
        let want = r1_brute(&s);
        match solve_r1(&s) {
            R1Outcome::EdgeLists(got) => {
                assert!(want.iter().all(|l| l.len() <= ALPHA), "seed {seed}: lists missed a crowded square");
                assert_eq!(got, want, "seed {seed}");
            }
            R1Outcome::Crowded(c) => {
                crowded += 1;
                assert!(c.verify(&s, 1e-9), "seed {seed}: {c:?}");
            }
        }
    }
    assert!(crowded < 100, "every instance was crowded");
}

#[test]
fn r1_reports_crowded_square() {
    let mut r = common::rng(9);
    let mut s: Vec<Site> = (0..100).map(|i| Site::new(i, r.gen::<f64>(), r.gen::<f64>(), r.gen_range(1.0..2.0))).collect();
    for k in 0..20 {
        s.push(Site::new(s.len(), 50.0 + 10.0 * k as f64, -40.0, 0.5));
    }
    match solve_r1(&s) {
        R1Outcome::Crowded(c) => assert!(c.verify(&s, 1e-9)),
        other => panic!("expected a crowded square, got {other:?}"),
    }
}

mod lifted {
    use super::common;
    use geogirth_core::exact::orient3d;
    use geogirth_core::geom::Site;
    use geogirth_core::range::hull::Hull;
    use geogirth_core::range::r2::{answers, build_union_polytopes, r2_brute, solve_r2, solve_r2_polytopes, solve_r2_scan, QueryTriple};
    use geogirth_core::range::tree::RadiusTree;
    use rand::Rng;
    use std::cmp::Ordering;

    #[test]
    fn hull_contains_all_points() {
        let mut r = common::rng(11);
        for round in 0..50 {
            let n = 4 + round * 7;
            let pts: Vec<[f64; 3]> = (0..n)
                .map(|_| {
                    let (x, y): (f64, f64) = (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
                    // half on a paraboloid, the rest scattered
                    let z = if r.gen() { x * x + y * y } else { r.gen_range(-1.0..2.0) };
                    [x, y, z]
                })
                .collect();
            let h = Hull::build(&pts).unwrap();
            assert_eq!(h.faces.len(), 2 * h.vertices.len() - 4);
            for f in &h.faces {
                for p in &pts {
                    assert_ne!(orient3d(pts[f[0]], pts[f[1]], pts[f[2]], *p), Ordering::Less);
                }
            }
            for _ in 0..50 {
                let d = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
                let f = |p: &[f64; 3]| d[0] * p[0] + d[1] * p[1] + d[2] * p[2];
                let best = pts.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
                let got = h.extreme(&pts, &d, h.vertices[r.gen_range(0..h.vertices.len())]);
                assert!(f(&pts[got]) >= best - 1e-12);
            }
        }
    }

    fn disks(seed: u64, n: usize) -> Vec<Site> {
        let mut r = common::rng(seed);
        common::mixed(&mut r, n, seed as usize)
    }

    #[test]
    fn lifting_matches_union_membership() {
        let mut r = common::rng(12);
        let s = disks(12, 120);
        let tree = RadiusTree::build(&s);
        let polys = build_union_polytopes(&s, &tree);
        let side = (120f64).sqrt();
        for _ in 0..10_000 {
            let v = r.gen_range(0..tree.nodes().len());
            let (x, y) = (r.gen_range(-1.0..side + 1.0), r.gen_range(-1.0..side + 1.0));
            let direct = tree.interval(v).iter().any(|&i| s[i].contains_point(x, y));
            let got = polys[v].covering(&s, x, y);
            assert_eq!(got.is_some(), direct, "node {v} at ({x}, {y})");
        }
    }

    #[test]
    fn dropped_disks_are_covered() {
        let mut r = common::rng(13);
        let s = disks(13, 150);
        let tree = RadiusTree::build(&s);
        let polys = build_union_polytopes(&s, &tree);
        let root = &polys[0];
        let kept = root.vertex_sites();
        for i in (0..s.len()).filter(|i| !kept.contains(i)) {
            for _ in 0..100 {
                let (a, d) = (r.gen_range(0.0..std::f64::consts::TAU), s[i].r * r.gen::<f64>().sqrt());
                let (x, y) = (s[i].x + d * a.cos(), s[i].y + d * a.sin());
                assert!(kept.iter().any(|&k| s[k].contains_point(x, y)), "disk {i} not covered at ({x}, {y})");
            }
        }
    }

    #[test]
    fn r2_matches_filter() {
        let mut found = 0;
        for seed in 0..100u64 {
            let mut r = common::rng(400 + seed);
            let n = 2 + (seed as usize * 41) % 255;
            let s = disks(500 + seed, n);
            let queries: Vec<QueryTriple> = (0..r.gen_range(1..n + 2))
                .map(|_| {
                    let q = r.gen_range(0..n);
                    let r1 = s[q].r * r.gen_range(0.5..1.5);
                    QueryTriple { s: q, r1, r2: r1 * r.gen_range(1.0..4.0) }
                })
                .collect();
            let want = r2_brute(&s, &queries).iter().any(Option::is_some);
            let tree = RadiusTree::build(&s);
            let got = solve_r2(&s, &queries);
            assert_eq!(got.is_some(), want, "seed {seed}");
            found += got.is_some() as usize;
            for got in [got, solve_r2_polytopes(&s, &tree, &queries), solve_r2_scan(&s, &tree, &queries)] {
                assert_eq!(got.is_some(), want, "seed {seed}");
                if let Some(a) = got {
                    assert!(answers(&s, &queries[a.query], a.u));
                }
            }
        }
        assert!((10..90).contains(&found), "{found} of 100 batches answered");
    }
}

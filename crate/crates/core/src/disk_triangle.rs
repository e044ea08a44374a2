//! Triangles and shortest triangles in disk graphs.

use alloc::vec::Vec;

use crate::chan::{self, ChanError, ChanParams, Decision, OptProblem};
use crate::geom::{disk_edge, dist, perimeter, Site};
use crate::graph::{better_triangle, triangle_by_degeneracy, TriKey, Triangle, UndirectedGraph};
use crate::grid::{shifted_grids, Grid};
use crate::stats::{self, Check};
use crate::sweep::{build_plane_or_witness, SweepOutcome};

/// Cells around a site that can hold the other two vertices of a triangle
/// of perimeter at most `W`: sides are at most `W/2`, which is about 2.12
/// cell sides, so a 7x7 block.
pub const BLOCK_RADIUS: i64 = 3;

/// Largest number of large sites a triangle-free cell can hold.
pub const MAX_LARGE_PER_CELL: usize = 18;

/// Default parameters for the shortest-triangle optimization.
pub const CHAN_PARAMS: ChanParams = ChanParams {
    alpha: 0.75,
    r: 4,
    n0: 24,
};

/// A triangle of a plane graph, vertex indices as ids. Linear time on
/// plane graphs.
pub fn planar_triangle(g: &UndirectedGraph) -> Option<Triangle> {
    let t = triangle_by_degeneracy(g)?;
    let w = |a: usize, b: usize| g.weight(a, b).unwrap_or(f64::NAN);
    Some(Triangle {
        ids: t,
        perimeter: w(t[0], t[1]) + w(t[1], t[2]) + w(t[2], t[0]),
    })
}

/// Some triangle of the disk graph (site ids), if any.
pub fn find_triangle_disk(sites: &[Site]) -> Option<Triangle> {
    match build_plane_or_witness(sites) {
        SweepOutcome::NotPlane(t) => Some(t),
        SweepOutcome::Plane(g) => planar_triangle(&g).map(|t| {
            let [a, b, c] = t.ids;
            Triangle::from_sites(&sites[a], &sites[b], &sites[c])
        }),
    }
}

fn is_triangle(a: &Site, b: &Site, c: &Site) -> bool {
    disk_edge(a, b) && disk_edge(b, c) && disk_edge(a, c)
}

/// Whether some triangle has perimeter at most `w`.
pub fn decide_perimeter(sites: &[Site], w: f64) -> bool {
    if !(w > 0.0) {
        return false;
    }
    // perimeter <= w  iff  key < (next float above w, no ids)
    let bound = TriKey {
        perimeter: w,
        ids: [usize::MAX; 3],
    };
    !matches!(decide_perimeter_below(sites, Some(bound)), Decision::Above)
}

/// Decides whether a triangle with key below `bound` exists.
///
/// Returns [`Decision::Optimum`] whenever the answer came from the sparse
/// phase, which enumerates every triangle of perimeter at most the bound.
pub fn decide_perimeter_below(sites: &[Site], bound: Option<TriKey>) -> Decision<Triangle> {
    let bound = match bound {
        None => {
            return match find_triangle_disk(sites) {
                Some(t) => Decision::Witness(t),
                None => Decision::Above,
            }
        }
        Some(b) => b,
    };
    let w = bound.perimeter;
    if sites.len() < 3 || !(w > 0.0) {
        return Decision::Above;
    }
    // slightly shrunk so that any triangle inside one cell is strictly
    // shorter than w after rounding
    let l = w / (3.0 * core::f64::consts::SQRT_2) * (1.0 - 1e-12);
    let all: Vec<usize> = (0..sites.len()).collect();
    let grids = shifted_grids(sites, &all, l);

    // (a) a triangle inside one cell
    let mut plane: [Vec<UndirectedGraph>; 4] = Default::default();
    for (gi, g) in grids.iter().enumerate() {
        for ci in 0..g.cell_count() {
            let (_, members) = g.cell(ci);
            let local: Vec<Site> = members.iter().map(|&i| sites[i]).collect();
            match build_plane_or_witness(&local) {
                SweepOutcome::NotPlane(t) => return Decision::Witness(t),
                SweepOutcome::Plane(pg) => {
                    if let Some(t) = planar_triangle(&pg) {
                        let [a, b, c] = t.ids;
                        return Decision::Witness(Triangle::from_sites(&local[a], &local[b], &local[c]));
                    }
                    plane[gi].push(pg);
                }
            }
        }
    }

    // every remaining triangle has a vertex with radius above l/4
    let large = |s: &Site| s.r > l / 4.0;
    let large_ids: Vec<usize> = all.iter().copied().filter(|&i| large(&sites[i])).collect();
    let large_grids: [Grid; 4] = shifted_grids(sites, &large_ids, l);
    let mut best: Option<Triangle> = None;
    let consider = |a: &Site, b: &Site, c: &Site, best: &mut Option<Triangle>| {
        if a.id == b.id || b.id == c.id || a.id == c.id || !is_triangle(a, b, c) {
            return;
        }
        let p = perimeter(a, b, c);
        if p > w {
            return;
        }
        let t = Triangle::from_sites(a, b, c);
        if t.key() < bound {
            *best = better_triangle(*best, Some(t));
        }
    };

    // (b) two or more large vertices
    for (g, lg) in grids.iter().zip(large_grids.iter()) {
        for ci in 0..lg.cell_count() {
            let (key, members) = lg.cell(ci);
            let ok = members.len() <= MAX_LARGE_PER_CELL;
            stats::record(Check::LargeSitesPerCell, ok);
            assert!(ok, "triangle-free cell with {} large sites", members.len());
            let near_large: Vec<usize> = lg.block(key, BLOCK_RADIUS).collect();
            let near: Vec<usize> = g.block(key, BLOCK_RADIUS).collect();
            for &s in members {
                let ss = &sites[s];
                for &t in &near_large {
                    let st = &sites[t];
                    if t == s || !disk_edge(ss, st) || dist(ss, st) > w / 2.0 {
                        continue;
                    }
                    for &u in &near {
                        consider(ss, st, &sites[u], &mut best);
                    }
                }
            }
        }
    }

    // (c) exactly one large vertex: its opposite edge lies in one cell
    for ((g, lg), graphs) in grids.iter().zip(large_grids.iter()).zip(plane.iter()) {
        for (ci, pg) in graphs.iter().enumerate() {
            let (key, members) = g.cell(ci);
            let mut near_large: Option<Vec<usize>> = None;
            for (a, b, _) in pg.edges() {
                let (sa, sb) = (&sites[members[a]], &sites[members[b]]);
                if large(sa) || large(sb) {
                    continue;
                }
                let nl = near_large.get_or_insert_with(|| lg.block(key, BLOCK_RADIUS).collect());
                for &u in nl.iter() {
                    consider(sa, sb, &sites[u], &mut best);
                }
            }
        }
    }
    match best {
        Some(t) => Decision::Optimum(t),
        None => Decision::Above,
    }
}

/// Minimum-perimeter triangle among `sites` by checking all triples.
pub fn shortest_triangle_brute(sites: &[Site]) -> Option<Triangle> {
    let mut best = None;
    for i in 0..sites.len() {
        for j in i + 1..sites.len() {
            if !disk_edge(&sites[i], &sites[j]) {
                continue;
            }
            for k in j + 1..sites.len() {
                if disk_edge(&sites[i], &sites[k]) && disk_edge(&sites[j], &sites[k]) {
                    best = better_triangle(best, Some(Triangle::from_sites(&sites[i], &sites[j], &sites[k])));
                }
            }
        }
    }
    best
}

#[derive(Debug)]
struct ShortestTriangle(Vec<Site>);

impl OptProblem for ShortestTriangle {
    type Witness = Triangle;
    type Key = TriKey;

    fn size(&self) -> usize {
        self.0.len()
    }
    fn key(w: &Triangle) -> TriKey {
        w.key()
    }
    fn decide_below(&self, t: Option<TriKey>) -> Decision<Triangle> {
        decide_perimeter_below(&self.0, t)
    }
    fn split(&self) -> Vec<Self> {
        chan::four_way_split(&self.0).into_iter().map(ShortestTriangle).collect()
    }
    fn base_solve(&self) -> Option<Triangle> {
        shortest_triangle_brute(&self.0)
    }
}

/// Minimum-perimeter triangle (ties by sorted ids), if any, ids sorted.
pub fn shortest_triangle_disk(sites: &[Site], seed: u64) -> Option<Triangle> {
    shortest_triangle_disk_with(sites, &CHAN_PARAMS, seed).expect("decision procedure is consistent")
}

pub fn shortest_triangle_disk_with(
    sites: &[Site],
    params: &ChanParams,
    seed: u64,
) -> Result<Option<Triangle>, ChanError> {
    Ok(chan::optimize(&ShortestTriangle(sites.to_vec()), params, seed)?.map(|t| t.sorted()))
}

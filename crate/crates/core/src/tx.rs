//! Directed triangles of transmission graphs.

use alloc::vec;
use alloc::vec::Vec;

use crate::chan::{self, ChanError, ChanParams, Decision, OptProblem};
use crate::disk_triangle::CHAN_PARAMS;
use crate::geom::{dist, tx_edge, Site};
use crate::graph::{better_triangle, TriKey, Triangle};
use crate::grid::Grid;
use crate::range::r1::{solve_r1_for, R1Outcome, ALPHA};
use crate::range::r2::{solve_r2, QueryTriple};
use crate::stats::{self, Check};

/// Cells around a site holding every site within `W / 2` of it when cells
/// have side `W / (3 sqrt 6)`: a 9x9 block.
pub const TX_BLOCK_RADIUS: i64 = 4;

/// Largest small-to-large indegree without a short triangle.
pub const MAX_TX_INDEGREE: usize = 6;

/// The cycle `a -> b -> c -> a`, if all three arcs exist.
fn cycle(sites: &[Site], a: usize, b: usize, c: usize) -> Option<Triangle> {
    let (sa, sb, sc) = (&sites[a], &sites[b], &sites[c]);
    (a != b && b != c && a != c && tx_edge(sa, sb) && tx_edge(sb, sc) && tx_edge(sc, sa)).then(|| Triangle::from_sites(sa, sb, sc))
}

/// A directed triangle on three of the given sites, either orientation.
fn triangle_on(sites: &[Site], a: usize, b: usize, c: usize) -> Option<Triangle> {
    cycle(sites, a, b, c).or_else(|| cycle(sites, a, c, b))
}

/// Shortest directed triangle among `idx`, by checking all triples.
fn shortest_among(sites: &[Site], idx: &[usize]) -> Option<Triangle> {
    let mut best = None;
    for (i, &a) in idx.iter().enumerate() {
        for (j, &b) in idx.iter().enumerate().skip(i + 1) {
            if !tx_edge(&sites[a], &sites[b]) && !tx_edge(&sites[b], &sites[a]) {
                continue;
            }
            for &c in &idx[j + 1..] {
                if let Some(t) = triangle_on(sites, a, b, c) {
                    best = better_triangle(best, Some(t));
                }
            }
        }
    }
    best
}

/// Shortest directed triangle (site ids, cycle order) by checking all
/// triples.
pub fn shortest_triangle_tx_brute(sites: &[Site]) -> Option<Triangle> {
    let all: Vec<usize> = (0..sites.len()).collect();
    shortest_among(sites, &all)
}

/// Some directed triangle, if any, in cycle order with site ids.
pub fn find_directed_triangle(sites: &[Site]) -> Option<Triangle> {
    let lists = match solve_r1_for(sites, |_| true) {
        R1Outcome::Crowded(c) => {
            let pick: Vec<usize> = c.sites.iter().copied().take(ALPHA + 1).collect();
            return Some(shortest_among(sites, &pick).or_else(|| shortest_among(sites, &c.sites)).expect("crowded square without a triangle"));
        }
        R1Outcome::EdgeLists(l) => l,
    };
    // first test: both other vertices reachable through short lists
    for s in 0..sites.len() {
        for &t in &lists[s] {
            if sites[t].r < sites[s].r {
                continue;
            }
            for &u in &lists[t] {
                if u != s && tx_edge(&sites[u], &sites[s]) {
                    return cycle(sites, s, t, u);
                }
            }
        }
    }
    // second test: a third vertex of radius in [r_s, r_t / 2) covering s
    let mut triples = Vec::new();
    let mut edge_of = Vec::new();
    for s in 0..sites.len() {
        for &t in &lists[s] {
            if sites[t].r > 2.0 * sites[s].r {
                triples.push(QueryTriple {
                    s,
                    r1: sites[s].r,
                    r2: sites[t].r / 2.0,
                });
                edge_of.push(t);
            }
        }
    }
    let a = solve_r2(sites, &triples)?;
    let (s, t) = (triples[a.query].s, edge_of[a.query]);
    Some(cycle(sites, s, t, a.u).expect("second test reported a non-triangle"))
}

fn below(t: &Triangle, bound: &TriKey) -> bool {
    t.key() < *bound
}

/// Decides whether a directed triangle with key below `bound` exists.
///
/// Returns [`Decision::Optimum`] when the answer came from the final scan,
/// which sees every triangle with a large vertex and perimeter at most the
/// bound.
pub fn decide_tx_below(sites: &[Site], bound: Option<TriKey>) -> Decision<Triangle> {
    let bound = match bound {
        None => {
            return match find_directed_triangle(sites) {
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
    let l = w / (3.0 * libm::sqrt(3.0)) * (1.0 - 1e-12);
    let n = sites.len();
    let large: Vec<bool> = sites.iter().map(|s| s.r > l).collect();

    // (1) triangles on small sites fit in a disk of radius l
    let small: Vec<usize> = (0..n).filter(|&i| !large[i]).collect();
    let small_sites: Vec<Site> = small.iter().map(|&i| sites[i]).collect();
    if let Some(t) = find_directed_triangle(&small_sites) {
        assert!(below(&t, &bound), "small triangle longer than the bound");
        return Decision::Witness(t);
    }

    // (2) incoming arcs from small to large sites
    let lists = match solve_r1_for(sites, |i| !large[i]) {
        R1Outcome::Crowded(c) => {
            let pick: Vec<usize> = c.sites.iter().copied().take(ALPHA + 1).collect();
            if let Some(t) = shortest_among(sites, &pick).filter(|t| below(t, &bound)) {
                return Decision::Witness(t);
            }
            crate::range::r1::r1_brute(sites)
                .into_iter()
                .enumerate()
                .map(|(i, l)| if large[i] { Vec::new() } else { l })
                .collect()
        }
        R1Outcome::EdgeLists(l) => l,
    };
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in small.iter().copied() {
        for &t in &lists[s] {
            if large[t] {
                incoming[t].push(s);
            }
        }
    }
    for t in (0..n).filter(|&t| large[t]) {
        if incoming[t].len() > MAX_TX_INDEGREE {
            // two of any seven in-neighbours see each other
            let nb = &incoming[t][..MAX_TX_INDEGREE + 1];
            let mut best = None;
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    best = better_triangle(best, triangle_on(sites, t, a, b));
                }
            }
            let found = best.filter(|x| below(x, &bound));
            stats::record(Check::TxIndegree, found.is_some());
            if let Some(x) = found {
                return Decision::Witness(x);
            }
        } else {
            stats::record(Check::TxIndegree, true);
        }
    }

    // (3) a triangle inside one cell
    let side = l / core::f64::consts::SQRT_2;
    let grid = Grid::build(sites, 0..n, side, 0.0, 0.0);
    for ci in 0..grid.cell_count() {
        let (_, members) = grid.cell(ci);
        let big: Vec<usize> = members.iter().copied().filter(|&i| large[i]).collect();
        if big.len() >= 3 {
            if let Some(t) = triangle_on(sites, big[0], big[1], big[2]).filter(|t| below(t, &bound)) {
                return Decision::Witness(t);
            }
        }
        let local: Vec<Site> = members.iter().map(|&i| sites[i]).collect();
        if let Some(t) = find_directed_triangle(&local) {
            if below(&t, &bound) {
                return Decision::Witness(t);
            }
        }
    }

    // (4) the remaining triangles, through their largest vertex t: an
    // in-neighbour u of t and any s in the block
    let large_grid = Grid::build(sites, (0..n).filter(|&i| large[i]), side, 0.0, 0.0);
    let mut best: Option<Triangle> = None;
    for t in (0..n).filter(|&t| large[t]) {
        let st = &sites[t];
        let key = grid.key(st.x, st.y);
        let mut us: Vec<usize> = incoming[t].clone();
        us.extend(large_grid.block(key, TX_BLOCK_RADIUS).filter(|&u| u != t && tx_edge(&sites[u], st)));
        if us.is_empty() {
            continue;
        }
        let outs: Vec<usize> = grid
            .block(key, TX_BLOCK_RADIUS)
            .filter(|&s| s != t && tx_edge(st, &sites[s]) && dist(st, &sites[s]) <= w / 2.0)
            .collect();
        for &u in &us {
            if sites[u].radius_cmp(st) == core::cmp::Ordering::Greater {
                continue;
            }
            for &s in &outs {
                if s == u || sites[s].radius_cmp(st) == core::cmp::Ordering::Greater {
                    continue;
                }
                if let Some(x) = cycle(sites, t, s, u) {
                    if below(&x, &bound) {
                        best = better_triangle(best, Some(x));
                    }
                }
            }
        }
    }
    match best {
        Some(t) => Decision::Optimum(t),
        None => Decision::Above,
    }
}

/// Whether some directed triangle has perimeter at most `w`.
pub fn decide_tx_perimeter(sites: &[Site], w: f64) -> bool {
    if !(w > 0.0) {
        return false;
    }
    let bound = TriKey {
        perimeter: w,
        ids: [usize::MAX; 3],
    };
    !matches!(decide_tx_below(sites, Some(bound)), Decision::Above)
}

#[derive(Debug)]
struct ShortestTx(Vec<Site>);

impl OptProblem for ShortestTx {
    type Witness = Triangle;
    type Key = TriKey;

    fn size(&self) -> usize {
        self.0.len()
    }
    fn key(w: &Triangle) -> TriKey {
        w.key()
    }
    fn decide_below(&self, t: Option<TriKey>) -> Decision<Triangle> {
        decide_tx_below(&self.0, t)
    }
    fn split(&self) -> Vec<Self> {
        chan::four_way_split(&self.0).into_iter().map(ShortestTx).collect()
    }
    fn base_solve(&self) -> Option<Triangle> {
        shortest_triangle_tx_brute(&self.0)
    }
}

/// Minimum-perimeter directed triangle (ties by sorted ids), if any, in
/// canonical cycle order.
pub fn shortest_triangle_tx(sites: &[Site], seed: u64) -> Option<Triangle> {
    shortest_triangle_tx_with(sites, &CHAN_PARAMS, seed).expect("decision procedure is consistent")
}

pub fn shortest_triangle_tx_with(sites: &[Site], params: &ChanParams, seed: u64) -> Result<Option<Triangle>, ChanError> {
    let best = chan::optimize(&ShortestTx(sites.to_vec()), params, seed)?;
    Ok(best.map(|t| canonical_cycle(sites, t)))
}

/// Smallest id first; when every arc is two-way, the smaller second id.
fn canonical_cycle(sites: &[Site], t: Triangle) -> Triangle {
    let t = t.normalized_cycle();
    let [a, b, c] = t.ids;
    let by_id = |id: usize| sites.iter().find(|s| s.id == id).expect("triangle of these sites");
    let (sa, sb, sc) = (by_id(a), by_id(b), by_id(c));
    if c < b && tx_edge(sa, sc) && tx_edge(sc, sb) && tx_edge(sb, sa) {
        Triangle { ids: [a, c, b], ..t }
    } else {
        t
    }
}

//! Unweighted and weighted girth of disk graphs.

use alloc::vec;
use alloc::vec::Vec;

use crate::disk_triangle::{shortest_triangle_disk_with, BLOCK_RADIUS, CHAN_PARAMS, MAX_LARGE_PER_CELL};
use crate::geom::{disk_edge, dist, Site};
use crate::graph::{min_heap, Cycle, HeapItem, UndirectedGraph};
use crate::grid::Grid;
use crate::stats::{self, Check};
use crate::sweep::{build_plane_or_witness, SweepOutcome};

/// Shortest-path tree of a root, truncated at some distance.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub root: usize,
    pub parent: Vec<usize>,
    pub dist: Vec<f64>,
    /// Child of the root on the tree path to `v`; the root maps to itself.
    pub branch: Vec<usize>,
}

pub const NONE: usize = usize::MAX;

impl ShortestPathTree {
    /// Dijkstra from `root`, settling only vertices at distance at most
    /// `radius` and ignoring vertices flagged in `removed`.
    pub fn build(g: &UndirectedGraph, root: usize, radius: f64, removed: Option<&[bool]>) -> Self {
        let n = g.n();
        let mut t = ShortestPathTree {
            root,
            parent: vec![NONE; n],
            dist: vec![f64::INFINITY; n],
            branch: vec![NONE; n],
        };
        t.grow(g, radius, removed);
        t
    }

    fn grow(&mut self, g: &UndirectedGraph, radius: f64, removed: Option<&[bool]>) {
        let gone = |v: usize| removed.map_or(false, |r| r[v]);
        let mut heap = min_heap();
        let root = self.root;
        self.dist[root] = 0.0;
        self.branch[root] = root;
        heap.push(HeapItem { d: 0.0, v: root });
        let mut done = vec![false; g.n()];
        while let Some(HeapItem { d, v: u }) = heap.pop() {
            if done[u] || d > self.dist[u] {
                continue;
            }
            done[u] = true;
            if u != root {
                let p = self.parent[u];
                self.branch[u] = if p == root { u } else { self.branch[p] };
            }
            for &(v, w) in g.neighbors(u) {
                if gone(v) || done[v] {
                    continue;
                }
                let nd = d + w;
                if nd <= radius && nd < self.dist[v] {
                    self.dist[v] = nd;
                    self.parent[v] = u;
                    heap.push(HeapItem { d: nd, v });
                }
            }
        }
        // vertices relaxed but never settled do not belong to the tree
        for v in 0..g.n() {
            if !done[v] {
                self.dist[v] = f64::INFINITY;
                self.parent[v] = NONE;
            }
        }
    }

    fn path_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut p = vec![v];
        while v != self.root {
            v = self.parent[v];
            p.push(v);
        }
        p
    }

    /// Best cycle closed by one non-tree edge whose endpoints lie in
    /// different branches.
    pub fn best_closing_edge(&self, g: &UndirectedGraph, removed: Option<&[bool]>) -> Option<Cycle> {
        let gone = |v: usize| removed.map_or(false, |r| r[v]);
        let mut best: Option<(f64, usize, usize)> = None;
        for u in 0..g.n() {
            if !self.dist[u].is_finite() || gone(u) {
                continue;
            }
            for &(v, w) in g.neighbors(u) {
                if v < u || !self.dist[v].is_finite() || gone(v) {
                    continue;
                }
                if self.parent[v] == u || self.parent[u] == v || self.branch[u] == self.branch[v] {
                    continue;
                }
                let len = self.dist[u] + w + self.dist[v];
                if best.map_or(true, |b| len < b.0) {
                    best = Some((len, u, v));
                }
            }
        }
        let (len, u, v) = best?;
        // root .. u, then v .. (child of root)
        let mut cyc = self.path_to_root(u);
        cyc.reverse();
        let mut back = self.path_to_root(v);
        back.pop();
        cyc.extend(back);
        Some(Cycle {
            vertices: cyc,
            length: len,
        })
    }
}

/// Shortest cycle through `s`, for graphs where every edge is a shortest
/// path between its endpoints and path lengths are distinct.
pub fn shortest_cycle_through(g: &UndirectedGraph, s: usize) -> Option<Cycle> {
    ShortestPathTree::build(g, s, f64::INFINITY, None).best_closing_edge(g, None)
}

/// Vertices of the 2-core.
fn two_core(g: &UndirectedGraph) -> Vec<bool> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < 2).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &(w, _) in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < 2 {
                    stack.push(w);
                }
            }
        }
    }
    alive
}

/// Hop girth of a sparse graph: breadth-first search from every vertex of
/// the 2-core, cut off once no shorter cycle can appear.
pub fn planar_girth_unweighted(g: &UndirectedGraph) -> Option<usize> {
    let n = g.n();
    let core = two_core(g);
    let mut best = usize::MAX;
    let mut level = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue: Vec<usize> = Vec::new();
    for s in 0..n {
        if !core[s] {
            continue;
        }
        for &v in &queue {
            level[v] = usize::MAX;
        }
        queue.clear();
        level[s] = 0;
        parent[s] = usize::MAX;
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * level[u] + 1 >= best {
                break;
            }
            for &(v, _) in g.neighbors(u) {
                if !core[v] {
                    continue;
                }
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    parent[v] = u;
                    queue.push(v);
                } else if parent[u] != v {
                    best = best.min(level[u] + level[v] + 1);
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Weighted girth of a graph with Euclidean-like weights: the shortest
/// cycle through each 2-core vertex in turn, deleting the vertex afterwards
/// and truncating every search at half the best length so far.
pub fn planar_weighted_girth(g: &UndirectedGraph) -> Option<Cycle> {
    let n = g.n();
    let core = two_core(g);
    let mut removed: Vec<bool> = core.iter().map(|&c| !c).collect();
    let mut best: Option<Cycle> = None;
    for s in 0..n {
        if removed[s] {
            continue;
        }
        let radius = best.as_ref().map_or(f64::INFINITY, |c| c.length / 2.0);
        let t = ShortestPathTree::build(g, s, radius, Some(&removed));
        if let Some(c) = t.best_closing_edge(g, Some(&removed)) {
            if best.as_ref().map_or(true, |b| c.length < b.length) {
                best = Some(c);
            }
        }
        removed[s] = true;
    }
    best
}

/// Hop girth of the disk graph.
pub fn girth_unweighted(sites: &[Site]) -> Option<usize> {
    match build_plane_or_witness(sites) {
        SweepOutcome::NotPlane(_) => Some(3),
        SweepOutcome::Plane(g) => planar_girth_unweighted(&g),
    }
}

fn relabel(c: Cycle, ids: impl Fn(usize) -> usize) -> Cycle {
    Cycle {
        vertices: c.vertices.into_iter().map(ids).collect(),
        length: c.length,
    }
}

fn plane_graph(sites: &[Site]) -> UndirectedGraph {
    match build_plane_or_witness(sites) {
        SweepOutcome::Plane(g) => g,
        // only called on triangle-free inputs, whose disk graphs are plane
        SweepOutcome::NotPlane(t) => panic!("triangle-free input produced triangle {:?}", t.ids),
    }
}

/// Minimum-weight cycle of the disk graph, vertices given as site ids in
/// canonical order.
pub fn weighted_girth_disk(sites: &[Site], seed: u64) -> Option<Cycle> {
    let tri = shortest_triangle_disk_with(sites, &CHAN_PARAMS, seed).expect("decision procedure is consistent");
    let tri = match tri {
        None => {
            let g = plane_graph(sites);
            return planar_weighted_girth(&g).map(|c| relabel(c, |i| sites[i].id).canonical());
        }
        Some(t) => t,
    };
    let w = tri.perimeter;
    let mut best = Cycle {
        vertices: tri.ids.to_vec(),
        length: w,
    };
    let l = w / (3.0 * core::f64::consts::SQRT_2);
    let is_large = |s: &Site| s.r >= l / 4.0;

    // cycles on small sites only
    let small: Vec<usize> = (0..sites.len()).filter(|&i| !is_large(&sites[i])).collect();
    let small_sites: Vec<Site> = small.iter().map(|&i| sites[i]).collect();
    let gs = plane_graph(&small_sites);
    if let Some(c) = planar_weighted_girth(&gs) {
        if c.length < best.length {
            best = relabel(c, |i| small_sites[i].id);
        }
    }

    // cycles through a large site stay inside its 7x7 block
    let n = sites.len();
    let mut small_pos = vec![NONE; n];
    for (k, &i) in small.iter().enumerate() {
        small_pos[i] = k;
    }
    let grid = Grid::build(sites, 0..n, l, 0.0, 0.0);
    let large_grid = Grid::build(sites, (0..n).filter(|&i| is_large(&sites[i])), l, 0.0, 0.0);
    let mut local = vec![NONE; n];
    for ci in 0..large_grid.cell_count() {
        let (key, centers) = large_grid.cell(ci);
        let ok = centers.len() <= MAX_LARGE_PER_CELL;
        stats::record(Check::LargeSitesPerCell, ok);
        assert!(ok, "triangle-free cell with {} large sites", centers.len());
        let members: Vec<usize> = grid.block(key, BLOCK_RADIUS).collect();
        for (k, &i) in members.iter().enumerate() {
            local[i] = k;
        }
        let mut edges = Vec::new();
        for (k, &i) in members.iter().enumerate() {
            if is_large(&sites[i]) {
                for (k2, &j) in members.iter().enumerate() {
                    if k2 != k && (k2 > k || !is_large(&sites[j])) && disk_edge(&sites[i], &sites[j]) {
                        edges.push((k, k2, dist(&sites[i], &sites[j])));
                    }
                }
            } else {
                for &(v, wv) in gs.neighbors(small_pos[i]) {
                    let j = small[v];
                    if local[j] != NONE && local[j] > k {
                        edges.push((k, local[j], wv));
                    }
                }
            }
        }
        let g = UndirectedGraph::from_edges(members.len(), &edges);
        for &c in centers {
            let t = ShortestPathTree::build(&g, local[c], best.length / 2.0, None);
            if let Some(cyc) = t.best_closing_edge(&g, None) {
                if cyc.length < best.length {
                    best = relabel(cyc, |k| sites[members[k]].id);
                }
            }
        }
        for &i in &members {
            local[i] = NONE;
        }
    }
    Some(best.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sites(v: &[(f64, f64, f64)]) -> Vec<Site> {
        v.iter().enumerate().map(|(i, &(x, y, r))| Site::new(i, x, y, r)).collect()
    }

    #[test]
    fn cycle_through_vertex() {
        let c4 = UndirectedGraph::from_edges(5, &[(0, 1, 1.0), (1, 2, 1.5), (2, 3, 1.0), (3, 0, 2.0), (3, 4, 1.0)]);
        let c = shortest_cycle_through(&c4, 2).unwrap();
        assert_eq!(c.length, 5.5);
        assert!(c.is_valid_in(&c4));
        assert!(shortest_cycle_through(&c4, 4).is_none());
    }

    #[test]
    fn square_of_disks() {
        let s = sites(&[(0.0, 0.0, 0.6), (1.0, 0.0, 0.6), (1.0, 1.0, 0.6), (0.0, 1.0, 0.6)]);
        assert_eq!(girth_unweighted(&s), Some(4));
        let c = weighted_girth_disk(&s, 0).unwrap();
        assert!((c.length - 4.0).abs() < 1e-12);
        let forest = sites(&[(0.0, 0.0, 0.6), (1.0, 0.0, 0.6), (5.0, 0.0, 0.6)]);
        assert_eq!(girth_unweighted(&forest), None);
        assert!(weighted_girth_disk(&forest, 0).is_none());
    }

    #[test]
    fn square_beats_long_triangle() {
        // triangle of perimeter 10 far away from a square of length 8
        // square of side 2 with radii 1.1: diagonals are not edges
        let h = 10.0 / 3.0;
        let mut v2 = vec![(0.0, 0.0, 1.1), (2.0, 0.0, 1.1), (2.0, 2.0, 1.1), (0.0, 2.0, 1.1)];
        v2.extend([(100.0, 100.0, 2.0), (100.0 + h, 100.0, 2.0), (100.0 + h / 2.0, 100.0 + h * 0.75f64.sqrt(), 2.0)]);
        let s2 = sites(&v2);
        let c2 = weighted_girth_disk(&s2, 1).unwrap();
        assert!((c2.length - 8.0).abs() < 1e-12, "{c2:?}");
    }
}

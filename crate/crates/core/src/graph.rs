//! Explicit graphs over sites and the brute-force oracles.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::geom::{disk_edge, dist, tx_edge, Site};

/// Undirected graph with Euclidean edge weights.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<(usize, f64)>>,
    m: usize,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        UndirectedGraph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Self-loops are dropped and
    /// parallel edges collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v, w) in edges {
            if u != v {
                g.adj[u].push((v, w));
                g.adj[v].push((u, w));
            }
        }
        let mut m2 = 0;
        for list in g.adj.iter_mut() {
            list.sort_by(|a, b| a.0.cmp(&b.0));
            list.dedup_by_key(|e| e.0);
            m2 += list.len();
        }
        g.m = m2 / 2;
        g
    }

    /// The weighted graph induced by `edges` over `sites`, with `|uv|`
    /// weights. Vertex ids are site ids.
    pub fn from_site_edges(sites: &[Site], edges: &[(usize, usize)]) -> Self {
        let list: Vec<_> = edges
            .iter()
            .map(|&(u, v)| (u, v, dist(&sites[u], &sites[v])))
            .collect();
        Self::from_edges(sites.len(), &list)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Neighbors of `u`, sorted by id.
    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let list = &self.adj[u];
        list.binary_search_by(|e| e.0.cmp(&v)).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    /// Every edge once, as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |e| e.0 > u).map(move |&(v, w)| (u, v, w)))
    }

    /// Writes one `u v w` line per edge.
    pub fn dump(&self, out: &mut dyn fmt::Write) -> fmt::Result {
        for (u, v, w) in self.edges() {
            writeln!(out, "{u} {v} {w:.16e}")?;
        }
        Ok(())
    }
}

/// Directed graph with Euclidean arc weights.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DirectedGraph {
    out: Vec<Vec<(usize, f64)>>,
    m: usize,
}

impl DirectedGraph {
    pub fn from_arcs(n: usize, arcs: &[(usize, usize, f64)]) -> Self {
        let mut out = vec![Vec::new(); n];
        for &(u, v, w) in arcs {
            if u != v {
                out[u].push((v, w));
            }
        }
        let mut m = 0;
        for l in out.iter_mut() {
            l.sort_by(|a: &(usize, f64), b| a.0.cmp(&b.0));
            l.dedup_by_key(|e| e.0);
            m += l.len();
        }
        DirectedGraph { out, m }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.m
    }

    pub fn successors(&self, u: usize) -> &[(usize, f64)] {
        &self.out[u]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search_by(|e| e.0.cmp(&v)).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&(v, w)| (u, v, w)))
    }

    pub fn dump(&self, out: &mut dyn fmt::Write) -> fmt::Result {
        for (u, v, w) in self.arcs() {
            writeln!(out, "{u} {v} {w:.16e}")?;
        }
        Ok(())
    }
}

/// Three vertices and the perimeter of the triangle they span. For
/// directed triangles the order is the cycle order `a -> b -> c -> a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    pub ids: [usize; 3],
    pub perimeter: f64,
}

impl Triangle {
    /// Triangle on three sites; the perimeter is computed canonically.
    pub fn from_sites(a: &Site, b: &Site, c: &Site) -> Triangle {
        Triangle {
            ids: [a.id, b.id, c.id],
            perimeter: crate::geom::perimeter(a, b, c),
        }
    }

    pub fn sorted_ids(&self) -> [usize; 3] {
        let mut v = self.ids;
        v.sort_unstable();
        v
    }

    /// Tie rule: perimeter, then sorted ids.
    pub fn cmp_key(&self, other: &Triangle) -> Ordering {
        self.perimeter
            .total_cmp(&other.perimeter)
            .then_with(|| self.sorted_ids().cmp(&other.sorted_ids()))
    }

    /// The same triangle with its ids sorted.
    pub fn sorted(&self) -> Triangle {
        Triangle {
            ids: self.sorted_ids(),
            perimeter: self.perimeter,
        }
    }

    /// Rotates a directed triangle so the smallest id comes first.
    pub fn normalized_cycle(&self) -> Triangle {
        let k = (0..3).min_by_key(|&i| self.ids[i]).unwrap_or(0);
        Triangle {
            ids: [self.ids[k], self.ids[(k + 1) % 3], self.ids[(k + 2) % 3]],
            perimeter: self.perimeter,
        }
    }
}

/// Totally ordered value of a triangle: perimeter, then sorted ids.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriKey {
    pub perimeter: f64,
    pub ids: [usize; 3],
}

impl Eq for TriKey {}

impl PartialOrd for TriKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for TriKey {
    fn cmp(&self, o: &Self) -> Ordering {
        self.perimeter.total_cmp(&o.perimeter).then(self.ids.cmp(&o.ids))
    }
}

impl Triangle {
    pub fn key(&self) -> TriKey {
        TriKey {
            perimeter: self.perimeter,
            ids: self.sorted_ids(),
        }
    }
}

/// Keeps the smaller triangle under the tie rule.
pub fn better_triangle(a: Option<Triangle>, b: Option<Triangle>) -> Option<Triangle> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.cmp_key(&x) == Ordering::Less { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// A simple cycle given by its vertex sequence (closed implicitly).
#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub length: f64,
}

impl Cycle {
    /// Starts at the smallest vertex and continues towards the smaller of
    /// its two cycle neighbours.
    pub fn canonical(mut self) -> Cycle {
        let v = &mut self.vertices;
        if let Some(k) = (0..v.len()).min_by_key(|&i| v[i]) {
            v.rotate_left(k);
            if v.len() > 2 && v[v.len() - 1] < v[1] {
                v[1..].reverse();
            }
        }
        self
    }

    pub fn hops(&self) -> usize {
        self.vertices.len()
    }

    /// Checks simplicity and that consecutive vertices are adjacent in `g`.
    pub fn is_valid_in(&self, g: &UndirectedGraph) -> bool {
        let k = self.vertices.len();
        if k < 3 {
            return false;
        }
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != k {
            return false;
        }
        (0..k).all(|i| g.has_edge(self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// Sum of edge weights along the cycle in `g`.
    pub fn weight_in(&self, g: &UndirectedGraph) -> f64 {
        let k = self.vertices.len();
        (0..k)
            .map(|i| g.weight(self.vertices[i], self.vertices[(i + 1) % k]).unwrap_or(f64::NAN))
            .sum()
    }
}

/// Min-heap entry keyed by a float distance.
#[derive(Clone, Copy, Debug)]
pub(crate) struct HeapItem {
    pub d: f64,
    pub v: usize,
}

impl PartialEq for HeapItem {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, o: &Self) -> Ordering {
        o.d.total_cmp(&self.d).then_with(|| o.v.cmp(&self.v))
    }
}

pub(crate) fn min_heap() -> BinaryHeap<HeapItem> {
    BinaryHeap::new()
}

/// Some triangle of `g` (vertex indices), by orienting edges along a
/// degeneracy order and intersecting out-neighborhoods. `O(m d)` for
/// degeneracy `d`, linear on plane graphs.
pub fn triangle_by_degeneracy(g: &UndirectedGraph) -> Option<[usize; 3]> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    let mut d: usize = 0;
    while next < n {
        d = d.saturating_sub(1);
        while buckets[d].is_empty() {
            d += 1;
        }
        let v = buckets[d].pop().unwrap_or(usize::MAX);
        if rank[v] != usize::MAX || deg[v] != d {
            continue;
        }
        rank[v] = next;
        next += 1;
        for &(w, _) in g.neighbors(v) {
            if rank[w] == usize::MAX {
                deg[w] -= 1;
                buckets[deg[w]].push(w);
            }
        }
    }
    let out: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|e| e.0).filter(|&w| rank[w] > rank[v]).collect())
        .collect();
    let mut mark = vec![usize::MAX; n];
    for v in 0..n {
        for &w in &out[v] {
            mark[w] = v;
        }
        for &w in &out[v] {
            for &x in &out[w] {
                if mark[x] == v {
                    let mut t = [v, w, x];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// oracles

/// All pairs `uv` with intersecting disks.
pub fn build_disk_graph_brute(sites: &[Site]) -> UndirectedGraph {
    let mut edges = Vec::new();
    for i in 0..sites.len() {
        for j in i + 1..sites.len() {
            if disk_edge(&sites[i], &sites[j]) {
                edges.push((i, j, dist(&sites[i], &sites[j])));
            }
        }
    }
    UndirectedGraph::from_edges(sites.len(), &edges)
}

/// All arcs `u -> v` with `v` in the disk of `u`.
pub fn build_tx_graph_brute(sites: &[Site]) -> DirectedGraph {
    let mut arcs = Vec::new();
    for i in 0..sites.len() {
        for j in 0..sites.len() {
            if i != j && tx_edge(&sites[i], &sites[j]) {
                arcs.push((i, j, dist(&sites[i], &sites[j])));
            }
        }
    }
    DirectedGraph::from_arcs(sites.len(), &arcs)
}

fn canonical_perimeter(w: impl Fn(usize, usize) -> f64, ids: [usize; 3]) -> f64 {
    let mut v = ids;
    v.sort_unstable();
    w(v[0], v[1]) + w(v[1], v[2]) + w(v[2], v[0])
}

fn undirected_weight(g: &UndirectedGraph) -> impl Fn(usize, usize) -> f64 + '_ {
    move |a, b| g.weight(a, b).unwrap_or(f64::NAN)
}

/// The first triangle in lexicographic order of sorted ids.
pub fn brute_triangle(g: &UndirectedGraph) -> Option<Triangle> {
    for a in 0..g.n() {
        for &(b, _) in g.neighbors(a).iter().filter(|e| e.0 > a) {
            for &(c, _) in g.neighbors(b).iter().filter(|e| e.0 > b) {
                if g.has_edge(a, c) {
                    let ids = [a, b, c];
                    return Some(Triangle {
                        ids,
                        perimeter: canonical_perimeter(undirected_weight(g), ids),
                    });
                }
            }
        }
    }
    None
}

/// Minimum-perimeter triangle under the tie rule.
pub fn brute_shortest_triangle(g: &UndirectedGraph) -> Option<Triangle> {
    let mut best = None;
    for a in 0..g.n() {
        for &(b, _) in g.neighbors(a).iter().filter(|e| e.0 > a) {
            for &(c, _) in g.neighbors(b).iter().filter(|e| e.0 > b) {
                if g.has_edge(a, c) {
                    let ids = [a, b, c];
                    let t = Triangle {
                        ids,
                        perimeter: canonical_perimeter(undirected_weight(g), ids),
                    };
                    best = better_triangle(best, Some(t));
                }
            }
        }
    }
    best
}

fn directed_triangles(g: &DirectedGraph, mut visit: impl FnMut(Triangle) -> bool) {
    let w = |a: usize, b: usize| {
        let l = g.successors(a);
        let wab = l.binary_search_by(|e| e.0.cmp(&b)).ok().map(|i| l[i].1);
        // arcs in both directions carry the same Euclidean weight
        wab.or_else(|| {
            let l = g.successors(b);
            l.binary_search_by(|e| e.0.cmp(&a)).ok().map(|i| l[i].1)
        })
        .unwrap_or(f64::NAN)
    };
    for a in 0..g.n() {
        for &(b, _) in g.successors(a).iter().filter(|e| e.0 > a) {
            for &(c, _) in g.successors(b).iter().filter(|e| e.0 > a) {
                if c != b && g.has_arc(c, a) {
                    let ids = [a, b, c];
                    if !visit(Triangle {
                        ids,
                        perimeter: canonical_perimeter(w, ids),
                    }) {
                        return;
                    }
                }
            }
        }
    }
}

/// Some directed 3-cycle, if any.
pub fn brute_directed_triangle(g: &DirectedGraph) -> Option<Triangle> {
    let mut found = None;
    directed_triangles(g, |t| {
        found = Some(t);
        false
    });
    found
}

/// Minimum-perimeter directed 3-cycle under the tie rule.
pub fn brute_shortest_directed_triangle(g: &DirectedGraph) -> Option<Triangle> {
    let mut best = None;
    directed_triangles(g, |t| {
        best = better_triangle(best, Some(t));
        true
    });
    best
}

/// Hop girth by breadth-first search from every vertex.
pub fn brute_girth_unweighted(g: &UndirectedGraph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut level = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
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
            for &(v, _) in g.neighbors(u) {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    parent[v] = u;
                    queue.push(v);
                } else if parent[u] != v {
                    best = best.min(level[u] + level[v] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Shortest `s`-`t` path avoiding the edge `{s, t}`; returns the vertex
/// sequence from `s` to `t` and its length.
fn shortest_path_avoiding(g: &UndirectedGraph, s: usize, t: usize) -> Option<(Vec<usize>, f64)> {
    let n = g.n();
    let mut d = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut heap = min_heap();
    d[s] = 0.0;
    heap.push(HeapItem { d: 0.0, v: s });
    while let Some(HeapItem { d: du, v: u }) = heap.pop() {
        if du > d[u] {
            continue;
        }
        if u == t {
            break;
        }
        for &(v, w) in g.neighbors(u) {
            if (u == s && v == t) || (u == t && v == s) {
                continue;
            }
            let nd = du + w;
            if nd < d[v] {
                d[v] = nd;
                parent[v] = u;
                heap.push(HeapItem { d: nd, v });
            }
        }
    }
    if !d[t].is_finite() {
        return None;
    }
    let mut path = vec![t];
    let mut x = t;
    while x != s {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    Some((path, d[t]))
}

/// Minimum-weight cycle: for each edge `uv`, the shortest `u`-`v` path
/// without that edge closes a cycle with it.
pub fn brute_min_weight_cycle(g: &UndirectedGraph) -> Option<Cycle> {
    let mut best: Option<Cycle> = None;
    for (u, v, w) in g.edges() {
        if let Some((path, len)) = shortest_path_avoiding(g, u, v) {
            let total = len + w;
            if best.as_ref().map_or(true, |b| total < b.length) {
                best = Some(Cycle {
                    vertices: path,
                    length: total,
                });
            }
        }
    }
    best
}

/// Minimum-weight cycle through `s` by the same edge-removal method,
/// restricted to edges incident to `s`.
pub fn brute_min_weight_cycle_through(g: &UndirectedGraph, s: usize) -> Option<Cycle> {
    let mut best: Option<Cycle> = None;
    for &(v, w) in g.neighbors(s) {
        if let Some((path, len)) = shortest_path_avoiding(g, s, v) {
            let total = len + w;
            if best.as_ref().map_or(true, |b| total < b.length) {
                best = Some(Cycle {
                    vertices: path,
                    length: total,
                });
            }
        }
    }
    best
}

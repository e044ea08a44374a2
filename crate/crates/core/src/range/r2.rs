//! Batched queries "is `s` covered by a disk of radius in `[r1, r2)`?",
//! answered on lifted disk unions of canonical intervals.

use alloc::vec;
use alloc::vec::Vec;

use super::hull::Hull;
use super::tree::{NodeId, RadiusTree};
use super::zorder::{point_key, GridCell, MAX_LEVEL};
use crate::geom::{tx_edge, Normalization, Site};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QueryTriple {
    pub s: usize,
    pub r1: f64,
    pub r2: f64,
}

/// Site `u` answering query number `query`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct R2Answer {
    pub u: usize,
    pub query: usize,
}

/// Whether `u` answers `q`.
pub fn answers(sites: &[Site], q: &QueryTriple, u: usize) -> bool {
    u != q.s && sites[u].r >= q.r1 && sites[u].r < q.r2 && tx_edge(&sites[u], &sites[q.s])
}

/// Union of the disks of one canonical interval, as the hull of their dual
/// points `(2x, 2y, r^2 - x^2 - y^2)`: a point `p` is covered exactly when
/// some hull vertex has `dot((p.x, p.y, 1), dual) >= |p|^2`.
#[derive(Clone, Debug)]
pub struct UnionPolytope {
    candidates: Vec<usize>,
    dual: Vec<[f64; 3]>,
    hull: Option<Hull>,
    frame: Frame,
}

/// Coordinates centred on the instance, keeping the dual points small.
#[derive(Clone, Copy, Debug)]
struct Frame {
    cx: f64,
    cy: f64,
}

impl Frame {
    fn new(sites: &[Site]) -> Frame {
        let n = Normalization::for_sites(sites);
        Frame {
            cx: n.origin_x + 0.5 * n.scale,
            cy: n.origin_y + 0.5 * n.scale,
        }
    }

    fn dual(&self, s: &Site) -> [f64; 3] {
        let (x, y) = (s.x - self.cx, s.y - self.cy);
        [2.0 * x, 2.0 * y, s.r * s.r - x * x - y * y]
    }
}

impl UnionPolytope {
    fn build(sites: &[Site], frame: Frame, candidates: Vec<usize>) -> UnionPolytope {
        let dual: Vec<[f64; 3]> = candidates.iter().map(|&i| frame.dual(&sites[i])).collect();
        let hull = Hull::build(&dual);
        UnionPolytope {
            candidates,
            dual,
            hull,
            frame,
        }
    }

    /// Sites whose dual points are hull vertices (all of them when the
    /// dual points are flat).
    pub fn vertex_sites(&self) -> Vec<usize> {
        match &self.hull {
            Some(h) => h.vertices.iter().map(|&k| self.candidates[k]).collect(),
            None => self.candidates.clone(),
        }
    }

    /// Local index of a disk of largest power at `(x, y)`, walking from
    /// local index `start` when it is a hull vertex.
    fn best_at(&self, x: f64, y: f64, start: Option<usize>) -> usize {
        let dir = [x - self.frame.cx, y - self.frame.cy, 1.0];
        match &self.hull {
            Some(h) => h.extreme(&self.dual, &dir, start.unwrap_or(h.vertices[0])),
            None => (0..self.dual.len())
                .max_by(|&a, &b| {
                    let f = |k: usize| dir[0] * self.dual[k][0] + dir[1] * self.dual[k][1] + self.dual[k][2];
                    f(a).total_cmp(&f(b))
                })
                .unwrap(),
        }
    }

    /// A disk of the interval containing `(x, y)`, if any.
    pub fn covering(&self, sites: &[Site], x: f64, y: f64) -> Option<usize> {
        let u = self.candidates[self.best_at(x, y, None)];
        sites[u].contains_point(x, y).then_some(u)
    }
}

/// Lifted unions of every node of the tree, built bottom-up from the
/// children's hull vertices.
pub fn build_union_polytopes(sites: &[Site], tree: &RadiusTree) -> Vec<UnionPolytope> {
    let frame = Frame::new(sites);
    let mut out: Vec<Option<UnionPolytope>> = vec![None; tree.nodes().len()];
    for v in (0..tree.nodes().len()).rev() {
        let node = tree.node(v);
        let cand = match (node.left, node.right) {
            (Some(l), Some(r)) => [out[l].as_ref().unwrap().vertex_sites(), out[r].as_ref().unwrap().vertex_sites()].concat(),
            _ => tree.interval(v).to_vec(),
        };
        out[v] = Some(UnionPolytope::build(sites, frame, cand));
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// Canonical nodes of each query with the query site itself cut out of the
/// radius range; per node, the queries (in Z-order of their site) whose
/// lifted points span that node's query hull.
pub fn build_query_hulls(sites: &[Site], tree: &RadiusTree, queries: &[QueryTriple]) -> Vec<Vec<usize>> {
    let norm = Normalization::for_sites(sites);
    let key = |q: &QueryTriple| {
        let s = norm.apply(&sites[q.s]);
        point_key(&GridCell::of_point(s.x, s.y, MAX_LEVEL))
    };
    let mut order: Vec<usize> = (0..queries.len()).collect();
    order.sort_by_cached_key(|&k| key(&queries[k]));
    let mut per_node: Vec<Vec<usize>> = vec![Vec::new(); tree.nodes().len()];
    let mut nodes: Vec<NodeId> = Vec::new();
    for k in order {
        let q = &queries[k];
        if !(q.r1 < q.r2) {
            continue;
        }
        let (a, b) = tree.positions(q.r1, Some(q.r2));
        let own = tree.rank(q.s);
        nodes.clear();
        if (a..b).contains(&own) {
            tree.canonical_nodes_in(a, own, &mut nodes);
            tree.canonical_nodes_in(own + 1, b, &mut nodes);
        } else {
            tree.canonical_nodes_in(a, b, &mut nodes);
        }
        for &v in &nodes {
            per_node[v].push(k);
        }
    }
    per_node
}

/// Some site answering some query, or `None` when no query is answered.
pub fn solve_r2(sites: &[Site], queries: &[QueryTriple]) -> Option<R2Answer> {
    let tree = RadiusTree::build(sites);
    solve_r2_with(sites, &tree, queries)
}

/// Batches this small are answered by scanning each query's radius range:
/// `O(n q)` stays within the `O(n log^2 n)` of the polytope method.
pub fn scan_limit(n: usize) -> usize {
    let lg = (usize::BITS - n.leading_zeros()) as usize;
    lg * lg
}

pub fn solve_r2_with(sites: &[Site], tree: &RadiusTree, queries: &[QueryTriple]) -> Option<R2Answer> {
    if queries.len() <= scan_limit(sites.len()) {
        solve_r2_scan(sites, tree, queries)
    } else {
        solve_r2_polytopes(sites, tree, queries)
    }
}

/// Checks every site in each query's radius range.
pub fn solve_r2_scan(sites: &[Site], tree: &RadiusTree, queries: &[QueryTriple]) -> Option<R2Answer> {
    for (k, q) in queries.iter().enumerate() {
        if !(q.r1 < q.r2) {
            continue;
        }
        let (a, b) = tree.positions(q.r1, Some(q.r2));
        if let Some(&u) = tree.order()[a..b].iter().find(|&&u| answers(sites, q, u)) {
            return Some(R2Answer { u, query: k });
        }
    }
    None
}

/// Sweeps the tree bottom-up, locating each query in the lifted unions of
/// its canonical nodes.
pub fn solve_r2_polytopes(sites: &[Site], tree: &RadiusTree, queries: &[QueryTriple]) -> Option<R2Answer> {
    if sites.is_empty() || queries.is_empty() {
        return None;
    }
    let per_node = build_query_hulls(sites, tree, queries);
    let frame = Frame::new(sites);
    // postorder: preorder numbering reversed visits children first
    let mut verts: Vec<Option<Vec<usize>>> = vec![None; tree.nodes().len()];
    for v in (0..tree.nodes().len()).rev() {
        let node = *tree.node(v);
        let cand = match (node.left, node.right) {
            (Some(l), Some(r)) => {
                let mut c = verts[l].take().unwrap();
                c.extend(verts[r].take().unwrap());
                c
            }
            _ => tree.interval(v).to_vec(),
        };
        let poly = UnionPolytope::build(sites, frame, cand);
        let mut start = None;
        for &k in &per_node[v] {
            let q = &queries[k];
            let best = poly.best_at(sites[q.s].x, sites[q.s].y, start);
            start = Some(best);
            let u = poly.candidates[best];
            if answers(sites, q, u) {
                return Some(R2Answer { u, query: k });
            }
        }
        if node.parent.is_some() {
            verts[v] = Some(poly.vertex_sites());
        }
    }
    None
}

/// For every query, some answering site, by scanning all sites.
pub fn r2_brute(sites: &[Site], queries: &[QueryTriple]) -> Vec<Option<usize>> {
    queries.iter().map(|q| (0..sites.len()).find(|&u| answers(sites, q, u))).collect()
}

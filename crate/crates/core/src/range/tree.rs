//! Balanced tree over the sites sorted by radius.

use alloc::vec::Vec;

use crate::geom::Site;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug)]
pub struct RadiusNode {
    /// Half-open range of positions in radius order.
    pub lo: usize,
    pub hi: usize,
    pub left: Option<NodeId>,
    pub right: Option<NodeId>,
    pub parent: Option<NodeId>,
}

impl RadiusNode {
    pub fn is_leaf(&self) -> bool {
        self.left.is_none()
    }
    pub fn len(&self) -> usize {
        self.hi - self.lo
    }
}

/// Nodes are numbered in preorder, so the root is 0 and every parent comes
/// before its children.
#[derive(Clone, Debug)]
pub struct RadiusTree {
    order: Vec<usize>,
    rank: Vec<usize>,
    radii: Vec<f64>,
    nodes: Vec<RadiusNode>,
}

impl RadiusTree {
    pub fn build(sites: &[Site]) -> RadiusTree {
        let mut order: Vec<usize> = (0..sites.len()).collect();
        order.sort_by(|&a, &b| sites[a].radius_cmp(&sites[b]));
        let mut rank = alloc::vec![0; sites.len()];
        for (p, &i) in order.iter().enumerate() {
            rank[i] = p;
        }
        let radii = order.iter().map(|&i| sites[i].r).collect();
        let mut t = RadiusTree {
            order,
            rank,
            radii,
            nodes: Vec::with_capacity(2 * sites.len()),
        };
        if !sites.is_empty() {
            t.grow(0, sites.len(), None);
        }
        t
    }

    fn grow(&mut self, lo: usize, hi: usize, parent: Option<NodeId>) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(RadiusNode {
            lo,
            hi,
            left: None,
            right: None,
            parent,
        });
        if hi - lo > 1 {
            let mid = lo + (hi - lo + 1) / 2;
            let l = self.grow(lo, mid, Some(id));
            let r = self.grow(mid, hi, Some(id));
            self.nodes[id].left = Some(l);
            self.nodes[id].right = Some(r);
        }
        id
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn root(&self) -> Option<NodeId> {
        (!self.nodes.is_empty()).then_some(0)
    }

    pub fn nodes(&self) -> &[RadiusNode] {
        &self.nodes
    }

    pub fn node(&self, v: NodeId) -> &RadiusNode {
        &self.nodes[v]
    }

    /// Site indices in increasing radius order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of site `i` in radius order.
    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    /// Canonical interval of `v`: its sites by increasing radius.
    pub fn interval(&self, v: NodeId) -> &[usize] {
        let n = &self.nodes[v];
        &self.order[n.lo..n.hi]
    }

    /// Positions of the sites with radius in `[r1, r2)`; `None` is no upper
    /// bound.
    pub fn positions(&self, r1: f64, r2: Option<f64>) -> (usize, usize) {
        let lo = self.radii.partition_point(|&r| r < r1);
        let hi = r2.map_or(self.radii.len(), |r2| self.radii.partition_point(|&r| r < r2));
        (lo, hi.max(lo))
    }

    /// Nodes whose intervals partition the radius range `[r1, r2)`, left to
    /// right.
    pub fn canonical_nodes(&self, r1: f64, r2: Option<f64>) -> Vec<NodeId> {
        let (a, b) = self.positions(r1, r2);
        let mut out = Vec::new();
        self.canonical_nodes_in(a, b, &mut out);
        out
    }

    /// Appends the canonical nodes of the position range `[a, b)`.
    pub fn canonical_nodes_in(&self, a: usize, b: usize, out: &mut Vec<NodeId>) {
        if a >= b || self.nodes.is_empty() {
            return;
        }
        // walk the two boundary paths from the root
        let mut stack = alloc::vec![0];
        while let Some(v) = stack.pop() {
            let n = &self.nodes[v];
            if n.hi <= a || b <= n.lo {
                continue;
            }
            if a <= n.lo && n.hi <= b {
                out.push(v);
                continue;
            }
            // children pushed right first so the left one is emitted first
            stack.push(n.right.unwrap());
            stack.push(n.left.unwrap());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_radii(r: &[f64]) -> Vec<Site> {
        r.iter().enumerate().map(|(i, &r)| Site::new(i, i as f64, 0.0, r)).collect()
    }

    #[test]
    fn small_trees() {
        let t = RadiusTree::build(&with_radii(&[1.0]));
        assert_eq!(t.nodes().len(), 1);
        assert_eq!(t.interval(0), &[0]);
        let t = RadiusTree::build(&with_radii(&[3.0, 1.0, 4.0, 2.0]));
        assert_eq!(t.interval(0), &[1, 3, 0, 2]);
        let n = t.node(0);
        assert_eq!(t.interval(n.left.unwrap()), &[1, 3]);
        assert_eq!(t.interval(n.right.unwrap()), &[0, 2]);
        assert_eq!(t.canonical_nodes(0.5, None), vec![0]);
        assert!(t.canonical_nodes(5.0, None).is_empty());
        assert!(t.canonical_nodes(2.5, Some(2.7)).is_empty());
        let c = t.canonical_nodes(1.5, Some(3.5));
        let got: Vec<usize> = c.iter().flat_map(|&v| t.interval(v).iter().copied()).collect();
        assert_eq!(got, vec![3, 0]);
    }
}

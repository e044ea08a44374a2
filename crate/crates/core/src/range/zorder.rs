//! Hierarchical grid cells of the unit square, the Z-order on them, and
//! compressed quadtrees.

use alloc::vec::Vec;
use core::cmp::Ordering;

/// Depth of the point cells used as quadtree leaves.
pub const MAX_LEVEL: u8 = 60;

/// Cell `[ix, ix + 1] x [iy, iy + 1]` scaled by `2^-level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridCell {
    pub level: u8,
    pub ix: u64,
    pub iy: u64,
}

impl GridCell {
    pub const ROOT: GridCell = GridCell { level: 0, ix: 0, iy: 0 };

    /// Cell of the given level containing `(x, y)`, clamped to the unit
    /// square.
    pub fn of_point(x: f64, y: f64, level: u8) -> GridCell {
        let n = 1u64 << level;
        let f = |v: f64| {
            let k = libm::floor(v * n as f64);
            if k < 0.0 {
                0
            } else {
                (k as u64).min(n - 1)
            }
        };
        GridCell { level, ix: f(x), iy: f(y) }
    }

    pub fn side(&self) -> f64 {
        libm::ldexp(1.0, -(self.level as i32))
    }

    /// Lower-left corner.
    pub fn corner(&self) -> (f64, f64) {
        let s = self.side();
        (self.ix as f64 * s, self.iy as f64 * s)
    }

    pub fn ancestor(&self, level: u8) -> GridCell {
        debug_assert!(level <= self.level);
        let k = self.level - level;
        GridCell {
            level,
            ix: self.ix >> k,
            iy: self.iy >> k,
        }
    }

    /// Whether `other` lies inside `self`.
    pub fn contains(&self, other: &GridCell) -> bool {
        other.level >= self.level && other.ancestor(self.level) == *self
    }

    /// Cells of a hierarchy either nest or have disjoint interiors.
    pub fn overlaps(&self, other: &GridCell) -> bool {
        self.contains(other) || other.contains(self)
    }

    /// Children in Z-order: NW, NE, SW, SE.
    pub fn children(&self) -> [GridCell; 4] {
        let (x, y, l) = (2 * self.ix, 2 * self.iy, self.level + 1);
        [(x, y + 1), (x + 1, y + 1), (x, y), (x + 1, y)].map(|(ix, iy)| GridCell { level: l, ix, iy })
    }
}

/// Position of the child containing bit `k` of the coordinates, in the
/// order NW, NE, SW, SE.
#[inline]
fn digit(ix: u64, iy: u64, k: u32) -> u8 {
    let bx = ((ix >> k) & 1) as u8;
    let by = ((iy >> k) & 1) as u8;
    2 * (1 - by) + bx
}

/// Z-order: a cell comes before the cells containing it, unrelated cells
/// compare by the children of their lowest common ancestor.
pub fn z_compare(a: &GridCell, b: &GridCell) -> Ordering {
    let m = a.level.min(b.level);
    let (pa, pb) = (a.ancestor(m), b.ancestor(m));
    if pa == pb {
        return b.level.cmp(&a.level);
    }
    let diff = (pa.ix ^ pb.ix) | (pa.iy ^ pb.iy);
    let k = 63 - diff.leading_zeros();
    digit(pa.ix, pa.iy, k).cmp(&digit(pb.ix, pb.iy, k))
}

/// Sort key of a point cell at [`MAX_LEVEL`]; agrees with [`z_compare`].
pub fn point_key(c: &GridCell) -> u128 {
    debug_assert_eq!(c.level, MAX_LEVEL);
    let mut key = 0u128;
    for k in (0..MAX_LEVEL as u32).rev() {
        key = (key << 2) | digit(c.ix, c.iy, k) as u128;
    }
    key
}

/// Sort key of any cell, agreeing with [`z_compare`]: the key of its last
/// point cell in Z-order, then deeper cells first.
pub fn cell_key(c: &GridCell) -> (u128, u8) {
    let sh = MAX_LEVEL - c.level;
    let last = GridCell {
        level: MAX_LEVEL,
        ix: ((c.ix + 1) << sh) - 1,
        iy: c.iy << sh,
    };
    (point_key(&last), sh)
}

/// Deepest common ancestor of two point cells.
fn common_ancestor(a: &GridCell, b: &GridCell) -> GridCell {
    let diff = (a.ix ^ b.ix) | (a.iy ^ b.iy);
    let bits = 64 - diff.leading_zeros() as u8;
    a.ancestor(a.level - bits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadNode {
    pub cell: GridCell,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Some child sits more than one level below.
    pub compressed: bool,
    /// Range of the Z-sorted input points inside the cell.
    pub lo: usize,
    pub hi: usize,
}

impl QuadNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Compressed quadtree with nodes stored in postorder, children visited in
/// Z-order. Leaves are the point cells of the input at [`MAX_LEVEL`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedQuadtree {
    pub nodes: Vec<QuadNode>,
}

impl CompressedQuadtree {
    /// Builds the tree from point cells sorted in Z-order, in linear time.
    /// Equal point cells share one leaf.
    pub fn from_sorted_points(points: &[GridCell]) -> CompressedQuadtree {
        // nodes get ids on creation; `post` records postorder
        let mut nodes: Vec<QuadNode> = Vec::new();
        let mut post: Vec<usize> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let new_node = |nodes: &mut Vec<QuadNode>, cell: GridCell, lo: usize, hi: usize| {
            nodes.push(QuadNode {
                cell,
                parent: None,
                children: Vec::new(),
                compressed: false,
                lo,
                hi,
            });
            nodes.len() - 1
        };
        let mut i = 0;
        while i < points.len() {
            let mut j = i + 1;
            while j < points.len() && points[j] == points[i] {
                j += 1;
            }
            let leaf = new_node(&mut nodes, points[i], i, j);
            post.push(leaf);
            if j < points.len() {
                let lca = common_ancestor(&points[i], &points[j]);
                let mut last = leaf;
                while let Some(&top) = stack.last() {
                    if nodes[top].cell.level <= lca.level {
                        break;
                    }
                    stack.pop();
                    nodes[top].hi = j;
                    nodes[last].parent.get_or_insert(top);
                    post.push(top);
                    last = top;
                }
                match stack.last() {
                    Some(&top) if nodes[top].cell == lca => {
                        nodes[last].parent.get_or_insert(top);
                    }
                    _ => {
                        let lo = nodes[last].lo;
                        let id = new_node(&mut nodes, lca, lo, j);
                        nodes[last].parent.get_or_insert(id);
                        stack.push(id);
                    }
                }
            } else {
                let mut last = leaf;
                while let Some(top) = stack.pop() {
                    nodes[top].hi = points.len();
                    nodes[last].parent.get_or_insert(top);
                    post.push(top);
                    last = top;
                }
                if nodes[last].cell != GridCell::ROOT {
                    let id = new_node(&mut nodes, GridCell::ROOT, 0, points.len());
                    nodes[last].parent = Some(id);
                    post.push(id);
                }
            }
            i = j;
        }
        // renumber in postorder and attach children
        let mut pos = alloc::vec![0; nodes.len()];
        for (k, &id) in post.iter().enumerate() {
            pos[id] = k;
        }
        let mut out: Vec<QuadNode> = post.iter().map(|&id| nodes[id].clone()).collect();
        for k in 0..out.len() {
            if let Some(p) = out[k].parent {
                let p = pos[p];
                out[k].parent = Some(p);
                out[p].children.push(k);
            }
        }
        for k in 0..out.len() {
            let l = out[k].cell.level;
            out[k].compressed = out[k].children.iter().any(|&c| out[c].cell.level > l + 1);
        }
        CompressedQuadtree { nodes: out }
    }

    pub fn linearize(&self) -> LinearizedQuadtree {
        LinearizedQuadtree {
            cells: self.nodes.iter().map(|n| n.cell).collect(),
            ranges: self.nodes.iter().map(|n| (n.lo as u32, n.hi as u32)).collect(),
        }
    }
}

/// Cells of a compressed quadtree in increasing Z-order, each with the
/// range of Z-sorted points it contains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearizedQuadtree {
    pub cells: Vec<GridCell>,
    pub ranges: Vec<(u32, u32)>,
}

impl LinearizedQuadtree {
    pub fn from_sorted_points(points: &[GridCell]) -> LinearizedQuadtree {
        CompressedQuadtree::from_sorted_points(points).linearize()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Index of the largest cell not after `sigma` in Z-order.
    pub fn z_predecessor(&self, sigma: &GridCell) -> Option<usize> {
        let k = self.cells.partition_point(|c| z_compare(c, sigma) != Ordering::Greater);
        k.checked_sub(1)
    }

    /// Points inside `sigma`, as a range of the Z-sorted input.
    pub fn points_in(&self, sigma: &GridCell) -> (usize, usize) {
        match self.z_predecessor(sigma) {
            Some(k) if self.cells[k].overlaps(sigma) => (self.ranges[k].0 as usize, self.ranges[k].1 as usize),
            _ => (0, 0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(level: u8, ix: u64, iy: u64) -> GridCell {
        GridCell { level, ix, iy }
    }

    #[test]
    fn order_of_children() {
        let [nw, ne, sw, se] = GridCell::ROOT.children();
        assert_eq!((nw.ix, nw.iy, se.ix, se.iy), (0, 1, 1, 0));
        assert_eq!(z_compare(&nw, &ne), Ordering::Less);
        assert_eq!(z_compare(&ne, &sw), Ordering::Less);
        assert_eq!(z_compare(&sw, &se), Ordering::Less);
        assert_eq!(z_compare(&se, &GridCell::ROOT), Ordering::Less);
        assert_eq!(z_compare(&cell(5, 3, 31), &nw), Ordering::Less);
        assert_eq!(z_compare(&cell(5, 3, 31), &cell(5, 3, 31)), Ordering::Equal);
    }

    #[test]
    fn quadrant_centers() {
        let mut pts: Vec<GridCell> = [(0.25, 0.75), (0.75, 0.75), (0.25, 0.25), (0.75, 0.25)]
            .iter()
            .map(|&(x, y)| GridCell::of_point(x, y, MAX_LEVEL))
            .collect();
        pts.sort_by_key(point_key);
        let q = CompressedQuadtree::from_sorted_points(&pts);
        assert_eq!(q.nodes.len(), 5);
        assert_eq!(q.nodes[4].cell, GridCell::ROOT);
        assert_eq!(q.nodes[4].children, vec![0, 1, 2, 3]);
        for (k, quad) in GridCell::ROOT.children().iter().enumerate() {
            assert!(quad.contains(&q.nodes[k].cell));
        }
        let one = CompressedQuadtree::from_sorted_points(&pts[..1]);
        assert_eq!(one.nodes.len(), 2);
        assert!(one.nodes[1].compressed);
    }
}

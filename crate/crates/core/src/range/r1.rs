//! Outgoing edges towards sites of at least half the radius, or a square
//! crowded with large sites.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::tree::{NodeId, RadiusTree};
use super::zorder::{cell_key, point_key, z_compare, GridCell, LinearizedQuadtree, MAX_LEVEL};
use crate::geom::{tx_edge, Normalization, Site};
use crate::stats::{self, Check};

/// Cap on the reported out-degree, and on the sites a crowded square must
/// exceed.
pub const ALPHA: usize = 72;

/// Largest neighborhood of a disk.
pub const BETA: usize = 25;

/// Square `[x, x + side] x [y, y + side]` holding more than [`ALPHA`]
/// sites of radius at least `side / 4`, listed in `sites`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrowdedSquare {
    pub x: f64,
    pub y: f64,
    pub side: f64,
    pub sites: Vec<usize>,
}

impl CrowdedSquare {
    /// Recounts the listed sites, allowing relative slack `eps` for the
    /// conversion out of grid coordinates.
    pub fn verify(&self, sites: &[Site], eps: f64) -> bool {
        let tol = eps * self.side;
        let inside = |s: &Site| {
            s.x >= self.x - tol && s.x <= self.x + self.side + tol && s.y >= self.y - tol && s.y <= self.y + self.side + tol
        };
        let mut ids = self.sites.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.len() > ALPHA && ids.iter().all(|&i| inside(&sites[i]) && sites[i].r >= self.side / 4.0 * (1.0 - eps))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum R1Outcome {
    /// For every queried site `s`, the sites `t != s` in its disk with
    /// `r_t >= r_s / 2`, sorted. Lists of sites that were not queried stay
    /// empty.
    EdgeLists(Vec<Vec<usize>>),
    Crowded(CrowdedSquare),
}

/// Cells of side `2^floor(log2 r)` meeting the disk, for a site in
/// normalized coordinates.
pub fn neighborhood(s: &Site) -> Vec<GridCell> {
    let r = s.r.min(core::f64::consts::SQRT_2);
    let level = (-libm::floor(libm::log2(r))).clamp(0.0, MAX_LEVEL as f64) as u8;
    let n = 1i64 << level;
    let side = libm::ldexp(1.0, -(level as i32));
    let reach = r * (1.0 + 1e-12) + 1e-15;
    let span = |c: f64| {
        let a = libm::floor((c - reach) / side) as i64;
        let b = libm::floor((c + reach) / side) as i64;
        (a.max(0), b.min(n - 1))
    };
    let (x0, x1) = span(s.x);
    let (y0, y1) = span(s.y);
    let mut out = Vec::new();
    for ix in x0..=x1 {
        for iy in y0..=y1 {
            let (cx0, cy0) = (ix as f64 * side, iy as f64 * side);
            let dx = (cx0 - s.x).max(s.x - cx0 - side).max(0.0);
            let dy = (cy0 - s.y).max(s.y - cy0 - side).max(0.0);
            if dx * dx + dy * dy <= reach * reach {
                out.push(GridCell {
                    level,
                    ix: ix as u64,
                    iy: iy as u64,
                });
            }
        }
    }
    stats::record(Check::NeighborhoodCells, out.len() <= BETA);
    out
}

/// Sites in normalized position with their point cells, sorted by radius
/// in a tree and by Z-order in a list.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub norm: Normalization,
    pub normalized: Vec<Site>,
    pub points: Vec<GridCell>,
    pub tree: RadiusTree,
    pub z_order: Vec<usize>,
}

impl Prepared {
    pub fn new(sites: &[Site]) -> Prepared {
        let norm = Normalization::for_sites(sites);
        let normalized: Vec<Site> = sites.iter().map(|s| norm.apply(s)).collect();
        let points: Vec<GridCell> = normalized.iter().map(|s| GridCell::of_point(s.x, s.y, MAX_LEVEL)).collect();
        let keys: Vec<u128> = points.iter().map(point_key).collect();
        let mut z_order: Vec<usize> = (0..sites.len()).collect();
        z_order.sort_by_key(|&i| keys[i]);
        Prepared {
            norm,
            normalized,
            tree: RadiusTree::build(sites),
            points,
            z_order,
        }
    }

    /// Quadtree of the sites listed in Z-order.
    pub fn quadtree(&self, z_sorted: &[usize]) -> LinearizedQuadtree {
        let pts: Vec<GridCell> = z_sorted.iter().map(|&i| self.points[i]).collect();
        LinearizedQuadtree::from_sorted_points(&pts)
    }

    /// The Z-sorted sites of every tree node on a root-to-leaf walk, handed
    /// to `visit` in preorder together with the parent's list.
    pub fn descend(&self, mut visit: impl FnMut(NodeId, &[usize])) {
        if self.tree.is_empty() {
            return;
        }
        let mut stack: Vec<(NodeId, Vec<usize>)> = vec![(0, self.z_order.clone())];
        while let Some((v, list)) = stack.pop() {
            visit(v, &list);
            let node = *self.tree.node(v);
            if let (Some(l), Some(r)) = (node.left, node.right) {
                let split = self.tree.node(r).lo;
                let (mut a, mut b) = (Vec::new(), Vec::new());
                for &i in &list {
                    if self.tree.rank(i) < split {
                        a.push(i)
                    } else {
                        b.push(i)
                    }
                }
                stack.push((r, b));
                stack.push((l, a));
            }
        }
    }
}

/// Linearized quadtree of every tree node, in preorder.
pub fn descend_quadtrees(p: &Prepared) -> Vec<(NodeId, Vec<usize>, LinearizedQuadtree)> {
    let mut out = Vec::new();
    p.descend(|v, list| out.push((v, list.to_vec(), p.quadtree(list))));
    out
}

struct SplitQuery {
    cell: GridCell,
    site: usize,
    /// First radius position with `r >= r_s / 2`.
    from: usize,
}

pub fn solve_r1(sites: &[Site]) -> R1Outcome {
    solve_r1_for(sites, |_| true)
}

/// Runs (R1) with only the sites accepted by `query` as queries.
pub fn solve_r1_for(sites: &[Site], query: impl Fn(usize) -> bool) -> R1Outcome {
    let n = sites.len();
    if n == 0 {
        return R1Outcome::EdgeLists(Vec::new());
    }
    let p = Prepared::new(sites);
    let radii: Vec<f64> = p.tree.order().iter().map(|&i| sites[i].r).collect();
    let mut qs: Vec<SplitQuery> = Vec::new();
    for s in (0..n).filter(|&s| query(s)) {
        let from = radii.partition_point(|&r| r < sites[s].r / 2.0);
        for cell in neighborhood(&p.normalized[s]) {
            qs.push(SplitQuery { cell, site: s, from });
        }
    }
    qs.sort_by_cached_key(|q| cell_key(&q.cell));

    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut crowded: Option<CrowdedSquare> = None;
    // queries of the whole range are answered at the root; a query with
    // `from = a > 0` is answered at the right children hanging off the
    // path to position `a - 1`
    let (all, rest): (Vec<u32>, Vec<u32>) = (0..qs.len() as u32).partition(|&q| qs[q as usize].from == 0);
    // per node: queries whose path passes it, queries answered at it
    let mut lists_by_node: Vec<Option<(Vec<u32>, Vec<u32>)>> = vec![None; p.tree.nodes().len()];
    lists_by_node[0] = Some((rest, all));

    p.descend(|v, zs| {
        if crowded.is_some() {
            return;
        }
        let (path, incoming) = lists_by_node[v].take().unwrap_or_default();
        let node = *p.tree.node(v);
        if !incoming.is_empty() {
            let lq = p.quadtree(zs);
            answer(&p, sites, &qs, &incoming, zs, &lq, &mut lists, &mut crowded);
        }
        if let (Some(l), Some(r)) = (node.left, node.right) {
            let split = p.tree.node(r).lo;
            let (to_left, to_right): (Vec<u32>, Vec<u32>) = path.into_iter().partition(|&q| qs[q as usize].from - 1 < split);
            lists_by_node[r] = Some((to_right, to_left.clone()));
            lists_by_node[l] = Some((to_left, Vec::new()));
        }
    });
    if let Some(c) = crowded {
        return R1Outcome::Crowded(c);
    }
    for l in lists.iter_mut() {
        l.sort_unstable();
    }
    R1Outcome::EdgeLists(lists)
}

/// Merges Z-sorted queries with a linearized quadtree and collects the
/// sites of each query cell.
#[allow(clippy::too_many_arguments)]
fn answer(
    p: &Prepared,
    sites: &[Site],
    qs: &[SplitQuery],
    incoming: &[u32],
    zs: &[usize],
    lq: &LinearizedQuadtree,
    lists: &mut [Vec<usize>],
    crowded: &mut Option<CrowdedSquare>,
) {
    let mut k = 0;
    for &q in incoming {
        let SplitQuery { cell, site: s, .. } = qs[q as usize];
        while k < lq.len() && z_compare(&lq.cells[k], &cell) != Ordering::Greater {
            k += 1;
        }
        let tau = match k.checked_sub(1) {
            Some(t) if lq.cells[t].overlaps(&cell) => t,
            _ => continue,
        };
        let (lo, hi) = lq.ranges[tau];
        let inside = &zs[lo as usize..hi as usize];
        if inside.len() > ALPHA {
            let (cx, cy) = cell.corner();
            let side = cell.side() * p.norm.scale;
            *crowded = Some(CrowdedSquare {
                x: p.norm.origin_x + cx * p.norm.scale,
                y: p.norm.origin_y + cy * p.norm.scale,
                side,
                sites: inside.to_vec(),
            });
            return;
        }
        for &t in inside {
            if t != s && tx_edge(&sites[s], &sites[t]) {
                lists[s].push(t);
            }
        }
        if lists[s].len() > ALPHA {
            let ss = &sites[s];
            let mut members = core::mem::take(&mut lists[s]);
            members.push(s);
            *crowded = Some(CrowdedSquare {
                x: ss.x - ss.r,
                y: ss.y - ss.r,
                side: 2.0 * ss.r,
                sites: members,
            });
            return;
        }
    }
}

/// The edge lists of (R1) by checking all pairs, without the cap.
pub fn r1_brute(sites: &[Site]) -> Vec<Vec<usize>> {
    (0..sites.len())
        .map(|s| {
            (0..sites.len())
                .filter(|&t| t != s && sites[t].r >= sites[s].r / 2.0 && tx_edge(&sites[s], &sites[t]))
                .collect()
        })
        .collect()
}

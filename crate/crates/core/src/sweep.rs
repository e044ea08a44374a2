//! Plane sweeps over disk boundaries and straight edges.
//!
//! The arc sweep splits every circle into its lower and upper x-monotone
//! arc and runs Bentley-Ottmann over them. The same pass can track, for
//! every arc, the set of disks containing the region directly above it,
//! which yields the edges between nested disks.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::exact::orient2d;
use crate::geom::{circle_circle_points, disk_edge, disks_nested, disks_share_point, Site};
use crate::graph::{brute_triangle, build_disk_graph_brute, Triangle, UndirectedGraph};
use crate::stats;
use crate::status::{Handle, Status};

/// A point where two boundary circles meet. `a < b` are slice indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Intersection {
    pub x: f64,
    pub y: f64,
    pub a: usize,
    pub b: usize,
}

/// The sweep found more intersections than allowed. Carries the first
/// `limit + 1` of them.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceededLimit {
    pub reported: Vec<Intersection>,
}

/// Result of [`build_plane_or_witness`].
#[derive(Clone, Debug)]
pub enum SweepOutcome {
    /// The disk graph with its straight-line embedding is plane. Vertex `i`
    /// is `sites[i]`.
    Plane(UndirectedGraph),
    /// A triangle (site ids) certifying the graph could not be kept plane.
    NotPlane(Triangle),
}

const START: u8 = 0;
const CROSS: u8 = 1;
const TOUCH: u8 = 2;
const END: u8 = 3;
const END_BIT: u32 = 1 << 31;

#[derive(Clone, Copy, Debug)]
struct Event {
    x: f64,
    kind: u8,
    a: u32,
    b: u32,
    k: u8,
    y: f64,
}

impl Event {
    fn key(&self) -> (u8, u32, u32, u8) {
        // touching points are reported before any crossing at the same x
        let rank = match self.kind {
            START => 0,
            TOUCH => 1,
            CROSS => 2,
            _ => 3,
        };
        (rank, self.a, self.b, self.k)
    }
}

impl PartialEq for Event {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Event {}
impl PartialOrd for Event {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Event {
    fn cmp(&self, o: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        o.x.total_cmp(&self.x).then_with(|| o.key().cmp(&self.key()))
    }
}

#[inline]
fn circle_of(arc: u32) -> usize {
    (arc >> 1) as usize
}

#[inline]
fn is_upper(arc: u32) -> bool {
    arc & 1 == 1
}

fn arc_y(s: &Site, upper: bool, x: f64) -> f64 {
    let dx = x - s.x;
    let h = libm::sqrt((s.r * s.r - dx * dx).max(0.0));
    if upper {
        s.y + h
    } else {
        s.y - h
    }
}

fn on_arc(s: &Site, upper: bool, py: f64) -> bool {
    if upper {
        py >= s.y
    } else {
        py <= s.y
    }
}

enum Stop {
    Done,
    Exceeded,
    Deep(Vec<u32>),
}

struct ArcSweep<'a> {
    sites: &'a [Site],
    status: Status<u32>,
    pos: Vec<Handle>,
    // start and end events as (x, end bit | circle), latest first
    fixed: Vec<(f64, u32)>,
    events: BinaryHeap<Event>,
    scheduled: BTreeSet<(u32, u32, u8)>,
    x: f64,
    out: Vec<Intersection>,
    limit: Option<usize>,
    // per arc: disks containing the region just above it
    above: Option<Vec<Vec<u32>>>,
    max_depth: usize,
    nested: Vec<(usize, usize)>,
}

impl<'a> ArcSweep<'a> {
    fn new(sites: &'a [Site], limit: Option<usize>, track: bool, max_depth: usize) -> Self {
        let n = sites.len();
        let mut fixed = Vec::with_capacity(2 * n);
        for (i, s) in sites.iter().enumerate() {
            fixed.push((s.x - s.r, i as u32));
            fixed.push((s.x + s.r, END_BIT | i as u32));
        }
        fixed.sort_unstable_by(|p, q| q.0.total_cmp(&p.0).then(q.1.cmp(&p.1)));
        ArcSweep {
            sites,
            status: Status::new(),
            pos: vec![u32::MAX; 2 * n],
            fixed,
            events: BinaryHeap::new(),
            scheduled: BTreeSet::new(),
            x: f64::NEG_INFINITY,
            out: Vec::new(),
            limit,
            above: track.then(|| vec![Vec::new(); 2 * n]),
            max_depth,
            nested: Vec::new(),
        }
    }

    fn next_event(&mut self) -> Option<Event> {
        let f = self.fixed.last().map(|&(x, code)| {
            let a = code & !END_BIT;
            Event {
                x,
                kind: if code & END_BIT != 0 { END } else { START },
                a,
                b: 0,
                k: 0,
                y: self.sites[a as usize].y,
            }
        });
        match (f, self.events.peek()) {
            (Some(f), Some(h)) if *h > f => self.events.pop(),
            (Some(f), _) => {
                self.fixed.pop();
                Some(f)
            }
            (None, _) => self.events.pop(),
        }
    }

    fn run(&mut self) -> Stop {
        while let Some(ev) = self.next_event() {
            self.x = ev.x;
            let r = match ev.kind {
                START => self.insert_circle(ev.a),
                END => {
                    self.remove_circle(ev.a);
                    None
                }
                _ => self.intersection(ev),
            };
            if let Some(stop) = r {
                return stop;
            }
        }
        Stop::Done
    }

    fn insert_circle(&mut self, c: u32) -> Option<Stop> {
        let s = self.sites[c as usize];
        let x0 = self.x;
        let lower_arc = 2 * c;
        let upper_arc = 2 * c + 1;
        let sites = self.sites;
        let hl = self.status.insert_by(lower_arc, |&e| {
            let ye = arc_y(&sites[circle_of(e)], is_upper(e), x0);
            match s.y.total_cmp(&ye) {
                Ordering::Less => Ordering::Less,
                Ordering::Greater => Ordering::Greater,
                // tangent to an existing arc at our leftmost point: a lower
                // arc bulges away upward, an upper arc downward
                Ordering::Equal if is_upper(e) => Ordering::Less,
                Ordering::Equal => Ordering::Greater,
            }
        });
        let hu = self.status.insert_adjacent(upper_arc, hl, true);
        self.pos[lower_arc as usize] = hl;
        self.pos[upper_arc as usize] = hu;
        if self.above.is_some() {
            let g = match self.status.prev(hl) {
                Some(p) => self.above.as_ref().unwrap()[*self.status.get(p) as usize].clone(),
                None => Vec::new(),
            };
            for &d in &g {
                if disks_nested(&s, &self.sites[d as usize]) {
                    let (a, b) = (c.min(d) as usize, c.max(d) as usize);
                    self.nested.push((a, b));
                }
            }
            let mut inner = g.clone();
            inner.push(c);
            let deep = inner.len() > self.max_depth;
            let above = self.above.as_mut().unwrap();
            above[upper_arc as usize] = g;
            above[lower_arc as usize] = inner;
            if deep {
                return Some(Stop::Deep(above[lower_arc as usize].clone()));
            }
        }
        if let Some(p) = self.status.prev(hl) {
            self.schedule(p, hl);
        }
        if let Some(q) = self.status.next(hu) {
            self.schedule(hu, q);
        }
        None
    }

    fn remove_circle(&mut self, c: u32) {
        let hl = self.pos[2 * c as usize];
        let hu = self.pos[2 * c as usize + 1];
        let mut lo = self.status.prev(hl);
        let mut hi = self.status.next(hu);
        if lo == Some(hu) {
            lo = self.status.prev(hu);
        }
        if hi == Some(hl) {
            hi = self.status.next(hl);
        }
        self.status.remove(hl);
        self.status.remove(hu);
        self.pos[2 * c as usize] = u32::MAX;
        self.pos[2 * c as usize + 1] = u32::MAX;
        if let (Some(a), Some(b)) = (lo, hi) {
            self.schedule(a, b);
        }
    }

    fn intersection(&mut self, ev: Event) -> Option<Stop> {
        let (ca, cb) = (circle_of(ev.a), circle_of(ev.b));
        self.out.push(Intersection {
            x: ev.x,
            y: ev.y,
            a: ca.min(cb),
            b: ca.max(cb),
        });
        if let Some(l) = self.limit {
            if self.out.len() > l {
                return Some(Stop::Exceeded);
            }
        }
        if ev.kind == TOUCH {
            return None;
        }
        let (ha, hb) = (self.pos[ev.a as usize], self.pos[ev.b as usize]);
        if ha == u32::MAX || hb == u32::MAX {
            return None;
        }
        let (hp, hq) = if self.status.next(ha) == Some(hb) {
            (ha, hb)
        } else if self.status.next(hb) == Some(ha) {
            (hb, ha)
        } else {
            // not adjacent: only possible through rounding in a
            // near-degenerate configuration; keep the current order
            return None;
        };
        let (pa, qa) = (*self.status.get(hp), *self.status.get(hq));
        self.status.swap_values(hp, hq);
        self.pos[pa as usize] = hq;
        self.pos[qa as usize] = hp;
        if self.above.is_some() {
            if let Some(stop) = self.refresh_above(hp).or_else(|| self.refresh_above(hq)) {
                return Some(stop);
            }
        }
        if let Some(p) = self.status.prev(hp) {
            self.schedule(p, hp);
        }
        if let Some(q) = self.status.next(hq) {
            self.schedule(hq, q);
        }
        None
    }

    /// Recomputes the region set above the arc at `h` from the arc below.
    fn refresh_above(&mut self, h: Handle) -> Option<Stop> {
        let arc = *self.status.get(h);
        let below = self.status.prev(h).map(|p| *self.status.get(p));
        let above = self.above.as_mut().unwrap();
        let mut set = match below {
            Some(b) => above[b as usize].clone(),
            None => Vec::new(),
        };
        let c = arc >> 1;
        if let Some(i) = set.iter().position(|&d| d == c) {
            set.swap_remove(i);
        } else {
            set.push(c);
        }
        let deep = set.len() > self.max_depth;
        above[arc as usize] = set;
        deep.then(|| Stop::Deep(above[arc as usize].clone()))
    }

    /// Queues the future meeting points of two adjacent arcs.
    fn schedule(&mut self, hp: Handle, hq: Handle) {
        let pa = *self.status.get(hp);
        let qa = *self.status.get(hq);
        let (cp, cq) = (circle_of(pa), circle_of(qa));
        if cp == cq {
            return;
        }
        let (sp, sq) = (&self.sites[cp], &self.sites[cq]);
        let pts = match circle_circle_points(sp, sq) {
            Ok(p) => p,
            Err(_) => return,
        };
        let kind = if pts.len() == 1 { TOUCH } else { CROSS };
        for (k, &(px, py)) in pts.iter().enumerate() {
            if px < self.x || !on_arc(sp, is_upper(pa), py) || !on_arc(sq, is_upper(qa), py) {
                continue;
            }
            let key = (cp.min(cq) as u32, cp.max(cq) as u32, k as u8);
            if self.scheduled.insert(key) {
                self.events.push(Event {
                    x: px,
                    kind,
                    a: pa,
                    b: qa,
                    k: k as u8,
                    y: py,
                });
            }
        }
    }
}

/// Boundary intersections in x-order, or [`ExceededLimit`] as soon as more
/// than `limit` have been found.
pub fn arc_intersections_bounded(sites: &[Site], limit: usize) -> Result<Vec<Intersection>, ExceededLimit> {
    let mut sw = ArcSweep::new(sites, Some(limit), false, usize::MAX);
    match sw.run() {
        Stop::Exceeded => Err(ExceededLimit { reported: sw.out }),
        _ => Ok(sw.out),
    }
}

/// Pairs `(a, b)`, `a < b`, of nested disks (one contains the other).
///
/// Intended for inputs with few boundary intersections; the running time
/// grows with the depth of the arrangement.
pub fn containment_edges(sites: &[Site]) -> Vec<(usize, usize)> {
    let mut sw = ArcSweep::new(sites, None, true, usize::MAX);
    sw.run();
    let mut e = sw.nested;
    e.sort_unstable();
    e
}

// ---------------------------------------------------------------------------
// straight edges

fn properly_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    o1 != Ordering::Equal && o2 != Ordering::Equal && o1 != o2 && o3 != Ordering::Equal && o4 != Ordering::Equal && o3 != o4
}

/// Two edges whose segments cross in their relative interiors, if any
/// (indices into `edges`). Shamos-Hoey sweep with exact orientation tests.
pub fn find_crossing(sites: &[Site], edges: &[(usize, usize)]) -> Option<(usize, usize)> {
    let pt = |i: usize| (sites[i].x, sites[i].y);
    let lex = |p: (f64, f64), q: (f64, f64)| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1));
    // oriented so that .0 is the lexicographically smaller endpoint
    let segs: Vec<((f64, f64), (f64, f64))> = edges
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (pt(u), pt(v));
            if lex(p, q) == Ordering::Greater {
                (q, p)
            } else {
                (p, q)
            }
        })
        .collect();
    // events: (point, 0 = remove / 1 = insert, segment)
    let mut ev: Vec<((f64, f64), u8, usize)> = Vec::with_capacity(2 * segs.len());
    for (i, s) in segs.iter().enumerate() {
        ev.push((s.0, 1, i));
        ev.push((s.1, 0, i));
    }
    ev.sort_by(|a, b| lex(a.0, b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut st: Status<usize> = Status::new();
    let mut handle = vec![u32::MAX; segs.len()];
    let check = |i: usize, j: usize| properly_cross(segs[i].0, segs[i].1, segs[j].0, segs[j].1);
    for &(_, kind, i) in &ev {
        if kind == 1 {
            let (p, q) = segs[i];
            let h = st.insert_by(i, |&e| {
                let (a, b) = segs[e];
                match orient2d(a, b, p) {
                    Ordering::Equal => match orient2d(a, b, q) {
                        Ordering::Equal => i.cmp(&e),
                        o => o,
                    },
                    o => o,
                }
            });
            handle[i] = h;
            if let Some(a) = st.prev(h) {
                let j = *st.get(a);
                if check(i, j) {
                    return Some((j.min(i), j.max(i)));
                }
            }
            if let Some(b) = st.next(h) {
                let j = *st.get(b);
                if check(i, j) {
                    return Some((j.min(i), j.max(i)));
                }
            }
        } else {
            let h = handle[i];
            let (a, b) = (st.prev(h), st.next(h));
            st.remove(h);
            if let (Some(a), Some(b)) = (a, b) {
                let (x, y) = (*st.get(a), *st.get(b));
                if check(x, y) {
                    return Some((x.min(y), x.max(y)));
                }
            }
        }
    }
    None
}

/// Exhaustive pairwise version of [`find_crossing`].
pub fn find_crossing_brute(sites: &[Site], edges: &[(usize, usize)]) -> Option<(usize, usize)> {
    let pt = |i: usize| (sites[i].x, sites[i].y);
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if properly_cross(pt(a), pt(b), pt(c), pt(d)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Errors of [`triangle_from_crossing`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingError {
    NotCrossing,
    NotEdges,
}

fn segment_point(s: &Site, t: &Site, u: &Site, v: &Site) -> (f64, f64) {
    let (dx, dy) = (t.x - s.x, t.y - s.y);
    let (ex, ey) = (v.x - u.x, v.y - u.y);
    let den = dx * ey - dy * ex;
    let lam = ((u.x - s.x) * ey - (u.y - s.y) * ex) / den;
    (s.x + lam * dx, s.y + lam * dy)
}

/// Given crossing edges `st` and `uv` of the disk graph, returns three of
/// the four sites whose disks pairwise intersect (in fact share a point).
pub fn triangle_from_crossing(s: &Site, t: &Site, u: &Site, v: &Site) -> Result<Triangle, CrossingError> {
    if !properly_cross(s.pos(), t.pos(), u.pos(), v.pos()) {
        return Err(CrossingError::NotCrossing);
    }
    if !disk_edge(s, t) || !disk_edge(u, v) {
        return Err(CrossingError::NotEdges);
    }
    let a = segment_point(s, t, u, v);
    // a lies on both segments, so it is in D_s or D_t and in D_u or D_v
    let (mut s, mut t) = if s.contains_point(a.0, a.1) { (s, t) } else { (t, s) };
    let (mut u, mut v) = if u.contains_point(a.0, a.1) { (u, v) } else { (v, u) };
    if u.r > s.r {
        core::mem::swap(&mut s, &mut u);
        core::mem::swap(&mut t, &mut v);
    }
    let pick = if t.contains_point(a.0, a.1) {
        [s, t, u]
    } else {
        // first point of st inside D_t
        let len = libm::hypot(t.x - s.x, t.y - s.y);
        let f = ((len - t.r) / len).max(0.0);
        let b = (s.x + f * (t.x - s.x), s.y + f * (t.y - s.y));
        if u.contains_point(b.0, b.1) {
            [s, t, u]
        } else {
            [s, u, v]
        }
    };
    let ok = |w: &[&Site; 3]| disk_edge(w[0], w[1]) && disk_edge(w[1], w[2]) && disk_edge(w[0], w[2]);
    if ok(&pick) {
        return Ok(Triangle::from_sites(pick[0], pick[1], pick[2]));
    }
    // rounding in a or b: fall back to the triple with a common point
    let all = [[s, t, u], [s, t, v], [s, u, v], [t, u, v]];
    let tol = 1e-9;
    let best = all
        .iter()
        .find(|w| ok(w) && disks_share_point(w[0], w[1], w[2], tol))
        .or_else(|| all.iter().find(|w| ok(w)))
        .ok_or(CrossingError::NotEdges)?;
    Ok(Triangle::from_sites(best[0], best[1], best[2]))
}

// ---------------------------------------------------------------------------
// pipeline

fn cutoff(n: usize, k: usize, c: usize) -> usize {
    (k * n).saturating_sub(c)
}

/// A triangle of the disk graph spanned by `edges` (indices into `sites`),
/// found through a crossing if possible.
fn witness_from_edges(sites: &[Site], edges: &[(usize, usize)]) -> Triangle {
    if let Some((i, j)) = find_crossing(sites, edges) {
        let (s, t) = edges[i];
        let (u, v) = edges[j];
        if let Ok(tr) = triangle_from_crossing(&sites[s], &sites[t], &sites[u], &sites[v]) {
            return tr;
        }
    }
    let g = UndirectedGraph::from_site_edges(sites, edges);
    if let Some(t) = crate::graph::triangle_by_degeneracy(&g) {
        return Triangle::from_sites(&sites[t[0]], &sites[t[1]], &sites[t[2]]);
    }
    // only reachable with collinear or touching degeneracies
    let t = brute_triangle(&build_disk_graph_brute(sites)).expect("non-plane disk graph has a triangle");
    Triangle::from_sites(&sites[t.ids[0]], &sites[t.ids[1]], &sites[t.ids[2]])
}

fn distinct_pairs(xs: &[Intersection]) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = xs.iter().map(|i| (i.a, i.b)).collect();
    e.sort_unstable();
    e.dedup();
    e
}

/// Builds the disk graph if its straight-line embedding is plane, otherwise
/// returns a triangle.
pub fn build_plane_or_witness(sites: &[Site]) -> SweepOutcome {
    let n = sites.len();
    if n <= 3 {
        return SweepOutcome::Plane(build_disk_graph_brute(sites));
    }
    // the sweep touches sites in order of their leftmost points
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_unstable_by(|&a, &b| (sites[a].x - sites[a].r).total_cmp(&(sites[b].x - sites[b].r)));
    let local: Vec<Site> = perm.iter().map(|&i| sites[i]).collect();
    match plane_edges_or_witness(&local) {
        Ok(edges) => {
            let edges: Vec<(usize, usize)> = edges
                .into_iter()
                .map(|(a, b)| {
                    let (a, b) = (perm[a], perm[b]);
                    (a.min(b), a.max(b))
                })
                .collect();
            SweepOutcome::Plane(UndirectedGraph::from_site_edges(sites, &edges))
        }
        Err(t) => SweepOutcome::NotPlane(t),
    }
}

fn plane_edges_or_witness(sites: &[Site]) -> Result<Vec<(usize, usize)>, Triangle> {
    let n = sites.len();
    let limit = cutoff(n, 6, 12);
    // depth 5 means K5, which is not plane
    let mut sw = ArcSweep::new(sites, Some(limit), true, 4);
    let stop = sw.run();
    let crossing_edges = distinct_pairs(&sw.out);
    match stop {
        Stop::Exceeded => {
            stats::record(stats::Check::IntersectionCutoff, false);
            return Err(witness_from_edges(sites, &crossing_edges));
        }
        Stop::Deep(set) => {
            let (a, b, c) = (set[0] as usize, set[1] as usize, set[2] as usize);
            let (sa, sb, sc) = (&sites[a], &sites[b], &sites[c]);
            if disk_edge(sa, sb) && disk_edge(sb, sc) && disk_edge(sa, sc) {
                return Err(Triangle::from_sites(sa, sb, sc));
            }
            return Err(witness_from_edges(sites, &crossing_edges));
        }
        Stop::Done => {}
    }
    stats::record(stats::Check::IntersectionCutoff, sw.out.len() <= limit);
    let mut edges = crossing_edges;
    edges.extend(sw.nested.iter().copied());
    edges.sort_unstable();
    edges.dedup();
    let edge_cap = cutoff(n, 3, 6);
    if edges.len() > edge_cap {
        stats::record(stats::Check::EdgeCutoff, false);
        return Err(witness_from_edges(sites, &edges));
    }
    stats::record(stats::Check::EdgeCutoff, true);
    if let Some((i, j)) = find_crossing(sites, &edges) {
        let (s, t) = edges[i];
        let (u, v) = edges[j];
        if let Ok(tr) = triangle_from_crossing(&sites[s], &sites[t], &sites[u], &sites[v]) {
            return Err(tr);
        }
    }
    Ok(edges)
}

//! Sites, predicates, circle intersections and the paraboloid lifting map.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::exact;

/// A planar point with a positive radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Site {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub r: f64,
}

impl Site {
    pub const fn new(id: usize, x: f64, y: f64, r: f64) -> Self {
        Site { id, x, y, r }
    }

    #[inline]
    pub fn pos(&self) -> (f64, f64) {
        (self.x, self.y)
    }

    /// Closed-disk membership of a point, exact.
    #[inline]
    pub fn contains_point(&self, px: f64, py: f64) -> bool {
        exact::sign_dist2_minus_sq(px, py, self.x, self.y, self.r) != Ordering::Greater
    }

    /// Total order on radii used wherever the algorithms need pairwise
    /// distinct radii: by radius, then by id.
    #[inline]
    pub fn radius_cmp(&self, other: &Site) -> Ordering {
        self.r.total_cmp(&other.r).then(self.id.cmp(&other.id))
    }
}

/// Euclidean distance `|ab|`.
#[inline]
pub fn dist(a: &Site, b: &Site) -> f64 {
    libm::hypot(a.x - b.x, a.y - b.y)
}

/// Disk-graph adjacency: `|ab| <= r_a + r_b`.
#[inline]
pub fn disk_edge(a: &Site, b: &Site) -> bool {
    exact::sign_dist2_minus_sum_sq(a.x, a.y, b.x, b.y, a.r, b.r) != Ordering::Greater
}

/// Transmission-graph arc `a -> b`: `|ab| <= r_a`.
#[inline]
pub fn tx_edge(a: &Site, b: &Site) -> bool {
    exact::sign_dist2_minus_sq(b.x, b.y, a.x, a.y, a.r) != Ordering::Greater
}

/// One disk contains the other: `|ab| <= |r_a - r_b|`.
#[inline]
pub fn disks_nested(a: &Site, b: &Site) -> bool {
    exact::sign_dist2_minus_diff_sq(a.x, a.y, b.x, b.y, a.r, b.r) != Ordering::Greater
}

/// Boundaries of the two disks cross or touch.
#[inline]
pub fn circles_meet(a: &Site, b: &Site) -> bool {
    disk_edge(a, b) && exact::sign_dist2_minus_diff_sq(a.x, a.y, b.x, b.y, a.r, b.r) != Ordering::Less
}

/// Perimeter of the triangle on three sites. The summation order is fixed
/// (ids ascending) so that every code path computes bit-identical values.
pub fn perimeter(a: &Site, b: &Site, c: &Site) -> f64 {
    let mut v = [a, b, c];
    v.sort_by_key(|s| s.id);
    dist(v[0], v[1]) + dist(v[1], v[2]) + dist(v[2], v[0])
}

/// Tolerances of the floating-point paths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceConfig {
    /// Relative tolerance for numeric checks that cannot be made exact
    /// (common-point tests, intersection residuals).
    pub eps_dist: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { eps_dist: 1e-9 }
    }
}

/// Affine map `p -> (p - origin) / scale` placing every disk strictly
/// inside the unit square.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Normalization {
    pub scale: f64,
    pub origin_x: f64,
    pub origin_y: f64,
}

impl Normalization {
    pub const IDENTITY: Normalization = Normalization {
        scale: 1.0,
        origin_x: 0.0,
        origin_y: 0.0,
    };

    /// Bounding square of all disks, expanded by 1%.
    pub fn for_sites(sites: &[Site]) -> Normalization {
        if sites.is_empty() {
            return Self::IDENTITY;
        }
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for s in sites {
            x0 = x0.min(s.x - s.r);
            y0 = y0.min(s.y - s.r);
            x1 = x1.max(s.x + s.r);
            y1 = y1.max(s.y + s.r);
        }
        let side = (x1 - x0).max(y1 - y0);
        let scale = side * 1.02;
        let cx = 0.5 * (x0 + x1);
        let cy = 0.5 * (y0 + y1);
        Normalization {
            scale,
            origin_x: cx - 0.5 * scale,
            origin_y: cy - 0.5 * scale,
        }
    }

    #[inline]
    pub fn apply(&self, s: &Site) -> Site {
        Site {
            id: s.id,
            x: (s.x - self.origin_x) / self.scale,
            y: (s.y - self.origin_y) / self.scale,
            r: s.r / self.scale,
        }
    }

    #[inline]
    pub fn invert(&self, s: &Site) -> Site {
        Site {
            id: s.id,
            x: s.x * self.scale + self.origin_x,
            y: s.y * self.scale + self.origin_y,
            r: s.r * self.scale,
        }
    }

    /// Converts a length in normalized units back to input units.
    #[inline]
    pub fn length_to_input(&self, len: f64) -> f64 {
        len * self.scale
    }
}

/// Reasons an input cannot form a [`SiteSet`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SiteSetError {
    NonPositiveRadius { index: usize },
    NonFinite { index: usize },
    CoincidentSites { first: usize, second: usize },
}

impl fmt::Display for SiteSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteSetError::NonPositiveRadius { index } => write!(f, "site {index}: radius must be positive"),
            SiteSetError::NonFinite { index } => write!(f, "site {index}: coordinates must be finite"),
            SiteSetError::CoincidentSites { first, second } => {
                write!(f, "sites {first} and {second} coincide")
            }
        }
    }
}

/// Validated sites with contiguous ids `0..n`.
#[derive(Clone, Debug)]
pub struct SiteSet {
    sites: Vec<Site>,
    normalization: Normalization,
}

impl SiteSet {
    /// Builds a site set from `(x, y, r)` triples; ids follow input order.
    pub fn new(points: &[(f64, f64, f64)]) -> Result<SiteSet, SiteSetError> {
        let mut sites = Vec::with_capacity(points.len());
        for (i, &(x, y, r)) in points.iter().enumerate() {
            if !(x.is_finite() && y.is_finite() && r.is_finite()) {
                return Err(SiteSetError::NonFinite { index: i });
            }
            if r <= 0.0 {
                return Err(SiteSetError::NonPositiveRadius { index: i });
            }
            sites.push(Site::new(i, x, y, r));
        }
        let mut order: Vec<usize> = (0..sites.len()).collect();
        order.sort_by(|&a, &b| {
            sites[a]
                .x
                .total_cmp(&sites[b].x)
                .then(sites[a].y.total_cmp(&sites[b].y))
        });
        for w in order.windows(2) {
            let (a, b) = (&sites[w[0]], &sites[w[1]]);
            if a.x == b.x && a.y == b.y {
                return Err(SiteSetError::CoincidentSites {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                });
            }
        }
        let normalization = Normalization::for_sites(&sites);
        Ok(SiteSet { sites, normalization })
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// The sites in normalized coordinates (ids unchanged).
    pub fn normalized(&self) -> Vec<Site> {
        self.sites.iter().map(|s| self.normalization.apply(s)).collect()
    }
}

/// Errors of the circle intersection routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleError {
    Coincident,
}

/// Intersection points of the two boundary circles, ordered by y then x.
pub fn circle_circle_points(a: &Site, b: &Site) -> Result<Vec<(f64, f64)>, CircleError> {
    if a.x == b.x && a.y == b.y {
        if a.r == b.r {
            return Err(CircleError::Coincident);
        }
        return Ok(Vec::new());
    }
    let outer = exact::sign_dist2_minus_sum_sq(a.x, a.y, b.x, b.y, a.r, b.r);
    let inner = exact::sign_dist2_minus_diff_sq(a.x, a.y, b.x, b.y, a.r, b.r);
    if outer == Ordering::Greater || inner == Ordering::Less {
        return Ok(Vec::new());
    }
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let d = libm::hypot(dx, dy);
    let along = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d);
    let ux = dx / d;
    let uy = dy / d;
    let mx = a.x + along * ux;
    let my = a.y + along * uy;
    if outer == Ordering::Equal || inner == Ordering::Equal {
        return Ok(vec_of(&[(mx, my)]));
    }
    let h = libm::sqrt((a.r * a.r - along * along).max(0.0));
    let mut pts = vec_of(&[(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]);
    pts.sort_by(|p, q| p.1.total_cmp(&q.1).then(p.0.total_cmp(&q.0)));
    Ok(pts)
}

fn vec_of(items: &[(f64, f64)]) -> Vec<(f64, f64)> {
    items.to_vec()
}

/// The upper halfspace `z >= a x + b y + c` a disk lifts to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftedHalfspace {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    site: Site,
}

/// A point on the paraboloid `z = x^2 + y^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftedPoint {
    pub x: f64,
    pub y: f64,
    /// Rounded `x^2 + y^2`; predicates recompute it exactly.
    pub z: f64,
}

pub fn lift_site(s: &Site) -> LiftedHalfspace {
    LiftedHalfspace {
        a: 2.0 * s.x,
        b: 2.0 * s.y,
        c: s.r * s.r - s.x * s.x - s.y * s.y,
        site: *s,
    }
}

pub fn lift_point(x: f64, y: f64) -> LiftedPoint {
    LiftedPoint { x, y, z: x * x + y * y }
}

impl LiftedHalfspace {
    /// Floating-point value of `a x + b y + c - z` at a lifted point.
    #[inline]
    pub fn excess(&self, p: &LiftedPoint) -> f64 {
        self.a * p.x + self.b * p.y + self.c - p.z
    }

    /// Exact test whether the lifted point violates the halfspace, i.e.
    /// lies on or below its bounding plane. Equivalent to the point lying
    /// in the closed disk.
    pub fn violated_by(&self, p: &LiftedPoint) -> bool {
        use exact::Expansion;
        let s = &self.site;
        // z - (2 sx x + 2 sy y + r^2 - sx^2 - sy^2), every product exact
        let px = Expansion::from_f64(p.x);
        let py = Expansion::from_f64(p.y);
        let mut acc = px.mul(&px);
        acc.add_expansion(&py.mul(&py));
        acc.sub_expansion(&px.scale(2.0 * s.x));
        acc.sub_expansion(&py.scale(2.0 * s.y));
        let sx = Expansion::from_f64(s.x);
        let sy = Expansion::from_f64(s.y);
        let r = Expansion::from_f64(s.r);
        acc.sub_expansion(&r.mul(&r));
        acc.add_expansion(&sx.mul(&sx));
        acc.add_expansion(&sy.mul(&sy));
        acc.sign() != Ordering::Greater
    }

    pub fn site(&self) -> &Site {
        &self.site
    }
}

/// Whether three closed disks share a common point, up to `eps` relative
/// slack. The leftmost point of a nonempty intersection is either the
/// leftmost point of one disk or a crossing of two boundaries, so those
/// candidates decide the question.
pub fn disks_share_point(a: &Site, b: &Site, c: &Site, eps: f64) -> bool {
    let disks = [a, b, c];
    let inside_all = |px: f64, py: f64| {
        disks.iter().all(|d| {
            let dd = libm::hypot(px - d.x, py - d.y);
            dd <= d.r * (1.0 + eps) + eps
        })
    };
    for d in disks {
        if inside_all(d.x - d.r, d.y) {
            return true;
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if let Ok(pts) = circle_circle_points(disks[i], disks[j]) {
            if pts.iter().any(|p| inside_all(p.0, p.1)) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(id: usize, x: f64, y: f64, r: f64) -> Site {
        Site::new(id, x, y, r)
    }

    #[test]
    fn dist_trivial() {
        assert_eq!(dist(&s(0, 0.0, 0.0, 1.0), &s(1, 0.0, 0.0, 1.0)), 0.0);
        assert_eq!(dist(&s(0, 0.0, 0.0, 1.0), &s(1, 3.0, 4.0, 1.0)), 5.0);
    }

    #[test]
    fn disk_edge_examples() {
        assert!(disk_edge(&s(0, 0.0, 0.0, 1.0), &s(1, 1.5, 0.0, 1.0)));
        assert!(!disk_edge(&s(0, 0.0, 0.0, 1.0), &s(1, 3.0, 0.0, 1.0)));
    }

    #[test]
    fn tx_edge_examples() {
        let a = s(0, 0.0, 0.0, 2.0);
        let b = s(1, 1.0, 0.0, 3.0);
        assert!(tx_edge(&a, &b));
        assert!(tx_edge(&b, &a));
        let a_small = s(0, 0.0, 0.0, 0.5);
        assert!(!tx_edge(&a_small, &b));
        let b_small = s(1, 1.0, 0.0, 0.5);
        assert!(!tx_edge(&b_small, &a));
    }

    #[test]
    fn disk_edge_without_any_arc() {
        // |ab| = 3 > max radius, yet the disks meet
        let a = s(0, 0.0, 0.0, 1.6);
        let b = s(1, 3.0, 0.0, 1.6);
        assert!(disk_edge(&a, &b));
        assert!(!tx_edge(&a, &b) && !tx_edge(&b, &a));
    }

    #[test]
    fn circle_points_examples() {
        let t = circle_circle_points(&s(0, 0.0, 0.0, 1.0), &s(1, 2.0, 0.0, 1.0)).unwrap();
        assert_eq!(t, vec![(1.0, 0.0)]);
        let l = circle_circle_points(&s(0, 0.0, 0.0, 1.0), &s(1, 1.0, 0.0, 1.0)).unwrap();
        assert_eq!(l.len(), 2);
        let h = 3f64.sqrt() / 2.0;
        assert!((l[0].0 - 0.5).abs() < 1e-15 && (l[0].1 + h).abs() < 1e-15);
        assert!((l[1].0 - 0.5).abs() < 1e-15 && (l[1].1 - h).abs() < 1e-15);
        assert!(circle_circle_points(&s(0, 0.0, 0.0, 1.0), &s(1, 5.0, 0.0, 1.0)).unwrap().is_empty());
        assert!(circle_circle_points(&s(0, 0.0, 0.0, 3.0), &s(1, 0.5, 0.0, 1.0)).unwrap().is_empty());
        assert_eq!(
            circle_circle_points(&s(0, 1.0, 1.0, 1.0), &s(1, 1.0, 1.0, 1.0)),
            Err(CircleError::Coincident)
        );
    }

    #[test]
    fn lifting_examples() {
        let h = lift_site(&s(0, 0.0, 0.0, 1.0));
        let inside = lift_point(0.0, 0.0);
        assert_eq!(inside.z, 0.0);
        assert_eq!(h.c, 1.0);
        assert!(h.violated_by(&inside));
        let outside = lift_point(2.0, 0.0);
        assert_eq!(outside.z, 4.0);
        assert!(!h.violated_by(&outside));
    }

    #[test]
    fn normalization_fits_unit_square() {
        let set = SiteSet::new(&[(-5.0, 2.0, 1.0), (7.0, 3.0, 0.5), (0.0, -4.0, 2.0)]).unwrap();
        for t in set.normalized() {
            assert!(t.x > 0.0 && t.x < 1.0 && t.y > 0.0 && t.y < 1.0);
            assert!(t.r <= core::f64::consts::SQRT_2);
        }
        let n = set.normalization();
        let back = n.invert(&n.apply(&set.sites()[1]));
        assert!((back.x - 7.0).abs() < 1e-12 && (back.r - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            SiteSet::new(&[(0.0, 0.0, 0.0)]).unwrap_err(),
            SiteSetError::NonPositiveRadius { index: 0 }
        );
        assert_eq!(
            SiteSet::new(&[(1.0, 1.0, 1.0), (0.0, 0.0, 1.0), (1.0, 1.0, 2.0)]).unwrap_err(),
            SiteSetError::CoincidentSites { first: 0, second: 2 }
        );
    }

    #[test]
    fn common_point_of_three_disks() {
        let a = s(0, 0.0, 0.0, 1.0);
        let b = s(1, 1.5, 0.0, 1.0);
        let c = s(2, 0.75, 1.0, 1.0);
        assert!(disks_share_point(&a, &b, &c, 0.0));
        // pairwise intersecting but no common point
        let r = 0.52;
        let p = s(0, 0.0, 0.0, r);
        let q = s(1, 1.0, 0.0, r);
        let t = s(2, 0.5, 3f64.sqrt() / 2.0, r);
        assert!(disk_edge(&p, &q) && disk_edge(&q, &t) && disk_edge(&p, &t));
        assert!(!disks_share_point(&p, &q, &t, 0.0));
    }
}

//! Exact sign evaluation of small polynomials in `f64` inputs.
//!
//! Values are represented as floating-point expansions: sums of
//! non-overlapping `f64` components ordered by increasing magnitude. The
//! sign of an expansion is the sign of its largest component. Every
//! predicate first tries a plain floating-point evaluation and only falls
//! back to expansions when the result is inside the error bound.

use core::cmp::Ordering;

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

/// Maximum number of components an [`Expansion`] can hold.
pub const MAX_TERMS: usize = 64;

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bv = x - a;
    let av = x - bv;
    (x, (a - av) + (b - bv))
}

#[inline]
pub fn two_diff(a: f64, b: f64) -> (f64, f64) {
    let x = a - b;
    let bv = a - x;
    let av = x + bv;
    (x, (a - av) + (bv - b))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let big = c - a;
    let hi = c - big;
    (hi, a - hi)
}

#[inline]
pub fn two_product(a: f64, b: f64) -> (f64, f64) {
    let x = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let err = x - ahi * bhi - alo * bhi - ahi * blo;
    (x, alo * blo - err)
}

/// A fixed-capacity floating-point expansion.
#[derive(Clone, Copy, Debug)]
pub struct Expansion {
    terms: [f64; MAX_TERMS],
    len: usize,
}

impl Default for Expansion {
    fn default() -> Self {
        Self::new()
    }
}

impl Expansion {
    pub const fn new() -> Self {
        Expansion {
            terms: [0.0; MAX_TERMS],
            len: 0,
        }
    }

    pub fn from_f64(v: f64) -> Self {
        let mut e = Self::new();
        e.add(v);
        e
    }

    /// Exact `a - b` as a two-component expansion.
    pub fn diff(a: f64, b: f64) -> Self {
        let (hi, lo) = two_diff(a, b);
        let mut e = Self::new();
        e.add(lo);
        e.add(hi);
        e
    }

    /// Exact `a + b`.
    pub fn sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        let mut e = Self::new();
        e.add(lo);
        e.add(hi);
        e
    }

    pub fn components(&self) -> &[f64] {
        &self.terms[..self.len]
    }

    /// Adds a single `f64` exactly (Shewchuk's grow-expansion with zero
    /// elimination).
    pub fn add(&mut self, b: f64) {
        let mut q = b;
        let mut out = 0;
        for i in 0..self.len {
            let (s, e) = two_sum(q, self.terms[i]);
            q = s;
            if e != 0.0 {
                self.terms[out] = e;
                out += 1;
            }
        }
        if q != 0.0 || out == 0 {
            assert!(out < MAX_TERMS, "expansion capacity exceeded");
            self.terms[out] = q;
            out += 1;
        }
        self.len = out;
    }

    pub fn add_expansion(&mut self, other: &Expansion) {
        for &t in other.components() {
            self.add(t);
        }
    }

    pub fn sub_expansion(&mut self, other: &Expansion) {
        for &t in other.components() {
            self.add(-t);
        }
    }

    /// Exact product of two expansions, accumulated into a new one.
    pub fn mul(&self, other: &Expansion) -> Expansion {
        let mut out = Expansion::new();
        for &a in self.components() {
            for &b in other.components() {
                let (p, e) = two_product(a, b);
                out.add(e);
                out.add(p);
            }
        }
        out
    }

    pub fn scale(&self, k: f64) -> Expansion {
        let mut out = Expansion::new();
        for &a in self.components() {
            let (p, e) = two_product(a, k);
            out.add(e);
            out.add(p);
        }
        out
    }

    pub fn negate(&self) -> Expansion {
        let mut out = *self;
        for t in out.terms[..out.len].iter_mut() {
            *t = -*t;
        }
        out
    }

    pub fn sign(&self) -> Ordering {
        for &t in self.components().iter().rev() {
            if t > 0.0 {
                return Ordering::Greater;
            }
            if t < 0.0 {
                return Ordering::Less;
            }
        }
        Ordering::Equal
    }

    /// Floating-point approximation of the value.
    pub fn estimate(&self) -> f64 {
        self.components().iter().sum()
    }
}

/// Sign of `|p - c|^2 - r^2`, exactly.
///
/// `Less` means `p` is strictly inside the circle, `Equal` on it.
pub fn sign_dist2_minus_sq(px: f64, py: f64, cx: f64, cy: f64, r: f64) -> Ordering {
    let dx = px - cx;
    let dy = py - cy;
    let d2 = dx * dx + dy * dy;
    let r2 = r * r;
    let v = d2 - r2;
    let bound = 1e-14 * (d2 + r2);
    if v > bound {
        return Ordering::Greater;
    }
    if v < -bound {
        return Ordering::Less;
    }
    let ex = Expansion::diff(px, cx);
    let ey = Expansion::diff(py, cy);
    let er = Expansion::from_f64(r);
    let mut acc = ex.mul(&ex);
    acc.add_expansion(&ey.mul(&ey));
    acc.sub_expansion(&er.mul(&er));
    acc.sign()
}

/// Sign of `|p - c|^2 - (r1 + r2)^2`, exactly.
pub fn sign_dist2_minus_sum_sq(px: f64, py: f64, cx: f64, cy: f64, r1: f64, r2: f64) -> Ordering {
    let dx = px - cx;
    let dy = py - cy;
    let d2 = dx * dx + dy * dy;
    let s = r1 + r2;
    let s2 = s * s;
    let v = d2 - s2;
    let bound = 1e-14 * (d2 + s2);
    if v > bound {
        return Ordering::Greater;
    }
    if v < -bound {
        return Ordering::Less;
    }
    let ex = Expansion::diff(px, cx);
    let ey = Expansion::diff(py, cy);
    let es = Expansion::sum(r1, r2);
    let mut acc = ex.mul(&ex);
    acc.add_expansion(&ey.mul(&ey));
    acc.sub_expansion(&es.mul(&es));
    acc.sign()
}

/// Sign of `|p - c|^2 - (r1 - r2)^2`, exactly (nesting test for circles).
pub fn sign_dist2_minus_diff_sq(px: f64, py: f64, cx: f64, cy: f64, r1: f64, r2: f64) -> Ordering {
    let dx = px - cx;
    let dy = py - cy;
    let d2 = dx * dx + dy * dy;
    let s = r1 - r2;
    let s2 = s * s;
    let v = d2 - s2;
    let bound = 1e-14 * (d2 + s2 + r1 * r1 + r2 * r2);
    if v > bound {
        return Ordering::Greater;
    }
    if v < -bound {
        return Ordering::Less;
    }
    let ex = Expansion::diff(px, cx);
    let ey = Expansion::diff(py, cy);
    let es = Expansion::diff(r1, r2);
    let mut acc = ex.mul(&ex);
    acc.add_expansion(&ey.mul(&ey));
    acc.sub_expansion(&es.mul(&es));
    acc.sign()
}

/// Orientation of `c` relative to the directed line `a -> b`, exactly.
/// `Greater` is counterclockwise.
pub fn orient2d(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Ordering {
    let l = (b.0 - a.0) * (c.1 - a.1);
    let r = (b.1 - a.1) * (c.0 - a.0);
    let v = l - r;
    let bound = 1e-14 * (l.abs() + r.abs());
    if v > bound {
        return Ordering::Greater;
    }
    if v < -bound {
        return Ordering::Less;
    }
    let bx = Expansion::diff(b.0, a.0);
    let by = Expansion::diff(b.1, a.1);
    let cx = Expansion::diff(c.0, a.0);
    let cy = Expansion::diff(c.1, a.1);
    let mut acc = bx.mul(&cy);
    acc.sub_expansion(&by.mul(&cx));
    acc.sign()
}

/// Sign of the determinant `[b - a, c - a, d - a]`, exactly. `Greater`
/// means `d` lies on the side of plane `abc` where the triangle `a, b, c`
/// looks clockwise.
pub fn orient3d(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> Ordering {
    let (bx, by, bz) = (b[0] - a[0], b[1] - a[1], b[2] - a[2]);
    let (cx, cy, cz) = (c[0] - a[0], c[1] - a[1], c[2] - a[2]);
    let (dx, dy, dz) = (d[0] - a[0], d[1] - a[1], d[2] - a[2]);
    let m1 = cy * dz - cz * dy;
    let m2 = cz * dx - cx * dz;
    let m3 = cx * dy - cy * dx;
    let v = bx * m1 + by * m2 + bz * m3;
    let perm = bx.abs() * ((cy * dz).abs() + (cz * dy).abs())
        + by.abs() * ((cz * dx).abs() + (cx * dz).abs())
        + bz.abs() * ((cx * dy).abs() + (cy * dx).abs());
    let bound = 1e-14 * perm;
    if v > bound {
        return Ordering::Greater;
    }
    if v < -bound {
        return Ordering::Less;
    }
    let e = |i: usize, p: [f64; 3]| Expansion::diff(p[i], a[i]);
    let (bx, by, bz) = (e(0, b), e(1, b), e(2, b));
    let (cx, cy, cz) = (e(0, c), e(1, c), e(2, c));
    let (dx, dy, dz) = (e(0, d), e(1, d), e(2, d));
    let minor = |p: &Expansion, q: &Expansion, r: &Expansion, s: &Expansion| {
        let mut m = p.mul(q);
        m.sub_expansion(&r.mul(s));
        m
    };
    let mut acc = bx.mul(&minor(&cy, &dz, &cz, &dy));
    acc.add_expansion(&by.mul(&minor(&cz, &dx, &cx, &dz)));
    acc.add_expansion(&bz.mul(&minor(&cx, &dy, &cy, &dx)));
    acc.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_product_is_exact_for_splittable_values() {
        let (p, e) = two_product(0.1, 0.3);
        // 0.1 * 0.3 is not representable, the error term must be nonzero
        assert!(e != 0.0);
        assert_eq!(p, 0.1 * 0.3);
    }

    #[test]
    fn expansion_cancels_exactly() {
        let mut e = Expansion::from_f64(1e16);
        e.add(1.0);
        e.add(-1e16);
        assert_eq!(e.sign(), Ordering::Greater);
        assert_eq!(e.estimate(), 1.0);
    }

    #[test]
    fn near_tie_resolved_by_expansions() {
        // the doubles 0.1 and 0.2 sum to slightly more than the double 0.3
        assert_eq!(sign_dist2_minus_sum_sq(0.0, 0.0, 0.3, 0.0, 0.1, 0.2), Ordering::Less);
        assert_eq!(sign_dist2_minus_sq(3.0, 4.0, 0.0, 0.0, 5.0), Ordering::Equal);
        assert_eq!(sign_dist2_minus_sum_sq(0.0, 0.0, 2.0, 0.0, 1.0, 1.0), Ordering::Equal);
    }

    #[test]
    fn orientation_basic() {
        assert_eq!(orient2d((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)), Ordering::Greater);
        assert_eq!(orient2d((0.0, 0.0), (1.0, 0.0), (0.0, -1.0)), Ordering::Less);
        assert_eq!(orient2d((0.0, 0.0), (1.0, 1.0), (2.0, 2.0)), Ordering::Equal);
    }

    #[test]
    fn orientation_3d() {
        let o = [0.0, 0.0, 0.0];
        let (x, y) = ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        assert_eq!(orient3d(o, x, y, [0.0, 0.0, 1.0]), Ordering::Greater);
        assert_eq!(orient3d(o, y, x, [0.0, 0.0, 1.0]), Ordering::Less);
        assert_eq!(orient3d(o, x, y, [0.3, 0.7, 0.0]), Ordering::Equal);
        // 0.1 + 0.2 != 0.3 in doubles, so this point is just off the plane
        assert_eq!(orient3d(o, x, y, [0.0, 0.0, 0.1 + 0.2 - 0.3]), Ordering::Greater);
        let big = 1e15;
        let p = |x: f64, y: f64| [big + x, big + y, big + x + y];
        assert_eq!(orient3d(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(3.0, 5.0)), Ordering::Equal);
        let mut q = p(3.0, 5.0);
        q[2] += 0.125;
        assert_eq!(orient3d(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), q), Ordering::Greater);
    }
}

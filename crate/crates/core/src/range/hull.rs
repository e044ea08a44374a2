//! Convex hulls in three dimensions with exact orientation tests, and
//! extreme-vertex queries by walking the hull graph.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::exact::{orient2d, orient3d};

type P3 = [f64; 3];

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
struct Face {
    v: [usize; 3],
    /// `nbr[i]` is across the edge `v[i] -> v[i + 1]`.
    nbr: [usize; 3],
    alive: bool,
    outside: Vec<usize>,
}

/// Convex hull of a point set with triangulated faces. Faces are oriented
/// so that the interior lies on the `Greater` side of `orient3d`.
#[derive(Clone, Debug)]
pub struct Hull {
    pub faces: Vec<[usize; 3]>,
    /// Hull vertices, as indices into the input.
    pub vertices: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

fn dot(a: &P3, b: &P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn collinear(a: &P3, b: &P3, c: &P3) -> bool {
    let pr = |i: usize, j: usize| orient2d((a[i], a[j]), (b[i], b[j]), (c[i], c[j])) == Ordering::Equal;
    pr(0, 1) && pr(1, 2) && pr(0, 2)
}

/// Distance proxy of `p` above the plane of `f`, for choosing the farthest
/// outside point.
fn height(pts: &[P3], f: &[usize; 3], p: &P3) -> f64 {
    let (a, b, c) = (&pts[f[0]], &pts[f[1]], &pts[f[2]]);
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let n = [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]];
    -(n[0] * (p[0] - a[0]) + n[1] * (p[1] - a[1]) + n[2] * (p[2] - a[2]))
}

impl Hull {
    /// `None` when the points span less than three dimensions.
    pub fn build(pts: &[P3]) -> Option<Hull> {
        let n = pts.len();
        if n < 4 {
            return None;
        }
        let i1 = (1..n).find(|&i| pts[i] != pts[0])?;
        let i2 = (1..n).find(|&i| !collinear(&pts[0], &pts[i1], &pts[i]))?;
        let i3 = (1..n).find(|&i| orient3d(pts[0], pts[i1], pts[i2], pts[i]) != Ordering::Equal)?;
        let tet = [0, i1, i2, i3];
        let mut faces: Vec<Face> = Vec::new();
        for opp in 0..4 {
            let mut v: Vec<usize> = tet.iter().copied().filter(|&x| x != tet[opp]).collect();
            if orient3d(pts[v[0]], pts[v[1]], pts[v[2]], pts[tet[opp]]) == Ordering::Less {
                v.swap(1, 2);
            }
            faces.push(Face {
                v: [v[0], v[1], v[2]],
                nbr: [NONE; 3],
                alive: true,
                outside: Vec::new(),
            });
        }
        // glue the tetrahedron
        for f in 0..4 {
            for i in 0..3 {
                let (a, b) = (faces[f].v[i], faces[f].v[(i + 1) % 3]);
                let g = (0..4).find(|&g| g != f && (0..3).any(|j| faces[g].v[j] == b && faces[g].v[(j + 1) % 3] == a)).unwrap();
                faces[f].nbr[i] = g;
            }
        }
        for p in 0..n {
            if tet.contains(&p) {
                continue;
            }
            if let Some(f) = (0..4).find(|&f| Self::sees(pts, &faces[f], p)) {
                faces[f].outside.push(p);
            }
        }

        let mut visible_mark = vec![0u32; 0];
        let mut stamp = 0u32;
        let mut horizon_at = vec![NONE; n];
        let mut work: Vec<usize> = (0..4).collect();
        while let Some(f) = work.pop() {
            if !faces[f].alive || faces[f].outside.is_empty() {
                continue;
            }
            let fv = faces[f].v;
            let (k, _) = faces[f]
                .outside
                .iter()
                .enumerate()
                .map(|(k, &p)| (k, height(pts, &fv, &pts[p])))
                .fold((0, f64::NEG_INFINITY), |b, x| if x.1 > b.1 { x } else { b });
            let p = faces[f].outside.swap_remove(k);

            // visible region and its horizon, walked counterclockwise
            stamp += 1;
            visible_mark.resize(faces.len(), 0);
            let mut visible = vec![f];
            visible_mark[f] = stamp;
            let mut horizon: Vec<(usize, usize, usize)> = Vec::new();
            let mut i = 0;
            while i < visible.len() {
                let g = visible[i];
                i += 1;
                for e in 0..3 {
                    let h = faces[g].nbr[e];
                    if visible_mark[h] == stamp {
                        continue;
                    }
                    if Self::sees(pts, &faces[h], p) {
                        visible_mark[h] = stamp;
                        visible.push(h);
                    } else {
                        horizon.push((faces[g].v[e], faces[g].v[(e + 1) % 3], h));
                    }
                }
            }
            let mut orphans: Vec<usize> = Vec::new();
            for &g in &visible {
                faces[g].alive = false;
                orphans.append(&mut faces[g].outside);
            }
            let first_new = faces.len();
            for &(a, b, h) in &horizon {
                let id = faces.len();
                faces.push(Face {
                    v: [a, b, p],
                    nbr: [h, NONE, NONE],
                    alive: true,
                    outside: Vec::new(),
                });
                let j = (0..3).find(|&j| faces[h].v[j] == b && faces[h].v[(j + 1) % 3] == a).unwrap();
                faces[h].nbr[j] = id;
                horizon_at[a] = id;
            }
            for id in first_new..faces.len() {
                let b = faces[id].v[1];
                let next = horizon_at[b];
                faces[id].nbr[1] = next;
                faces[next].nbr[2] = id;
            }
            for &(a, _, _) in &horizon {
                horizon_at[a] = NONE;
            }
            for q in orphans {
                if let Some(id) = (first_new..faces.len()).find(|&id| Self::sees(pts, &faces[id], q)) {
                    faces[id].outside.push(q);
                }
            }
            work.extend(first_new..faces.len());
        }

        let live: Vec<[usize; 3]> = faces.iter().filter(|f| f.alive).map(|f| f.v).collect();
        let mut adj = vec![Vec::new(); n];
        for f in &live {
            for i in 0..3 {
                let (a, b) = (f[i], f[(i + 1) % 3]);
                adj[a].push(b);
            }
        }
        let vertices: Vec<usize> = (0..n).filter(|&v| !adj[v].is_empty()).collect();
        Some(Hull {
            faces: live,
            vertices,
            adj,
        })
    }

    fn sees(pts: &[P3], f: &Face, p: usize) -> bool {
        orient3d(pts[f.v[0]], pts[f.v[1]], pts[f.v[2]], pts[p]) == Ordering::Less
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// A hull vertex maximizing `dir . p`, by greedy walk from `start`
    /// (which must be a hull vertex).
    pub fn extreme(&self, pts: &[P3], dir: &P3, start: usize) -> usize {
        let mut v = start;
        let mut best = dot(dir, &pts[v]);
        loop {
            let mut moved = false;
            for &w in &self.adj[v] {
                let d = dot(dir, &pts[w]);
                if d > best {
                    best = d;
                    v = w;
                    moved = true;
                }
            }
            if !moved {
                return v;
            }
        }
    }
}

//! Ordered sequence with stable handles, used as sweep-line status.
//!
//! A treap with parent links. Order is positional: insertion is guided by a
//! caller-supplied comparison, and the structure never compares stored
//! values itself, so the order stays valid while the key (y at the sweep
//! line) keeps changing.

use alloc::vec::Vec;
use core::cmp::Ordering;

const NIL: u32 = u32::MAX;

/// Handle of an element in a [`Status`].
pub type Handle = u32;

#[derive(Clone, Debug)]
struct Node<T> {
    val: T,
    prio: u64,
    left: u32,
    right: u32,
    parent: u32,
}

#[derive(Clone, Debug)]
pub struct Status<T> {
    nodes: Vec<Node<T>>,
    free: Vec<u32>,
    root: u32,
    len: usize,
    counter: u64,
}

impl<T> Default for Status<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl<T> Status<T> {
    pub fn new() -> Self {
        Status {
            nodes: Vec::new(),
            free: Vec::new(),
            root: NIL,
            len: 0,
            counter: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, h: Handle) -> &T {
        &self.nodes[h as usize].val
    }

    pub fn get_mut(&mut self, h: Handle) -> &mut T {
        &mut self.nodes[h as usize].val
    }

    /// Inserts `val`. `goes_before(existing)` must return `Less` when the
    /// new element belongs before `existing`, anything else otherwise.
    pub fn insert_by(&mut self, val: T, mut goes_before: impl FnMut(&T) -> Ordering) -> Handle {
        self.counter += 1;
        let node = Node {
            val,
            prio: mix(self.counter),
            left: NIL,
            right: NIL,
            parent: NIL,
        };
        let h = match self.free.pop() {
            Some(h) => {
                self.nodes[h as usize] = node;
                h
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        };
        self.len += 1;
        if self.root == NIL {
            self.root = h;
            return h;
        }
        let mut cur = self.root;
        loop {
            let before = goes_before(&self.nodes[cur as usize].val) == Ordering::Less;
            let next = if before {
                self.nodes[cur as usize].left
            } else {
                self.nodes[cur as usize].right
            };
            if next == NIL {
                if before {
                    self.nodes[cur as usize].left = h;
                } else {
                    self.nodes[cur as usize].right = h;
                }
                self.nodes[h as usize].parent = cur;
                break;
            }
            cur = next;
        }
        while self.nodes[h as usize].parent != NIL {
            let p = self.nodes[h as usize].parent;
            if self.nodes[p as usize].prio >= self.nodes[h as usize].prio {
                break;
            }
            self.rotate_up(h);
        }
        h
    }

    /// Inserts directly after (or before) an existing element.
    pub fn insert_adjacent(&mut self, val: T, at: Handle, after: bool) -> Handle {
        // descend from the root with the positional order of `at`
        let rank_at = self.path_from_root(at);
        let mut depth = 0;
        self.insert_by(val, |_| {
            // follow the recorded path to `at`, then step to its side
            let o = if depth < rank_at.len() {
                rank_at[depth]
            } else if depth == rank_at.len() {
                if after {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            } else if after {
                Ordering::Less
            } else {
                Ordering::Greater
            };
            depth += 1;
            o
        })
    }

    /// Sequence of turns from the root to `h` (`Less` = left).
    fn path_from_root(&self, h: Handle) -> Vec<Ordering> {
        let mut turns = Vec::new();
        let mut c = h;
        while self.nodes[c as usize].parent != NIL {
            let p = self.nodes[c as usize].parent;
            turns.push(if self.nodes[p as usize].left == c {
                Ordering::Less
            } else {
                Ordering::Greater
            });
            c = p;
        }
        turns.reverse();
        turns
    }

    fn rotate_up(&mut self, x: u32) {
        let p = self.nodes[x as usize].parent;
        let g = self.nodes[p as usize].parent;
        if self.nodes[p as usize].left == x {
            let b = self.nodes[x as usize].right;
            self.nodes[p as usize].left = b;
            if b != NIL {
                self.nodes[b as usize].parent = p;
            }
            self.nodes[x as usize].right = p;
        } else {
            let b = self.nodes[x as usize].left;
            self.nodes[p as usize].right = b;
            if b != NIL {
                self.nodes[b as usize].parent = p;
            }
            self.nodes[x as usize].left = p;
        }
        self.nodes[p as usize].parent = x;
        self.nodes[x as usize].parent = g;
        if g == NIL {
            self.root = x;
        } else if self.nodes[g as usize].left == p {
            self.nodes[g as usize].left = x;
        } else {
            self.nodes[g as usize].right = x;
        }
    }

    pub fn remove(&mut self, h: Handle) {
        loop {
            let l = self.nodes[h as usize].left;
            let r = self.nodes[h as usize].right;
            if l == NIL && r == NIL {
                break;
            }
            let c = if l == NIL {
                r
            } else if r == NIL || self.nodes[l as usize].prio > self.nodes[r as usize].prio {
                l
            } else {
                r
            };
            self.rotate_up(c);
        }
        let p = self.nodes[h as usize].parent;
        if p == NIL {
            self.root = NIL;
        } else if self.nodes[p as usize].left == h {
            self.nodes[p as usize].left = NIL;
        } else {
            self.nodes[p as usize].right = NIL;
        }
        self.nodes[h as usize].parent = NIL;
        self.free.push(h);
        self.len -= 1;
    }

    pub fn next(&self, h: Handle) -> Option<Handle> {
        let n = &self.nodes[h as usize];
        if n.right != NIL {
            let mut c = n.right;
            while self.nodes[c as usize].left != NIL {
                c = self.nodes[c as usize].left;
            }
            return Some(c);
        }
        let mut c = h;
        let mut p = n.parent;
        while p != NIL && self.nodes[p as usize].right == c {
            c = p;
            p = self.nodes[p as usize].parent;
        }
        (p != NIL).then_some(p)
    }

    pub fn prev(&self, h: Handle) -> Option<Handle> {
        let n = &self.nodes[h as usize];
        if n.left != NIL {
            let mut c = n.left;
            while self.nodes[c as usize].right != NIL {
                c = self.nodes[c as usize].right;
            }
            return Some(c);
        }
        let mut c = h;
        let mut p = n.parent;
        while p != NIL && self.nodes[p as usize].left == c {
            c = p;
            p = self.nodes[p as usize].parent;
        }
        (p != NIL).then_some(p)
    }

    pub fn first(&self) -> Option<Handle> {
        if self.root == NIL {
            return None;
        }
        let mut c = self.root;
        while self.nodes[c as usize].left != NIL {
            c = self.nodes[c as usize].left;
        }
        Some(c)
    }

    /// Exchanges the values stored at two handles.
    pub fn swap_values(&mut self, a: Handle, b: Handle) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (x, y) = self.nodes.split_at_mut(hi as usize);
        core::mem::swap(&mut x[lo as usize].val, &mut y[0].val);
    }

    /// Values in order.
    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        let mut cur = self.first();
        core::iter::from_fn(move || {
            let h = cur?;
            cur = self.next(h);
            Some(&self.nodes[h as usize].val)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn behaves_like_sorted_vec() {
        let mut st = Status::new();
        let mut handles = Vec::new();
        let mut model: Vec<i64> = Vec::new();
        let mut x: u64 = 7;
        for step in 0..2000 {
            x = mix(x);
            if step % 3 == 2 && !model.is_empty() {
                let k = (x as usize) % handles.len();
                let (h, v): (Handle, i64) = handles.swap_remove(k);
                st.remove(h);
                let pos = model.iter().position(|&m| m == v).unwrap();
                model.remove(pos);
            } else {
                let v = (x % 100_000) as i64 * 3 + step as i64 % 3;
                let h = st.insert_by(v, |e| v.cmp(e));
                handles.push((h, v));
                let pos = model.partition_point(|&m| m <= v);
                model.insert(pos, v);
            }
            let got: Vec<i64> = st.iter().copied().collect();
            assert_eq!(got, model);
        }
        for &(h, v) in &handles {
            let p = st.prev(h).map(|p| *st.get(p));
            let n = st.next(h).map(|n| *st.get(n));
            let pos = model.iter().position(|&m| m == v).unwrap();
            assert_eq!(p, pos.checked_sub(1).map(|i| model[i]));
            assert_eq!(n, model.get(pos + 1).copied());
        }
    }

    #[test]
    fn adjacent_insertion() {
        let mut st = Status::new();
        let a = st.insert_by(10, |e| 10.cmp(e));
        let _c = st.insert_by(30, |e| 30.cmp(e));
        st.insert_adjacent(20, a, true);
        st.insert_adjacent(5, a, false);
        let got: Vec<i32> = st.iter().copied().collect();
        assert_eq!(got, vec![5, 10, 20, 30]);
    }
}

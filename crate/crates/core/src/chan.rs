//! Randomized reduction from optimization to decision.
//!
//! A problem is split into `r` overlapping subproblems whose optima have
//! the original optimum as their minimum. Subproblems are visited in random
//! order; one is solved recursively only if the decision procedure reports
//! that it beats the best value found so far.
//!
//! Decision procedures return a witness with their yes answer. The witness
//! lowers the threshold before the recursive call, and a procedure that
//! happens to know the exact optimum of a subproblem can say so, which
//! skips the recursion entirely.

use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Answer of a decision call for threshold `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum Decision<W> {
    /// The optimum is at least `t`.
    Above,
    /// Some feasible solution has value below `t`.
    Witness(W),
    /// The optimum itself, which is below `t`.
    Optimum(W),
}

pub trait OptProblem: Sized {
    type Witness: Clone;
    /// Value of a witness; smaller is better. Ties must already be broken.
    type Key: Ord + Copy + fmt::Debug;

    fn size(&self) -> usize;
    fn key(w: &Self::Witness) -> Self::Key;
    /// Decides whether the optimum is below `t` (`None` = no bound).
    fn decide_below(&self, t: Option<Self::Key>) -> Decision<Self::Witness>;
    fn split(&self) -> Vec<Self>;
    fn base_solve(&self) -> Option<Self::Witness>;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChanParams {
    /// Subproblems must have at most `ceil(alpha * size)` elements.
    pub alpha: f64,
    pub r: usize,
    /// Problems of at most this size go to `base_solve`.
    pub n0: usize,
}

/// Observed misbehavior of a problem implementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChanError {
    /// A decision call produced a witness that `base_solve` cannot match.
    Inconsistent,
    /// `split` violated the size or count contract.
    BadSplit { size: usize, sub: usize },
}

impl fmt::Display for ChanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChanError::Inconsistent => write!(f, "decision and base solver disagree"),
            ChanError::BadSplit { size, sub } => write!(f, "split of size {size} produced subproblem of size {sub}"),
        }
    }
}

/// Call counters of one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChanStats {
    pub decisions: usize,
    pub recursions: usize,
    pub base_solves: usize,
    pub depth: usize,
}

/// Computes the optimum of `p`, or `None` if it has no feasible solution.
pub fn optimize<P: OptProblem>(p: &P, params: &ChanParams, seed: u64) -> Result<Option<P::Witness>, ChanError> {
    optimize_with_stats(p, params, seed).map(|r| r.0)
}

pub fn optimize_with_stats<P: OptProblem>(
    p: &P,
    params: &ChanParams,
    seed: u64,
) -> Result<(Option<P::Witness>, ChanStats), ChanError> {
    let mut run = Run {
        params,
        rng: ChaCha8Rng::seed_from_u64(seed),
        stats: ChanStats::default(),
    };
    let w = run.solve(p, None, None, 0)?;
    Ok((w, run.stats))
}

struct Run<'a> {
    params: &'a ChanParams,
    rng: ChaCha8Rng,
    stats: ChanStats,
}

impl Run<'_> {
    /// Best solution of `p` with key below `t`. `known` is the key of a
    /// solution of `p` the caller has already seen.
    fn solve<P: OptProblem>(
        &mut self,
        p: &P,
        t: Option<P::Key>,
        known: Option<P::Key>,
        depth: usize,
    ) -> Result<Option<P::Witness>, ChanError> {
        self.stats.depth = self.stats.depth.max(depth);
        let size = p.size();
        if size <= self.params.n0 {
            self.stats.base_solves += 1;
            let w = p.base_solve();
            if let Some(k) = known {
                if w.as_ref().map_or(true, |w| P::key(w) > k) {
                    return Err(ChanError::Inconsistent);
                }
            }
            return Ok(w.filter(|w| t.map_or(true, |t| P::key(w) < t)));
        }
        let mut subs = p.split();
        let cap = libm::ceil(self.params.alpha * size as f64) as usize;
        for s in &subs {
            if s.size() > cap || s.size() >= size {
                return Err(ChanError::BadSplit { size, sub: s.size() });
            }
        }
        if subs.len() > self.params.r {
            return Err(ChanError::BadSplit { size, sub: subs.len() });
        }
        subs.shuffle(&mut self.rng);
        let mut best: Option<P::Witness> = None;
        let mut t = t;
        for s in &subs {
            self.stats.decisions += 1;
            match s.decide_below(t) {
                Decision::Above => {}
                Decision::Optimum(w) => {
                    t = Some(P::key(&w));
                    best = Some(w);
                }
                Decision::Witness(w) => {
                    let k = P::key(&w);
                    t = Some(k);
                    best = Some(w);
                    self.stats.recursions += 1;
                    if let Some(w2) = self.solve(s, t, Some(k), depth + 1)? {
                        t = Some(P::key(&w2));
                        best = Some(w2);
                    }
                }
            }
        }
        if let (Some(k), Some(b)) = (known, best.as_ref()) {
            if P::key(b) > k {
                return Err(ChanError::Inconsistent);
            }
        }
        Ok(best)
    }
}

/// Splits `items` into four overlapping parts: item `i` goes to every part
/// `j` with `i mod 4 != j`. Any three items share a part.
pub fn four_way_split<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut parts: Vec<Vec<T>> = (0..4).map(|_| Vec::with_capacity(items.len() * 3 / 4 + 1)).collect();
    for (i, it) in items.iter().enumerate() {
        for (j, part) in parts.iter_mut().enumerate() {
            if i % 4 != j {
                part.push(it.clone());
            }
        }
    }
    parts
}

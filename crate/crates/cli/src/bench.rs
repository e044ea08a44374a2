//! Doubling-series timings.

use std::fmt::Write as _;
use std::time::Instant;

use geogirth_core::SiteSet;

use crate::generate::{generate, GeneratorSpec};
use crate::run::{run, Algorithm};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub repeat: usize,
    pub seconds: f64,
    pub answer: String,
}

/// Parses `A..B` (or `sizes=A..B`) into `A, 2A, 4A, ...` up to `B`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let s = s.strip_prefix("sizes=").unwrap_or(s);
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad size {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad size {b:?}"))?;
    if a == 0 || a > b {
        return Err(format!("empty size range {s:?}"));
    }
    Ok(std::iter::successors(Some(a), |&n| n.checked_mul(2)).take_while(|&n| n <= b).collect())
}

/// Instances used for timing: uniform centres at unit density, radii in
/// `[0.005, 0.02]`, sparse enough that detection usually runs to the end.
pub fn bench_spec(n: usize, seed: u64) -> GeneratorSpec {
    GeneratorSpec::uniform(n, 0.005, 0.02, seed)
}

/// Shortest timed batch; faster runs are repeated within one sample and
/// averaged.
pub const MIN_SAMPLE_SECONDS: f64 = 0.02;

/// Times `alg` on one fresh instance per size, `repeats` samples each.
///
/// Sizes are interleaved within every repeat so that slow phases of the
/// machine hit all sizes alike. An untimed warm-up run per size also sizes
/// the batches. Rows come back ordered by size, then repeat.
pub fn bench(alg: Algorithm, sizes: &[usize], repeats: usize, seed: u64) -> Vec<BenchRow> {
    let setup: Vec<(usize, SiteSet, usize)> = sizes
        .iter()
        .map(|&n| {
            let set = SiteSet::new(&generate(&bench_spec(n, seed ^ n as u64))).expect("generated instances are valid");
            let start = Instant::now();
            run(alg, set.sites(), seed);
            let once = start.elapsed().as_secs_f64();
            let batch = ((MIN_SAMPLE_SECONDS / once.max(1e-9)).ceil() as usize).clamp(1, 1000);
            (n, set, batch)
        })
        .collect();
    let mut rows = Vec::new();
    for repeat in 0..repeats {
        for (n, set, batch) in &setup {
            let start = Instant::now();
            let mut answer = None;
            for k in 0..*batch {
                answer = Some(run(alg, set.sites(), seed.wrapping_add((repeat * batch + k) as u64)));
            }
            rows.push(BenchRow {
                n: *n,
                repeat,
                seconds: start.elapsed().as_secs_f64() / *batch as f64,
                answer: answer.expect("batch is nonempty").to_string(),
            });
        }
    }
    rows.sort_by_key(|r| (r.n, r.repeat));
    rows
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// `(n, median seconds)` per size, in input order.
pub fn medians(rows: &[BenchRow]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = Vec::new();
    for r in rows {
        if out.last().map(|l| l.0) != Some(r.n) {
            let t: Vec<f64> = rows.iter().filter(|x| x.n == r.n).map(|x| x.seconds).collect();
            out.push((r.n, median(&t)));
        }
    }
    out
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("n,repeat,seconds,answer\n");
    for r in rows {
        writeln!(s, "{},{},{:.9},\"{}\"", r.n, r.repeat, r.seconds, r.answer).unwrap();
    }
    s
}

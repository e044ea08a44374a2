//! Dispatch to the algorithms and their brute-force oracles.

use std::fmt;
use std::time::{Duration, Instant};

use geogirth_core::disk_triangle::{find_triangle_disk, shortest_triangle_disk};
use geogirth_core::girth::{girth_unweighted, weighted_girth_disk};
use geogirth_core::graph::{
    brute_directed_triangle, brute_girth_unweighted, brute_min_weight_cycle, brute_shortest_directed_triangle,
    brute_shortest_triangle, brute_triangle, build_disk_graph_brute, build_tx_graph_brute,
};
use geogirth_core::tx::{find_directed_triangle, shortest_triangle_tx};
use geogirth_core::{Site, Triangle};

/// Largest instance the oracles run on unless configured otherwise.
pub const DEFAULT_ORACLE_CAP: usize = 512;

/// Relative tolerance when comparing lengths with an oracle.
pub const REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Algorithm {
    Triangle,
    ShortestTriangle,
    Girth,
    WeightedGirth,
    TxTriangle,
    TxShortestTriangle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Triangle,
        Algorithm::ShortestTriangle,
        Algorithm::Girth,
        Algorithm::WeightedGirth,
        Algorithm::TxTriangle,
        Algorithm::TxShortestTriangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Triangle => "triangle",
            Algorithm::ShortestTriangle => "shortest-triangle",
            Algorithm::Girth => "girth",
            Algorithm::WeightedGirth => "weighted-girth",
            Algorithm::TxTriangle => "tx-triangle",
            Algorithm::TxShortestTriangle => "tx-shortest-triangle",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Answer {
    None,
    /// Vertex ids in the order found (cycle order for directed triangles).
    Triangle { ids: [usize; 3], perimeter: f64 },
    Cycle { vertices: Vec<usize>, length: f64 },
    Girth(usize),
}

impl From<Option<Triangle>> for Answer {
    fn from(t: Option<Triangle>) -> Answer {
        t.map_or(Answer::None, |t| Answer::Triangle {
            ids: t.ids,
            perimeter: t.perimeter,
        })
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::None => write!(f, "none"),
            Answer::Triangle { ids, perimeter } => write!(f, "triangle {} {} {} perimeter {perimeter:.16e}", ids[0], ids[1], ids[2]),
            Answer::Cycle { vertices, length } => {
                write!(f, "cycle")?;
                for v in vertices {
                    write!(f, " {v}")?;
                }
                write!(f, " length {length:.16e}")
            }
            Answer::Girth(g) => write!(f, "girth {g}"),
        }
    }
}

pub fn run(alg: Algorithm, sites: &[Site], seed: u64) -> Answer {
    match alg {
        Algorithm::Triangle => find_triangle_disk(sites).into(),
        Algorithm::ShortestTriangle => shortest_triangle_disk(sites, seed).into(),
        Algorithm::Girth => girth_unweighted(sites).map_or(Answer::None, Answer::Girth),
        Algorithm::WeightedGirth => weighted_girth_disk(sites, seed).map_or(Answer::None, |c| Answer::Cycle {
            vertices: c.vertices,
            length: c.length,
        }),
        Algorithm::TxTriangle => find_directed_triangle(sites).into(),
        Algorithm::TxShortestTriangle => shortest_triangle_tx(sites, seed).into(),
    }
}

/// The brute-force answer: cubic or worse.
pub fn oracle(alg: Algorithm, sites: &[Site]) -> Answer {
    match alg {
        Algorithm::Triangle => brute_triangle(&build_disk_graph_brute(sites)).into(),
        Algorithm::ShortestTriangle => brute_shortest_triangle(&build_disk_graph_brute(sites)).into(),
        Algorithm::Girth => brute_girth_unweighted(&build_disk_graph_brute(sites)).map_or(Answer::None, Answer::Girth),
        Algorithm::WeightedGirth => brute_min_weight_cycle(&build_disk_graph_brute(sites)).map_or(Answer::None, |c| Answer::Cycle {
            vertices: c.vertices,
            length: c.length,
        }),
        Algorithm::TxTriangle => brute_directed_triangle(&build_tx_graph_brute(sites)).into(),
        Algorithm::TxShortestTriangle => brute_shortest_directed_triangle(&build_tx_graph_brute(sites)).into(),
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs())
}

fn sorted(mut ids: [usize; 3]) -> [usize; 3] {
    ids.sort_unstable();
    ids
}

/// Whether a fast answer agrees with the oracle. Presence questions only
/// compare presence; optimization questions compare the value, and for
/// triangles the vertex set as well.
pub fn agrees(alg: Algorithm, fast: &Answer, slow: &Answer) -> bool {
    use Answer::*;
    match (alg, fast, slow) {
        (_, None, None) => true,
        (Algorithm::Triangle | Algorithm::TxTriangle, Triangle { .. }, Triangle { .. }) => true,
        (_, Triangle { ids: a, perimeter: p }, Triangle { ids: b, perimeter: q }) => sorted(*a) == sorted(*b) && close(*p, *q),
        (_, Cycle { length: a, .. }, Cycle { length: b, .. }) => close(*a, *b),
        (_, Girth(a), Girth(b)) => a == b,
        _ => false,
    }
}

/// Outcome of one command on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: Algorithm,
    pub instance: String,
    pub n: usize,
    pub answer: Answer,
    pub elapsed: Duration,
    pub seed: u64,
    /// Present only when an oracle was run.
    pub oracle_agrees: Option<bool>,
}

impl RunReport {
    pub fn execute(alg: Algorithm, instance: &str, sites: &[Site], seed: u64, verify: Option<usize>) -> RunReport {
        let start = Instant::now();
        let answer = run(alg, sites, seed);
        let elapsed = start.elapsed();
        let oracle_agrees = verify.filter(|&cap| sites.len() <= cap).map(|_| agrees(alg, &answer, &oracle(alg, sites)));
        RunReport {
            command: alg,
            instance: instance.to_string(),
            n: sites.len(),
            answer,
            elapsed,
            seed,
            oracle_agrees,
        }
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command.name())?;
        writeln!(f, "instance: {} (n = {})", self.instance, self.n)?;
        writeln!(f, "answer: {}", self.answer)?;
        writeln!(f, "seconds: {:.6}", self.elapsed.as_secs_f64())?;
        writeln!(f, "seed: {}", self.seed)?;
        if let Some(ok) = self.oracle_agrees {
            writeln!(f, "oracle-agrees: {ok}")?;
        }
        Ok(())
    }
}

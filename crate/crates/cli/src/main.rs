use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use geogirth::bench::{bench, parse_sizes, to_csv};
use geogirth::generate::{generate, Centers, GeneratorSpec, RadiusLaw};
use geogirth::instance;
use geogirth::run::{Algorithm, RunReport, DEFAULT_ORACLE_CAP};

#[derive(Parser)]
#[command(name = "geogirth", version, about = "Triangles and girth of disk and transmission graphs")]
struct Cli {
    /// Seed for generators and the randomized optimizer.
    #[arg(long, global = true, env = "GEOGIRTH_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate(GenerateArgs),
    /// Some triangle of the disk graph.
    Triangle(RunArgs),
    /// Minimum-perimeter triangle of the disk graph.
    ShortestTriangle(RunArgs),
    /// Unweighted girth of the disk graph.
    Girth(RunArgs),
    /// Minimum-weight cycle of the disk graph.
    WeightedGirth(RunArgs),
    /// Some directed triangle of the transmission graph.
    TxTriangle(RunArgs),
    /// Minimum-perimeter directed triangle of the transmission graph.
    TxShortestTriangle(RunArgs),
    /// Time one command over a doubling series of random instances.
    Bench(BenchArgs),
    /// Run every command on an instance and compare with the oracles.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterLaw {
    Uniform,
    Clustered,
}

#[derive(Clone, Copy, ValueEnum)]
enum RadiusKind {
    Uniform,
    Power,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    centers: CenterLaw,
    /// Side of the square holding the centres; defaults to sqrt(n).
    #[arg(long)]
    side: Option<f64>,
    #[arg(long, default_value_t = 8)]
    clusters: usize,
    #[arg(long, default_value_t = 1.0)]
    spread: f64,
    #[arg(long, value_enum, default_value = "uniform")]
    radii: RadiusKind,
    #[arg(long, default_value_t = 0.05)]
    lo: f64,
    #[arg(long, default_value_t = 0.35)]
    hi: f64,
    #[arg(long, default_value_t = 2.5)]
    gamma: f64,
    #[arg(long, default_value_t = 0.05)]
    min_radius: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Instance file.
    instance: Option<PathBuf>,
    /// Also run the brute-force oracle and compare.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Time a doubling series instead, e.g. `sizes=4096..65536`.
    #[arg(long, value_name = "sizes=A..B")]
    bench: Option<String>,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(value_enum)]
    algorithm: Algorithm,
    #[arg(long, default_value = "4096..65536")]
    sizes: String,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_bench(alg: Algorithm, sizes: &str, repeats: usize, seed: u64, out: Option<&Path>) -> Result<ExitCode> {
    let sizes = parse_sizes(sizes).map_err(anyhow::Error::msg)?;
    if repeats == 0 {
        bail!("need at least one repeat");
    }
    emit(out, &to_csv(&bench(alg, &sizes, repeats, seed)))?;
    Ok(ExitCode::SUCCESS)
}

fn run_one(alg: Algorithm, a: &RunArgs, seed: u64) -> Result<ExitCode> {
    if let Some(spec) = &a.bench {
        return run_bench(alg, spec, a.repeats, seed, a.out.as_deref());
    }
    let path = a.instance.as_deref().context("missing instance file")?;
    let set = instance::read(path)?;
    let report = RunReport::execute(alg, &path.display().to_string(), set.sites(), seed, a.verify.then_some(a.oracle_cap));
    emit(a.out.as_deref(), &report.to_string())?;
    Ok(if report.oracle_agrees == Some(false) { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let seed = cli.seed;
    let alg = match &cli.command {
        Command::Generate(g) => {
            let side = g.side.unwrap_or((g.n as f64).sqrt().max(1.0));
            let spec = GeneratorSpec {
                n: g.n,
                centers: match g.centers {
                    CenterLaw::Uniform => Centers::Uniform { side },
                    CenterLaw::Clustered => Centers::Clustered {
                        side,
                        clusters: g.clusters,
                        spread: g.spread,
                    },
                },
                radii: match g.radii {
                    RadiusKind::Uniform => RadiusLaw::Uniform { lo: g.lo, hi: g.hi },
                    RadiusKind::Power => RadiusLaw::PowerLaw {
                        gamma: g.gamma,
                        min: g.min_radius,
                    },
                },
                seed,
            };
            if g.n == 0 {
                bail!("n must be at least 1");
            }
            if !(g.lo > 0.0 && g.lo <= g.hi && g.min_radius > 0.0 && g.gamma > 1.0) {
                bail!("radius law must give positive radii");
            }
            emit(g.out.as_deref(), &instance::format(&generate(&spec)))?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Bench(b) => return run_bench(b.algorithm, &b.sizes, b.repeats, seed, b.out.as_deref()),
        Command::Verify(v) => {
            let set = instance::read(&v.instance)?;
            let name = v.instance.display().to_string();
            let mut ok = true;
            for alg in Algorithm::ALL {
                let r = RunReport::execute(alg, &name, set.sites(), seed, Some(v.oracle_cap));
                print!("{r}\n");
                ok &= r.oracle_agrees != Some(false);
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) });
        }
        Command::Triangle(a) => (Algorithm::Triangle, a),
        Command::ShortestTriangle(a) => (Algorithm::ShortestTriangle, a),
        Command::Girth(a) => (Algorithm::Girth, a),
        Command::WeightedGirth(a) => (Algorithm::WeightedGirth, a),
        Command::TxTriangle(a) => (Algorithm::TxTriangle, a),
        Command::TxShortestTriangle(a) => (Algorithm::TxShortestTriangle, a),
    };
    run_one(alg.0, alg.1, seed)
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

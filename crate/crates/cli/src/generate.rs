//! Seeded random instances.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Pareto};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Centers {
    /// Uniform in `[0, side]^2`.
    Uniform { side: f64 },
    /// Gaussian blobs of deviation `spread` around `clusters` uniform
    /// centres in `[0, side]^2`.
    Clustered { side: f64, clusters: usize, spread: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusLaw {
    Uniform { lo: f64, hi: f64 },
    /// Density proportional to `r^-gamma` for `r >= min`.
    PowerLaw { gamma: f64, min: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    pub centers: Centers,
    pub radii: RadiusLaw,
    pub seed: u64,
}

impl GeneratorSpec {
    /// Uniform centres in a square of area `n`, radii uniform in `[lo, hi]`.
    pub fn uniform(n: usize, lo: f64, hi: f64, seed: u64) -> Self {
        GeneratorSpec {
            n,
            centers: Centers::Uniform {
                side: (n as f64).sqrt().max(1.0),
            },
            radii: RadiusLaw::Uniform { lo, hi },
            seed,
        }
    }
}

/// Points with positive radii and pairwise distinct centres; the same settings
/// always gives the same points.
pub fn generate(spec: &GeneratorSpec) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let hubs: Vec<(f64, f64)> = match spec.centers {
        Centers::Clustered { side, clusters, .. } => {
            (0..clusters.max(1)).map(|_| (rng.gen::<f64>() * side, rng.gen::<f64>() * side)).collect()
        }
        Centers::Uniform { .. } => Vec::new(),
    };
    let pareto = match spec.radii {
        RadiusLaw::PowerLaw { gamma, min } => Some(Pareto::new(min, gamma - 1.0).expect("power law needs gamma > 1, min > 0")),
        RadiusLaw::Uniform { .. } => None,
    };
    let mut seen = HashSet::with_capacity(spec.n);
    let mut out = Vec::with_capacity(spec.n);
    while out.len() < spec.n {
        let (x, y) = match spec.centers {
            Centers::Uniform { side } => (rng.gen::<f64>() * side, rng.gen::<f64>() * side),
            Centers::Clustered { spread, .. } => {
                let (hx, hy) = hubs[rng.gen_range(0..hubs.len())];
                (hx + spread * normal.sample(&mut rng), hy + spread * normal.sample(&mut rng))
            }
        };
        let r = match (spec.radii, &pareto) {
            (RadiusLaw::Uniform { lo, hi }, _) => rng.gen_range(lo..=hi),
            (_, Some(p)) => p.sample(&mut rng),
            _ => unreachable!(),
        };
        if seen.insert((x.to_bits(), y.to_bits())) {
            out.push((x, y, r));
        }
    }
    out
}

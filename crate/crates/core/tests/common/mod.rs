#![allow(dead_code)]

use geogirth_core::Site;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random sites in a square of side `side`, radii uniform in `[r0, r1]`.
pub fn uniform(rng: &mut ChaCha8Rng, n: usize, side: f64, r0: f64, r1: f64) -> Vec<Site> {
    (0..n)
        .map(|i| Site::new(i, rng.gen::<f64>() * side, rng.gen::<f64>() * side, rng.gen_range(r0..=r1)))
        .collect()
}

/// Mixed radius laws: uniform, heavy-tailed, and a few big disks.
pub fn mixed(rng: &mut ChaCha8Rng, n: usize, law: usize) -> Vec<Site> {
    let side = (n as f64).sqrt().max(1.0);
    (0..n)
        .map(|i| {
            let x = rng.gen::<f64>() * side;
            let y = rng.gen::<f64>() * side;
            let r = match law % 4 {
                0 => rng.gen_range(0.05..0.5),
                1 => 0.08 * (1.0 - rng.gen::<f64>()).powf(-1.0 / 1.5),
                2 => {
                    if rng.gen::<f64>() < 0.1 {
                        rng.gen_range(0.5..2.0)
                    } else {
                        rng.gen_range(0.02..0.2)
                    }
                }
                _ => rng.gen_range(0.1..0.3),
            };
            Site::new(i, x, y, r.min(3.0 * side))
        })
        .collect()
}

//! Seeded, reproducible evaluation grids for identity sweeps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Fixed default seed; sweeps are reproducible byte-for-byte.
pub const DEFAULT_SEED: u64 = 42;

/// Pseudo-random rectangle of z points crossed with a list of nomes.
///
/// Points are drawn from `ChaCha8` seeded with `seed`, so a `GridSpec`
/// determines its evaluation points exactly, independent of platform or
/// thread count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub z_re: (f64, f64),
    pub z_im: (f64, f64),
    /// Number of z samples (per nome).
    pub n_z: usize,
    /// Real nomes to sweep; each must satisfy `0 < q < 1`.
    pub q_values: Vec<f64>,
    pub seed: u64,
    /// Maximum allowed relative residual.
    pub tolerance: f64,
}

impl GridSpec {
    /// The defaults used by the acceptance runs: 40 z points in the strip
    /// `Re z in (0.1, 1.4)`, `|Im z| <= 0.25`, times five nomes = 200 points.
    pub fn default_identity_grid() -> Self {
        Self {
            z_re: (0.1, 1.4),
            z_im: (-0.25, 0.25),
            n_z: 40,
            q_values: vec![0.1, 0.2, 0.3, 0.5, 0.7],
            seed: DEFAULT_SEED,
            tolerance: 1e-9,
        }
    }

    /// Sampled z points for this spec (deterministic in `seed`).
    pub fn z_points(&self) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.n_z)
            .map(|_| {
                let re = rng.gen_range(self.z_re.0..self.z_re.1);
                let im = if self.z_im.0 < self.z_im.1 {
                    rng.gen_range(self.z_im.0..self.z_im.1)
                } else {
                    self.z_im.0
                };
                Complex64::new(re, im)
            })
            .collect()
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::default_identity_grid()
    }
}

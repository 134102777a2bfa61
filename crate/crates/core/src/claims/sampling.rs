use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::pair_state::MixingAmplitudes;

/// Seeded source of mixing amplitudes (uniform on the unit 2-sphere) and
/// uniform parameters.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn alpha(&mut self) -> MixingAmplitudes {
        loop {
            let v: [f64; 3] = std::array::from_fn(|_| self.rng.sample(StandardNormal));
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n < 1e-6 {
                continue;
            }
            if let Ok(a) = MixingAmplitudes::new(v[0] / n, v[1] / n, v[2] / n) {
                return a;
            }
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }
}

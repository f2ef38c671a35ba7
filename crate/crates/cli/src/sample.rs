//! Seeded rational sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcoherence_core::{Rational, Scalar};

/// Rationals `n/d` with `|n| <= max_num`, `1 <= d <= max_den`.
pub struct RationalSampler {
    rng: ChaCha8Rng,
    max_num: i64,
    max_den: i64,
}

impl RationalSampler {
    pub fn new(seed: u64, max_num: i64, max_den: i64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_num,
            max_den,
        }
    }

    pub fn next(&mut self) -> Rational {
        let n = self.rng.random_range(-self.max_num..=self.max_num);
        let d = self.rng.random_range(1..=self.max_den);
        Rational::new(n, d)
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.next();
            if !Scalar::is_zero(&r) {
                return r;
            }
        }
    }

    /// A base other than `0` and `+-1`.
    pub fn base(&mut self) -> Rational {
        loop {
            let r = self.nonzero();
            if !r.is_one() && !(-r.clone()).is_one() {
                return r;
            }
        }
    }

    pub fn range(&mut self, hi: usize) -> usize {
        self.rng.random_range(0..hi)
    }
}

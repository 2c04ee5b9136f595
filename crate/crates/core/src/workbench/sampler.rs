use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, WeightVector};
use crate::scalar::{rat, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed;
const BOUND: i64 = 1000;

/// `WORKBENCH_SEED` if set, otherwise [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("WORKBENCH_SEED")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Whether every rank-one and rank-two flat has a nonzero weight sum.
/// Affine arrangements are judged through their cone. With `skip_total`,
/// the flat of all hyperplanes is ignored (its sum is forced to zero when
/// sampling on `sum lambda = 0`).
pub fn is_generic(a: &Arrangement, weights: &WeightVector, skip_total: bool) -> bool {
    let (a, w) = if a.is_central() {
        (a.clone(), weights.clone())
    } else {
        match a.cone(weights) {
            Ok(c) => c,
            Err(_) => return false,
        }
    };
    let n = a.len();
    a.flats(2)
        .iter()
        .filter(|f| !(skip_total && f.hyperplanes.len() == n))
        .all(|f| !w.sum_over(&f.hyperplanes).is_zero())
}

/// Seeded source of generic weights and points.
pub struct WeightSampler {
    seed: u64,
    rng: ChaCha8Rng,
}

impl WeightSampler {
    pub fn new(seed: u64) -> Self {
        WeightSampler {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Nonzero `p/q` with `|p|, q <= 1000`.
    pub fn rational(&mut self) -> Rational {
        loop {
            let p = self.rng.gen_range(-BOUND..=BOUND);
            if p != 0 {
                let q = self.rng.gen_range(1..=BOUND);
                return rat(p, q);
            }
        }
    }

    pub fn generic(&mut self, a: &Arrangement) -> WeightVector {
        loop {
            let w = WeightVector::new((0..a.len()).map(|_| self.rational()).collect());
            if is_generic(a, &w, false) {
                return w;
            }
        }
    }

    /// Generic subject to `sum lambda = 0`.
    pub fn generic_sum_zero(&mut self, a: &Arrangement) -> WeightVector {
        loop {
            let mut v: Vec<Rational> = (1..a.len()).map(|_| self.rational()).collect();
            let total = v.iter().fold(Rational::zero(), |acc, x| acc + x);
            v.push(-total);
            let w = WeightVector::new(v);
            if is_generic(a, &w, true) {
                return w;
            }
        }
    }

    /// A rational point off every hyperplane.
    pub fn point_in_complement(&mut self, a: &Arrangement) -> Vec<Rational> {
        loop {
            let x: Vec<Rational> = (0..a.dim()).map(|_| self.rational()).collect();
            if a.check_point_in_complement(&x).is_ok() {
                return x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::catalog::{generic_lines, pencil, x3};

    #[test]
    fn reproducible() {
        let a = x3();
        let w1 = WeightSampler::new(7).generic(&a);
        let w2 = WeightSampler::new(7).generic(&a);
        assert_eq!(w1, w2);
        assert!(is_generic(&a, &w1, false));
    }

    #[test]
    fn sum_zero_family() {
        let a = pencil(4);
        let w = WeightSampler::new(1).generic_sum_zero(&a);
        assert!(w.sum().is_zero());
        assert!(!is_generic(&a, &w, false));
        assert!(is_generic(&a, &w, true));
    }

    #[test]
    fn resonant_weights_are_rejected() {
        assert!(!is_generic(&pencil(3), &WeightVector::from_integers(&[1, 1, -2]), false));
        let lines = generic_lines(3);
        assert!(is_generic(&lines, &WeightVector::from_integers(&[2, 3, 7]), false));
        assert!(!is_generic(&lines, &WeightVector::from_integers(&[1, 1, -2]), false));
        let p = WeightSampler::new(3).point_in_complement(&lines);
        assert!(lines.check_point_in_complement(&p).is_ok());
    }
}

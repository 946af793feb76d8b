//! Seedable sample generation for the property checkers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ndim::{NDimInterval, Permutation, UnitValue, WeightingVector};

pub const DEFAULT_SEED: u64 = 12345;
pub const DEFAULT_SAMPLES: usize = 1000;

/// Deterministic sample source. Every report records the seed it was built with.
#[derive(Clone, Debug)]
pub struct Sampler {
    seed: u64,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fresh sampler derived from this one's seed and a label, so that
    /// independent checks don't share a stream.
    pub fn fork(&self, label: u64) -> Sampler {
        Sampler::new(self.seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn unit(&mut self) -> f64 {
        self.rng.gen_range(0.0..=1.0)
    }

    pub fn unit_value(&mut self) -> UnitValue {
        UnitValue::new(self.unit()).expect("sampled in range")
    }

    /// Either a continuous value or a value on the 0.1 grid (half of the time),
    /// so that equal components and ties show up regularly.
    pub fn unit_mixed(&mut self) -> f64 {
        if self.rng.gen_bool(0.5) {
            self.unit()
        } else {
            self.grid(10)
        }
    }

    /// A value `k / steps` for uniform `k ∈ {0,…,steps}`.
    pub fn grid(&mut self, steps: u32) -> f64 {
        f64::from(self.rng.gen_range(0..=steps)) / f64::from(steps)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn ndim(&mut self, n: usize) -> NDimInterval {
        let v: Vec<f64> = (0..n).map(|_| self.unit()).collect();
        NDimInterval::sigma(&v).expect("n >= 1")
    }

    pub fn ndim_mixed(&mut self, n: usize) -> NDimInterval {
        let v: Vec<f64> = (0..n).map(|_| self.unit_mixed()).collect();
        NDimInterval::sigma(&v).expect("n >= 1")
    }

    pub fn ndim_grid(&mut self, n: usize, steps: u32) -> NDimInterval {
        let v: Vec<f64> = (0..n).map(|_| self.grid(steps)).collect();
        NDimInterval::sigma(&v).expect("n >= 1")
    }

    /// An element with every component at most `bound`.
    pub fn ndim_bounded(&mut self, n: usize, bound: f64) -> NDimInterval {
        let v: Vec<f64> = (0..n).map(|_| self.range(0.0, bound)).collect();
        NDimInterval::sigma(&v).expect("n >= 1")
    }

    /// `x ≤_n^p y` by construction: `y` is `x` plus nonnegative noise, re-sorted.
    pub fn chain_pair(&mut self, n: usize) -> (NDimInterval, NDimInterval) {
        let x = self.ndim_mixed(n);
        let y = self.chain_above(&x);
        (x, y)
    }

    /// Some `y` with `x ≤_n^p y`; each component is kept with probability 0.3.
    pub fn chain_above(&mut self, x: &NDimInterval) -> NDimInterval {
        let mut y: Vec<f64> = x
            .components()
            .iter()
            .map(|&c| {
                if self.rng.gen_bool(0.3) {
                    c
                } else {
                    (c + self.range(0.0, 1.0 - c)).min(1.0)
                }
            })
            .collect();
        // adding noise independently can unsort; a running max keeps y ≥ x
        for i in 1..y.len() {
            if y[i] < y[i - 1] {
                y[i] = y[i - 1];
            }
        }
        NDimInterval::new(y).expect("running max is sorted")
    }

    pub fn weighting_vector(&mut self, m: usize) -> WeightingVector {
        let raw: Vec<f64> = (0..m).map(|_| self.unit()).collect();
        if raw.iter().sum::<f64>() == 0.0 {
            return WeightingVector::uniform(m).expect("m >= 1");
        }
        WeightingVector::normalized(raw).expect("positive sum")
    }

    pub fn strictly_positive_weights(&mut self, m: usize) -> WeightingVector {
        let raw: Vec<f64> = (0..m).map(|_| self.range(0.05, 1.0)).collect();
        WeightingVector::normalized(raw).expect("positive sum")
    }

    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut self.rng);
        Permutation::from_zero_based(images).expect("shuffle of 0..n")
    }

    pub fn scalars(&mut self, m: usize) -> Vec<f64> {
        (0..m).map(|_| self.unit_mixed()).collect()
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::new(DEFAULT_SEED)
    }
}

//! Deterministic randomized generators and the affine-orbit invariance
//! suite. Generation is integer-only and driven by a splitmix64 recurrence,
//! so a failing seed reproduces bit-for-bit on any platform or in any
//! reimplementation.

use std::fmt;

use crate::classify::{classify, image_dimension_sequence};
use crate::decompose::fitting_split;
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::vector::Vector;
use crate::{OperatorQ, Rational, WitnessQ};

/// splitmix64: state advances by 0x9e3779b97f4a7c15, output is the
/// finalizer with constants 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in 0..bound (bound ≥ 1). Modulo bias is irrelevant here.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound >= 1);
        self.next_u64() % bound
    }

    /// Uniform integer in [−bound, bound].
    pub fn int_in(&mut self, bound: u64) -> i64 {
        self.below(2 * bound + 1) as i64 - bound as i64
    }

    /// Uniform nonzero integer in [−bound, bound].
    pub fn nonzero_int_in(&mut self, bound: u64) -> i64 {
        loop {
            let v = self.int_in(bound);
            if v != 0 {
                return v;
            }
        }
    }
}

/// Configuration for the deterministic generators.
#[derive(Clone, Debug)]
pub struct GenConfig {
    pub dimension: usize,
    pub coefficient_bound: u64,
    pub seed: u64,
    /// Probability of planting a nilpotent block, as percent 0..=100 so the
    /// generation path stays integer-only.
    pub nilpotent_bias_percent: u64,
}

impl GenConfig {
    pub fn new(dimension: usize, coefficient_bound: u64, seed: u64) -> Self {
        assert!(coefficient_bound >= 1);
        GenConfig {
            dimension,
            coefficient_bound,
            seed,
            nilpotent_bias_percent: 50,
        }
    }

    pub fn with_bias_percent(mut self, percent: u64) -> Self {
        assert!(percent <= 100);
        self.nilpotent_bias_percent = percent;
        self
    }
}

fn random_vector(rng: &mut SplitMix64, dim: usize, bound: u64) -> Vector<Rational> {
    Vector::new(
        (0..dim)
            .map(|_| Rational::from_i64(rng.int_in(bound)))
            .collect(),
    )
}

/// Invertible matrix as a product of random elementary row operations
/// applied to the identity: determinant is ±1 by construction.
fn random_invertible(rng: &mut SplitMix64, dim: usize, bound: u64) -> Matrix<Rational> {
    let mut m = Matrix::identity(dim);
    if dim < 2 {
        return m;
    }
    for _ in 0..2 * dim {
        match rng.below(3) {
            0 => {
                // add c × row i to row j
                let i = rng.below(dim as u64) as usize;
                let mut j = rng.below(dim as u64) as usize;
                if i == j {
                    j = (j + 1) % dim;
                }
                let c = Rational::from_i64(rng.nonzero_int_in(bound));
                for col in 0..dim {
                    m[(j, col)] = m[(j, col)].clone() + c.clone() * m[(i, col)].clone();
                }
            }
            1 => {
                let i = rng.below(dim as u64) as usize;
                let j = rng.below(dim as u64) as usize;
                for col in 0..dim {
                    let tmp = m[(i, col)].clone();
                    m[(i, col)] = m[(j, col)].clone();
                    m[(j, col)] = tmp;
                }
            }
            _ => {
                let i = rng.below(dim as u64) as usize;
                for col in 0..dim {
                    m[(i, col)] = -m[(i, col)].clone();
                }
            }
        }
    }
    m
}

/// Nonsingular matrix with varied eigenvalues: unit lower triangular times
/// upper triangular with nonzero diagonal.
fn random_nonsingular(rng: &mut SplitMix64, dim: usize, bound: u64) -> Matrix<Rational> {
    let lower = Matrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Rational::from_i64(1)
        } else if i > j {
            Rational::from_i64(rng.int_in(bound))
        } else {
            num_traits::Zero::zero()
        }
    });
    let upper = Matrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Rational::from_i64(rng.nonzero_int_in(bound))
        } else if i < j {
            Rational::from_i64(rng.int_in(bound))
        } else {
            num_traits::Zero::zero()
        }
    });
    lower.mul(&upper)
}

fn random_nilpotent(rng: &mut SplitMix64, dim: usize, bound: u64) -> Matrix<Rational> {
    Matrix::from_fn(dim, dim, |i, j| {
        if i < j {
            Rational::from_i64(rng.int_in(bound))
        } else {
            num_traits::Zero::zero()
        }
    })
}

/// Deterministic random affine operator. With probability given by the
/// nilpotent bias, the matrix is assembled as S·diag(M*, N)·S⁻¹ from a
/// random nonsingular M*, random strictly-triangular N, and random
/// invertible S, so interesting Fitting structure is guaranteed.
pub fn random_affine_operator(cfg: &GenConfig) -> OperatorQ {
    let mut rng = SplitMix64::new(cfg.seed);
    let n = cfg.dimension;
    let bound = cfg.coefficient_bound;
    let planted = n > 0 && rng.below(100) < cfg.nilpotent_bias_percent;
    let matrix = if planted {
        // k < n, so the planted nilpotent block is never empty
        let k = rng.below(n as u64) as usize;
        let star = random_nonsingular(&mut rng, k, bound);
        let nil = random_nilpotent(&mut rng, n - k, bound);
        let s = random_invertible(&mut rng, n, bound);
        let s_inv = s.inverse().expect("elementary product is invertible");
        s.mul(&star.block_diag(&nil)).mul(&s_inv)
    } else {
        Matrix::from_fn(n, n, |_, _| Rational::from_i64(rng.int_in(bound)))
    };
    let b = random_vector(&mut rng, n, bound);
    OperatorQ::new(matrix, b).expect("square by construction")
}

/// Deterministic random affine witness from the affine subgroup.
pub fn random_affine_witness(cfg: &GenConfig) -> WitnessQ {
    let mut rng = SplitMix64::new(cfg.seed ^ 0xa5a5a5a5a5a5a5a5);
    let linear = random_invertible(&mut rng, cfg.dimension, cfg.coefficient_bound);
    let shift = random_vector(&mut rng, cfg.dimension, cfg.coefficient_bound);
    WitnessQ::new(linear, shift).expect("elementary product is invertible")
}

/// One failed trial, with enough data to reproduce it.
#[derive(Clone, Debug)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub what: String,
}

/// Outcome of the invariance suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub trials: usize,
    pub failures: Vec<TrialFailure>,
    pub max_coefficient_bits: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "failures: {}", self.failures.len())?;
        writeln!(f, "max coefficient bits: {}", self.max_coefficient_bits)?;
        for fail in &self.failures {
            writeln!(f, "FAIL trial {} seed {}: {}", fail.trial, fail.seed, fail.what)?;
        }
        Ok(())
    }
}

fn operator_max_bits(op: &OperatorQ) -> u64 {
    let mut max = 0;
    let m = op.matrix();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            max = max.max(m[(i, j)].complexity());
        }
    }
    for e in op.translation().entries() {
        max = max.max(e.complexity());
    }
    max
}

/// Draws (f, h) pairs and checks, per trial: the invariant is constant under
/// conjugation by h, fixed-point presence matches, and the directly iterated
/// image dimensions equal the Fitting-data prediction star_dim + rank(nilⁱ).
pub fn run_invariance_suite(trials: usize, cfg: &GenConfig) -> SuiteReport {
    assert!(trials >= 1);
    let mut failures = Vec::new();
    let mut max_bits = 0;
    let mut seeder = SplitMix64::new(cfg.seed);
    for trial in 0..trials {
        let trial_seed = seeder.next_u64();
        let op_cfg = GenConfig {
            seed: trial_seed,
            ..cfg.clone()
        };
        let wit_cfg = GenConfig {
            seed: trial_seed.wrapping_add(1),
            ..cfg.clone()
        };
        let f = random_affine_operator(&op_cfg);
        let h = random_affine_witness(&wit_cfg);
        let g = f.conjugate_by(&h);
        max_bits = max_bits.max(operator_max_bits(&g));

        if classify(&f) != classify(&g) {
            failures.push(TrialFailure {
                trial,
                seed: trial_seed,
                what: "invariant changed under affine conjugation".into(),
            });
            continue;
        }
        if f.fixed_point().is_some() != g.fixed_point().is_some() {
            failures.push(TrialFailure {
                trial,
                seed: trial_seed,
                what: "fixed-point presence changed under affine conjugation".into(),
            });
            continue;
        }
        let measured = image_dimension_sequence(&f);
        let split = fitting_split(f.matrix());
        let predicted: Vec<usize> = (1..=f.dim())
            .map(|i| split.star_dim + split.nil.pow(i).rank())
            .collect();
        if measured != predicted {
            failures.push(TrialFailure {
                trial,
                seed: trial_seed,
                what: format!("image dimensions {measured:?} != predicted {predicted:?}"),
            });
        }
    }
    SuiteReport {
        trials,
        failures,
        max_coefficient_bits: max_bits,
    }
}

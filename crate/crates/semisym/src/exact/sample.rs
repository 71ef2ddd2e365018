//! Deterministic genericity sampling.
//!
//! Claims that hold generically in parameters are certified by evaluating
//! at pseudo-random rational points drawn from a fixed seed, with every
//! point checked against the declared excluded locus first. The generator
//! is a self-contained splitmix64 so sampled points never change across
//! dependency upgrades.

use super::scalar::{Assignment, Scalar};
use super::sym::Sym;
use super::ExactError;

/// Number of sample points used to certify a generic claim.
pub const GENERIC_POINTS: usize = 5;

/// Default RNG seed for all sampling (reports record it).
pub const DEFAULT_SEED: u64 = 20_240_817;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// A small nonzero rational with numerator in [-12, 12] and denominator
    /// in [1, 8].
    pub fn small_rational(&mut self) -> Scalar {
        let num = (self.below(12) + 1) as i64;
        let den = (self.below(8) + 1) as i64;
        let sign = if self.below(2) == 0 { 1 } else { -1 };
        Scalar::from_fraction(sign * num, den)
    }
}

/// Draws an assignment for `params` avoiding the excluded locus: every
/// constraint scalar must evaluate to something nonzero at the point.
pub fn generic_point(
    rng: &mut SplitMix64,
    params: &[Sym],
    constraints: &[Scalar],
) -> Result<Assignment, ExactError> {
    'attempt: for _ in 0..64 {
        let mut point = Assignment::new();
        for &p in params {
            point.insert(p, rng.small_rational());
        }
        for c in constraints {
            match c.substitute(&point) {
                Ok(v) if !v.is_zero() => {}
                _ => continue 'attempt,
            }
        }
        return Ok(point);
    }
    Err(ExactError::ExcludedLocus(
        "could not sample a point off the excluded locus".to_string(),
    ))
}

/// Draws `GENERIC_POINTS` admissible assignments from a fixed seed.
pub fn generic_points(
    seed: u64,
    params: &[Sym],
    constraints: &[Scalar],
) -> Result<Vec<Assignment>, ExactError> {
    let mut rng = SplitMix64::new(seed);
    (0..GENERIC_POINTS)
        .map(|_| generic_point(&mut rng, params, constraints))
        .collect()
}

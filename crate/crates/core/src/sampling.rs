//! Deterministic pseudo-random sampling for the verification harness.
//!
//! All sampled checks draw from this generator so that reports are
//! byte-identical across runs and platforms. The core is splitmix64, which
//! is stable, tiny and plenty for picking test points; sampled values are
//! small rationals so that exact arithmetic stays cheap.

use num::bigint::BigInt;
use num::rational::BigRational;

/// Largest magnitude used for sampled numerators and denominators.
pub const MAX_MAGNITUDE: u64 = 1000;

/// How many times a degenerate sample point may be redrawn before the
/// instance is reported as a degenerate family rather than a pass.
pub const MAX_RESAMPLE: usize = 100;

#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n` (n > 0).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // Modulo bias is irrelevant at these ranges.
        self.next_u64() % n
    }

    /// A nonzero rational with numerator and denominator bounded by
    /// [`MAX_MAGNITUDE`]; either sign.
    pub fn nonzero_rational(&mut self) -> BigRational {
        let num = 1 + self.below(MAX_MAGNITUDE) as i64;
        let den = 1 + self.below(MAX_MAGNITUDE) as i64;
        let sign = if self.below(2) == 0 { 1 } else { -1 };
        BigRational::new(BigInt::from(sign * num), BigInt::from(den))
    }

    /// A rational suitable as the value of a formal generator: nonzero and
    /// with numerator magnitude different from the denominator, so neither
    /// the value nor its square is 1.
    pub fn generic_rational(&mut self) -> BigRational {
        loop {
            let num = 1 + self.below(MAX_MAGNITUDE) as i64;
            let den = 1 + self.below(MAX_MAGNITUDE) as i64;
            if num == den {
                continue;
            }
            let sign = if self.below(2) == 0 { 1 } else { -1 };
            return BigRational::new(BigInt::from(sign * num), BigInt::from(den));
        }
    }
}

/// Runs `attempt` until it yields a value, at most [`MAX_RESAMPLE`] times.
/// `None` means every draw hit a degenerate point and the caller must
/// report the instance as degenerate, never as a pass.
pub fn sample_until<T>(rng: &mut Rng, mut attempt: impl FnMut(&mut Rng) -> Option<T>) -> Option<T> {
    for _ in 0..MAX_RESAMPLE {
        if let Some(v) = attempt(rng) {
            return Some(v);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::sign::Signed;
    use num::{One, Zero};

    #[test]
    fn streams_are_deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        // fixed spot check so cross-version drift would be caught
        let mut c = Rng::new(0);
        assert_eq!(c.next_u64(), 0xe220a8397b1dcdaf);
    }

    #[test]
    fn generic_rationals_avoid_units() {
        let mut rng = Rng::new(7);
        for _ in 0..500 {
            let v = rng.generic_rational();
            assert!(!v.is_zero());
            assert!(!v.abs().is_one());
            assert!(v.numer().magnitude() <= &MAX_MAGNITUDE.into());
            assert!(v.denom().magnitude() <= &MAX_MAGNITUDE.into());
        }
    }

    #[test]
    fn sample_until_gives_up() {
        let mut rng = Rng::new(1);
        let mut calls = 0usize;
        let r: Option<()> = sample_until(&mut rng, |_| {
            calls += 1;
            None
        });
        assert!(r.is_none());
        assert_eq!(calls, MAX_RESAMPLE);
    }
}

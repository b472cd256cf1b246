//! Exact symbols r · (2πi)^k · Γ(m).
//!
//! Since m is a positive integer, Γ(m) = (m−1)! is rational and products or
//! quotients of symbols fold the gamma factor into the rational part, keeping
//! the normal form r · (2πi)^k · Γ(m) with a single symbolic gamma.

use super::{rat_to_f64, Rat};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicPeriod {
    pub rational_part: Rat,
    pub power_of_2pi_i: i64,
    /// Argument m of Γ(m); m = 1 is the neutral Γ(1) = 1.
    pub gamma_arg: u64,
}

fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from(acc)
}

impl SymbolicPeriod {
    pub fn new(rational_part: Rat, power_of_2pi_i: i64, gamma_arg: u64) -> Self {
        assert!(gamma_arg >= 1, "Γ argument must be a positive integer");
        SymbolicPeriod { rational_part, power_of_2pi_i, gamma_arg }
    }

    pub fn rational(r: Rat) -> Self {
        Self::new(r, 0, 1)
    }

    /// Fold Γ(m) into the rational part (normal form with gamma_arg = 1).
    pub fn folded(&self) -> Self {
        SymbolicPeriod {
            rational_part: &self.rational_part * factorial(self.gamma_arg - 1),
            power_of_2pi_i: self.power_of_2pi_i,
            gamma_arg: 1,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.folded();
        let b = other.folded();
        SymbolicPeriod {
            rational_part: a.rational_part * b.rational_part,
            power_of_2pi_i: a.power_of_2pi_i + b.power_of_2pi_i,
            gamma_arg: 1,
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        let a = self.folded();
        let b = other.folded();
        if b.rational_part == Rat::from(BigInt::from(0)) {
            return None;
        }
        Some(SymbolicPeriod {
            rational_part: a.rational_part / b.rational_part,
            power_of_2pi_i: a.power_of_2pi_i - b.power_of_2pi_i,
            gamma_arg: 1,
        })
    }

    /// Two symbols represent the same period iff their folded forms agree.
    pub fn equivalent(&self, other: &Self) -> bool {
        let a = self.folded();
        let b = other.folded();
        a == b
    }

    /// Numeric embedding as a complex number.
    pub fn embed(&self) -> (f64, f64) {
        let r = rat_to_f64(&self.folded().rational_part);
        let two_pi = 2.0 * std::f64::consts::PI;
        // (2πi)^k = (2π)^k i^k
        let k = self.power_of_2pi_i;
        let mag = r * two_pi.powi(k as i32);
        match k.rem_euclid(4) {
            0 => (mag, 0.0),
            1 => (0.0, mag),
            2 => (-mag, 0.0),
            _ => (0.0, -mag),
        }
    }
}

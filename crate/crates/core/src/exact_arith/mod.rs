//! Exact scalar arithmetic underlying every other module.
//!
//! * [`PadicNumber`] — capped-precision p-adic numbers with explicit
//!   precision tracking.
//! * [`CycNumber`] — elements of Q(ζ_N) in the power basis modulo the N-th
//!   cyclotomic polynomial.
//! * [`QuadRat`] — elements a + b√d of a quadratic extension of Q; used as
//!   the coefficient field where half-integral powers of p or quadratic
//!   Satake parameters occur.
//! * [`LaurentRational`] — exact rational functions in two Laurent variables
//!   X₁, X₂ over a generic exact field.
//! * [`SymbolicPeriod`] — exact symbols r·(2πi)^k·Γ(m).

pub mod padic;
pub mod cyclotomic;
pub mod quad;
pub mod laurent;
pub mod period;

pub use padic::{mod_inverse, teichmuller, PadicNumber};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycNumber};
pub use quad::{double_valuation_sqrt_p, QuadRat};
pub use laurent::{laurent_equal, LaurentPoly, LaurentRational};
pub use period::SymbolicPeriod;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalars used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for integers as rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// The p-adic valuation of a nonzero rational, as an integer.
pub fn rational_valuation(p: u64, x: &Rat) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v: i64 = 0;
    let mut num = x.numer().abs();
    let mut den = x.denom().abs();
    while (&num % &p).is_zero() {
        num /= &p;
        v += 1;
    }
    while (&den % &p).is_zero() {
        den /= &p;
        v -= 1;
    }
    Some(v)
}

/// Abstraction over the exact coefficient fields appearing in this crate
/// (Q, quadratic extensions, cyclotomic fields).
///
/// `num_traits` supplies `Zero`/`One`; this trait only adds inversion and a
/// float embedding for numeric cross-checks.
pub trait ExactField:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
{
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Embedding into C as (re, im), for numeric sanity checks only.
    fn embed_complex(&self) -> (f64, f64);
    /// The rational `r` as a field element.
    fn from_rat(r: &Rat) -> Self;
}

impl ExactField for Rat {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat::one() / self.clone())
        }
    }
    fn embed_complex(&self) -> (f64, f64) {
        (rat_to_f64(self), 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// Lossy conversion of a big rational to f64, safe for the magnitudes used in
/// numeric cross-checks.
pub fn rat_to_f64(x: &Rat) -> f64 {
    // Scale by 2^k so numerator/denominator both fit in f64 range.
    let num = x.numer();
    let den = x.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as u64;
    let num = num >> shift;
    let den = den >> shift;
    let nf = bigint_to_f64(&num);
    let df = bigint_to_f64(&den);
    nf / df
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::INFINITY)
}

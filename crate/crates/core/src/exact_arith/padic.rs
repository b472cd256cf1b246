//! Capped-precision p-adic numbers.
//!
//! A nonzero value is stored as p^valuation · unit_part where the unit part
//! is known modulo p^precision. Arithmetic tracks precision explicitly: a
//! result is only ever claimed to the precision actually justified by its
//! operands, with the usual loss of significance in subtraction.

use super::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// A p-adic number to finite precision.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicNumber {
    prime: u64,
    /// Valuation; meaningless when `is_zero`.
    valuation: i64,
    /// Unit part, in [1, p^precision), coprime to p; 0 only for the zero value.
    unit_part: BigInt,
    /// Number of significant p-adic digits of the unit part.
    precision: u32,
    is_zero: bool,
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero {
            write!(f, "O({}^∞)", self.prime)
        } else {
            write!(
                f,
                "{}^{} * {} + O({}^{})",
                self.prime,
                self.valuation,
                self.unit_part,
                self.prime,
                self.valuation + self.precision as i64
            )
        }
    }
}

impl PadicNumber {
    fn modulus(prime: u64, precision: u32) -> BigInt {
        BigInt::from(prime).pow(precision)
    }

    /// Exact zero sentinel.
    pub fn zero(prime: u64, precision: u32) -> Self {
        PadicNumber {
            prime,
            valuation: 0,
            unit_part: BigInt::zero(),
            precision,
            is_zero: true,
        }
    }

    /// Construct p^valuation · unit with the given precision. The unit is
    /// reduced mod p^precision and must be coprime to p (unless zero mod the
    /// modulus, which is rejected: use [`PadicNumber::zero`]).
    pub fn new(prime: u64, valuation: i64, unit: BigInt, precision: u32) -> Result<Self, String> {
        assert!(precision >= 1, "precision must be positive");
        let m = Self::modulus(prime, precision);
        let u = unit.mod_floor(&m);
        if u.is_zero() {
            return Err("unit part is zero; use PadicNumber::zero for the exact zero".into());
        }
        if (&u % BigInt::from(prime)).is_zero() {
            return Err(format!("unit part {u} is divisible by {prime}"));
        }
        Ok(PadicNumber {
            prime,
            valuation,
            unit_part: u,
            precision,
            is_zero: false,
        })
    }

    /// Embed an integer with the given target precision.
    pub fn from_integer(prime: u64, n: &BigInt, precision: u32) -> Self {
        if n.is_zero() {
            return Self::zero(prime, precision);
        }
        let p = BigInt::from(prime);
        let mut v = 0i64;
        let mut u = n.clone();
        while (&u % &p).is_zero() {
            u /= &p;
            v += 1;
        }
        Self::new(prime, v, u, precision).expect("unit by construction")
    }

    /// Embed a rational whose denominator may contain p (negative valuation).
    pub fn from_rational(prime: u64, x: &Rat, precision: u32) -> Self {
        if x.is_zero() {
            return Self::zero(prime, precision);
        }
        let p = BigInt::from(prime);
        let mut v = 0i64;
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        while (&num % &p).is_zero() {
            num /= &p;
            v += 1;
        }
        while (&den % &p).is_zero() {
            den /= &p;
            v -= 1;
        }
        let m = Self::modulus(prime, precision);
        let den_inv = mod_inverse(&den.mod_floor(&m), &m).expect("denominator coprime to p");
        let u = (num * den_inv).mod_floor(&m);
        Self::new(prime, v, u, precision).expect("unit by construction")
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    /// Valuation; `None` for the exact zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero {
            None
        } else {
            Some(self.valuation)
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Unit part mod p^precision (0 for zero).
    pub fn unit_part(&self) -> &BigInt {
        &self.unit_part
    }

    /// True iff the value is a p-adic unit (valuation 0).
    pub fn is_unit(&self) -> bool {
        !self.is_zero && self.valuation == 0
    }

    fn check_same_prime(&self, other: &Self) {
        assert_eq!(self.prime, other.prime, "mixed primes in p-adic arithmetic");
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_prime(other);
        if self.is_zero || other.is_zero {
            return Self::zero(self.prime, self.precision.min(other.precision));
        }
        let precision = self.precision.min(other.precision);
        let m = Self::modulus(self.prime, precision);
        let u = (&self.unit_part * &other.unit_part).mod_floor(&m);
        Self::new(self.prime, self.valuation + other.valuation, u, precision)
            .expect("product of units is a unit")
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero {
            return None;
        }
        let m = Self::modulus(self.prime, self.precision);
        let u = mod_inverse(&self.unit_part, &m)?;
        Some(Self::new(self.prime, -self.valuation, u, self.precision).expect("unit"))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inverse()?))
    }

    pub fn neg(&self) -> Self {
        if self.is_zero {
            return self.clone();
        }
        let m = Self::modulus(self.prime, self.precision);
        let u = (&m - &self.unit_part).mod_floor(&m);
        Self::new(self.prime, self.valuation, u, self.precision).expect("unit")
    }

    /// Addition with explicit precision bookkeeping: the sum is known modulo
    /// p^min(v₁+N₁, v₂+N₂); cancellation of leading digits reduces the
    /// precision of the result accordingly.
    pub fn add(&self, other: &Self) -> Self {
        self.check_same_prime(other);
        if self.is_zero {
            return other.clone();
        }
        if other.is_zero {
            return self.clone();
        }
        let known_mod = (self.valuation + self.precision as i64)
            .min(other.valuation + other.precision as i64);
        let v_min = self.valuation.min(other.valuation);
        let digits = (known_mod - v_min).max(0) as u32;
        if digits == 0 {
            // Nothing is known about the sum at any digit: indistinguishable
            // from zero at stated precision. Report exact-zero with 1 digit.
            return Self::zero(self.prime, 1);
        }
        let p = BigInt::from(self.prime);
        let m = p.pow(digits);
        let a = (&self.unit_part * p.pow((self.valuation - v_min) as u32)).mod_floor(&m);
        let b = (&other.unit_part * p.pow((other.valuation - v_min) as u32)).mod_floor(&m);
        let s = (a + b).mod_floor(&m);
        if s.is_zero() {
            // Complete cancellation at stated precision.
            return Self::zero(self.prime, 1);
        }
        let mut v_extra = 0u32;
        let mut u = s;
        while (&u % &p).is_zero() {
            u /= &p;
            v_extra += 1;
        }
        let precision = digits - v_extra;
        Self::new(self.prime, v_min + v_extra as i64, u, precision).expect("unit")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        if e == 0 {
            return Some(Self::new(self.prime, 0, BigInt::one(), self.precision).unwrap());
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..e.abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Agreement modulo p^k (as values, taking valuations into account).
    pub fn congruent_mod(&self, other: &Self, k: u32) -> bool {
        let d = self.sub(other);
        match d.valuation() {
            None => true,
            Some(v) => v >= k as i64,
        }
    }
}

/// The Teichmüller representative ω(a): the unique (p−1)-st root of unity in
/// Z_p congruent to a mod p, computed by iterating x ↦ x^p to stabilisation
/// mod p^precision.
pub fn teichmuller(a: i64, p: u64, precision: u32) -> Result<PadicNumber, String> {
    let pb = BigInt::from(p);
    let m = pb.pow(precision);
    let a = BigInt::from(a).mod_floor(&m);
    if (&a % &pb).is_zero() {
        return Err(format!("{a} is divisible by {p}"));
    }
    let mut x = a;
    loop {
        let next = x.modpow(&pb, &m);
        if next == x {
            break;
        }
        x = next;
    }
    PadicNumber::new(p, 0, x, precision)
}

/// Modular inverse of a mod m (m > 1), if gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn teichmuller_identity_and_minus_one() {
        let one = teichmuller(1, 5, 4).unwrap();
        assert_eq!(one.unit_part(), &BigInt::one());
        // ω(p−1) = −1 mod p^N
        let w = teichmuller(6, 7, 3).unwrap();
        assert_eq!(w.unit_part(), &BigInt::from(343 - 1));
    }

    #[test]
    fn teichmuller_is_fixed_point_of_frobenius() {
        // (a=2, p=5, N=3): the fixed point of x ↦ x^5 mod 125 starting at 2.
        let mut x = BigInt::from(2);
        let m = BigInt::from(125);
        loop {
            let next = x.modpow(&BigInt::from(5), &m);
            if next == x {
                break;
            }
            x = next;
        }
        let w = teichmuller(2, 5, 3).unwrap();
        assert_eq!(w.unit_part(), &x);
        assert_eq!(x, BigInt::from(57));
    }

    #[test]
    fn teichmuller_roots_of_unity() {
        for p in [3u64, 5, 7, 11] {
            for n in [2u32, 4] {
                for a in 1..p as i64 {
                    let w = teichmuller(a, p, n).unwrap();
                    let one = w.pow((p - 1) as i64).unwrap();
                    assert!(one.is_unit());
                    assert_eq!(one.unit_part(), &BigInt::one(), "p={p} a={a}");
                    // congruent to a mod p
                    assert_eq!(
                        w.unit_part().mod_floor(&BigInt::from(p)),
                        BigInt::from(a).mod_floor(&BigInt::from(p))
                    );
                }
            }
        }
    }

    #[test]
    fn teichmuller_rejects_multiples_of_p() {
        assert!(teichmuller(10, 5, 3).is_err());
    }

    #[test]
    fn arithmetic_round_trips() {
        let x = PadicNumber::from_rational(5, &rat(7, 3), 6);
        let y = PadicNumber::from_rational(5, &rat(-2, 15), 6);
        let z = x.mul(&y);
        let expect = PadicNumber::from_rational(5, &(rat(7, 3) * rat(-2, 15)), 6);
        assert!(z.congruent_mod(&expect, 4));
        let q = z.div(&y).unwrap();
        assert!(q.congruent_mod(&x, 5));
    }

    #[test]
    fn subtraction_loses_precision() {
        // 1 and 1 + p^3 agree to 3 digits; their difference has valuation 3.
        let a = PadicNumber::from_integer(5, &BigInt::from(1), 6);
        let b = PadicNumber::from_integer(5, &BigInt::from(1 + 125), 6);
        let d = b.sub(&a);
        assert_eq!(d.valuation(), Some(3));
        // precision shrinks: result known mod 5^6, so 3 unit digits remain
        assert_eq!(d.precision(), 3);
    }

    #[test]
    fn valuations_add() {
        let x = PadicNumber::from_rational(3, &rat(9, 2), 5);
        let y = PadicNumber::from_rational(3, &rat(2, 27), 5);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(y.valuation(), Some(-3));
        assert_eq!(x.mul(&y).valuation(), Some(-1));
    }
}

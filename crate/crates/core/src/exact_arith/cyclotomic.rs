//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)−1} modulo the N-th
//! cyclotomic polynomial, which makes equality canonical. Elements of
//! different conductors are promoted to the lcm conductor on mixed
//! operations via ζ_N = ζ_M^{M/N}.

use super::{rat_to_f64, ExactField, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Dense polynomial over Q, lowest degree first. Internal helper.
fn poly_trim(v: &mut Vec<Rat>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder: returns (quotient, remainder).
fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone() / lead.clone();
        q[dr - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            r[dr - db + i] -= t;
        }
        poly_trim(&mut r);
        if r.len() > dr {
            unreachable!("degree did not decrease");
        }
        // guard: if top coefficient didn't cancel exactly we'd loop
        if r.len() == dr + 1 {
            unreachable!("leading term failed to cancel");
        }
    }
    poly_trim(&mut q);
    (q, r)
}

/// Extended gcd of polynomials over Q: returns (g, s, t) with s·a + t·b = g.
fn poly_xgcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![Rat::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Rat::one()]);
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The N-th cyclotomic polynomial with integer coefficients, computed by
/// repeatedly dividing X^N − 1 by Φ_d for proper divisors d, with caching.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Rat> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Rat>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let result = if n == 1 {
        vec![-Rat::one(), Rat::one()]
    } else {
        // X^n − 1
        let mut num = vec![Rat::zero(); (n + 1) as usize];
        num[0] = -Rat::one();
        num[n as usize] = Rat::one();
        let mut acc = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                let (q, r) = poly_divrem(&acc, &phi_d);
                assert!(r.is_empty(), "cyclotomic division must be exact");
                acc = q;
            }
        }
        acc
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// An element of Q(ζ_N) in the power basis modulo Φ_N.
#[derive(Clone, Debug)]
pub struct CycNumber {
    conductor: u64,
    /// Coefficients of 1, ζ, …, ζ^{φ(N)−1}.
    coeffs: Vec<Rat>,
}

impl CycNumber {
    pub fn zero_in(conductor: u64) -> Self {
        CycNumber {
            conductor,
            coeffs: vec![Rat::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn from_rational_in(conductor: u64, r: Rat) -> Self {
        let mut z = Self::zero_in(conductor);
        z.coeffs[0] = r;
        z
    }

    pub fn from_rational(r: Rat) -> Self {
        Self::from_rational_in(1, r)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rat::from(BigInt::from(n)))
    }

    /// ζ_N^k, reduced mod Φ_N.
    pub fn root_of_unity(conductor: u64, k: i64) -> Self {
        assert!(conductor >= 1);
        let k = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        Self::from_poly(conductor, poly)
    }

    fn from_poly(conductor: u64, poly: Vec<Rat>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let (_, r) = poly_divrem(&poly, &phi);
        let mut coeffs = r;
        coeffs.resize(euler_phi(conductor) as usize, Rat::zero());
        CycNumber { conductor, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Reinterpret in Q(ζ_M) for N | M via ζ_N = ζ_M^{M/N}.
    pub fn promote(&self, m: u64) -> Self {
        assert!(m % self.conductor == 0, "promotion target must be a multiple");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![Rat::zero(); self.coeffs.len() * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(m, poly)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.promote(m), other.promote(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub_(&self, other: &Self) -> Self {
        self.add(&other.neg_())
    }

    pub fn neg_(&self) -> Self {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Self::from_poly(a.conductor, prod)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn is_zero_val(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact rational content if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero_val() {
            return None;
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (g, s, _) = poly_xgcd(&a, &phi);
        // g is a nonzero constant since Φ_N is irreducible over Q.
        assert_eq!(g.len(), 1, "cyclotomic polynomial must be coprime to element");
        let ginv = Rat::one() / g[0].clone();
        let inv: Vec<Rat> = s.iter().map(|c| c * &ginv).collect();
        Some(Self::from_poly(self.conductor, inv))
    }

    /// Complex embedding ζ_N ↦ exp(2πi/N), as (re, im).
    pub fn embed(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = rat_to_f64(c);
            let t = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Complex conjugation ζ ↦ ζ^{−1}.
    pub fn conjugate(&self) -> Self {
        let n = self.conductor;
        let mut out = Self::zero_in(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = Self::root_of_unity(n, -(k as i64)).scale(c);
                out = out.add(&term);
            }
        }
        out
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Zero for CycNumber {
    fn zero() -> Self {
        Self::zero_in(1)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_val()
    }
}

impl One for CycNumber {
    fn one() -> Self {
        Self::from_rational(Rat::one())
    }
}

impl std::ops::Add for CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: Self) -> Self {
        CycNumber::add(&self, &rhs)
    }
}
impl std::ops::Sub for CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: Self) -> Self {
        self.sub_(&rhs)
    }
}
impl std::ops::Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> Self {
        self.neg_()
    }
}
impl std::ops::Mul for CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: Self) -> Self {
        CycNumber::mul(&self, &rhs)
    }
}

impl ExactField for CycNumber {
    fn inverse(&self) -> Option<Self> {
        CycNumber::inverse(self)
    }
    fn embed_complex(&self) -> (f64, f64) {
        self.embed()
    }
    fn from_rat(r: &Rat) -> Self {
        CycNumber::from_rational(r.clone())
    }
}

//! Quadratic extensions of Q: values a + b√d with a fixed integer d.
//!
//! Used as the exact coefficient field for zeta-integral identities (d = p,
//! absorbing the half-integral powers of p coming from |·|^{1/2}-shifts) and
//! for symmetric-square Satake parameters (d = a_p² − 4ε(p)p^{k−1} < 0).
//!
//! A value with b = 0 is plain rational and is compatible with any d; mixed
//! nonzero radicands are a programming error and panic.

use super::{rat_to_f64, ExactField, Rat};
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct QuadRat {
    pub a: Rat,
    pub b: Rat,
    /// Radicand; only meaningful when b ≠ 0. Not assumed squarefree.
    pub d: i64,
}

impl QuadRat {
    pub fn from_rat(a: Rat) -> Self {
        QuadRat { a, b: Rat::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    /// a + b√d.
    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        let mut v = QuadRat { a, b, d };
        v.normalize();
        v
    }

    /// √d itself.
    pub fn sqrt_d(d: i64) -> Self {
        Self::new(Rat::zero(), Rat::one(), d)
    }

    fn normalize(&mut self) {
        if self.b.is_zero() {
            self.d = 0;
        } else if self.d == 0 {
            panic!("√0 with nonzero coefficient");
        } else {
            // fold out perfect-square content so that e.g. √4 = 2.
            let mut d = self.d;
            let mut sq: i64 = 1;
            let mut f = 2;
            while f * f <= d.abs() {
                while d % (f * f) == 0 {
                    d /= f * f;
                    sq *= f;
                }
                f += 1;
            }
            if d == 1 {
                self.a += &self.b * Rat::from_integer(sq.into());
                self.b = Rat::zero();
                self.d = 0;
            } else {
                self.d = d;
                self.b *= Rat::from_integer(sq.into());
            }
        }
    }

    fn radicand_for(&self, other: &Self) -> i64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => 0,
            (false, true) => self.d,
            (true, false) => other.d,
            (false, false) => {
                assert_eq!(self.d, other.d, "mixed radicands {} vs {}", self.d, other.d);
                self.d
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadRat { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm a² − d·b².
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.radicand_for(other);
        let dr = Rat::from_integer(d.into());
        QuadRat::new(
            &self.a * &other.a + &dr * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
            d,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.radicand_for(other);
        QuadRat::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.radicand_for(other);
        QuadRat::new(&self.a - &other.a, &self.b - &other.b, d)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuadRat::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            Some(self.inverse()?.pow((-e) as u32))
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            if self.a.is_zero() && self.b.is_zero() {
                return None;
            }
            // norm zero with nonzero element can only happen if d is a
            // square, which normalize() removed.
            unreachable!("nonzero element with zero norm");
        }
        let conj = self.conjugate();
        Some(QuadRat::new(conj.a / &n, conj.b / &n, self.d))
    }

    /// Real-complex embedding with √d ↦ √d (d>0) or i√|d| (d<0).
    pub fn embed(&self) -> (f64, f64) {
        let a = rat_to_f64(&self.a);
        let b = rat_to_f64(&self.b);
        if self.d >= 0 {
            (a + b * (self.d as f64).sqrt(), 0.0)
        } else {
            (a, b * ((-self.d) as f64).sqrt())
        }
    }
}

impl PartialEq for QuadRat {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.d == other.d)
    }
}

impl Zero for QuadRat {
    fn zero() -> Self {
        QuadRat::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadRat {
    fn one() -> Self {
        QuadRat::from_int(1)
    }
}

impl std::ops::Add for QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: Self) -> Self {
        QuadRat::add(&self, &rhs)
    }
}
impl std::ops::Sub for QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: Self) -> Self {
        QuadRat::add(&self, &-rhs)
    }
}
impl std::ops::Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> Self {
        QuadRat { a: -self.a, b: -self.b, d: self.d }
    }
}
impl std::ops::Mul for QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: Self) -> Self {
        QuadRat::mul(&self, &rhs)
    }
}

impl ExactField for QuadRat {
    fn inverse(&self) -> Option<Self> {
        QuadRat::inverse(self)
    }
    fn embed_complex(&self) -> (f64, f64) {
        self.embed()
    }
    fn from_rat(r: &Rat) -> Self {
        QuadRat::from_rat(r.clone())
    }
}

/// p-adic valuation of a + b√p in Q(√p) with the convention v(√p) = 1/2,
/// returned as twice the valuation (an integer) to stay in exact arithmetic.
/// Only valid when the radicand is p itself (or the value is rational).
pub fn double_valuation_sqrt_p(p: u64, x: &QuadRat) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    assert!(x.is_rational() || x.d == p as i64 || x.d == 1);
    let va = super::rational_valuation(p, &x.a).map(|v| 2 * v);
    let vb = super::rational_valuation(p, &x.b).map(|v| 2 * v + 1);
    match (va, vb) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (None, None) => None,
    }
}


// JSON shape: {a: "num/den", b: "num/den", d: radicand}.
impl serde::Serialize for QuadRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let fmt = |r: &Rat| {
            if num_traits::One::is_one(r.denom()) {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        let mut st = s.serialize_struct("QuadRat", 3)?;
        st.serialize_field("a", &fmt(&self.a))?;
        st.serialize_field("b", &fmt(&self.b))?;
        st.serialize_field("d", &self.d)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for QuadRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            a: String,
            b: String,
            d: i64,
        }
        let raw = Raw::deserialize(d)?;
        let parse = |s: &str| {
            s.parse::<Rat>()
                .map_err(|e| serde::de::Error::custom(format!("bad rational '{s}': {e}")))
        };
        Ok(QuadRat::new(parse(&raw.a)?, parse(&raw.b)?, raw.d))
    }
}

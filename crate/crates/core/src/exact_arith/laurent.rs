//! Exact rational functions in two Laurent variables X₁, X₂.
//!
//! Polynomials are sparse maps (e₁, e₂) ↦ coefficient over a generic exact
//! field; rational functions are unreduced numerator/denominator pairs with
//! equality by cross-multiplication.

use super::{ExactField, Rat};
use std::collections::BTreeMap;

/// Sparse Laurent polynomial in X₁, X₂ over K.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<K> {
    /// (exponent of X₁, exponent of X₂) ↦ coefficient; zero coefficients are
    /// never stored.
    pub terms: BTreeMap<(i64, i64), K>,
}

impl<K: ExactField> LaurentPoly<K> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        LaurentPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    /// c · X₁^{e₁} X₂^{e₂}.
    pub fn monomial(c: K, e1: i64, e2: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        LaurentPoly { terms }
    }

    pub fn var1() -> Self {
        Self::monomial(K::one(), 1, 0)
    }

    pub fn var2() -> Self {
        Self::monomial(K::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(K::zero);
            *entry = entry.clone() + c.clone();
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(i64, i64), K> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let key = (e.0 + f.0, e.1 + f.1);
                let entry = terms.entry(key).or_insert_with(K::zero);
                *entry = entry.clone() + c.clone() * d.clone();
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, t)| (*e, t.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute exact values for (X₁, X₂).
    pub fn specialize(&self, x1: &K, x2: &K) -> Option<K> {
        let mut acc = K::zero();
        for (&(e1, e2), c) in &self.terms {
            let p1 = pow_i(x1, e1)?;
            let p2 = pow_i(x2, e2)?;
            acc = acc + c.clone() * p1 * p2;
        }
        Some(acc)
    }

    /// Keep only terms whose degree in the chosen variable (1 or 2) is ≤ bound.
    pub fn truncate_deg(&self, var: u8, bound: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(e1, e2), _)| (if var == 1 { e1 } else { e2 }) <= bound)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn max_deg(&self, var: u8) -> Option<i64> {
        self.terms
            .keys()
            .map(|&(e1, e2)| if var == 1 { e1 } else { e2 })
            .max()
    }

    pub fn min_deg(&self, var: u8) -> Option<i64> {
        self.terms
            .keys()
            .map(|&(e1, e2)| if var == 1 { e1 } else { e2 })
            .min()
    }

    /// Substitute X₁ ↦ m₁, X₂ ↦ m₂ where the mᵢ are monomials of another
    /// Laurent ring (used to plug one-variable L-factors into two-variable
    /// identities).
    pub fn substitute_monomials(&self, m1: &LaurentPoly<K>, m2: &LaurentPoly<K>) -> Option<Self> {
        let mono = |m: &LaurentPoly<K>| -> Option<(K, i64, i64)> {
            if m.terms.len() != 1 {
                return None;
            }
            let (&(e1, e2), c) = m.terms.iter().next().unwrap();
            Some((c.clone(), e1, e2))
        };
        let (c1, a1, b1) = mono(m1)?;
        let (c2, a2, b2) = mono(m2)?;
        let mut out = Self::zero();
        for (&(e1, e2), c) in &self.terms {
            let coeff = c.clone() * pow_i(&c1, e1)? * pow_i(&c2, e2)?;
            out = out.add(&Self::monomial(coeff, e1 * a1 + e2 * a2, e1 * b1 + e2 * b2));
        }
        Some(out)
    }
}

fn pow_i<K: ExactField>(x: &K, e: i64) -> Option<K> {
    let base = if e < 0 { x.inverse()? } else { x.clone() };
    let mut acc = K::one();
    for _ in 0..e.abs() {
        acc = acc * base.clone();
    }
    Some(acc)
}

/// A rational function num/den in X₁, X₂ (den ≠ 0), not reduced to lowest
/// terms; equality is exact via cross-multiplication.
#[derive(Clone, Debug)]
pub struct LaurentRational<K> {
    pub num: LaurentPoly<K>,
    pub den: LaurentPoly<K>,
}

impl<K: ExactField> LaurentRational<K> {
    pub fn from_poly(p: LaurentPoly<K>) -> Self {
        LaurentRational { num: p, den: LaurentPoly::one() }
    }

    pub fn new(num: LaurentPoly<K>, den: LaurentPoly<K>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        LaurentRational { num, den }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        LaurentRational::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        LaurentRational::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &K) -> Self {
        LaurentRational { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(LaurentRational::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inverse()?))
    }

    /// Exact evaluation at (x₁, x₂); `None` if the denominator vanishes there
    /// or a negative power of zero occurs.
    pub fn specialize(&self, x1: &K, x2: &K) -> Option<K> {
        let d = self.den.specialize(x1, x2)?;
        let dinv = d.inverse()?;
        let n = self.num.specialize(x1, x2)?;
        Some(n * dinv)
    }
}

impl<K: ExactField> PartialEq for LaurentRational<K> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

/// Exact equality of rational functions via cross-multiplication.
pub fn laurent_equal<K: ExactField>(f: &LaurentRational<K>, g: &LaurentRational<K>) -> bool {
    f == g
}

/// One-variable helpers in X₁ over Q, used by tests and L-factor builders.
pub fn geometric_sum_closed(c: &Rat) -> LaurentRational<Rat> {
    // Σ_{k≥0} (c X₁)^k = 1/(1 − c X₁)
    let den = LaurentPoly::one().sub(&LaurentPoly::monomial(c.clone(), 1, 0));
    LaurentRational::new(LaurentPoly::one(), den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use num_traits::One;

    type LR = LaurentRational<Rat>;

    #[test]
    fn x_over_x_is_one() {
        let x = LaurentPoly::<Rat>::var1();
        let f = LR::new(x.clone(), x);
        assert!(laurent_equal(&f, &LR::one()));
    }

    #[test]
    fn truncation_differs_from_closed_form() {
        // Σ_{k≤3} X₁^k ≠ 1/(1−X₁)
        let mut partial = LaurentPoly::<Rat>::zero();
        for k in 0..=3 {
            partial = partial.add(&LaurentPoly::monomial(Rat::one(), k, 0));
        }
        let f = LR::from_poly(partial);
        let g = geometric_sum_closed(&Rat::one());
        assert!(!laurent_equal(&f, &g));
    }

    #[test]
    fn symbolic_geometric_summation() {
        // Sum (cX₁)^k symbolically via the telescoping identity
        // (1 − cX₁)·Σ_{k<N}(cX₁)^k = 1 − (cX₁)^N, then compare closed forms.
        let c = rat(3, 7);
        let n = 9u32;
        let cx = LaurentPoly::monomial(c.clone(), 1, 0);
        let mut partial = LaurentPoly::<Rat>::zero();
        let mut pow = LaurentPoly::<Rat>::one();
        for _ in 0..n {
            partial = partial.add(&pow);
            pow = pow.mul(&cx);
        }
        // closed form of the finite sum: (1 − (cX₁)^N)/(1 − cX₁)
        let num = LaurentPoly::one().sub(&pow);
        let den = LaurentPoly::one().sub(&cx);
        let f = LR::new(num, den);
        assert!(laurent_equal(&f, &LR::from_poly(partial)));
        // and the infinite geometric sum is 1/(1−cX₁), which differs
        assert!(!laurent_equal(&f, &geometric_sum_closed(&c)));
    }

    #[test]
    fn field_axioms_sampled() {
        let f = LR::new(
            LaurentPoly::monomial(rat(2, 3), 1, -1).add(&LaurentPoly::one()),
            LaurentPoly::monomial(rat(1, 1), 0, 2).add(&LaurentPoly::constant(rat(5, 1))),
        );
        let g = LR::new(
            LaurentPoly::monomial(rat(-1, 4), 2, 1),
            LaurentPoly::one().sub(&LaurentPoly::var1()),
        );
        // f + g − g = f
        assert!(laurent_equal(&f.add(&g).sub(&g), &f));
        // f·g/g = f
        assert!(laurent_equal(&f.mul(&g).div(&g).unwrap(), &f));
    }

    #[test]
    fn specialization_matches_arithmetic() {
        let f = LR::new(
            LaurentPoly::monomial(rat(1, 1), 1, 0).add(&LaurentPoly::monomial(rat(1, 1), 0, 1)),
            LaurentPoly::one().sub(&LaurentPoly::monomial(rat(1, 1), 1, 1)),
        );
        let x1 = rat(1, 2);
        let x2 = rat(1, 3);
        // (1/2 + 1/3)/(1 − 1/6) = (5/6)/(5/6) = 1
        assert_eq!(f.specialize(&x1, &x2), Some(rat(1, 1)));
        // pole: X₁X₂ = 1
        assert_eq!(f.specialize(&rat(2, 1), &rat(1, 2)), None);
    }
}

//! Group rings over the cyclic units Δ_n = (Z/p^n)^×, norm-compatible
//! towers, measures obtained by eigenvalue rescaling, moment twists, and
//! removal of the auxiliary c-smoothing factor.
//!
//! Coefficients are exact rationals; p-integrality (all coefficient
//! valuations ≥ 0) is a checked predicate rather than a type invariant, so
//! rescaled towers with denominators remain representable.

use crate::characters::DirichletCharacter;
use crate::exact_arith::{rational_valuation, teichmuller, CycNumber, PadicNumber, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// An element of Q[Δ_n], Δ_n = (Z/p^n)^×; keys are the unit representatives
/// in [1, p^n].
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElem {
    pub prime: u64,
    pub level: u32,
    pub coeffs: BTreeMap<u64, Rat>,
}

impl GroupRingElem {
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.level)
    }

    /// Zero element at the given level (all unit keys, coefficient 0).
    pub fn zero(prime: u64, level: u32) -> Self {
        assert!(level >= 1);
        let m = prime.pow(level);
        let coeffs = (1..m)
            .filter(|x| x % prime != 0)
            .map(|x| (x, Rat::zero()))
            .collect();
        GroupRingElem { prime, level, coeffs }
    }

    /// c·[g].
    pub fn single(prime: u64, level: u32, g: u64, c: Rat) -> Self {
        let mut e = Self::zero(prime, level);
        let m = e.modulus();
        let g = g % m;
        assert!(g % prime != 0, "group element must be a unit mod p");
        *e.coeffs.get_mut(&g).unwrap() = c;
        e
    }

    pub fn identity(prime: u64, level: u32) -> Self {
        Self::single(prime, level, 1, Rat::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.prime, self.level), (other.prime, other.level));
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            *out.coeffs.get_mut(k).unwrap() += v;
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= r;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Group-ring product: [x]·[y] = [xy mod p^n].
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.prime, self.level), (other.prime, other.level));
        let m = self.modulus();
        let mut out = Self::zero(self.prime, self.level);
        for (x, cx) in &self.coeffs {
            if cx.is_zero() {
                continue;
            }
            for (y, cy) in &other.coeffs {
                if cy.is_zero() {
                    continue;
                }
                let key = (*x as u128 * *y as u128 % m as u128) as u64;
                *out.coeffs.get_mut(&key).unwrap() += cx * cy;
            }
        }
        out
    }

    /// Sum of all coefficients (evaluation at the trivial character).
    pub fn coefficient_sum(&self) -> Rat {
        self.coeffs.values().sum()
    }

    /// All coefficients p-integral.
    pub fn is_integral(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.is_zero() || rational_valuation(self.prime, c).unwrap() >= 0)
    }

    /// Projection Q[Δ_{n+1}] → Q[Δ_n]: sum coefficients over each fiber.
    pub fn norm_map(&self) -> Self {
        assert!(self.level >= 2, "norm_map needs level ≥ 2");
        let mut out = Self::zero(self.prime, self.level - 1);
        let m = out.modulus();
        for (x, c) in &self.coeffs {
            *out.coeffs.get_mut(&(x % m)).unwrap() += c;
        }
        out
    }

    /// Σ_x coeffs[x]·η(x) as an exact cyclotomic number. η must have p-power
    /// modulus with conductor dividing p^level.
    pub fn evaluate(&self, eta: &DirichletCharacter) -> Result<CycNumber, String> {
        let m = self.modulus();
        if !divides_power(eta.conductor(), self.prime, self.level) {
            return Err(format!(
                "character conductor {} does not divide p^n = {m}",
                eta.conductor()
            ));
        }
        let mut acc = CycNumber::from_integer(0);
        for (x, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&eta.evaluate(*x as i64).scale(c));
        }
        Ok(acc)
    }

    /// Σ_x coeffs[x]·ω(x)^k in Z_p, with ω the Teichmüller character
    /// inflated from (Z/p)^×.
    pub fn evaluate_tame_padic(&self, k: u64, precision: u32) -> PadicNumber {
        let p = self.prime;
        let mut acc = PadicNumber::zero(p, precision);
        for (x, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let w = teichmuller((*x % p) as i64, p, precision)
                .expect("unit representative")
                .pow(k as i64)
                .expect("unit power");
            acc = acc.add(&w.mul(&PadicNumber::from_rational(p, c, precision)));
        }
        acc
    }

    /// [a] ↦ a^j·[a] with the integer representative a ∈ [1, p^n].
    pub fn moment_twist(&self, j: u32) -> Self {
        let mut out = self.clone();
        for (x, c) in out.coeffs.iter_mut() {
            let mut aj = Rat::one();
            for _ in 0..j {
                aj *= Rat::from_integer((*x).into());
            }
            *c *= aj;
        }
        out
    }

    /// True iff the element is a unit in Z_p[Δ_n]: it is p-integral and every
    /// character evaluation is a p-adic unit. Wild characters (of order
    /// divisible by p) take values ≡ 1 modulo the maximal ideal, so their
    /// evaluations are units exactly when the corresponding tame evaluations
    /// are; it therefore suffices to test the p−1 tame characters ω^k.
    pub fn is_invertible(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        let prec = 8;
        (0..self.prime - 1).all(|k| {
            let v = self.evaluate_tame_padic(k, prec);
            !v.is_zero() && v.valuation() == Some(0)
        })
    }
}

fn divides_power(f: u64, p: u64, n: u32) -> bool {
    let mut q = 1u64;
    for _ in 0..=n {
        if f == q {
            return true;
        }
        q *= p;
    }
    false
}

/// c² − c^{−j}χ(c)^{−1}[c^{−1} mod p^n]. χ(c) must be rational (trivial or
/// quadratic character values) so the coefficient stays in Q.
pub fn smoothing_factor(
    p: u64,
    n: u32,
    c: u64,
    j: u32,
    chi: &DirichletCharacter,
) -> Result<GroupRingElem, String> {
    if c % p == 0 {
        return Err(format!("smoothing constant c = {c} is not a unit mod {p}"));
    }
    let m = p.pow(n);
    let chi_c = chi
        .evaluate(c as i64)
        .as_rational()
        .ok_or_else(|| "χ(c) is irrational; smoothing supports only trivial/quadratic χ".to_string())?;
    if chi_c.is_zero() {
        return Err(format!("χ({c}) = 0: c is not a unit modulo the character modulus"));
    }
    let c_inv = crate::exact_arith::mod_inverse(&(c % m).into(), &m.into())
        .expect("c invertible mod p^n");
    let c_inv: u64 = c_inv.to_string().parse().unwrap();
    let c_rat = Rat::from_integer(c.into());
    let mut cj = Rat::one();
    for _ in 0..j {
        cj *= &c_rat;
    }
    let coeff = -(cj * chi_c).recip();
    let lead = GroupRingElem::single(p, n, 1, &c_rat * &c_rat);
    let tail = GroupRingElem::single(p, n, c_inv, coeff);
    Ok(lead.add(&tail))
}

/// A finite tower of group-ring elements satisfying the rescaled norm
/// relation norm(levels[n+1]) = eigenvalue·levels[n].
#[derive(Clone, Debug)]
pub struct MeasureTower {
    pub prime: u64,
    pub weight_a: i64,
    /// The scalar by which the norm maps are twisted (the U_p-eigenvalue
    /// normalized by p^{a+1}); exact rational.
    pub eigenvalue: Rat,
    /// levels[i] lives at level i+1.
    pub levels: Vec<GroupRingElem>,
}

/// A norm-compatible sequence: norm(levels[n+1]) = levels[n] exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    pub prime: u64,
    pub weight_a: i64,
    pub levels: Vec<GroupRingElem>,
    /// True iff every stored coefficient is p-integral.
    pub bounded: bool,
}

impl Measure {
    pub fn evaluate(&self, eta: &DirichletCharacter) -> Result<CycNumber, String> {
        // use the deepest level that accommodates the conductor
        let last = self.levels.last().ok_or("empty measure")?;
        last.evaluate(eta)
    }

    pub fn moment_twist(&self, j: u32) -> Measure {
        // Twisting is levelwise; the twisted sequence is generally only
        // norm-compatible modulo p^n, which is the stated precision of the
        // moment construction.
        Measure {
            prime: self.prime,
            weight_a: self.weight_a,
            levels: self.levels.iter().map(|l| l.moment_twist(j)).collect(),
            bounded: self.bounded,
        }
    }
}

/// Rescale a tower into a measure: levels[n] ↦ eigenvalue^{−n}·levels[n].
pub fn tower_to_measure(t: &MeasureTower) -> Result<Measure, String> {
    if t.eigenvalue.is_zero() {
        return Err("eigenvalue is zero; tower cannot be rescaled".to_string());
    }
    for i in 0..t.levels.len().saturating_sub(1) {
        let pushed = t.levels[i + 1].norm_map();
        let expected = t.levels[i].scale(&t.eigenvalue);
        if pushed != expected {
            return Err(format!(
                "tower is not norm-compatible at level {} -> {}",
                i + 2,
                i + 1
            ));
        }
    }
    let inv = t.eigenvalue.recip();
    let mut scale = inv.clone();
    let mut levels = Vec::with_capacity(t.levels.len());
    for l in &t.levels {
        levels.push(l.scale(&scale));
        scale *= &inv;
    }
    let eig_unit = rational_valuation(t.prime, &t.eigenvalue) == Some(0);
    let inputs_integral = t.levels.iter().all(|l| l.is_integral());
    Ok(Measure {
        prime: t.prime,
        weight_a: t.weight_a,
        bounded: eig_unit && inputs_integral,
        levels,
    })
}

/// Divide a smoothed measure levelwise by the smoothing factor
/// s = a·[1] − d·[g]. The inverse is closed-form: with m = ord(g) in Δ_n,
/// s^{-1} = (a^m − d^m)^{−1} Σ_{k<m} a^{m−1−k} d^k [g^k].
pub fn remove_smoothing(
    mu_c: &Measure,
    c: u64,
    j: u32,
    chi: &DirichletCharacter,
) -> Result<Measure, String> {
    let mut levels = Vec::with_capacity(mu_c.levels.len());
    for l in &mu_c.levels {
        let s = smoothing_factor(mu_c.prime, l.level, c, j, chi)?;
        if !s.is_invertible() {
            let bad = (0..mu_c.prime - 1)
                .find(|&k| {
                    let v = s.evaluate_tame_padic(k, 8);
                    v.is_zero() || v.valuation() != Some(0)
                })
                .unwrap();
            return Err(format!(
                "smoothing factor not invertible at level {}: tame character ω^{bad} evaluates to a non-unit",
                l.level
            ));
        }
        levels.push(l.mul(&smoothing_inverse(&s)?));
    }
    Ok(Measure {
        prime: mu_c.prime,
        weight_a: mu_c.weight_a,
        bounded: mu_c.bounded,
        levels,
    })
}

/// Closed-form inverse of a two-term element a·[1] − d·[g].
fn smoothing_inverse(s: &GroupRingElem) -> Result<GroupRingElem, String> {
    let nonzero: Vec<(u64, Rat)> = s
        .coeffs
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (*k, c.clone()))
        .collect();
    let (a, d, g) = match nonzero.as_slice() {
        [(1, a), (g, md)] => (a.clone(), -md.clone(), *g),
        [(1, a)] => (a.clone(), Rat::zero(), 1),
        _ => return Err("not a two-term smoothing element".to_string()),
    };
    let m_grp = s.modulus();
    // order of g in Δ_n
    let mut ord = 1u64;
    let mut x = g;
    while x != 1 {
        x = (x as u128 * g as u128 % m_grp as u128) as u64;
        ord += 1;
    }
    let mut am = Rat::one();
    let mut dm = Rat::one();
    for _ in 0..ord {
        am *= &a;
        dm *= &d;
    }
    let denom = am - dm;
    if denom.is_zero() {
        return Err("smoothing element is a zero divisor".to_string());
    }
    let mut out = GroupRingElem::zero(s.prime, s.level);
    let mut gk = 1u64;
    // a^{m−1−k} d^k for k = 0..m−1
    let mut apow = Rat::one();
    for _ in 0..ord - 1 {
        apow *= &a;
    }
    let mut dpow = Rat::one();
    for _ in 0..ord {
        *out.coeffs.get_mut(&gk).unwrap() += &apow * &dpow / &denom;
        gk = (gk as u128 * g as u128 % m_grp as u128) as u64;
        if !a.is_zero() {
            apow /= &a;
        }
        dpow *= &d;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON serialization: {p, a, eigenvalue, levels: [{n, coeffs}]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct MeasureJson {
    pub p: u64,
    pub a: i64,
    /// "1" for a plain measure; the rescaling eigenvalue for a tower.
    pub eigenvalue: String,
    pub levels: Vec<LevelJson>,
}

#[derive(Serialize, Deserialize)]
pub struct LevelJson {
    pub n: u32,
    /// unit representative (as string key) ↦ rational coefficient "num/den".
    pub coeffs: BTreeMap<String, String>,
}

fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_from_string(s: &str) -> Result<Rat, String> {
    s.parse::<Rat>().map_err(|e| format!("bad rational '{s}': {e}"))
}

pub fn measure_to_json(m: &Measure) -> MeasureJson {
    MeasureJson {
        p: m.prime,
        a: m.weight_a,
        eigenvalue: "1".to_string(),
        levels: m
            .levels
            .iter()
            .map(|l| LevelJson {
                n: l.level,
                coeffs: l
                    .coeffs
                    .iter()
                    .map(|(k, v)| (k.to_string(), rat_to_string(v)))
                    .collect(),
            })
            .collect(),
    }
}

pub fn measure_from_json(j: &MeasureJson) -> Result<Measure, String> {
    let mut levels = Vec::new();
    for lj in &j.levels {
        let mut l = GroupRingElem::zero(j.p, lj.n);
        for (k, v) in &lj.coeffs {
            let key: u64 = k.parse().map_err(|_| format!("bad key {k}"))?;
            let slot = l
                .coeffs
                .get_mut(&key)
                .ok_or_else(|| format!("{key} is not a unit mod {}^{}", j.p, lj.n))?;
            *slot = rat_from_string(v)?;
        }
        levels.push(l);
    }
    let bounded = levels.iter().all(|l| l.is_integral());
    Ok(Measure { prime: j.p, weight_a: j.a, levels, bounded })
}

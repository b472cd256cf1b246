//! Dirichlet characters with exact cyclotomic values.
//!
//! A character mod M is stored by its images on a fixed generator set of
//! (Z/M)^×. The generator convention is deterministic:
//!   - for an odd prime power p^e, the single generator is the smallest
//!     primitive root mod p^e;
//!   - (Z/2)^× is trivial, (Z/4)^× is generated by −1, and (Z/2^e)^× for
//!     e ≥ 3 is generated by {−1, 5};
//!   - generators for composite M are the CRT lifts of the prime-power
//!     generators (g at one prime power, 1 elsewhere), ordered by the
//!     prime powers ascending.
//!
//! Values are exact roots of unity in Q(ζ); evaluation at non-units is the
//! zero convention. A tame character (order dividing p−1) additionally
//! embeds into Z_p via the Teichmüller lift of a fixed primitive root.

use crate::exact_arith::{euler_phi, teichmuller, CycNumber, PadicNumber};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Euclid gcd on u64.
fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Multiplicative order of a modulo m (a must be a unit).
pub fn mult_order(a: u64, m: u64) -> u64 {
    assert_eq!(gcd(a, m), 1, "order of a non-unit");
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

/// Prime-power factorization, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest primitive root modulo an odd prime power p^e.
pub fn primitive_root(q: u64) -> u64 {
    let phi = euler_phi(q);
    for g in 2..q {
        if gcd(g, q) == 1 && mult_order(g, q) == phi {
            return g;
        }
    }
    unreachable!("no primitive root mod {q}");
}

/// The fixed generator set of (Z/M)^× with each generator's order.
pub fn unit_group_generators(m: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for &(p, e) in &factorize(m) {
        let q = p.pow(e);
        let rest = m / q;
        // CRT lift: x ≡ g (mod q), x ≡ 1 (mod rest).
        let lift = |g: u64| -> u64 {
            if rest == 1 {
                return g % m;
            }
            let (mut x, step) = (g % m, q);
            while x % rest != 1 {
                x = (x + step) % m;
            }
            x
        };
        if p == 2 {
            if e == 2 {
                gens.push((lift(3), 2));
            } else if e >= 3 {
                gens.push((lift(q - 1), 2));
                gens.push((lift(5), q / 4));
            }
            // e == 1: trivial group, no generator
        } else {
            gens.push((lift(primitive_root(q)), euler_phi(q)));
        }
    }
    gens
}

/// Discrete log of the unit a with respect to the fixed generators: the
/// exponent vector (k_i) with a ≡ ∏ g_i^{k_i} mod M. Brute force over the
/// (small) cyclic factors.
fn discrete_log(m: u64, a: u64) -> Vec<u64> {
    let gens = unit_group_generators(m);
    let a = a % m;
    let mut exps = vec![0u64; gens.len()];
    // Solve per prime-power component via CRT projection.
    let mut idx = 0;
    for &(p, e) in &factorize(m) {
        let q = p.pow(e);
        let a_q = a % q;
        if p == 2 {
            if e == 1 {
                continue;
            }
            if e == 2 {
                exps[idx] = if a_q == 3 { 1 } else { 0 };
                idx += 1;
            } else {
                // a ≡ (−1)^s 5^t mod 2^e
                let ord5 = q / 4;
                let mut found = false;
                'outer: for s in 0..2u64 {
                    let mut x = if s == 0 { 1 } else { q - 1 };
                    for t in 0..ord5 {
                        if x == a_q {
                            exps[idx] = s;
                            exps[idx + 1] = t;
                            found = true;
                            break 'outer;
                        }
                        x = (x as u128 * 5u128 % q as u128) as u64;
                    }
                }
                assert!(found, "unit {a_q} not generated mod {q}");
                idx += 2;
            }
        } else {
            let g = primitive_root(q);
            let phi = euler_phi(q);
            let mut x = 1u64;
            let mut found = false;
            for t in 0..phi {
                if x == a_q {
                    exps[idx] = t;
                    found = true;
                    break;
                }
                x = (x as u128 * g as u128 % q as u128) as u64;
            }
            assert!(found, "unit {a_q} has no discrete log mod {q}");
            idx += 1;
        }
    }
    exps
}

/// A Dirichlet character mod M given by generator images.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    /// χ(g_i) for the fixed generators g_i, as exact roots of unity.
    pub images: Vec<CycNumber>,
    /// Root-of-unity exponents: images[i] = ζ_{ord(g_i)}^{exponents[i]}.
    pub exponents: Vec<u64>,
    pub primitive_conductor: u64,
}

/// A factorization χ = χ_p · χ^{(p)} into p-part and prime-to-p part.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterDecomposition {
    pub at_p: DirichletCharacter,
    pub away_p: DirichletCharacter,
}

/// JSON shape: {modulus, generator_images, label}.
#[derive(Serialize, Deserialize)]
pub struct CharacterJson {
    pub modulus: u64,
    /// Root-of-unity exponents of the images on the fixed generator set.
    pub generator_images: Vec<u64>,
    pub label: String,
}

impl DirichletCharacter {
    /// Character with χ(g_i) = ζ_{ord(g_i)}^{exponents[i]}.
    pub fn from_exponents(modulus: u64, exponents: &[u64]) -> Self {
        let gens = unit_group_generators(modulus);
        assert_eq!(gens.len(), exponents.len(), "one exponent per generator");
        let images: Vec<CycNumber> = gens
            .iter()
            .zip(exponents)
            .map(|(&(_, ord), &k)| CycNumber::root_of_unity(ord, (k % ord) as i64))
            .collect();
        let mut chi = DirichletCharacter {
            modulus,
            images,
            exponents: exponents
                .iter()
                .zip(&gens)
                .map(|(&k, &(_, ord))| k % ord)
                .collect(),
            primitive_conductor: modulus,
        };
        chi.primitive_conductor = chi.compute_conductor();
        chi
    }

    pub fn trivial(modulus: u64) -> Self {
        let n = unit_group_generators(modulus).len();
        Self::from_exponents(modulus, &vec![0; n])
    }

    /// The quadratic character mod an odd prime p (Legendre symbol).
    pub fn quadratic(p: u64) -> Self {
        let gens = unit_group_generators(p);
        assert_eq!(gens.len(), 1);
        Self::from_exponents(p, &[gens[0].1 / 2])
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// Order of χ in the character group.
    pub fn order(&self) -> u64 {
        let gens = unit_group_generators(self.modulus);
        let mut ord = 1u64;
        for (&k, &(_, d)) in self.exponents.iter().zip(&gens) {
            // order of ζ_d^k is d / gcd(d, k)
            let o = d / gcd(d, k);
            ord = ord.lcm(&o);
        }
        ord
    }

    /// χ(a): exact root of unity for units, exact zero otherwise.
    pub fn evaluate(&self, a: i64) -> CycNumber {
        let m = self.modulus as i64;
        let a = a.rem_euclid(m) as u64;
        if self.modulus == 1 {
            return CycNumber::from_integer(1);
        }
        if gcd(a, self.modulus) != 1 {
            return CycNumber::from_integer(0);
        }
        let exps = discrete_log(self.modulus, a);
        let gens = unit_group_generators(self.modulus);
        let mut val = CycNumber::from_integer(1);
        for ((&k, &e), &(_, d)) in self.exponents.iter().zip(&exps).zip(&gens) {
            let kk = (k as u128 * e as u128 % d as u128) as i64;
            val = val.mul(&CycNumber::root_of_unity(d, kk));
        }
        val
    }

    /// χ(−1) as ±1.
    pub fn parity(&self) -> i32 {
        let v = self.evaluate(-1);
        if v == CycNumber::from_integer(1) {
            1
        } else {
            -1
        }
    }

    pub fn conductor(&self) -> u64 {
        self.primitive_conductor
    }

    fn compute_conductor(&self) -> u64 {
        let m = self.modulus;
        let mut divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
        divisors.sort_unstable();
        'cand: for &f in &divisors {
            // χ factors through (Z/f)^× iff χ(a) = 1 whenever a ≡ 1 mod f.
            for a in 1..m {
                if gcd(a, m) == 1 && a % f == 1 % f && self.evaluate(a as i64) != CycNumber::from_integer(1) {
                    continue 'cand;
                }
            }
            return f;
        }
        m
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_conductor == self.modulus
    }

    /// The primitive character of conductor `primitive_conductor` inducing χ.
    pub fn primitive(&self) -> DirichletCharacter {
        let f = self.primitive_conductor;
        if f == self.modulus {
            return self.clone();
        }
        let gens = unit_group_generators(f);
        let exps: Vec<u64> = gens
            .iter()
            .map(|&(g, d)| {
                // χ(lift of g): pick a lift of g mod f that is a unit mod M.
                let mut a = g;
                while gcd(a, self.modulus) != 1 {
                    a += f;
                }
                let v = self.evaluate(a as i64);
                root_of_unity_log(&v, d)
            })
            .collect();
        DirichletCharacter::from_exponents(f, &exps)
    }

    /// Complex conjugate (inverse) character.
    pub fn inverse_char(&self) -> DirichletCharacter {
        let gens = unit_group_generators(self.modulus);
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(&gens)
            .map(|(&k, &(_, d))| (d - k % d) % d)
            .collect();
        DirichletCharacter::from_exponents(self.modulus, &exps)
    }

    /// Pointwise product of two characters (on the lcm modulus).
    pub fn product(&self, other: &DirichletCharacter) -> DirichletCharacter {
        let m = self.modulus.lcm(&other.modulus);
        let gens = unit_group_generators(m);
        let exps: Vec<u64> = gens
            .iter()
            .map(|&(g, d)| {
                let v = self.evaluate(g as i64).mul(&other.evaluate(g as i64));
                root_of_unity_log(&v, d)
            })
            .collect();
        DirichletCharacter::from_exponents(m, &exps)
    }

    /// Gauss sum G(χ) = Σ_{a mod N} χ(a) e^{2πia/N} for primitive χ.
    pub fn gauss_sum(&self) -> Result<CycNumber, String> {
        if !self.is_primitive() {
            return Err(format!(
                "gauss_sum requires a primitive character; conductor {} < modulus {} (reduce with primitive())",
                self.primitive_conductor, self.modulus
            ));
        }
        let n = self.modulus;
        if n == 1 {
            return Ok(CycNumber::from_integer(1));
        }
        let mut acc = CycNumber::zero_in(n);
        for a in 1..n {
            if gcd(a, n) != 1 {
                continue;
            }
            let term = self.evaluate(a as i64).mul(&CycNumber::root_of_unity(n, a as i64));
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Split χ into its p-power-conductor and prime-to-p parts.
    pub fn decompose_at_p(&self, p: u64) -> CharacterDecomposition {
        let m = self.modulus;
        let mut q = 1u64;
        while m % (q * p) == 0 {
            q *= p;
        }
        let rest = m / q;
        let component = |modulus: u64, other: u64| -> DirichletCharacter {
            let gens = unit_group_generators(modulus);
            let exps: Vec<u64> = gens
                .iter()
                .map(|&(g, d)| {
                    // CRT lift: ≡ g mod `modulus`, ≡ 1 mod `other`.
                    let mut a = g % m.max(1);
                    if other > 1 {
                        while a % other != 1 || a % modulus != g % modulus {
                            a = (a + modulus) % m;
                        }
                    }
                    if a == 0 {
                        a = m;
                    }
                    let v = self.evaluate(a as i64);
                    root_of_unity_log(&v, d)
                })
                .collect();
            DirichletCharacter::from_exponents(modulus, &exps)
        };
        CharacterDecomposition {
            at_p: component(q, rest),
            away_p: component(rest, q),
        }
    }

    /// Embed χ(a) into Z_p via the Teichmüller lift; requires ord(χ) | p−1.
    pub fn padic_value(&self, a: i64, p: u64, precision: u32) -> Result<PadicNumber, String> {
        let ord = self.order();
        if (p - 1) % ord != 0 {
            return Err(format!(
                "character order {ord} does not divide p-1 = {}; p-adic embedding unsupported for wild characters",
                p - 1
            ));
        }
        let v = self.evaluate(a);
        if v.is_zero_val() {
            return Ok(PadicNumber::zero(p, precision));
        }
        // v = ζ_{p−1}^k; locate k and map ζ_{p−1} ↦ ω(g) for the smallest
        // primitive root g mod p.
        let k = root_of_unity_log(&v, p - 1);
        let g = primitive_root(p);
        let omega = teichmuller(g as i64, p, precision)?;
        omega.pow(k as i64).ok_or_else(|| "unexpected zero in Teichmüller power".to_string())
    }

    pub fn to_json(&self, label: &str) -> CharacterJson {
        CharacterJson {
            modulus: self.modulus,
            generator_images: self.exponents.clone(),
            label: label.to_string(),
        }
    }

    pub fn from_json(j: &CharacterJson) -> Self {
        Self::from_exponents(j.modulus, &j.generator_images)
    }
}

/// Express a root of unity v as ζ_d^k and return k; panics if v has no such
/// expression (order not dividing d).
pub fn root_of_unity_log(v: &CycNumber, d: u64) -> u64 {
    let one = CycNumber::from_integer(1);
    let zeta = CycNumber::root_of_unity(d, 1);
    let mut x = one.clone();
    for k in 0..d {
        if *v == x {
            return k;
        }
        x = x.mul(&zeta);
    }
    panic!("value is not a root of unity of order dividing {d}");
}

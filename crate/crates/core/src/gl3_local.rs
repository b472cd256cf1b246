//! Local representation data for GL₃: Satake parameters, Hecke eigenvalues,
//! refinements and ordinarity, local L-factors, critical sets, the modified
//! Euler factors at p and ∞, refined-newvector Whittaker torus values, and
//! level-index combinatorics.
//!
//! Exact scalars are [`QuadRat`] values (rational, or in a fixed real
//! quadratic extension when half-integral powers of p occur, or in an
//! imaginary quadratic extension for symmetric-square parameters); p-adic
//! valuations are declared alongside the values, realizing a fixed embedding
//! of the coefficient field into Q̄_p. Half-integral valuations are stored
//! doubled (`slope_x2`) to stay in integer arithmetic.

use crate::characters::DirichletCharacter;
use crate::exact_arith::{rat, CycNumber, QuadRat, Rat, SymbolicPeriod};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Unramified-normalized Satake parameters (α, β, γ) with declared p-adic
/// valuations.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeParams {
    pub prime: u64,
    pub weight_a: i64,
    pub alpha: QuadRat,
    pub beta: QuadRat,
    pub gamma: QuadRat,
    /// Declared p-adic valuations of (α, β, γ) under the fixed embedding.
    pub valuations: [i64; 3],
}

impl SatakeParams {
    pub fn new(
        prime: u64,
        weight_a: i64,
        params: (QuadRat, QuadRat, QuadRat),
        valuations: [i64; 3],
    ) -> Self {
        SatakeParams {
            prime,
            weight_a,
            alpha: params.0,
            beta: params.1,
            gamma: params.2,
            valuations,
        }
    }

    /// Check the cohomological-normalization bound: all valuations in
    /// [−1−a, 1+a].
    pub fn is_cohomologically_normalized(&self) -> bool {
        let b = 1 + self.weight_a;
        self.valuations.iter().all(|&v| -b <= v && v <= b)
    }

    /// Elementary symmetric functions (e₁, e₂, e₃) of the parameters.
    pub fn elementary_symmetric(&self) -> (QuadRat, QuadRat, QuadRat) {
        let (a, b, c) = (&self.alpha, &self.beta, &self.gamma);
        let e1 = a.add(b).add(c);
        let e2 = a.mul(b).add(&b.mul(c)).add(&c.mul(a));
        let e3 = a.mul(b).mul(c);
        (e1, e2, e3)
    }
}

/// a_{p,1} = p^{a+1}(α+β+γ) and a_{p,2} = p^{a+1}(αβ+βγ+γα).
pub fn hecke_eigenvalues(s: &SatakeParams) -> (QuadRat, QuadRat) {
    let (e1, e2, _) = s.elementary_symmetric();
    let scale = QuadRat::from_rat(Rat::from_integer(s.prime.into()))
        .powi(s.weight_a + 1)
        .expect("p is invertible");
    (scale.mul(&e1), scale.mul(&e2))
}

/// Diagnostic for the conjugate-symmetry relation
/// a_{p,2} = ω_Π(p)·p^{a+1}·(α^{−1}+β^{−1}+γ^{−1}), which encodes
/// a_{p,2} = ω_Π(p)·conj(a_{p,1}) for unitary parameters.
pub fn check_conjugate_symmetry(s: &SatakeParams, omega_p: &QuadRat) -> bool {
    let (_, a2) = hecke_eigenvalues(s);
    let inv_sum = s
        .alpha
        .inverse()
        .and_then(|ai| {
            s.beta.inverse().and_then(|bi| s.gamma.inverse().map(|ci| ai.add(&bi).add(&ci)))
        })
        .expect("nonzero parameters");
    let scale = QuadRat::from_rat(Rat::from_integer(s.prime.into()))
        .powi(s.weight_a + 1)
        .unwrap();
    a2 == omega_p.mul(&scale).mul(&inv_sum)
}

/// P(X) = (1−αX)(1−βX)(1−γX), returned as the coefficient vector
/// [1, −e₁, e₂, −e₃].
#[allow(non_snake_case)]
pub fn local_L_factor(s: &SatakeParams) -> Vec<QuadRat> {
    let (e1, e2, e3) = s.elementary_symmetric();
    vec![
        QuadRat::one(),
        QuadRat::zero().sub(&e1),
        e2,
        QuadRat::zero().sub(&e3),
    ]
}

/// A smooth character of Q_p^× as it enters the classification data: its
/// value at p under the fixed embedding, the doubled slope (p-adic valuation
/// of that value), and whether its restriction to Z_p^× is ramified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalChar {
    pub value: QuadRat,
    pub slope_x2: i64,
    pub ramified: bool,
}

impl LocalChar {
    pub fn unramified(value: QuadRat, slope_x2: i64) -> Self {
        LocalChar { value, slope_x2, ramified: false }
    }

    pub fn inverse(&self) -> Self {
        LocalChar {
            value: self.value.inverse().expect("character value nonzero"),
            slope_x2: -self.slope_x2,
            ramified: self.ramified,
        }
    }

    pub fn product(&self, other: &Self) -> Self {
        LocalChar {
            value: self.value.mul(&other.value),
            slope_x2: self.slope_x2 + other.slope_x2,
            ramified: self.ramified || other.ramified,
        }
    }

    /// Twist by |·|^{1/2}: multiply the value at p by p^{−1/2}.
    pub fn half_twist(&self, p: u64) -> Self {
        let half = QuadRat::sqrt_d(p as i64)
            .mul(&QuadRat::from_rat(rat(1, p as i64)));
        LocalChar {
            value: self.value.mul(&half),
            slope_x2: self.slope_x2 - 1,
            ramified: self.ramified,
        }
    }

    /// Twist by |·| = p^{−1} at p.
    pub fn abs_twist(&self, p: u64) -> Self {
        LocalChar {
            value: self.value.mul(&QuadRat::from_rat(rat(1, p as i64))),
            slope_x2: self.slope_x2 - 2,
            ramified: self.ramified,
        }
    }
}

/// Classification of a generic irreducible representation of GL₃(Q_p).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum LocalRepGL3 {
    /// Supercuspidal; only the central character is retained.
    Supercuspidal { omega: LocalChar },
    /// λ·St₃, a twist of the Steinberg representation.
    SteinbergTwist { lambda: LocalChar },
    /// θ ⊠ σ induced from (1,2)-parabolic with σ supercuspidal on GL₂;
    /// σ is retained through its central character.
    InducedThetaSc { theta: LocalChar, sigma_omega: LocalChar },
    /// θ ⊠ λ·St₂ induced from the (1,2)-parabolic.
    InducedThetaSt { theta: LocalChar, lambda: LocalChar },
    /// Irreducible principal series χ₁ × χ₂ × χ₃.
    PrincipalSeries { chi: [LocalChar; 3] },
}

impl LocalRepGL3 {
    /// Central character (value data at p).
    pub fn central_character(&self) -> LocalChar {
        match self {
            LocalRepGL3::Supercuspidal { omega } => omega.clone(),
            LocalRepGL3::SteinbergTwist { lambda } => {
                lambda.product(lambda).product(lambda)
            }
            LocalRepGL3::InducedThetaSc { theta, sigma_omega } => theta.product(sigma_omega),
            LocalRepGL3::InducedThetaSt { theta, lambda } => {
                theta.product(&lambda.product(lambda))
            }
            LocalRepGL3::PrincipalSeries { chi } => {
                chi[0].product(&chi[1]).product(&chi[2])
            }
        }
    }

    /// The contragredient: all inducing characters are inverted.
    pub fn dual(&self) -> LocalRepGL3 {
        match self {
            LocalRepGL3::Supercuspidal { omega } => {
                LocalRepGL3::Supercuspidal { omega: omega.inverse() }
            }
            LocalRepGL3::SteinbergTwist { lambda } => {
                LocalRepGL3::SteinbergTwist { lambda: lambda.inverse() }
            }
            LocalRepGL3::InducedThetaSc { theta, sigma_omega } => LocalRepGL3::InducedThetaSc {
                theta: theta.inverse(),
                sigma_omega: sigma_omega.inverse(),
            },
            LocalRepGL3::InducedThetaSt { theta, lambda } => LocalRepGL3::InducedThetaSt {
                theta: theta.inverse(),
                lambda: lambda.inverse(),
            },
            LocalRepGL3::PrincipalSeries { chi } => LocalRepGL3::PrincipalSeries {
                chi: [chi[0].inverse(), chi[1].inverse(), chi[2].inverse()],
            },
        }
    }

    /// True for the kinds irreducibly induced from a proper parabolic.
    pub fn is_irreducibly_induced(&self) -> bool {
        matches!(
            self,
            LocalRepGL3::PrincipalSeries { .. }
                | LocalRepGL3::InducedThetaSc { .. }
                | LocalRepGL3::InducedThetaSt { .. }
        )
    }
}

/// A refinement datum: the accessible character of the chosen maximal
/// parabolic evaluated at p.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    /// 1 or 2, for the (1,2)- and (2,1)-parabolic respectively.
    pub parabolic: u8,
    pub character_value_at_p: QuadRat,
    pub ramified: bool,
    /// Doubled slope: 2·v_p(character value at p).
    pub slope_x2: i64,
}

impl Refinement {
    pub fn slope(&self) -> Rat {
        rat(self.slope_x2, 2)
    }

    fn from_char(parabolic: u8, c: &LocalChar) -> Self {
        Refinement {
            parabolic,
            character_value_at_p: c.value.clone(),
            ramified: c.ramified,
            slope_x2: c.slope_x2,
        }
    }
}

/// All P₁- and P₂-refinements, case by case.
pub fn classify_refinements(rep: &LocalRepGL3, p: u64) -> Vec<Refinement> {
    match rep {
        LocalRepGL3::Supercuspidal { .. } => vec![],
        LocalRepGL3::SteinbergTwist { lambda } => {
            // P₁: λ|·|; P₂: λ²|·|
            let p1 = lambda.abs_twist(p);
            let p2 = lambda.product(lambda).abs_twist(p);
            vec![Refinement::from_char(1, &p1), Refinement::from_char(2, &p2)]
        }
        LocalRepGL3::InducedThetaSc { theta, sigma_omega } => {
            // P₁: θ; P₂: ω·θ^{−1} = ω_σ
            vec![
                Refinement::from_char(1, theta),
                Refinement::from_char(2, sigma_omega),
            ]
        }
        LocalRepGL3::InducedThetaSt { theta, lambda } => {
            // P₁: θ and λ|·|^{1/2}; P₂: λ² and λθ|·|^{1/2}
            let half = lambda.half_twist(p);
            vec![
                Refinement::from_char(1, theta),
                Refinement::from_char(1, &half),
                Refinement::from_char(2, &lambda.product(lambda)),
                Refinement::from_char(2, &theta.product(&lambda).half_twist(p)),
            ]
        }
        LocalRepGL3::PrincipalSeries { chi } => {
            let mut out: Vec<Refinement> =
                chi.iter().map(|c| Refinement::from_char(1, c)).collect();
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                out.push(Refinement::from_char(2, &chi[i].product(&chi[j])));
            }
            out
        }
    }
}

/// Nearly-ordinary test from refinements: exists a P_i-refinement with an
/// unramified character of slope −(1+a).
pub fn is_ordinary(rep: &LocalRepGL3, p: u64, parabolic: u8, weight_a: i64) -> bool {
    let refs = classify_refinements(rep, p);
    if refs.is_empty() {
        return false; // supercuspidal: no refinements
    }
    refs.iter().any(|r| {
        r.parabolic == parabolic && !r.ramified && r.slope_x2 == -2 * (1 + weight_a)
    })
}

/// Unramified (spherical) ordinarity from Satake valuations:
/// P₁ ⇔ min valuation = −1−a, P₂ ⇔ max valuation = 1+a, equivalently
/// v_p(a_{p,i}) = 0.
pub fn is_ordinary_satake(s: &SatakeParams, parabolic: u8) -> bool {
    let b = 1 + self_bound(s);
    match parabolic {
        1 => *s.valuations.iter().min().unwrap() == -b,
        2 => *s.valuations.iter().max().unwrap() == b,
        _ => panic!("parabolic must be 1 or 2"),
    }
}

fn self_bound(s: &SatakeParams) -> i64 {
    s.weight_a
}

/// Which side of the functional equation a critical pair (j, η) lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriticalSide {
    Minus,
    Plus,
}

/// A critical point (j, η) with its side.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub j: i64,
    pub eta: DirichletCharacter,
    pub side: CriticalSide,
}

/// Critical j for weight a, central-character parity ω(−1), and twist η:
/// minus side: −a ≤ j ≤ 0 with (−1)^j = ωη(−1);
/// plus side: 1 ≤ j ≤ 1+a with (−1)^j = −ωη(−1).
pub fn critical_set(
    weight_a: i64,
    omega_parity: i32,
    eta: &DirichletCharacter,
    side: CriticalSide,
) -> Vec<i64> {
    let target = omega_parity * eta.parity();
    let (lo, hi, want) = match side {
        CriticalSide::Minus => (-weight_a, 0, target),
        CriticalSide::Plus => (1, 1 + weight_a, -target),
    };
    (lo..=hi)
        .filter(|j| if j.rem_euclid(2) == 0 { want == 1 } else { want == -1 })
        .collect()
}

/// e_∞(a, j) = 2·(2πi)^{j−a−1}·Γ(a+1−j) for 0 ≤ j ≤ a.
pub fn e_infty(weight_a: i64, j: i64) -> Result<SymbolicPeriod, String> {
    if j < 0 || j > weight_a {
        return Err(format!("j = {j} outside [0, a] with a = {weight_a}"));
    }
    Ok(SymbolicPeriod::new(
        rat(2, 1),
        j - weight_a - 1,
        (weight_a + 1 - j) as u64,
    ))
}

/// The value of the modified Euler factor at p: a cyclotomic Gauss-sum part
/// times a scalar in the quadratic coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct EpValue {
    pub gauss: CycNumber,
    pub scalar: QuadRat,
}

impl EpValue {
    pub fn rational(scalar: QuadRat) -> Self {
        EpValue { gauss: CycNumber::from_integer(1), scalar }
    }

    /// Complex embedding (gauss part times scalar part).
    pub fn embed(&self) -> (f64, f64) {
        let (gr, gi) = self.gauss.embed();
        let (sr, si) = self.scalar.embed();
        (gr * sr - gi * si, gr * si + gi * sr)
    }
}

/// Modified Euler factor at p for the refinement value α = α_p(p) and a
/// twist η of p-power conductor:
/// ramified η of conductor p^n → G(η^{−1})·(p^{j+1}α)^{−n};
/// unramified η → (1 − p^{−j−1}α^{−1})/(1 − p^j α).
pub fn e_p(
    p: u64,
    alpha_p: &QuadRat,
    eta: &DirichletCharacter,
    j: i64,
) -> Result<EpValue, String> {
    let cond = eta.conductor();
    if cond > 1 {
        // p-power conductor check
        let mut n = 0u32;
        let mut q = 1u64;
        while q < cond {
            q *= p;
            n += 1;
        }
        if q != cond {
            return Err(format!("η has conductor {cond}, not a power of {p}"));
        }
        let gauss = eta.inverse_char().primitive().gauss_sum()?;
        let base = QuadRat::from_rat(Rat::from_integer(p.into()))
            .powi(j + 1)
            .unwrap()
            .mul(alpha_p);
        let scalar = base
            .powi(-(n as i64))
            .ok_or("α_p(p) must be nonzero")?;
        Ok(EpValue { gauss, scalar })
    } else {
        let pq = QuadRat::from_rat(Rat::from_integer(p.into()));
        let alpha_inv = alpha_p.inverse().ok_or("α_p(p) must be nonzero")?;
        let num = QuadRat::one().sub(&pq.powi(-j - 1).unwrap().mul(&alpha_inv));
        let den = QuadRat::one().sub(&pq.powi(j).unwrap().mul(alpha_p));
        let den_inv = den.inverse().ok_or_else(|| {
            format!("exceptional zero: 1 − p^j·α_p(p) vanishes at j = {j}")
        })?;
        Ok(EpValue::rational(num.mul(&den_inv)))
    }
}

/// 𝓔₀ = 1 − ωχ(p)·α_p(p)^{−1} when the representation is irreducibly
/// induced; identically 1 otherwise.
pub fn e0_factor(rep: &LocalRepGL3, alpha_p: &QuadRat, omega_chi_p: &QuadRat) -> QuadRat {
    if rep.is_irreducibly_induced() {
        QuadRat::one().sub(&omega_chi_p.mul(&alpha_p.inverse().expect("nonzero refinement")))
    } else {
        QuadRat::one()
    }
}

/// Refined local data: the unramified refinement value, the conductor
/// exponent r of the complementary GL₂ factor σ, and the Dirichlet-series
/// coefficients of L(σ_p, s) = Σ b_n p^{−ns}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct RefinedData {
    pub prime: u64,
    pub alpha_p: QuadRat,
    /// conductor exponent of σ_p
    pub r: u32,
    /// b_0 = 1, b_1, b_2: enough initial coefficients to determine the
    /// degree-≤2 recurrence b_n = −d₁b_{n−1} − d₂b_{n−2} with
    /// L(σ_p, s)^{−1} = 1 + d₁p^{−s} + d₂p^{−2s}.
    #[allow(non_snake_case)]
    pub sigma_L_coeffs: Vec<QuadRat>,
}

impl RefinedData {
    /// Build from the inverse-L-factor coefficients (d₁, d₂).
    pub fn from_sigma_denominator(prime: u64, alpha_p: QuadRat, r: u32, d1: QuadRat, d2: QuadRat) -> Self {
        let b0 = QuadRat::one();
        let b1 = QuadRat::zero().sub(&d1);
        let b2 = d1.mul(&d1).sub(&d2);
        RefinedData {
            prime,
            alpha_p,
            r,
            sigma_L_coeffs: vec![b0, b1, b2],
        }
    }

    /// (d₁, d₂) recovered from the stored coefficients.
    pub fn sigma_denominator(&self) -> (QuadRat, QuadRat) {
        let b1 = self.sigma_L_coeffs.get(1).cloned().unwrap_or_else(QuadRat::zero);
        let b2 = self.sigma_L_coeffs.get(2).cloned().unwrap_or_else(QuadRat::zero);
        let d1 = QuadRat::zero().sub(&b1);
        let d2 = b1.mul(&b1).sub(&b2);
        (d1, d2)
    }

    /// b_n, extended by the recurrence when beyond the stored prefix.
    pub fn b(&self, n: usize) -> QuadRat {
        let (d1, d2) = self.sigma_denominator();
        let mut bs: Vec<QuadRat> = vec![QuadRat::one()];
        for k in 1..=n {
            let mut v = QuadRat::zero().sub(&d1.mul(&bs[k - 1]));
            if k >= 2 {
                v = v.sub(&d2.mul(&bs[k - 2]));
            }
            bs.push(v);
        }
        bs[n].clone()
    }
}

/// Torus value of the refined Whittaker function at diag(p^{m+n}, p^n, 1):
/// zero for negative m or n, else α^{m+n}·p^{−(m+n)}·b_n (the half-integral
/// powers of p from the two normalizations cancel into integer powers).
pub fn whittaker_torus_value(rd: &RefinedData, m: i64, n: i64) -> QuadRat {
    if m < 0 || n < 0 {
        return QuadRat::zero();
    }
    let p_inv = QuadRat::from_rat(rat(1, rd.prime as i64));
    rd.alpha_p
        .powi(m + n)
        .expect("nonzero α")
        .mul(&p_inv.powi(m + n).unwrap())
        .mul(&rd.b(n as usize))
}

/// Index of the depth-n congruence subgroup inside the mirahoric group at
/// level p^t: p^{2n−1}(p−1) for t ≥ n ≥ 1.
pub fn level_intersection_index(p: u64, n: u32, t: u32) -> u64 {
    assert!(n >= 1 && t >= n, "need t ≥ n ≥ 1");
    p.pow(2 * n - 1) * (p - 1)
}

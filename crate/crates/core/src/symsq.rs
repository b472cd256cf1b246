//! End-to-end symmetric-square pipeline: lift classical modular-form data to
//! GL₃ Satake parameters, enumerate critical data, assemble the
//! interpolation right-hand side, evaluate the complex L-values numerically,
//! and verify algebraicity.
//!
//! The classical input is a p-ordinary newform f of weight k = a+2 with
//! Hecke coefficients a_n, nebentype ε, and an auxiliary twist θ of
//! prime-to-p conductor. Its symmetric square lifts to a GL₃ representation
//! whose unramified Satake triple at a good prime ℓ is
//! (θ(ℓ)A², θ(ℓ)AB, θ(ℓ)B²)/ℓ^{a+1}, where A, B are the roots of
//! X² − a_ℓX + ε(ℓ)ℓ^{k−1}. The associated degree-3 L-series is evaluated
//! through [`crate::numeric`], and the critical values, normalized by the
//! archimedean and p-local modified Euler factors and divided by the
//! Petersson period, are reconstructed as explicit rationals.

use crate::characters::DirichletCharacter;
use crate::exact_arith::{rat_int, rational_valuation, QuadRat, Rat, SymbolicPeriod};
use crate::gl3_local::{
    critical_set, e_infty, e_p, CriticalSide, EpValue, SatakeParams,
};
use crate::numeric::{numeric_L_value, rat_to_float, LSeriesSpec, LValue};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Classical cuspidal eigenform data.
#[derive(Clone, Debug)]
pub struct ModFormData {
    /// Weight k = a + 2.
    pub weight: i64,
    /// Level N_f.
    pub level: u64,
    /// Nebentype ε.
    pub nebentype: DirichletCharacter,
    /// Hecke coefficients a_1, a_2, … (index 0 holds a_1), exact.
    pub hecke_coeffs: Vec<Rat>,
    /// Optional Petersson norm ⟨f,f⟩ = ∫|f|²y^k dx dy/y² over the modular
    /// curve (unnormalized hyperbolic measure).
    pub petersson_norm: Option<f64>,
    /// Auxiliary twist θ of prime-to-p conductor.
    pub theta_twist: DirichletCharacter,
}

impl ModFormData {
    pub fn weight_a(&self) -> i64 {
        self.weight - 2
    }

    pub fn coeff(&self, n: u64) -> Result<&Rat, String> {
        self.hecke_coeffs
            .get((n - 1) as usize)
            .ok_or_else(|| format!("Hecke coefficient a_{n} not available"))
    }

    /// Hecke multiplicativity: a_{mn} = a_m a_n for coprime m, n, and the
    /// recurrence a_{p^{r+1}} = a_p a_{p^r} − ε(p) p^{k−1} a_{p^{r−1}} at
    /// good p. Returns the first violated relation, if any.
    pub fn check_hecke_relations(&self, range: u64) -> Result<(), String> {
        let n_avail = self.hecke_coeffs.len() as u64;
        let lim = range.min(n_avail);
        for m in 2..=lim {
            for n in 2..=lim / m {
                if num_integer::gcd(m, n) == 1 {
                    let lhs = self.coeff(m * n)?;
                    let rhs = self.coeff(m)?.clone() * self.coeff(n)?;
                    if *lhs != rhs {
                        return Err(format!("a_{{{m}·{n}}} ≠ a_{m}a_{n}"));
                    }
                }
            }
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            if self.level % p == 0 {
                continue;
            }
            let eps_p = self
                .nebentype
                .evaluate(p as i64)
                .as_rational()
                .ok_or("nebentype value not rational")?;
            let scale = eps_p
                * Rat::from_integer(BigInt::from(p).pow((self.weight - 1) as u32));
            let mut q = p;
            while q * p * p <= lim {
                let lhs = self.coeff(q * p * p)?;
                let rhs = self.coeff(p)?.clone() * self.coeff(q * p)?
                    - scale.clone() * self.coeff(q)?;
                if *lhs != rhs {
                    return Err(format!("Hecke recurrence fails at p = {p}, p^r = {q}"));
                }
                q *= p;
            }
        }
        Ok(())
    }
}

/// The discriminant modular form Δ = q∏(1−qⁿ)²⁴ with `n_coeffs` Hecke
/// coefficients τ(1), …, τ(n_coeffs).
///
/// The coefficients are produced by the sparse logarithmic-derivative
/// recurrence for E²⁴ with E = ∏(1−qⁿ) expanded by the pentagonal-number
/// theorem, entirely in exact integers.
pub fn delta_form(n_coeffs: usize) -> ModFormData {
    // E = Σ_j (−1)^j q^{j(3j±1)/2}, sparse.
    let n = n_coeffs; // need E-coefficients up to n−1 for τ up to n
    let mut e_sparse: Vec<(usize, i64)> = Vec::new();
    let mut j: i64 = 1;
    loop {
        let g1 = (j * (3 * j - 1) / 2) as usize;
        let g2 = (j * (3 * j + 1) / 2) as usize;
        if g1 >= n && g2 >= n {
            break;
        }
        let sgn = if j % 2 == 0 { 1 } else { -1 };
        if g1 < n {
            e_sparse.push((g1, sgn));
        }
        if g2 < n {
            e_sparse.push((g2, sgn));
        }
        j += 1;
    }
    // F = E^c with c = 24 satisfies n F_n = Σ_{k≥1} E_k ((c+1)k − n) F_{n−k}.
    let c: i64 = 24;
    let mut f = vec![BigInt::zero(); n];
    f[0] = BigInt::one();
    for m in 1..n {
        let mut acc = BigInt::zero();
        for &(k, ek) in &e_sparse {
            if k > m {
                break;
            }
            let w = (c + 1) * k as i64 - m as i64;
            acc += BigInt::from(ek) * BigInt::from(w) * &f[m - k];
        }
        let (q, r) = num_integer::Integer::div_rem(&acc, &BigInt::from(m as i64));
        assert!(r.is_zero(), "recurrence must divide exactly");
        f[m] = q;
    }
    // Δ = q·F, so τ(m) = F_{m−1}.
    let hecke_coeffs = (0..n).map(|i| Rat::from_integer(f[i].clone())).collect();
    ModFormData {
        weight: 12,
        level: 1,
        nebentype: DirichletCharacter::trivial(1),
        hecke_coeffs,
        petersson_norm: None,
        theta_twist: DirichletCharacter::trivial(1),
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn rational_char_value(chi: &DirichletCharacter, x: i64) -> Result<Rat, String> {
    chi.evaluate(x)
        .as_rational()
        .ok_or_else(|| "only characters with rational (±1) values are supported".into())
}

/// Satake lift of the symmetric square of f at a good prime p:
/// (θ(p)A², θ(p)AB, θ(p)B²)/p^{a+1} with A, B the roots of
/// X² − a_pX + ε(p)p^{k−1}, and p-adic valuations declared with A the unit
/// root under the fixed embedding.
pub fn lift_satake(f: &ModFormData, p: u64) -> Result<SatakeParams, String> {
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    if f.level % p == 0 || f.theta_twist.conductor() % p == 0 {
        return Err(format!("p = {p} divides the level or the twist conductor"));
    }
    let a = f.weight_a();
    let ap = f.coeff(p)?.clone();
    let theta_p = rational_char_value(&f.theta_twist, p as i64)?;
    let eps_p = rational_char_value(&f.nebentype, p as i64)?;
    let pk1 = Rat::from_integer(BigInt::from(p).pow((f.weight - 1) as u32));
    let disc = ap.clone() * &ap - Rat::from_integer(4.into()) * &eps_p * &pk1;
    if !disc.is_integer() {
        return Err("non-integral Hecke discriminant".into());
    }
    let disc_i = disc
        .to_integer()
        .to_i64()
        .ok_or("Hecke discriminant too large for the quadratic-field backend")?;
    if disc_i == 0 {
        return Err("repeated Satake root (square discriminant zero)".into());
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let root_a = QuadRat::new(ap.clone() * &half, half.clone(), disc_i);
    let root_b = root_a.conjugate();
    let scale = QuadRat::from_rat(
        Rat::new(BigInt::one(), BigInt::from(p).pow((a + 1) as u32)),
    );
    let th = QuadRat::from_rat(theta_p);
    let alpha = th.mul(&root_a).mul(&root_a).mul(&scale);
    let beta = th.mul(&root_a).mul(&root_b).mul(&scale);
    let gamma = th.mul(&root_b).mul(&root_b).mul(&scale);
    // Valuations under the fixed embedding sending A to the small-valuation
    // root: v(A) = v_p(a_p) when that is less than half of k−1.
    let vap = rational_valuation(p, &ap).ok_or("a_p = 0: balanced supersingular \
        valuations are not representable as integers here")?;
    if 2 * vap >= f.weight - 1 {
        return Err("balanced (non-ordinary) valuations are not supported".into());
    }
    let vals = [2 * vap - (a + 1), 0, (a + 1) - 2 * vap];
    Ok(SatakeParams::new(p, a, (alpha, beta, gamma), vals))
}

/// The P₁-refinement value α_p(π) of the lift, satisfying
/// p^a·α_p(π) = θ(p)A_p(f)²; equals p times the first Satake parameter.
pub fn refinement_value(f: &ModFormData, p: u64) -> Result<QuadRat, String> {
    let s = lift_satake(f, p)?;
    Ok(QuadRat::from_rat(rat_int(p as i64)).mul(&s.alpha))
}

/// Parity ω_π(−1) = (−1)^a·θ(−1) of the central character of the lift.
pub fn central_parity(f: &ModFormData) -> i32 {
    let sign_a = if f.weight_a() % 2 == 0 { 1 } else { -1 };
    sign_a * f.theta_twist.parity()
}

/// Dirichlet coefficients of the imprimitive symmetric-square series
/// L^{(N_f)}(2s − 2a − 2, ε²) · Σ_{n≥1} a_{n²} n^{−s}, as an L-series spec.
///
/// Restricted to level 1 with trivial θ, where the imprimitive series is the
/// primitive one and the functional-equation data (conductor 1, sign +1,
/// weight 2a+2, Γ_C(s)Γ_R(s−a−κ)) is complete.
pub fn imprimitive_coeffs(f: &ModFormData, n_terms: usize) -> Result<LSeriesSpec, String> {
    let needed = n_terms * n_terms;
    if f.hecke_coeffs.len() < needed {
        return Err(format!(
            "insufficient Hecke coefficients: need a_n for n ≤ {needed}, have {}",
            f.hecke_coeffs.len()
        ));
    }
    let a = f.weight_a();
    let mut coeffs = vec![Rat::zero(); n_terms];
    for d in 1..=n_terms {
        // ε²(d)·d^{2a+2}, skipping d with gcd(d, N_f) > 1.
        if num_integer::gcd(d as u64, f.level) != 1 {
            continue;
        }
        let char_val = rational_char_value(&f.nebentype, d as i64)?;
        let dw = char_val.clone() * char_val
            * Rat::from_integer(BigInt::from(d).pow((2 * a + 2) as u32));
        let mut n = d * d;
        let mut m = 1usize;
        while n <= n_terms {
            let term = dw.clone() * &f.hecke_coeffs[m * m - 1];
            coeffs[n - 1] += term;
            m += 1;
            n = d * d * m;
        }
    }
    if f.level != 1 || f.theta_twist.conductor() != 1 {
        return Err(
            "functional-equation data is only assembled for level 1 with trivial θ"
                .into(),
        );
    }
    let kappa = if central_parity(f) == 1 { 0 } else { 1 };
    Ok(LSeriesSpec {
        dirichlet_coeffs: coeffs,
        gamma_r_shifts: vec![-(a + kappa), 0, 1],
        conductor: 1,
        motivic_weight: 2 * a + 2,
        // Level-1 symmetric squares have root number +1.
        sign: Some(1),
        lambda_poles: vec![],
        growth_exponent: a as f64 + 1.7,
    })
}

/// The local Euler multiplier removed when passing to L^{(p)} at the
/// minus-critical point −j: ∏_i (1 − α_i p^{j}) over the Satake triple.
/// Exact and rational (symmetric in A, B).
pub fn euler_factor_at(f: &ModFormData, p: u64, j: i64) -> Result<Rat, String> {
    let s = lift_satake(f, p)?;
    let pj = QuadRat::from_rat(rat_int(p as i64))
        .powi(j)
        .ok_or("p must be invertible")?;
    let mut acc = QuadRat::one();
    for param in [&s.alpha, &s.beta, &s.gamma] {
        acc = acc.mul(&QuadRat::one().sub(&pj.mul(param)));
    }
    acc.as_rational()
        .ok_or_else(|| "Euler factor unexpectedly irrational".into())
}

/// Assembled interpolation right-hand side at a minus-critical pair (−j, η):
/// the archimedean factor e_∞ (symbolic-exact), the p-local factor e_p
/// (exact), and the p-depleted L-value (numeric), with the period left
/// symbolic.
#[derive(Clone, Debug)]
pub struct InterpolationRhs {
    pub prime: u64,
    pub weight_a: i64,
    pub j: i64,
    /// e_∞(Π, −j), exact.
    pub e_infinity: SymbolicPeriod,
    /// e_p(Π̃, η, −j), exact.
    pub e_p: EpValue,
    /// The removed local factor ∏(1 − α_i p^{j}), exact.
    pub euler_at_p: Rat,
    /// L(Π×η, −j), numeric (complete L-function).
    pub l_complete: LValue,
    /// L^{(p)}(Π×η, −j), numeric.
    pub l_depleted: Float,
}

impl InterpolationRhs {
    /// Complex embedding of the full numeric product
    /// e_∞·e_p·L^{(p)} (the period Ω stays symbolic).
    pub fn numeric_product(&self) -> (f64, f64) {
        let (er, ei) = self.e_infinity.embed();
        let (pr, pi_) = self.e_p.embed();
        let l = self.l_depleted.to_f64();
        ((er * pr - ei * pi_) * l, (er * pi_ + ei * pr) * l)
    }
}

/// Assemble the interpolation right-hand side for f at the pair (−j, η).
///
/// The numeric L-value is evaluated for unramified η only; ramified η still
/// yields the exact e-factors but no numeric L here.
pub fn interpolation_rhs(
    f: &ModFormData,
    p: u64,
    j: i64,
    eta: &DirichletCharacter,
    target_digits: u32,
) -> Result<InterpolationRhs, String> {
    let a = f.weight_a();
    let lift = lift_satake(f, p)?;
    if !crate::gl3_local::is_ordinary_satake(&lift, 1) {
        return Err(format!("f is not p-ordinary at p = {p}"));
    }
    let minus = critical_set(a, central_parity(f), eta, CriticalSide::Minus);
    if !minus.contains(&(-j)) {
        return Err(format!(
            "(−{j}, η) is not a minus-critical pair (parity/range condition fails)"
        ));
    }
    let e_inf = e_infty(a, j)?;
    let alpha_ref = QuadRat::from_rat(rat_int(p as i64)).mul(&lift.alpha);
    let ep = e_p(p, &alpha_ref, eta, j)?;
    if eta.conductor() != 1 {
        return Err("numeric L-evaluation supports unramified η only".into());
    }
    let n_terms = (f.hecke_coeffs.len() as f64).sqrt() as usize;
    let spec = imprimitive_coeffs(f, n_terms)?;
    let s_mot = Rat::from_integer((a + 1 - j).into());
    let l_complete = numeric_L_value(&spec, &s_mot, target_digits)?;
    let euler = euler_factor_at(f, p, j)?;
    let prec = l_complete.value.prec();
    let l_depleted = Float::with_val(prec, &l_complete.value * &rat_to_float(&euler, prec));
    Ok(InterpolationRhs {
        prime: p,
        weight_a: a,
        j,
        e_infinity: e_inf,
        e_p: ep,
        euler_at_p: euler,
        l_complete,
        l_depleted,
    })
}

/// Petersson norm via the symmetric-square edge identity for level 1:
/// ⟨f,f⟩ = 2·Γ(k)·L(Sym²f, k)/(π·(4π)^k), from the Rankin–Selberg residue
/// with Res_{s=1}E(z,s) = 3/π on SL₂(Z).
pub fn petersson_via_edge(f: &ModFormData, target_digits: u32) -> Result<Float, String> {
    if f.level != 1 {
        return Err("edge identity implemented for level 1 only".into());
    }
    let n_terms = (f.hecke_coeffs.len() as f64).sqrt() as usize;
    let spec = imprimitive_coeffs(f, n_terms)?;
    let k = f.weight;
    let l_edge = numeric_L_value(&spec, &Rat::from_integer(k.into()), target_digits)?;
    let prec = l_edge.value.prec();
    let pi_v = Float::with_val(prec, Constant::Pi);
    let gamma_k = Float::with_val(prec, k as u32).gamma();
    let four_pi_k = Float::with_val(prec, 4 * &pi_v).pow(k as i32);
    Ok(Float::with_val(prec, 2 * gamma_k) * l_edge.value / (pi_v * four_pi_k))
}

/// Outcome of a rational-reconstruction attempt.
#[derive(Clone, Debug)]
pub enum Algebraicity {
    /// The normalized value is the given rational to within the tolerance.
    Recognized { value: Rat, residual: f64 },
    /// The working precision cannot support the requested denominator bound.
    Inconclusive { reason: String },
    /// No rational with denominator below the bound fits.
    Failure { best_candidate: Rat, residual: f64 },
}

/// Continued-fraction rational reconstruction with a denominator bound.
/// Returns the best convergent and its residual.
pub fn recognize_rational(x: &Float, denom_bound: u64) -> (Rat, f64) {
    let prec = x.prec();
    let mut v = x.clone();
    // Convergent recurrence h_n = a_n h_{n−1} + h_{n−2}.
    let mut h1 = BigInt::one(); // h_{−1}
    let mut h2 = BigInt::zero(); // h_{−2}
    let mut k1 = BigInt::zero();
    let mut k2 = BigInt::one();
    let bound = BigInt::from(denom_bound);
    let mut best = Rat::zero();
    let mut best_res = f64::INFINITY;
    for _ in 0..200 {
        let fl = v.clone().floor();
        let a = match fl.to_integer() {
            Some(z) => BigInt::parse_bytes(z.to_string_radix(10).as_bytes(), 10)
                .expect("decimal digits"),
            None => break,
        };
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        if k > bound {
            break;
        }
        let cand = Rat::new(h.clone(), k.clone());
        let res = Float::with_val(prec, x - rat_to_float(&cand, prec))
            .abs()
            .to_f64();
        if res < best_res {
            best_res = res;
            best = cand;
        }
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
        let frac = Float::with_val(prec, &v - &fl);
        if frac.clone().abs().to_f64() < 1e-40 {
            break;
        }
        v = Float::with_val(prec, 1) / frac;
    }
    (best, best_res)
}

/// The e_∞-normalized critical value
///   e_∞(Π,−j)·L(π×η,−j) / (π^{a+1}⟨f,f⟩),
/// as a real number: the unit i^{j−a−1} of e_∞ is stripped, and the period
/// is taken as the raw Petersson integral, into whose normalization the
/// remaining π-power is absorbed (the period is only defined up to such
/// units; the Γ/(2π)^j pattern across j is the invariant content).
pub fn normalized_critical_value(
    f: &ModFormData,
    p: u64,
    j: i64,
    eta: &DirichletCharacter,
    petersson: &Float,
    target_digits: u32,
    include_e_infinity: bool,
    deplete_at_p: bool,
) -> Result<Float, String> {
    let rhs = interpolation_rhs(f, p, j, eta, target_digits)?;
    let a = f.weight_a();
    let prec = rhs.l_complete.value.prec();
    let l = if deplete_at_p {
        rhs.l_depleted.clone()
    } else {
        rhs.l_complete.value.clone()
    };
    let mut out = Float::with_val(prec, &l / petersson);
    if include_e_infinity {
        let folded = rhs.e_infinity.folded();
        let two_pi = Float::with_val(prec, 2 * Float::with_val(prec, Constant::Pi));
        out *= rat_to_float(&folded.rational_part, prec)
            * two_pi.pow((j - a - 1) as i32);
    }
    Ok(out)
}

/// Attempt rational reconstruction of the e_∞-normalized critical value of
/// Thm-10.3 type at the pair (−j, η), with denominator bound 10⁶ and
/// tolerance 10⁻⁸, from ≥30-digit numerics.
pub fn algebraicity_check(
    f: &ModFormData,
    p: u64,
    j: i64,
    eta: &DirichletCharacter,
    petersson: &Float,
) -> Result<Algebraicity, String> {
    algebraicity_check_at_digits(f, p, j, eta, petersson, 35)
}

/// [`algebraicity_check`] at an explicit working precision; precisions too
/// low to certify the denominator bound yield `Inconclusive`.
pub fn algebraicity_check_at_digits(
    f: &ModFormData,
    p: u64,
    j: i64,
    eta: &DirichletCharacter,
    petersson: &Float,
    digits: u32,
) -> Result<Algebraicity, String> {
    let tol = 1e-8f64;
    let denom_bound = 1_000_000u64;
    let value =
        normalized_critical_value(f, p, j, eta, petersson, digits, true, false)?;
    // Working-precision sanity: the reconstruction tolerance must dominate
    // the numeric error of the inputs.
    let scale = value.clone().abs().to_f64().max(1.0);
    if 10f64.powi(-(digits as i32) + 6) * scale > tol / 100.0 {
        return Ok(Algebraicity::Inconclusive {
            reason: "numeric precision insufficient for the denominator bound".into(),
        });
    }
    let (cand, res) = recognize_rational(&value, denom_bound);
    if recognition_is_convincing(&cand, res, scale, tol) {
        Ok(Algebraicity::Recognized { value: cand, residual: res })
    } else {
        Ok(Algebraicity::Failure { best_candidate: cand, residual: res })
    }
}

/// Whether a reconstruction residual certifies rationality: besides the
/// stated tolerance, the residual must beat the ~1/q² approximation level
/// that continued fractions achieve for *every* real number, by a wide
/// margin — otherwise any irrational would pass.
pub fn recognition_is_convincing(cand: &Rat, res: f64, scale: f64, tol: f64) -> bool {
    let q = crate::exact_arith::rat_to_f64(&Rat::from_integer(cand.denom().clone()));
    res < tol * scale && res * q * q < 1e-6
}

//! High-precision numeric evaluation of L-functions from their
//! functional-equation data.
//!
//! An L-function is described by its Dirichlet coefficients, the shifts of
//! its archimedean Γ_R-factors, the conductor, the motivic weight, the sign
//! of the functional equation, and the poles of the completed function.
//! Writing γ(z) = ∏_i Γ_R(z + λ_i) with Γ_R(z) = π^{−z/2}Γ(z/2) and
//! Λ(s) = N^{s/2} γ(s) L(s), the self-dual functional equation is
//! Λ(s) = ε·Λ(w + 1 − s).
//!
//! Values anywhere in the plane are computed from the smoothed sum
//!
//!   Λ(s) = Σ_n a_n G_s(n/√N) + ε Σ_n a_n G_{w+1−s}(n/√N) + Σ_i r_i/(s − s_i)
//!
//! where G_s(t) = ∫_1^∞ φ(tx) x^s dx/x and φ is the inverse Mellin transform
//! of γ. The weight G_s(t) is evaluated by pushing the Mellin–Barnes contour
//! of ∫ γ(z) t^{−z} dz/(z−s) to the left and summing residues: simple poles
//! of γ contribute elementary terms, coincident Γ_R-poles contribute
//! digamma/log terms, and the pole of 1/(z−s) contributes γ(s)t^{−s}. The
//! residue series converges for every t > 0; the precision is padded to
//! absorb its internal cancellation.
//!
//! Only self-dual data with real coefficients and real sign ±1 is supported;
//! that covers every series this crate evaluates (Riemann zeta, real
//! Dirichlet characters, symmetric squares of rational newforms). The sign
//! may be left unset, in which case it is solved for by comparing the
//! smoothed sum against the plain Dirichlet series at two points inside the
//! region of absolute convergence.

use crate::characters::DirichletCharacter;
use crate::exact_arith::Rat;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::str::FromStr;

/// Functional-equation data of a self-dual L-series.
#[derive(Clone, Debug)]
pub struct LSeriesSpec {
    /// a_1, a_2, … (index 0 holds a_1). All coefficients are real exact
    /// scalars.
    pub dirichlet_coeffs: Vec<Rat>,
    /// Shifts λ_i of the factors Γ_R(s + λ_i) of γ(s). A Γ_C(s + ν) factor
    /// is the pair of shifts {ν, ν + 1}.
    pub gamma_r_shifts: Vec<i64>,
    pub conductor: u64,
    /// Motivic weight w; the functional equation reflects s ↦ w + 1 − s.
    pub motivic_weight: i64,
    /// Sign ε = ±1 of the functional equation, or `None` to solve for it.
    pub sign: Option<i32>,
    /// Simple poles of Λ(s) as (location, residue) pairs.
    pub lambda_poles: Vec<(Rat, Rat)>,
    /// Growth bound: |a_n| ≤ C·n^growth with C the empirical constant of the
    /// supplied coefficients; used for truncation-error estimates.
    pub growth_exponent: f64,
}

/// A numeric L-value with an error estimate.
#[derive(Clone, Debug)]
pub struct LValue {
    pub value: Float,
    /// Estimated absolute error (truncation + rounding).
    pub error_bound: f64,
    /// Whether the bound is rigorous; the tail estimates here rely on the
    /// declared coefficient-growth bound, so they are flagged heuristic.
    pub rigorous: bool,
}

impl LValue {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Convert an exact rational to a float of the given precision.
pub fn rat_to_float(x: &Rat, prec: u32) -> Float {
    let q = rug::Rational::from_str(&x.to_string()).expect("rational literal");
    Float::with_val(prec, q)
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// A two-term truncated Laurent expansion c0·ε^ord + c1·ε^{ord+1}.
struct Lau {
    ord: i32,
    c0: Float,
    c1: Float,
}

fn lau_mul(a: &Lau, b: &Lau, prec: u32) -> Lau {
    let c0 = Float::with_val(prec, &a.c0 * &b.c0);
    let mut c1 = Float::with_val(prec, &a.c0 * &b.c1);
    c1 += Float::with_val(prec, &a.c1 * &b.c0);
    Lau { ord: a.ord + b.ord, c0, c1 }
}

/// Expansion of Γ_R(z + λ) around z = z₀ (z₀ exact rational).
fn gamma_r_expansion(lambda: i64, z0: &Rat, prec: u32) -> Lau {
    let x = (z0 + Rat::from_integer(lambda.into())) / Rat::from_integer(2.into());
    let lnpi = pi(prec).ln();
    if x.is_integer() && !x.is_positive() {
        // Simple pole of Γ at −m: Γ_R(z+λ) = π^m (−1)^m/m! ·
        // (2/ε + ψ(m+1) − ln π) + O(ε) with ε = z − z₀.
        let m = (-x.to_integer()).to_u32().expect("moderate pole depth");
        let mut mfact = Float::with_val(prec, 1);
        for k in 2..=m {
            mfact *= k;
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let pim = pi(prec).pow(m as i32);
        let unit = Float::with_val(prec, sign) * pim / mfact;
        let psi = Float::with_val(prec, m + 1).digamma();
        let c0 = Float::with_val(prec, 2) * &unit;
        let c1 = unit * (psi - lnpi);
        Lau { ord: -1, c0, c1 }
    } else {
        // Regular point: value and z-derivative (the chain rule gives a
        // factor 1/2 on the digamma and log π terms).
        let xf = rat_to_float(&x, prec);
        let g = xf.clone().gamma();
        let v = Float::with_val(prec, pi(prec).pow(&(-xf.clone()))) * g;
        let half = Float::with_val(prec, &xf.digamma() - &lnpi) / 2u32;
        let c1 = Float::with_val(prec, &v * &half);
        Lau { ord: 0, c0: v, c1 }
    }
}

/// Expansion of 1/(z − s) around z = z₀; a pole factor when z₀ = s.
fn inv_kernel_expansion(z0: &Rat, s: &Rat, prec: u32) -> Lau {
    if z0 == s {
        Lau { ord: -1, c0: Float::with_val(prec, 1), c1: Float::with_val(prec, 0) }
    } else {
        let d = rat_to_float(&(z0 - s), prec);
        let c0 = Float::with_val(prec, 1) / &d;
        let c1 = Float::with_val(prec, -1) / Float::with_val(prec, d.square_ref());
        Lau { ord: 0, c0, c1 }
    }
}

/// The Laurent coefficients (c₋₁, c₋₂) of h(z) = γ(z)/(z − s) at z = z₀,
/// so that the residue of γ(z)t^{−z}/(z−s) there is t^{−z₀}(c₋₁ − c₋₂ ln t).
/// Errors if the total pole order exceeds 2 (never the case for the gamma
/// shapes used here).
fn h_laurent_at(
    shifts: &[i64],
    z0: &Rat,
    s: &Rat,
    prec: u32,
) -> Result<(Float, Float), String> {
    let mut acc = inv_kernel_expansion(z0, s, prec);
    for &lam in shifts {
        let f = gamma_r_expansion(lam, z0, prec);
        acc = lau_mul(&acc, &f, prec);
    }
    let zero = || Float::with_val(prec, 0);
    match acc.ord {
        o if o >= 0 => Ok((zero(), zero())),
        -1 => Ok((acc.c0, zero())),
        -2 => Ok((acc.c1, acc.c0)),
        _ => Err("gamma-factor pole of order > 2 is not supported".into()),
    }
}

/// Whether γ(z) = ∏ Γ_R(z + λ_i) has a pole at the exact rational z.
fn gamma_has_pole(shifts: &[i64], z: &Rat) -> bool {
    shifts.iter().any(|&lam| {
        let x = (z + Rat::from_integer(lam.into())) / Rat::from_integer(2.into());
        x.is_integer() && !x.is_positive()
    })
}

/// γ(s) = ∏ Γ_R(s + λ_i) at a regular point.
fn gamma_value(shifts: &[i64], s: &Rat, prec: u32) -> Float {
    let mut acc = Float::with_val(prec, 1);
    for &lam in shifts {
        let x = rat_to_float(
            &((s + Rat::from_integer(lam.into())) / Rat::from_integer(2.into())),
            prec,
        );
        acc *= Float::with_val(prec, pi(prec).pow(&(-x.clone()))) * x.gamma();
    }
    acc
}

/// Precomputed residue data of h(z) = γ(z)/(z − s): everything about the
/// residue series of G_s(t) that does not depend on t. Building it once per
/// smoothed sum turns all expensive Γ/ψ evaluations into a fixed table.
struct GammaResidueTable {
    zmax: i64,
    /// (k, c₋₁, c₋₂) for the pole at z₀ = zmax − k, ascending in k.
    entries: Vec<(i64, Float, Float)>,
    /// Residue data at z₀ = s when s is not among the enumerated integers.
    s_entry: Option<(Float, Float, Float)>,
    min_depth_coeff: f64,
}

fn residue_depth(degree: f64, t: f64) -> i64 {
    (4.0 * degree * t.powf(2.0 / degree) + 40.0) as i64
}

/// Build the residue table deep enough for arguments up to `t_max`: the
/// series terms at t_max are monitored and enumeration stops once they stay
/// negligible past the analytic minimum depth.
fn build_residue_table(
    shifts: &[i64],
    s: &Rat,
    t_max: f64,
    prec: u32,
    stop_eps: &Float,
) -> Result<GammaResidueTable, String> {
    let zmax = shifts.iter().map(|&l| -l).max().ok_or("empty gamma shape")?;
    // The residue at z = s is enumerated with the integer poles when s is an
    // integer ≤ zmax, and kept separately otherwise.
    let s_merged = s.is_integer() && s.to_integer() <= zmax.into();
    let s_entry = if s_merged {
        None
    } else {
        let (c1, c2) = h_laurent_at(shifts, s, s, prec)?;
        Some((rat_to_float(s, prec), c1, c2))
    };
    let degree = shifts.len() as f64;
    let min_depth = residue_depth(degree, t_max);
    let lnt = t_max.max(1.01).ln();
    let mut entries = Vec::new();
    let mut small_run = 0u32;
    let mut k: i64 = 0;
    loop {
        let z0 = Rat::from_integer((zmax - k).into());
        if gamma_has_pole(shifts, &z0) || &z0 == s {
            let (c1, c2) = h_laurent_at(shifts, &z0, s, prec)?;
            // Term magnitude at t_max: t^{−z₀}(|c₋₁| + |c₋₂| ln t).
            let tpow = Float::with_val(prec, (k - zmax) as f64 * lnt).exp();
            let mag = tpow
                * (Float::with_val(prec, c1.abs_ref())
                    + Float::with_val(prec, c2.abs_ref()) * lnt);
            if mag < *stop_eps {
                small_run += 1;
            } else {
                small_run = 0;
            }
            entries.push((k, c1, c2));
        }
        k += 1;
        if k > min_depth && small_run >= 8 {
            break;
        }
        if k > 2_000_000 {
            return Err("smoothing-weight residue series failed to converge".into());
        }
    }
    Ok(GammaResidueTable { zmax, entries, s_entry, min_depth_coeff: degree })
}

/// G_s(t) from a precomputed residue table.
fn g_from_table(
    table: &GammaResidueTable,
    t: &Float,
    prec: u32,
    stop_eps: &Float,
    stats: &mut f64,
) -> Float {
    let lnt = Float::with_val(prec, t.ln_ref());
    let mut total = Float::with_val(prec, 0);
    if let Some((z0f, c1, c2)) = &table.s_entry {
        let tz = (Float::with_val(prec, z0f * &lnt) * -1i32).exp();
        let r = tz * (Float::with_val(prec, c1) - Float::with_val(prec, c2 * &lnt));
        let mag = r.clone().abs().to_f64();
        if mag > *stats {
            *stats = mag;
        }
        total += r;
    }
    let min_depth = residue_depth(table.min_depth_coeff, t.to_f64());
    // t^{−(zmax−k)} maintained incrementally along the enumeration.
    let mut tpow = Float::with_val(prec, -table.zmax * &lnt.clone()).exp();
    let mut last_k = 0i64;
    let mut small_run = 0u32;
    for (k, c1, c2) in &table.entries {
        if *k != last_k {
            tpow *= Float::with_val(prec, (*k - last_k) as f64 * &lnt).exp();
            last_k = *k;
        }
        let r = Float::with_val(prec, &tpow)
            * (Float::with_val(prec, c1) - Float::with_val(prec, c2 * &lnt));
        let mag = r.clone().abs().to_f64();
        if mag > *stats {
            *stats = mag;
        }
        if Float::with_val(prec, r.abs_ref()) < *stop_eps {
            small_run += 1;
            if small_run >= 8 && *k > min_depth {
                total += r;
                break;
            }
        } else {
            small_run = 0;
        }
        total += r;
    }
    total
}

/// The smoothing weight G_s(t) = ∫_1^∞ φ(tx) x^s dx/x as a residue series.
/// `stats` accumulates the largest term magnitude (for rounding-error
/// accounting).
#[cfg(test)]
fn g_weight(
    shifts: &[i64],
    s: &Rat,
    t: &Float,
    prec: u32,
    stop_eps: &Float,
    stats: &mut f64,
) -> Result<Float, String> {
    let table = build_residue_table(shifts, s, t.to_f64(), prec, stop_eps)?;
    Ok(g_from_table(&table, t, prec, stop_eps, stats))
}

/// Per-spec truncation point: first n with
/// C·n^{g_eff}·exp(−dπ(n/√N)^{2/d}) below the target.
fn truncation_point(spec: &LSeriesSpec, s: &Rat, digits: u32) -> usize {
    let d = spec.gamma_r_shifts.len() as f64;
    let sqn = (spec.conductor as f64).sqrt();
    let s64 = rat_to_float(s, 64).to_f64();
    let s2 = spec.motivic_weight as f64 + 1.0 - s64;
    let g_eff = spec.growth_exponent + s64.abs().max(s2.abs()) + 2.0;
    let c = spec
        .dirichlet_coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let n = (i + 1) as f64;
            crate::exact_arith::rat_to_f64(&a.clone().abs()) / n.powf(spec.growth_exponent)
        })
        .fold(1.0f64, f64::max);
    let target = -((digits as f64 + 6.0) * std::f64::consts::LN_10);
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let log_term = c.ln() + g_eff * nf.ln()
            - d * std::f64::consts::PI * (nf / sqn).powf(2.0 / d);
        if log_term < target && n > 3 {
            break;
        }
        n += 1;
        if n > 5_000_000 {
            break;
        }
    }
    n + n / 5 + 3
}

fn check_regular(spec: &LSeriesSpec, s: &Rat) -> Result<(), String> {
    if gamma_has_pole(&spec.gamma_r_shifts, s) {
        return Err(format!("the gamma factor has a pole at s = {s}"));
    }
    Ok(())
}

/// Σ_{n ≤ N} a_n G_σ(n/√cond) at precision `prec`.
fn smoothed_sum(
    spec: &LSeriesSpec,
    sigma: &Rat,
    n_terms: usize,
    prec: u32,
    stop_eps: &Float,
    stats: &mut f64,
) -> Result<Float, String> {
    let sqn = Float::with_val(prec, spec.conductor).sqrt();
    let t_max = n_terms as f64 / (spec.conductor as f64).sqrt();
    let table =
        build_residue_table(&spec.gamma_r_shifts, sigma, t_max, prec, stop_eps)?;
    let mut acc = Float::with_val(prec, 0);
    for n in 1..=n_terms {
        let a = &spec.dirichlet_coeffs[n - 1];
        if a.is_zero() {
            continue;
        }
        let t = Float::with_val(prec, n as u64) / &sqn;
        let g = g_from_table(&table, &t, prec, stop_eps, stats);
        acc += rat_to_float(a, prec) * g;
    }
    Ok(acc)
}

/// Λ(s) = N^{s/2} γ(s) L(s) by the smoothed two-sided sum.
fn lambda_value(
    spec: &LSeriesSpec,
    s: &Rat,
    sign: i32,
    n_terms: usize,
    prec: u32,
    stats: &mut f64,
) -> Result<Float, String> {
    let w1 = Rat::from_integer((spec.motivic_weight + 1).into());
    let s_dual = &w1 - s;
    for (loc, _) in &spec.lambda_poles {
        if loc == s {
            return Err(format!("Λ has a pole at s = {s}"));
        }
    }
    let stop_eps = Float::with_val(prec, 2f64).pow(-(prec as i32) - 8);
    let mut lam = smoothed_sum(spec, s, n_terms, prec, &stop_eps, stats)?;
    let dual = smoothed_sum(spec, &s_dual, n_terms, prec, &stop_eps, stats)?;
    lam += Float::with_val(prec, sign) * dual;
    for (loc, res) in &spec.lambda_poles {
        lam += rat_to_float(res, prec) / rat_to_float(&(s - loc), prec);
    }
    Ok(lam)
}

/// Solve for the sign by matching the smoothed sum against the plain
/// Dirichlet series at two points of absolute convergence.
fn solve_sign(spec: &LSeriesSpec, digits: u32) -> Result<i32, String> {
    let w = spec.motivic_weight;
    let g = spec.growth_exponent;
    let base = w + 1 + g.ceil() as i64 + 2;
    let mut points = Vec::new();
    for cand in base..base + 12 {
        let s = Rat::from_integer(cand.into());
        let dual = Rat::from_integer((w + 1 - cand).into());
        if !gamma_has_pole(&spec.gamma_r_shifts, &s)
            && !gamma_has_pole(&spec.gamma_r_shifts, &dual)
        {
            points.push(s);
        }
        if points.len() == 2 {
            break;
        }
    }
    if points.len() < 2 {
        return Err("unknown sign: no usable consistency points".into());
    }
    let mut estimates = Vec::new();
    for s in &points {
        let s64 = rat_to_float(s, 64).to_f64();
        // Direct-series tail: C·Σ_{n>N} n^{g−σ} ≈ C·N^{g−σ+1}/(σ−g−1).
        let n_avail = spec.dirichlet_coeffs.len() as f64;
        let tail = n_avail.powf(g - s64 + 1.0) / (s64 - g - 1.0);
        if tail > 10f64.powi(-(digits as i32)) {
            return Err(format!(
                "unknown sign and insufficient coefficients to solve: need the \
                 Dirichlet tail below 1e-{digits} at s = {s}, have ~{tail:.3e} \
                 with {} coefficients",
                spec.dirichlet_coeffs.len()
            ));
        }
        let n_terms = truncation_point(spec, s, digits).min(spec.dirichlet_coeffs.len());
        // Precision must absorb the internal cancellation of the residue
        // series at the largest argument, exactly as in `numeric_L_value`.
        let d = spec.gamma_r_shifts.len() as f64;
        let tmax = n_terms as f64 / (spec.conductor as f64).sqrt();
        let guard = d * std::f64::consts::PI * tmax.powf(2.0 / d)
            / std::f64::consts::LN_10
            + 25.0;
        let prec = ((digits as f64 + guard) * 3.33) as u32 + 64;
        let mut direct = Float::with_val(prec, 0);
        for (i, a) in spec.dirichlet_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let n = Float::with_val(prec, (i + 1) as u64);
            direct += rat_to_float(a, prec) * n.pow(&(-rat_to_float(s, prec)));
        }
        let gam = gamma_value(&spec.gamma_r_shifts, s, prec);
        let cond = Float::with_val(prec, spec.conductor);
        let lam_direct =
            cond.pow(&(rat_to_float(s, prec) / 2u32)) * gam * direct;
        let stop_eps = Float::with_val(prec, 2f64).pow(-(prec as i32) - 8);
        let mut stats = 0f64;
        let s_dual = Rat::from_integer((w + 1).into()) - s;
        let one_side = smoothed_sum(spec, s, n_terms, prec, &stop_eps, &mut stats)?;
        let dual_side = smoothed_sum(spec, &s_dual, n_terms, prec, &stop_eps, &mut stats)?;
        let mut residual = lam_direct - one_side;
        for (loc, res) in &spec.lambda_poles {
            residual -= rat_to_float(res, prec) / rat_to_float(&(s - loc), prec);
        }
        let eps = residual / dual_side;
        estimates.push(eps.to_f64());
    }
    if (estimates[0] - estimates[1]).abs() > 1e-6 * (1.0 + estimates[0].abs()) {
        return Err(format!(
            "sign solve inconsistent across points: {} vs {}",
            estimates[0], estimates[1]
        ));
    }
    let rounded = estimates[0].round();
    if (estimates[0] - rounded).abs() > 1e-6 || (rounded != 1.0 && rounded != -1.0) {
        return Err(format!("solved sign {} is not ±1", estimates[0]));
    }
    Ok(rounded as i32)
}

/// Numeric L-value at a real rational point from functional-equation data.
///
/// The target precision is `10^{−target_digits}` absolute; the returned
/// error bound combines the truncation estimate with the tracked rounding
/// error and is flagged heuristic (it relies on the declared
/// coefficient-growth bound).
#[allow(non_snake_case)]
pub fn numeric_L_value(
    spec: &LSeriesSpec,
    s: &Rat,
    target_digits: u32,
) -> Result<LValue, String> {
    check_regular(spec, s)?;
    let sign = match spec.sign {
        Some(e) if e == 1 || e == -1 => e,
        Some(e) => return Err(format!("sign {e} is not ±1")),
        // Distinguishing ε = ±1 only needs modest accuracy.
        None => solve_sign(spec, 10)?,
    };
    let n_terms = truncation_point(spec, s, target_digits);
    if spec.dirichlet_coeffs.len() < n_terms {
        return Err(format!(
            "insufficient Dirichlet coefficients: need {n_terms}, have {}",
            spec.dirichlet_coeffs.len()
        ));
    }
    let d = spec.gamma_r_shifts.len() as f64;
    let tmax = n_terms as f64 / (spec.conductor as f64).sqrt();
    let guard_digits =
        d * std::f64::consts::PI * tmax.powf(2.0 / d) / std::f64::consts::LN_10 + 25.0;
    let mut prec = ((target_digits as f64 + guard_digits) * 3.33) as u32 + 64;
    for _attempt in 0..3 {
        let mut max_term = 0f64;
        let lam = lambda_value(spec, s, sign, n_terms, prec, &mut max_term)?;
        let gam = gamma_value(&spec.gamma_r_shifts, s, prec);
        let cond = Float::with_val(prec, spec.conductor);
        let norm = cond.pow(&(rat_to_float(s, prec) / 2u32)) * gam;
        let value = lam / &norm;
        let round_err = max_term * (n_terms as f64) * 2f64.powi(-(prec as i32) + 24)
            / norm.clone().abs().to_f64();
        let trunc_err = 10f64.powi(-(target_digits as i32) - 2);
        if round_err < trunc_err {
            return Ok(LValue {
                value,
                error_bound: trunc_err + round_err,
                rigorous: false,
            });
        }
        prec *= 2;
    }
    Err("failed to reach the target precision after precision escalation".into())
}

/// Functional-equation data of the Riemann zeta function with `n_coeffs`
/// coefficients.
pub fn riemann_zeta_spec(n_coeffs: usize) -> LSeriesSpec {
    LSeriesSpec {
        dirichlet_coeffs: vec![Rat::one(); n_coeffs],
        gamma_r_shifts: vec![0],
        conductor: 1,
        motivic_weight: 0,
        sign: Some(1),
        lambda_poles: vec![
            (Rat::one(), Rat::one()),
            (Rat::zero(), -Rat::one()),
        ],
        growth_exponent: 0.0,
    }
}

/// Functional-equation data of L(s, χ) for a real primitive character χ.
pub fn dirichlet_spec(
    chi: &DirichletCharacter,
    n_coeffs: usize,
) -> Result<LSeriesSpec, String> {
    let cond = chi.conductor();
    let prim = chi.primitive();
    let mut coeffs = Vec::with_capacity(n_coeffs);
    for n in 1..=n_coeffs as i64 {
        let v = prim.evaluate(n);
        let r = v
            .as_rational()
            .ok_or("only real (rational-valued) characters are supported")?;
        coeffs.push(r);
    }
    let even = prim.evaluate(-1).as_rational() == Some(Rat::one());
    Ok(LSeriesSpec {
        dirichlet_coeffs: coeffs,
        gamma_r_shifts: vec![if even { 0 } else { 1 }],
        conductor: cond,
        motivic_weight: 0,
        // Real primitive characters have root number +1.
        sign: Some(1),
        lambda_poles: vec![],
        growth_exponent: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn f(prec: u32, x: f64) -> Float {
        Float::with_val(prec, x)
    }

    /// Degree-1 oracle: G_s(t) for γ = Γ_R(s) equals (πt²)^{−s/2}Γ(s/2, πt²)
    /// (upper incomplete gamma), from φ(y) = 2e^{−πy²}.
    #[test]
    fn weight_matches_incomplete_gamma() {
        let prec = 256;
        for &(s_num, s_den) in &[(2i64, 1i64), (3, 1), (1, 2), (-3, 2), (5, 1)] {
            for &t in &[0.5f64, 1.0, 1.7, 3.0] {
                let s = rat(s_num, s_den);
                let tf = f(prec, t);
                let stop = Float::with_val(prec, 2f64).pow(-(prec as i32));
                let mut stats = 0f64;
                let g = g_weight(&[0], &s, &tf, prec, &stop, &mut stats).unwrap();
                let x = pi(prec) * tf.clone().square();
                let sf = rat_to_float(&s, prec);
                let half_s = Float::with_val(prec, &sf / 2u32);
                let oracle = Float::with_val(prec, x.clone().pow(&(-half_s.clone())))
                    * half_s.gamma_inc(&x);
                let diff = Float::with_val(prec, &g - &oracle).abs().to_f64();
                assert!(
                    diff < 1e-40 * (1.0 + oracle.abs().to_f64()),
                    "G mismatch at s={s}, t={t}: {diff:e}"
                );
            }
        }
    }

    #[test]
    fn zeta_at_two_matches_pi_squared_over_six() {
        let spec = riemann_zeta_spec(64);
        let v = numeric_L_value(&spec, &rat(2, 1), 30).unwrap();
        let prec = v.value.prec();
        let oracle = pi(prec).square() / 6u32;
        let diff = Float::with_val(prec, &v.value - &oracle).abs().to_f64();
        assert!(diff < 1e-28, "ζ(2) off by {diff:e}");
        assert!(diff < 1e-10, "calibration target");
        assert!(!v.rigorous);
        assert!(v.error_bound < 1e-25);
    }

    #[test]
    fn zeta_at_three_matches_builtin() {
        let spec = riemann_zeta_spec(64);
        let v = numeric_L_value(&spec, &rat(3, 1), 30).unwrap();
        let oracle = f(v.value.prec(), 3.0).zeta();
        let diff = Float::with_val(v.value.prec(), &v.value - &oracle)
            .abs()
            .to_f64();
        assert!(diff < 1e-28, "ζ(3) off by {diff:e}");
    }

    #[test]
    fn zeta_special_values_left_of_the_strip() {
        // Reflection exercise: ζ(−1) = −1/12 and ζ(−3) = 1/120.
        let spec = riemann_zeta_spec(64);
        for &(s, num, den) in &[(-1i64, -1i64, 12i64), (-3, 1, 120)] {
            let v = numeric_L_value(&spec, &rat(s, 1), 25).unwrap();
            let oracle = rat_to_float(&rat(num, den), v.value.prec());
            let diff = Float::with_val(v.value.prec(), &v.value - &oracle)
                .abs()
                .to_f64();
            assert!(diff < 1e-22, "ζ({s}) off by {diff:e}");
        }
    }

    #[test]
    fn zeta_sign_solves_to_plus_one() {
        let mut spec = riemann_zeta_spec(4096);
        spec.sign = None;
        let v = numeric_L_value(&spec, &rat(2, 1), 20).unwrap();
        let oracle = pi(v.value.prec()).square() / 6u32;
        let diff = Float::with_val(v.value.prec(), &v.value - &oracle)
            .abs()
            .to_f64();
        assert!(diff < 1e-18);
    }

    #[test]
    fn sign_solve_with_too_few_coefficients_errors() {
        let mut spec = riemann_zeta_spec(8);
        spec.sign = None;
        let err = numeric_L_value(&spec, &rat(2, 1), 20).unwrap_err();
        assert!(err.contains("insufficient"), "got: {err}");
    }

    #[test]
    fn quadratic_character_mod_five_class_number_formula() {
        // L(1, χ₅) = 2·log((1+√5)/2)/√5 (class number 1, fundamental unit
        // (1+√5)/2).
        let chi = DirichletCharacter::quadratic(5);
        let spec = dirichlet_spec(&chi, 64).unwrap();
        let v = numeric_L_value(&spec, &rat(1, 1), 30).unwrap();
        let prec = v.value.prec();
        let sqrt5 = f(prec, 5.0).sqrt();
        let unit = (Float::with_val(prec, 1 + &sqrt5) / 2u32).ln();
        let oracle = Float::with_val(prec, 2 * unit) / &sqrt5;
        let diff = Float::with_val(prec, &v.value - &oracle).abs().to_f64();
        assert!(diff < 1e-27, "L(1, χ₅) off by {diff:e}");
    }

    #[test]
    fn gamma_pole_at_s_is_rejected() {
        let spec = riemann_zeta_spec(64);
        let err = numeric_L_value(&spec, &rat(-2, 1), 20).unwrap_err();
        assert!(err.contains("pole"), "got: {err}");
    }
}


//! Finite-dimensional branching from GL₃ to H = GL₂×GL₁: the irreducible
//! V_{(a,0,−a)} realized as the contraction-free (harmonic) part of
//! Sym^a(V) ⊗ Sym^a(V^∨), its restriction to H embedded block-diagonally,
//! explicit equivariant injections br^{[a,j]} of the H-constituents
//! V^H_{(j,0;−j)}, and the induced bilinear pairing.
//!
//! All linear algebra is exact over Q. Monomials X^m Y^n (|m| = |n| = a)
//! carry torus weight m − n; the Lie algebra acts by
//! E_{kl}·f = X_k ∂f/∂X_l − Y_l ∂f/∂Y_k, and the harmonic subspace is the
//! kernel of the contraction Δ = Σ_i ∂²/∂X_i∂Y_i.

use crate::exact_arith::{rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Exponent triple for one block of variables.
pub type Exp3 = [u32; 3];
/// A monomial X^m Y^n.
pub type Mono = (Exp3, Exp3);
/// Sparse polynomial in the twelve-dimensional ambient model.
pub type Poly = BTreeMap<Mono, Rat>;

/// The GL₃ irreducible with highest weight (a, 0, −a) in the polynomial model.
#[derive(Clone, Debug)]
pub struct Gl3Irrep {
    pub weight_a: u32,
    pub dimension: u64,
}

impl Gl3Irrep {
    pub fn new(a: u32) -> Self {
        Gl3Irrep { weight_a: a, dimension: dimension(a) }
    }
}

/// An H = GL₂×GL₁ irreducible labelled (r, s; t): GL₂ highest weight (r, s)
/// tensored with the GL₁ character z^t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HWeightRep {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

impl HWeightRep {
    pub fn dimension(&self) -> u64 {
        (self.r - self.s + 1) as u64
    }
}

/// Multiplicity table of the restriction, keyed by the label pair (i, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingDecomp {
    pub weight_a: u32,
    pub table: BTreeMap<(u32, u32), u64>,
}

impl BranchingDecomp {
    pub fn constituent(i: u32, j: u32) -> HWeightRep {
        HWeightRep { r: j as i64, s: -(i as i64), t: i as i64 - j as i64 }
    }

    pub fn total_dimension(&self) -> u64 {
        self.table
            .iter()
            .map(|(&(i, j), &m)| m * Self::constituent(i, j).dimension())
            .sum()
    }
}

/// Weyl dimension of V_{(a,0,−a)}.
pub fn dimension(a: u32) -> u64 {
    ((a + 1) as u64).pow(3)
}

// ---------------------------------------------------------------------------
// polynomial model
// ---------------------------------------------------------------------------

/// All exponent triples of total degree d.
pub fn exponents3(d: u32) -> Vec<Exp3> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

fn poly_add_term(p: &mut Poly, m: Mono, c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(m).or_insert_with(Rat::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&m);
    }
}

pub fn poly_scale(p: &Poly, c: &Rat) -> Poly {
    if c.is_zero() {
        return Poly::new();
    }
    p.iter().map(|(m, v)| (*m, v * c)).collect()
}

pub fn poly_add(p: &Poly, q: &Poly) -> Poly {
    let mut out = p.clone();
    for (m, c) in q {
        poly_add_term(&mut out, *m, c.clone());
    }
    out
}

/// Contraction Δf = Σ_i ∂²f/∂X_i∂Y_i, mapping bidegree (a,a) to (a−1,a−1).
pub fn contraction(p: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((m, n), c) in p {
        for i in 0..3 {
            if m[i] > 0 && n[i] > 0 {
                let mut m2 = *m;
                let mut n2 = *n;
                m2[i] -= 1;
                n2[i] -= 1;
                poly_add_term(
                    &mut out,
                    (m2, n2),
                    c * rat_int((m[i] as i64) * (n[i] as i64)),
                );
            }
        }
    }
    out
}

/// Lie algebra action E_{kl}·f = X_k ∂f/∂X_l − Y_l ∂f/∂Y_k (0-based k, l).
pub fn lie_e(k: usize, l: usize, p: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((m, n), c) in p {
        if m[l] > 0 {
            let mut m2 = *m;
            m2[l] -= 1;
            m2[k] += 1;
            poly_add_term(&mut out, (m2, *n), c * rat_int(m[l] as i64));
        }
        if n[k] > 0 {
            let mut n2 = *n;
            n2[k] -= 1;
            n2[l] += 1;
            poly_add_term(&mut out, (*m, n2), -(c * rat_int(n[k] as i64)));
        }
    }
    out
}

/// Group action: X_i ↦ Σ_j g_{ji}X_j, Y_i ↦ Σ_j (g^{−1})_{ij}Y_j, extended
/// multiplicatively. `g` is a rational 3×3 matrix with nonzero determinant.
pub fn group_action(g: &[[Rat; 3]; 3], p: &Poly) -> Poly {
    let ginv = invert3(g).expect("group element must be invertible");
    // linear images of the generators
    let x_img: Vec<Poly> = (0..3)
        .map(|i| {
            let mut q = Poly::new();
            for j in 0..3 {
                let mut m = [0u32; 3];
                m[j] = 1;
                poly_add_term(&mut q, (m, [0, 0, 0]), g[j][i].clone());
            }
            q
        })
        .collect();
    let y_img: Vec<Poly> = (0..3)
        .map(|i| {
            let mut q = Poly::new();
            for j in 0..3 {
                let mut n = [0u32; 3];
                n[j] = 1;
                poly_add_term(&mut q, ([0, 0, 0], n), ginv[i][j].clone());
            }
            q
        })
        .collect();
    let mut out = Poly::new();
    for ((m, n), c) in p {
        let mut term = Poly::new();
        term.insert(([0, 0, 0], [0, 0, 0]), c.clone());
        for i in 0..3 {
            for _ in 0..m[i] {
                term = poly_mul(&term, &x_img[i]);
            }
            for _ in 0..n[i] {
                term = poly_mul(&term, &y_img[i]);
            }
        }
        out = poly_add(&out, &term);
    }
    out
}

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((m1, n1), c1) in p {
        for ((m2, n2), c2) in q {
            let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
            let n = [n1[0] + n2[0], n1[1] + n2[1], n1[2] + n2[2]];
            poly_add_term(&mut out, (m, n), c1 * c2);
        }
    }
    out
}

fn invert3(g: &[[Rat; 3]; 3]) -> Option<[[Rat; 3]; 3]> {
    let det = |a: &Rat, b: &Rat, c: &Rat, d: &Rat| a * d - b * c;
    let mut cof = [[Rat::zero(), Rat::zero(), Rat::zero()],
        [Rat::zero(), Rat::zero(), Rat::zero()],
        [Rat::zero(), Rat::zero(), Rat::zero()]];
    let mut d3 = Rat::zero();
    for i in 0..3 {
        for j in 0..3 {
            let r = [(i + 1) % 3, (i + 2) % 3];
            let c = [(j + 1) % 3, (j + 2) % 3];
            // cofactor with cyclic index choice carries the sign implicitly
            cof[j][i] = det(&g[r[0]][c[0]], &g[r[0]][c[1]], &g[r[1]][c[0]], &g[r[1]][c[1]]);
        }
        d3 += &g[i][0] * &cof[0][i];
    }
    if d3.is_zero() {
        return None;
    }
    let mut out = cof;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v /= &d3;
        }
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// exact linear algebra
// ---------------------------------------------------------------------------

/// Kernel basis of the matrix given by rows, as vectors of length `ncols`.
pub fn rational_kernel(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut r = 0usize;
    for c in 0..ncols {
        let mut piv = None;
        for i in r..nrows {
            if !m[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in 0..ncols {
                    let s = &m[r][cc] * &f;
                    m[i][cc] -= s;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let mut basis = Vec::new();
    for c in 0..ncols {
        if pivot_of_col[c].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[c] = Rat::one();
        for pc in 0..ncols {
            if let Some(pr) = pivot_of_col[pc] {
                v[pc] = -m[pr][c].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of the matrix given by rows.
pub fn rational_rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    ncols - rational_kernel(rows, ncols).len()
}

// ---------------------------------------------------------------------------
// restriction via character arithmetic
// ---------------------------------------------------------------------------

/// Torus weight multiplicities of V_{(a,0,−a)}: the multiset difference of
/// the Sym^a ⊗ Sym^a∨ weights and the Sym^{a−1} ⊗ Sym^{a−1,∨} weights.
pub fn weight_multiplicities(a: u32) -> BTreeMap<(i64, i64, i64), i64> {
    let pair_weights = |d: u32| -> BTreeMap<(i64, i64, i64), i64> {
        let mut out = BTreeMap::new();
        for m in exponents3(d) {
            for n in exponents3(d) {
                let w = (
                    m[0] as i64 - n[0] as i64,
                    m[1] as i64 - n[1] as i64,
                    m[2] as i64 - n[2] as i64,
                );
                *out.entry(w).or_insert(0) += 1;
            }
        }
        out
    };
    let mut out = pair_weights(a);
    if a > 0 {
        for (w, c) in pair_weights(a - 1) {
            let e = out.get_mut(&w).expect("lower weights embed");
            *e -= c;
            if *e == 0 {
                out.remove(&w);
            }
        }
    }
    out
}

/// Decompose the restriction of V_{(a,0,−a)} to H into the (i, j)-labelled
/// constituents by highest-weight peeling of the GL₂×GL₁ character.
pub fn restrict_decompose(v: &Gl3Irrep) -> BranchingDecomp {
    let a = v.weight_a;
    let wm = weight_multiplicities(a);
    let get = |r: i64, s: i64, t: i64| -> i64 { *wm.get(&(r, s, t)).unwrap_or(&0) };
    let mut table = BTreeMap::new();
    for i in 0..=a {
        for j in 0..=a {
            let c = BranchingDecomp::constituent(i, j);
            // multiplicity of the GL₂ irrep (r, s) in a character equals
            // m(r,s) − m(r+1, s−1) at fixed GL₁ weight t
            let mult = get(c.r, c.s, c.t) - get(c.r + 1, c.s - 1, c.t);
            assert!(mult >= 0, "negative multiplicity: character peeling failed");
            if mult > 0 {
                table.insert((i, j), mult as u64);
            }
        }
    }
    BranchingDecomp { weight_a: a, table }
}

// ---------------------------------------------------------------------------
// the branching maps br^{[a,j]}
// ---------------------------------------------------------------------------

/// All H-highest-weight vectors of H-type (j, 0; −j) inside the harmonic
/// model of V_{(a,0,−a)}: the solutions of Δv = 0, E₁₂v = 0 within the
/// GL₃-torus weight space (j, 0, −j). Multiplicity one predicts exactly one
/// solution up to scalar.
pub fn h_highest_vectors(a: u32, j: u32) -> Vec<Poly> {
    assert!(j <= a);
    // candidate monomials: m − n = (j, 0, −j), |m| = |n| = a
    let mut candidates: Vec<Mono> = Vec::new();
    for n in exponents3(a) {
        if n[0] + j <= a && n[2] >= j {
            let m = [n[0] + j, n[1], n[2] - j];
            candidates.push((m, n));
        }
    }
    let images: Vec<(Poly, Poly)> = candidates
        .iter()
        .map(|mono| {
            let mut p = Poly::new();
            p.insert(*mono, Rat::one());
            (contraction(&p), lie_e(0, 1, &p))
        })
        .collect();
    // assemble the constraint matrix: rows = output monomials of both maps
    let mut row_index: BTreeMap<(usize, Mono), usize> = BTreeMap::new();
    for (d, e) in &images {
        for m in d.keys() {
            let l = row_index.len();
            row_index.entry((0, *m)).or_insert(l);
        }
        for m in e.keys() {
            let l = row_index.len();
            row_index.entry((1, *m)).or_insert(l);
        }
    }
    let mut rows = vec![vec![Rat::zero(); candidates.len()]; row_index.len()];
    for (col, (d, e)) in images.iter().enumerate() {
        for (m, c) in d {
            rows[row_index[&(0, *m)]][col] = c.clone();
        }
        for (m, c) in e {
            rows[row_index[&(1, *m)]][col] = c.clone();
        }
    }
    rational_kernel(&rows, candidates.len())
        .into_iter()
        .map(|v| {
            let mut p = Poly::new();
            for (mono, c) in candidates.iter().zip(v) {
                poly_add_term(&mut p, *mono, c);
            }
            p
        })
        .collect()
}

/// Clear denominators and divide by content so that the polynomial has
/// coprime integer coefficients with positive leading (lexicographically
/// first) coefficient.
pub fn primitive_normalize(p: &Poly) -> Poly {
    assert!(!p.is_empty());
    let mut den = BigInt::one();
    for c in p.values() {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let mut num = BigInt::zero();
    for c in p.values() {
        num = num_integer::gcd(num, (c * Rat::from_integer(den.clone())).to_integer());
    }
    let mut scale = Rat::new(den, num);
    if p.values().next().unwrap().is_negative() {
        scale = -scale;
    }
    poly_scale(p, &scale)
}

/// The explicit branching map br^{[a,j]}: images of the source basis
/// U₁^{j−k}U₂^k (k = 0..j) of V^H_{(j,0;−j)}, obtained from the primitive
/// normalized H-highest vector w₀ by the lowering recursion
/// w_{k+1} = E₂₁·w_k/(j−k). Errors if the solution space of the
/// equivariance equations is not one-dimensional.
pub fn br_map(a: u32, j: u32) -> Result<Vec<Poly>, String> {
    let hw = h_highest_vectors(a, j);
    if hw.len() != 1 {
        return Err(format!(
            "equivariance solution space for (a, j) = ({a}, {j}) has dimension {}",
            hw.len()
        ));
    }
    let w0 = primitive_normalize(&hw[0]);
    let mut out = vec![w0];
    for k in 0..j {
        let lowered = lie_e(1, 0, &out[k as usize]);
        out.push(poly_scale(&lowered, &(rat_int(1) / rat_int((j - k) as i64))));
    }
    Ok(out)
}

/// Images of the divided-power lattice basis C(j,k)·U₁^{j−k}U₂^k, i.e.
/// E₂₁^{(k)}·w₀; these are the vectors whose integrality realizes the
/// minimal-into-maximal lattice property.
pub fn br_lattice_images(a: u32, j: u32) -> Result<Vec<Poly>, String> {
    let br = br_map(a, j)?;
    Ok(br
        .iter()
        .enumerate()
        .map(|(k, w)| poly_scale(w, &Rat::from_integer(binomial(j as u64, k as u64))))
        .collect())
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// Invariant pairing on the ambient model: ⟨f, g⟩ = Σ_{m,n} f_{m,n}·g_{n,m}·m!·n!,
/// the contraction of Sym^aV⊗Sym^aV^∨ against its factor-swapped dual.
pub fn invariant_pairing(f: &Poly, g: &Poly) -> Rat {
    let fact = |m: &Exp3| -> Rat {
        let mut v = BigInt::one();
        for &e in m {
            for i in 2..=e as u64 {
                v *= BigInt::from(i);
            }
        }
        Rat::from_integer(v)
    };
    let mut acc = Rat::zero();
    for ((m, n), c) in f {
        if let Some(d) = g.get(&(*n, *m)) {
            acc += c * d * fact(m) * fact(n);
        }
    }
    acc
}

/// The bilinear pairing ⟨μ, v⟩_{a,j} = μ(br^{[a,j]}(v)): μ is a functional
/// on V_λ presented through the invariant pairing by an ambient polynomial,
/// v a coefficient vector in the basis U₁^{j−k}U₂^k. The ‖ν₁^j‖ twist is a
/// scalar normalization, taken to be 1 here.
pub fn pairing_aj(a: u32, j: u32, mu: &Poly, v: &[Rat]) -> Result<Rat, String> {
    let br = br_map(a, j)?;
    if v.len() != (j + 1) as usize {
        return Err(format!("v must have length {}", j + 1));
    }
    let mut image = Poly::new();
    for (c, w) in v.iter().zip(&br) {
        image = poly_add(&image, &poly_scale(w, c));
    }
    Ok(invariant_pairing(mu, &image))
}

/// Dimension of the harmonic subspace, computed as the kernel dimension of
/// the contraction on the ambient bidegree-(a,a) space.
pub fn harmonic_dimension(a: u32) -> usize {
    let basis: Vec<Mono> = {
        let mut v = Vec::new();
        for m in exponents3(a) {
            for n in exponents3(a) {
                v.push((m, n));
            }
        }
        v
    };
    let mut row_index: BTreeMap<Mono, usize> = BTreeMap::new();
    let images: Vec<Poly> = basis
        .iter()
        .map(|mono| {
            let mut p = Poly::new();
            p.insert(*mono, Rat::one());
            let d = contraction(&p);
            for m in d.keys() {
                let l = row_index.len();
                row_index.entry(*m).or_insert(l);
            }
            d
        })
        .collect();
    let mut rows = vec![vec![Rat::zero(); basis.len()]; row_index.len()];
    for (col, d) in images.iter().enumerate() {
        for (m, c) in d {
            rows[row_index[m]][col] = c.clone();
        }
    }
    rational_kernel(&rows, basis.len()).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rmat(entries: [[i64; 3]; 3]) -> [[Rat; 3]; 3] {
        entries.map(|row| row.map(rat_int))
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(dimension(0), 1);
        assert_eq!(dimension(1), 8);
        assert_eq!(dimension(2), 27);
    }

    #[test]
    fn harmonic_model_has_weyl_dimension() {
        for a in 0..=3u32 {
            assert_eq!(harmonic_dimension(a) as u64, dimension(a), "a = {a}");
        }
    }

    #[test]
    fn weight_multiplicities_sum_to_dimension() {
        for a in 0..=4u32 {
            let total: i64 = weight_multiplicities(a).values().sum();
            assert_eq!(total as u64, dimension(a));
        }
    }

    #[test]
    fn restriction_is_multiplicity_free_all_ones() {
        for a in 0..=4u32 {
            let d = restrict_decompose(&Gl3Irrep::new(a));
            assert_eq!(d.table.len() as u64, ((a + 1) as u64).pow(2));
            assert!(d.table.values().all(|&m| m == 1), "a = {a}");
            assert_eq!(d.total_dimension(), dimension(a));
        }
    }

    #[test]
    fn restriction_a1_constituent_dims() {
        let d = restrict_decompose(&Gl3Irrep::new(1));
        let mut dims: Vec<u64> = d
            .table
            .keys()
            .map(|&(i, j)| BranchingDecomp::constituent(i, j).dimension())
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 2, 3]);
    }

    #[test]
    fn dimension_bookkeeping_identity() {
        // Σ_{(i,j)∈[0,a]²} (i+j+1) = (a+1)³
        for a in 0..=12u64 {
            let mut total = 0u64;
            for i in 0..=a {
                for j in 0..=a {
                    total += i + j + 1;
                }
            }
            assert_eq!(total, (a + 1).pow(3));
        }
    }

    #[test]
    fn multiplicity_one_exact_kernels() {
        for a in 0..=4u32 {
            for j in 0..=a {
                assert_eq!(
                    h_highest_vectors(a, j).len(),
                    1,
                    "multiplicity-one failed at (a, j) = ({a}, {j})"
                );
            }
        }
    }

    #[test]
    fn br_map_a0_is_identity_scalar() {
        let br = br_map(0, 0).unwrap();
        assert_eq!(br.len(), 1);
        let mut expect = Poly::new();
        expect.insert(([0, 0, 0], [0, 0, 0]), Rat::one());
        assert_eq!(br[0], expect);
    }

    #[test]
    fn br_images_are_harmonic() {
        for a in 1..=3u32 {
            for j in 0..=a {
                for w in br_map(a, j).unwrap() {
                    assert!(contraction(&w).is_empty());
                }
            }
        }
    }

    /// ρ_src for (h, z) on the basis U₁^{j−k}U₂^k of Sym^j(C²)⊗z^{−j}:
    /// U_i ↦ Σ h_{li}U_l, times z^{−j}.
    fn source_action(j: u32, h: [[Rat; 2]; 2], z: &Rat, v: &[Rat]) -> Vec<Rat> {
        // expand (h·U₁)^{j−k}(h·U₂)^k in the monomial basis
        let mut out = vec![Rat::zero(); (j + 1) as usize];
        let zf = Rat::one() / z.clone().pow(j as i32);
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (h00 U1 + h10 U2)^{j−k} (h01 U1 + h11 U2)^k
            let mut acc: Vec<Rat> = vec![Rat::one()]; // coeffs in U2-degree
            for _ in 0..(j as usize - k) {
                acc = mul_lin(&acc, &h[0][0], &h[1][0]);
            }
            for _ in 0..k {
                acc = mul_lin(&acc, &h[0][1], &h[1][1]);
            }
            for (deg2, t) in acc.iter().enumerate() {
                out[deg2] += c * t * &zf;
            }
        }
        out
    }

    fn mul_lin(acc: &[Rat], c1: &Rat, c2: &Rat) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); acc.len() + 1];
        for (d, c) in acc.iter().enumerate() {
            out[d] += c * c1;
            out[d + 1] += c * c2;
        }
        out
    }

    #[test]
    fn br_equivariance_on_integral_generators() {
        // generators: T = [[1,1],[0,1]], S = [[0,−1],[1,0]], diag(1,−1),
        // and the GL₁ element z = −1
        let gens: Vec<([[i64; 2]; 2], i64)> = vec![
            ([[1, 1], [0, 1]], 1),
            ([[0, -1], [1, 0]], 1),
            ([[1, 0], [0, -1]], 1),
            ([[1, 0], [0, 1]], -1),
            ([[2, 0], [0, 1]], 3),
        ];
        for a in 1..=3u32 {
            for j in 0..=a {
                let br = br_map(a, j).unwrap();
                for (h, z) in &gens {
                    let hq = h.map(|r| r.map(rat_int));
                    let zq = rat_int(*z);
                    let g3 = rmat([
                        [h[0][0], h[0][1], 0],
                        [h[1][0], h[1][1], 0],
                        [0, 0, *z],
                    ]);
                    for k in 0..=(j as usize) {
                        let mut e_k = vec![Rat::zero(); (j + 1) as usize];
                        e_k[k] = Rat::one();
                        let src = source_action(j, hq.clone(), &zq, &e_k);
                        let mut lhs = Poly::new();
                        for (c, w) in src.iter().zip(&br) {
                            lhs = poly_add(&lhs, &poly_scale(w, c));
                        }
                        let rhs = group_action(&g3, &br[k]);
                        assert_eq!(
                            lhs, rhs,
                            "equivariance failed at (a,j,k)=({a},{j},{k}), h={h:?}, z={z}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn br_lattice_integrality() {
        for a in 0..=4u32 {
            for j in 0..=a {
                for w in br_lattice_images(a, j).unwrap() {
                    for c in w.values() {
                        assert!(
                            c.denom().is_one(),
                            "non-integral coefficient {c} at (a, j) = ({a}, {j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn invariant_pairing_is_equivariant() {
        // ⟨g·f, g·h⟩ = ⟨f, h⟩ for a non-monomial sample and a generic g
        let g = rmat([[1, 2, 0], [0, 1, 3], [1, 0, 1]]);
        let mut f = Poly::new();
        f.insert(([2, 0, 0], [0, 1, 1]), rat_int(1));
        f.insert(([1, 1, 0], [0, 0, 2]), rat_int(-3));
        let mut h = Poly::new();
        h.insert(([0, 1, 1], [2, 0, 0]), rat_int(2));
        h.insert(([0, 0, 2], [1, 1, 0]), rat_int(5));
        h.insert(([0, 2, 0], [0, 2, 0]), rat_int(7));
        let lhs = invariant_pairing(&group_action(&g, &f), &group_action(&g, &h));
        assert_eq!(lhs, invariant_pairing(&f, &h));
    }

    #[test]
    fn pairing_trivial_normalization() {
        // j = 0: μ = swap-dual of the image of the trivial H-vector, scaled
        // so the pairing value is 1
        let a = 2u32;
        let br = br_map(a, 0).unwrap();
        let w0 = &br[0];
        let norm = invariant_pairing(w0, w0);
        assert!(!norm.is_zero());
        let mu = poly_scale(w0, &(Rat::one() / norm));
        let val = pairing_aj(a, 0, &mu, &[Rat::one()]).unwrap();
        assert_eq!(val, Rat::one());
    }

    #[test]
    fn pairing_kills_other_isotypic_components() {
        // μ built from the (i, j) = (0, 0) constituent of V_{(2,0,−2)}
        // pairs to zero against the image of br^{[2,2]}
        let a = 2u32;
        let triv = &h_highest_vectors(a, 0)[0];
        let mu = primitive_normalize(triv);
        for k in 0..=2usize {
            let mut v = vec![Rat::zero(); 3];
            v[k] = Rat::one();
            assert_eq!(pairing_aj(a, 2, &mu, &v).unwrap(), Rat::zero());
        }
    }

    #[test]
    fn pairing_is_bilinear() {
        let a = 2u32;
        let br = br_map(a, 1).unwrap();
        let mu1 = br[0].clone();
        let mu2 = poly_scale(&br[1], &rat_int(3));
        let v1 = vec![rat_int(1), rat_int(2)];
        let v2 = vec![rat_int(-1), rat_int(5)];
        let sum_mu = poly_add(&mu1, &mu2);
        assert_eq!(
            pairing_aj(a, 1, &sum_mu, &v1).unwrap(),
            pairing_aj(a, 1, &mu1, &v1).unwrap() + pairing_aj(a, 1, &mu2, &v1).unwrap()
        );
        let v_sum: Vec<Rat> = v1.iter().zip(&v2).map(|(x, y)| x + y).collect();
        assert_eq!(
            pairing_aj(a, 1, &mu1, &v_sum).unwrap(),
            pairing_aj(a, 1, &mu1, &v1).unwrap() + pairing_aj(a, 1, &mu1, &v2).unwrap()
        );
    }

    #[test]
    fn group_action_respects_harmonicity() {
        // the contraction commutes with the action: Δ(g·f) = g·Δf
        let g = rmat([[2, 1, 0], [1, 1, 0], [0, 3, 1]]);
        let mut f = Poly::new();
        f.insert(([2, 0, 0], [0, 1, 1]), rat_int(1));
        f.insert(([1, 1, 0], [1, 0, 1]), rat_int(4));
        assert_eq!(contraction(&group_action(&g, &f)), group_action(&g, &contraction(&f)));
    }
}

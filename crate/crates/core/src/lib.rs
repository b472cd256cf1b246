//! Exact-arithmetic building blocks for the computable core of p-adic
//! L-functions on GL(3).
//!
//! The library is organised in layers:
//!
//! * [`exact_arith`] — capped-precision p-adic numbers, cyclotomic field
//!   elements, quadratic extensions of Q, two-variable Laurent-rational
//!   functions, and symbolic periods r·(2πi)^k·Γ(m).
//! * [`characters`] — Dirichlet characters, Gauss sums, conductors, parity,
//!   decomposition at a prime, and tame p-adic embeddings.
//! * [`iwasawa`] — group rings Z_p[(Z/p^n)^×], norm-compatible towers,
//!   eigenvalue rescaling to measures, smoothing factors and twist relations.
//! * [`gl3_local`] — Satake parameters, Hecke eigenvalues, refinements and
//!   ordinarity, critical sets, the modified Euler factors e_p and e_∞,
//!   refined-newvector torus values, and level-index combinatorics.
//! * [`zeta_local`] — nonarchimedean Rankin–Selberg zeta integrals: the
//!   brute-force torus sums, closed forms, γ-factors, and the spherical
//!   normalisation.
//! * [`branching`] — explicit GL₃ → GL₂×GL₁ branching laws with exact
//!   intertwiners and the associated pairing.
//! * [`eisenstein`] — Schwartz-function calculus on (Z/M)², Eisenstein
//!   q-expansions, distribution relations, c-smoothing, Kummer congruences.
//! * [`symsq`] — the symmetric-square pipeline: Satake lifts of modular
//!   forms, numeric L-values, interpolation factors, algebraicity checks.

pub mod exact_arith;
pub mod characters;
pub mod iwasawa;
pub mod gl3_local;
pub mod zeta_local;
pub mod branching;
pub mod eisenstein;
pub mod numeric;
pub mod symsq;

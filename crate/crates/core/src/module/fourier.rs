//! Fourier coefficients, partial sums, the residual identity, the finite
//! Bessel inequality, net terms and monotonicity, and the optimality of
//! Fourier coefficients — all as exact computations.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{negativity_witness, PPoly};
use crate::error::ModuleError;
use crate::rat::Rat;

use super::{inner_product, ModuleVector, OrthoSystem};

/// `⟨e_i, x⟩`, the coefficient of `x` along the `i`-th system vector.
pub fn fourier_coefficient(
    system: &OrthoSystem,
    x: &ModuleVector,
    i: u64,
) -> Result<PPoly, ModuleError> {
    let e = system.vector(i)?;
    inner_product(system.context(), &e, x)
}

/// The partial sum `S_F = Σ_{i∈F} e_i ⟨e_i, x⟩`, exact.
pub fn partial_sum(
    system: &OrthoSystem,
    x: &ModuleVector,
    f_set: &BTreeSet<u64>,
) -> Result<ModuleVector, ModuleError> {
    let ctx = system.context();
    let mut acc = ModuleVector::zero(ctx);
    for i in f_set {
        let e = system.vector(*i)?;
        let coeff = inner_product(ctx, &e, x)?;
        acc = acc.add(&e.scale(ctx, &coeff)?)?;
    }
    Ok(acc)
}

/// Both sides of the residual identity
/// `⟨x−S_F, x−S_F⟩ = ⟨x,x⟩ − 2Σ⟨x,e_i⟩⟨e_i,x⟩ + Σ⟨x,e_i⟩⟨e_i,e_i⟩⟨e_i,x⟩`,
/// computed independently; `equal` must hold for every orthogonal system,
/// which makes this operation its own test oracle.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualIdentity {
    pub lhs: PPoly,
    pub rhs: PPoly,
    pub equal: bool,
}

pub fn residual_identity_check(
    system: &OrthoSystem,
    x: &ModuleVector,
    f_set: &BTreeSet<u64>,
) -> Result<ResidualIdentity, ModuleError> {
    let indices: Vec<u64> = f_set.iter().copied().collect();
    system.ensure_orthogonal(&indices)?;
    let ctx = system.context();

    let residual = x.sub(&partial_sum(system, x, f_set)?)?;
    let lhs = inner_product(ctx, &residual, &residual)?;

    let mut rhs = inner_product(ctx, x, x)?;
    for i in f_set {
        let e = system.vector(*i)?;
        let xe = inner_product(ctx, x, &e)?;
        let ex = inner_product(ctx, &e, x)?;
        let ee = inner_product(ctx, &e, &e)?;
        let b_term = xe.mul(&ex)?;
        let c_term = xe.mul(&ee)?.mul(&ex)?;
        rhs = rhs.sub(&b_term.scale(&Rat::int(2)))?.add(&c_term)?;
    }
    let equal = lhs == rhs;
    Ok(ResidualIdentity { lhs, rhs, equal })
}

/// Outcome of the finite Bessel inequality `Σ_F ⟨x,e_i⟩⟨e_i,x⟩ ≤ ⟨x,x⟩`.
/// A failing witness point indicates a bug, never a valid input.
#[derive(Clone, Debug, Serialize)]
pub struct BesselReport {
    pub holds: bool,
    /// `⟨x,x⟩ − B_F`, the exact slack.
    pub slack: PPoly,
    pub witness: Option<Rat>,
}

pub fn bessel_check(
    system: &OrthoSystem,
    x: &ModuleVector,
    f_set: &BTreeSet<u64>,
) -> Result<BesselReport, ModuleError> {
    let indices: Vec<u64> = f_set.iter().copied().collect();
    system.ensure_norm_one(&indices)?;
    let ctx = system.context();
    let mut slack = inner_product(ctx, x, x)?;
    for i in f_set {
        let e = system.vector(*i)?;
        let xe = inner_product(ctx, x, &e)?;
        let ex = inner_product(ctx, &e, x)?;
        slack = slack.sub(&xe.mul(&ex)?)?;
    }
    let holds = slack.is_nonneg();
    let witness = if holds {
        None
    } else {
        negativity_witness(&slack)
    };
    Ok(BesselReport {
        holds,
        slack,
        witness,
    })
}

/// The three net terms over a finite index set:
/// `B_F = Σ ⟨x,e_i⟩⟨e_i,x⟩`, `C_F = Σ ⟨x,e_i⟩⟨e_i,e_i⟩⟨e_i,x⟩`,
/// `A_F = 2B_F − C_F`.
#[derive(Clone, Debug, Serialize)]
pub struct NetTerms {
    pub a: PPoly,
    pub b: PPoly,
    pub c: PPoly,
}

pub fn net_terms(
    system: &OrthoSystem,
    x: &ModuleVector,
    f_set: &BTreeSet<u64>,
) -> Result<NetTerms, ModuleError> {
    let indices: Vec<u64> = f_set.iter().copied().collect();
    system.ensure_bounded_by_one(&indices)?;
    let ctx = system.context();
    let algebra = ctx.algebra();
    let mut b = PPoly::zero(&algebra);
    let mut c = PPoly::zero(&algebra);
    for i in f_set {
        let e = system.vector(*i)?;
        let xe = inner_product(ctx, x, &e)?;
        let ex = inner_product(ctx, &e, x)?;
        let ee = inner_product(ctx, &e, &e)?;
        b = b.add(&xe.mul(&ex)?)?;
        c = c.add(&xe.mul(&ee)?.mul(&ex)?)?;
    }
    let a = b.scale(&Rat::int(2)).sub(&c)?;
    Ok(NetTerms { a, b, c })
}

/// Monotonicity of the net `A_F` along `F ⊆ G`, and the lower bound
/// `B_F − C_F ≤ A_F`, both exact.
#[derive(Clone, Debug, Serialize)]
pub struct NetMonotonicity {
    pub monotone: bool,
    pub lower_bound_ok: bool,
}

pub fn net_monotonicity_check(
    system: &OrthoSystem,
    x: &ModuleVector,
    f_set: &BTreeSet<u64>,
    g_set: &BTreeSet<u64>,
) -> Result<NetMonotonicity, ModuleError> {
    if !f_set.is_subset(g_set) {
        return Err(ModuleError::NotASubset);
    }
    let tf = net_terms(system, x, f_set)?;
    let tg = net_terms(system, x, g_set)?;
    let monotone = tg.a.sub(&tf.a)?.is_nonneg();
    let lower_bound_ok = tf.a.sub(&tf.b.sub(&tf.c)?)?.is_nonneg();
    Ok(NetMonotonicity {
        monotone,
        lower_bound_ok,
    })
}

/// Exact gap between the Gram residual of arbitrary coefficients and the
/// Fourier residual, for an orthonormal system:
/// `gap = ⟨x−Σe_ia_i, ·⟩ − ⟨x−S_F, ·⟩ = Σ (a_i − ⟨e_i,x⟩)²`.
#[derive(Clone, Debug, Serialize)]
pub struct OptimalityReport {
    pub gap: PPoly,
    /// Whether the gap equals the sum of squared coefficient deviations,
    /// an identity that must always hold.
    pub matches_square_sum: bool,
    /// True iff every supplied coefficient equals the Fourier coefficient.
    pub equality: bool,
}

pub fn optimality_gap(
    system: &OrthoSystem,
    x: &ModuleVector,
    f_set: &BTreeSet<u64>,
    coeffs: &BTreeMap<u64, PPoly>,
) -> Result<OptimalityReport, ModuleError> {
    let indices: Vec<u64> = f_set.iter().copied().collect();
    system.ensure_orthonormal(&indices)?;
    let ctx = system.context();
    let algebra = ctx.algebra();
    let zero = PPoly::zero(&algebra);

    // Residual with the supplied coefficients.
    let mut combo = ModuleVector::zero(ctx);
    for i in f_set {
        let a_i = coeffs.get(i).unwrap_or(&zero);
        combo = combo.add(&system.vector(*i)?.scale(ctx, a_i)?)?;
    }
    let r_any = x.sub(&combo)?;
    let gram_any = inner_product(ctx, &r_any, &r_any)?;

    // Fourier residual.
    let r_fourier = x.sub(&partial_sum(system, x, f_set)?)?;
    let gram_fourier = inner_product(ctx, &r_fourier, &r_fourier)?;

    let gap = gram_any.sub(&gram_fourier)?;

    let mut square_sum = PPoly::zero(&algebra);
    let mut equality = true;
    for i in f_set {
        let e = system.vector(*i)?;
        let fourier = inner_product(ctx, &e, x)?;
        let a_i = coeffs.get(i).unwrap_or(&zero);
        let dev = a_i.sub(&fourier)?;
        if !dev.is_zero_fn() {
            equality = false;
        }
        square_sum = square_sum.add(&dev.mul(&dev)?)?;
    }

    Ok(OptimalityReport {
        matches_square_sum: gap == square_sum,
        gap,
        equality,
    })
}

//! Frame bound verification, standard-Riesz independence, completeness
//! witnesses and reconstruction diagnostics.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{negativity_witness, sup_norm, Enclosure, PPoly};
use crate::error::ModuleError;
use crate::exec;
use crate::rat::Rat;

use super::{inner_product, partial_sum, ModuleContext, ModuleVector, Overlap, OrthoSystem};

/// Frame verification for one test vector.
#[derive(Clone, Debug, Serialize)]
pub struct FrameVectorReport {
    /// `S(x) = Σ_i ⟨x,x_i⟩⟨x_i,x⟩`.
    pub frame_sum: PPoly,
    /// `⟨x,x⟩`.
    pub gram: PPoly,
    /// `C⟨x,x⟩ ≤ S(x)` exactly.
    pub lower_ok: bool,
    /// `S(x) ≤ D⟨x,x⟩` exactly.
    pub upper_ok: bool,
    /// `C = D` and both bounds hold with equality wherever `⟨x,x⟩ > 0`.
    pub tight: bool,
    /// The reconstruction identity `S(x) = ⟨x,x⟩` exactly.
    pub standard: bool,
    /// A point violating the lower bound, when one exists.
    pub lower_witness: Option<Rat>,
    /// A point violating the upper bound, when one exists.
    pub upper_witness: Option<Rat>,
}

/// Verification of the two-sided operator bounds
/// `C⟨x,x⟩ ≤ Σ_i ⟨x,x_i⟩⟨x_i,x⟩ ≤ D⟨x,x⟩` on each test vector. In a
/// commutative algebra the operator inequalities are pointwise, so every
/// verdict is exact; bounds are verified, never discovered.
#[derive(Clone, Debug, Serialize)]
pub struct FrameReport {
    pub lower: Rat,
    pub upper: Rat,
    pub per_vector: Vec<FrameVectorReport>,
}

impl FrameReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.per_vector.iter().all(|r| r.lower_ok && r.upper_ok)
    }
}

pub fn frame_check(
    ctx: &ModuleContext,
    vectors: &[ModuleVector],
    tests: &[ModuleVector],
    lower: &Rat,
    upper: &Rat,
) -> Result<FrameReport, ModuleError> {
    let reports: Vec<Result<FrameVectorReport, ModuleError>> = exec::map_collect(tests, |x| {
        let gram = inner_product(ctx, x, x)?;
        let mut frame_sum = PPoly::zero(&ctx.algebra());
        for v in vectors {
            let xv = inner_product(ctx, x, v)?;
            let vx = inner_product(ctx, v, x)?;
            frame_sum = frame_sum.add(&xv.mul(&vx)?)?;
        }
        let lower_slack = frame_sum.sub(&gram.scale(lower))?;
        let upper_slack = gram.scale(upper).sub(&frame_sum)?;
        let lower_ok = lower_slack.is_nonneg();
        let upper_ok = upper_slack.is_nonneg();
        // Tight: equality wherever the Gram is strictly positive, i.e.
        // (S − C⟨x,x⟩)·⟨x,x⟩ ≡ 0.
        let tight = lower == upper
            && lower_ok
            && upper_ok
            && lower_slack.mul(&gram)?.is_zero_fn();
        let standard = frame_sum == gram;
        Ok(FrameVectorReport {
            lower_witness: if lower_ok {
                None
            } else {
                negativity_witness(&lower_slack)
            },
            upper_witness: if upper_ok {
                None
            } else {
                negativity_witness(&upper_slack)
            },
            frame_sum,
            gram,
            lower_ok,
            upper_ok,
            tight,
            standard,
        })
    });
    Ok(FrameReport {
        lower: lower.clone(),
        upper: upper.clone(),
        per_vector: reports.into_iter().collect::<Result<_, _>>()?,
    })
}

/// Zero-combination independence: `Σ_{j∈S} e_j a_j = 0` must force every
/// term `e_j a_j` to vanish. Vectors and coefficients are paired by
/// position.
#[derive(Clone, Debug, Serialize)]
pub struct RieszReport {
    /// Whether the combination itself is the zero vector.
    pub combination_zero: bool,
    /// The independence property (vacuously true for nonzero combinations).
    pub independent: bool,
    /// Position of the first nonvanishing term of a zero combination.
    pub offending: Option<usize>,
}

pub fn riesz_independence_check(
    ctx: &ModuleContext,
    vectors: &[ModuleVector],
    coeffs: &[PPoly],
) -> Result<RieszReport, ModuleError> {
    assert_eq!(
        vectors.len(),
        coeffs.len(),
        "one coefficient per vector required"
    );
    let mut sum = ModuleVector::zero(ctx);
    let mut terms = Vec::with_capacity(vectors.len());
    for (v, a) in vectors.iter().zip(coeffs) {
        let term = v.scale(ctx, a)?;
        sum = sum.add(&term)?;
        terms.push(term);
    }
    if !sum.is_zero() {
        return Ok(RieszReport {
            combination_zero: false,
            independent: true,
            offending: None,
        });
    }
    let offending = terms.iter().position(|t| !t.is_zero());
    Ok(RieszReport {
        combination_zero: true,
        independent: offending.is_none(),
        offending,
    })
}

/// Whether a nonzero vector is orthogonal to every system vector it can
/// interact with, which certifies that the system is *not* complete.
#[derive(Clone, Debug, Serialize)]
pub struct CompletenessWitness {
    pub refutes_completeness: bool,
    /// The indices actually checked (finite by support geometry).
    pub checked: Vec<u64>,
    /// First index with a nonzero inner product, when any.
    pub nonorthogonal_index: Option<u64>,
}

pub fn completeness_witness_check(
    system: &OrthoSystem,
    x: &ModuleVector,
) -> Result<CompletenessWitness, ModuleError> {
    if x.is_zero() {
        return Err(ModuleError::ZeroWitness);
    }
    let indices = match system.overlap_indices(&x.support()) {
        Overlap::Finite(idx) => idx,
        Overlap::Unbounded => return Err(ModuleError::UnboundedOverlap),
    };
    let ctx = system.context();
    for i in &indices {
        let e = system.vector(*i)?;
        if !inner_product(ctx, &e, x)?.is_zero_fn() {
            return Ok(CompletenessWitness {
                refutes_completeness: false,
                checked: indices.clone(),
                nonorthogonal_index: Some(*i),
            });
        }
    }
    Ok(CompletenessWitness {
        refutes_completeness: true,
        checked: indices,
        nonorthogonal_index: None,
    })
}

/// One step of a reconstruction table.
#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionRow {
    /// Prefix length of this step.
    pub n: u64,
    /// Whether the residual Gram `⟨x−S_F, x−S_F⟩` is exactly zero.
    pub converged_exactly: bool,
    /// Enclosure of the residual norm `‖x − S_F‖`.
    pub residual_norm: Enclosure,
}

/// Residual norms along an increasing schedule of prefix lengths
/// `F_n = {1, …, n}`. Schedule steps are evaluated in parallel.
pub fn reconstruction_check(
    system: &OrthoSystem,
    x: &ModuleVector,
    schedule: &[u64],
    width: &Rat,
) -> Result<Vec<ReconstructionRow>, ModuleError> {
    validate_schedule(schedule, system)?;
    let rows: Vec<Result<ReconstructionRow, ModuleError>> =
        exec::map_collect(schedule, |n| {
            let f_set: BTreeSet<u64> = (1..=*n).collect();
            let residual = x.sub(&partial_sum(system, x, &f_set)?)?;
            let gram = inner_product(system.context(), &residual, &residual)?;
            let converged_exactly = gram.is_zero_fn();
            let residual_norm = if converged_exactly {
                Enclosure::exact(Rat::zero())
            } else {
                sup_norm(&gram, width)?.sqrt_enclosure(width)
            };
            Ok(ReconstructionRow {
                n: *n,
                converged_exactly,
                residual_norm,
            })
        });
    rows.into_iter().collect()
}

pub(super) fn validate_schedule(
    schedule: &[u64],
    system: &OrthoSystem,
) -> Result<(), ModuleError> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ModuleError::BadSchedule);
    }
    if let (Some(len), Some(max)) = (system.len(), schedule.last()) {
        if *max > len as u64 {
            return Err(ModuleError::IndexOutOfSystem(*max));
        }
    }
    Ok(())
}

//! Convergence diagnostics: residual norms alongside superlevel-measure
//! decay, exhibiting norm divergence together with strong-type convergence
//! in one table.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{sup_norm, superlevel_measure, Enclosure};
use crate::error::ModuleError;
use crate::exec;
use crate::rat::Rat;

use super::frames::validate_schedule;
use super::{inner_product, net_terms, partial_sum, ModuleVector, OrthoSystem};

/// One row of a convergence table.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    /// Prefix length of this step.
    pub n: u64,
    /// Enclosure of `‖x − S_{F_n}‖`.
    pub residual_norm: Enclosure,
    /// For each requested ε: enclosure of `|{⟨x,x⟩ − A_{F_n} > ε}|`.
    pub superlevel: Vec<Enclosure>,
}

/// Residual-norm and superlevel-measure diagnostics along an increasing
/// schedule of prefix lengths. The measures track the net term
/// `⟨x,x⟩ − A_{F_n}`; for orthogonal systems this equals the residual Gram,
/// so measure decay is the strong-type convergence proxy while the norm
/// column can certify divergence. Rows are computed in parallel.
pub fn convergence_table(
    system: &OrthoSystem,
    x: &ModuleVector,
    schedule: &[u64],
    eps_list: &[Rat],
    width: &Rat,
) -> Result<Vec<ConvergenceRow>, ModuleError> {
    validate_schedule(schedule, system)?;
    let ctx = system.context();
    let gram = inner_product(ctx, x, x)?;
    let rows: Vec<Result<ConvergenceRow, ModuleError>> = exec::map_collect(schedule, |n| {
        let f_set: BTreeSet<u64> = (1..=*n).collect();

        let residual = x.sub(&partial_sum(system, x, &f_set)?)?;
        let res_gram = inner_product(ctx, &residual, &residual)?;
        let residual_norm = if res_gram.is_zero_fn() {
            Enclosure::exact(Rat::zero())
        } else {
            sup_norm(&res_gram, width)?.sqrt_enclosure(width)
        };

        let terms = net_terms(system, x, &f_set)?;
        let h = gram.sub(&terms.a)?;
        let superlevel = eps_list
            .iter()
            .map(|eps| superlevel_measure(&h, eps, width))
            .collect::<Result<_, _>>()?;

        Ok(ConvergenceRow {
            n: *n,
            residual_norm,
            superlevel,
        })
    });
    rows.into_iter().collect()
}

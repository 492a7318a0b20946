//! Hilbert-module vectors and contexts: the free module of finitely
//! supported families over a countable index set, and the branched-covering
//! module of continuous functions glued over a branch point, both with
//! algebra-valued inner products.

mod fourier;
mod frames;
mod system;
mod tables;

pub use fourier::{
    bessel_check, fourier_coefficient, net_monotonicity_check, net_terms, optimality_gap,
    partial_sum, residual_identity_check, BesselReport, NetMonotonicity, NetTerms,
    OptimalityReport, ResidualIdentity,
};
pub use frames::{
    completeness_witness_check, frame_check, reconstruction_check, riesz_independence_check,
    CompletenessWitness, FrameReport, FrameVectorReport, ReconstructionRow, RieszReport,
};
pub use system::{gram_classify, GramClass, GramVerdict, Overlap, OrthoSystem, VectorFamily};
pub use tables::{convergence_table, ConvergenceRow};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDescriptor, PPoly};
use crate::error::{AlgebraError, ModuleError};
use crate::rat::Rat;

/// A finite branched cover of a closed interval: one base branch over
/// `[lo, β]` and `upper_branches` copies over `[β, hi]`, all glued at the
/// branch point, so the fiber over `x` has 1 point for `x ≤ β` and
/// `upper_branches` points for `x > β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoverSpaceJson", into = "CoverSpaceJson")]
pub struct CoverSpace {
    base_lo: Rat,
    base_hi: Rat,
    branch_point: Rat,
    upper_branches: usize,
}

#[derive(Serialize, Deserialize)]
struct CoverSpaceJson {
    base: [Rat; 2],
    branch_point: Rat,
    upper_branches: usize,
}

impl TryFrom<CoverSpaceJson> for CoverSpace {
    type Error = String;
    fn try_from(j: CoverSpaceJson) -> Result<Self, String> {
        let [lo, hi] = j.base;
        CoverSpace::new(lo, hi, j.branch_point, j.upper_branches).map_err(|e| e.to_string())
    }
}

impl From<CoverSpace> for CoverSpaceJson {
    fn from(c: CoverSpace) -> Self {
        CoverSpaceJson {
            base: [c.base_lo, c.base_hi],
            branch_point: c.branch_point,
            upper_branches: c.upper_branches,
        }
    }
}

impl CoverSpace {
    pub fn new(
        base_lo: Rat,
        base_hi: Rat,
        branch_point: Rat,
        upper_branches: usize,
    ) -> Result<Self, AlgebraError> {
        if base_lo >= branch_point || branch_point >= base_hi {
            return Err(AlgebraError::InvalidPiecewise(
                "branch point must lie strictly inside the base interval".into(),
            ));
        }
        if upper_branches < 1 {
            return Err(AlgebraError::InvalidPiecewise(
                "a cover needs at least one upper branch".into(),
            ));
        }
        Ok(CoverSpace {
            base_lo,
            base_hi,
            branch_point,
            upper_branches,
        })
    }

    pub fn branch_point(&self) -> &Rat {
        &self.branch_point
    }

    /// Total number of intervals making up the cover space.
    pub fn branch_count(&self) -> usize {
        1 + self.upper_branches
    }

    pub fn fiber_count(&self, x: &Rat) -> usize {
        if *x <= self.branch_point {
            1
        } else {
            self.upper_branches
        }
    }

    /// The continuous-function algebra on branch `i` (0 = base branch).
    pub fn branch_descriptor(&self, i: usize) -> AlgebraDescriptor {
        if i == 0 {
            AlgebraDescriptor::continuous(self.base_lo.clone(), self.branch_point.clone())
        } else {
            AlgebraDescriptor::continuous(self.branch_point.clone(), self.base_hi.clone())
        }
    }

    /// The algebra of the base space, where inner products live.
    pub fn base_descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor::continuous(self.base_lo.clone(), self.base_hi.clone())
    }
}

/// Which Hilbert module vectors live in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ModuleContext {
    /// The free module of finitely supported families indexed by the
    /// positive integers, coefficients in the given algebra.
    Free { descriptor: AlgebraDescriptor },
    /// Continuous functions on a branched cover with the fiber-averaged
    /// inner product.
    BranchedCover { cover: CoverSpace },
}

impl ModuleContext {
    pub fn free(descriptor: AlgebraDescriptor) -> Self {
        ModuleContext::Free { descriptor }
    }

    pub fn branched_cover(cover: CoverSpace) -> Self {
        ModuleContext::BranchedCover { cover }
    }

    /// The coefficient algebra: entries of free vectors, values of inner
    /// products.
    pub fn algebra(&self) -> AlgebraDescriptor {
        match self {
            ModuleContext::Free { descriptor } => descriptor.clone(),
            ModuleContext::BranchedCover { cover } => cover.base_descriptor(),
        }
    }
}

/// An element of the module: a finitely supported family of algebra
/// elements, or a glued family of per-branch functions on a cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleVector {
    Free {
        #[serde(with = "entry_map")]
        entries: BTreeMap<u64, PPoly>,
    },
    Cover {
        branches: Vec<PPoly>,
    },
}

/// Entry maps serialize with stringified indices, `{"1": {...}, ...}`.
mod entry_map {
    use super::*;
    use serde::de::Error;

    pub fn serialize<S: serde::Serializer>(
        map: &BTreeMap<u64, PPoly>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let stringly: BTreeMap<String, &PPoly> =
            map.iter().map(|(k, v)| (k.to_string(), v)).collect();
        serde::Serialize::serialize(&stringly, s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<u64, PPoly>, D::Error> {
        let stringly: BTreeMap<String, PPoly> = serde::Deserialize::deserialize(d)?;
        stringly
            .into_iter()
            .map(|(k, v)| {
                let idx: u64 = k
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad vector index {k:?}")))?;
                if idx == 0 {
                    return Err(D::Error::custom("vector indices start at 1"));
                }
                Ok((idx, v))
            })
            .collect()
    }
}

impl ModuleVector {
    /// A finitely supported free-module vector; entries must belong to the
    /// context's algebra, zero entries are dropped.
    pub fn free(
        ctx: &ModuleContext,
        entries: impl IntoIterator<Item = (u64, PPoly)>,
    ) -> Result<Self, ModuleError> {
        let ModuleContext::Free { descriptor } = ctx else {
            return Err(ModuleError::ContextMismatch);
        };
        let mut map = BTreeMap::new();
        for (i, f) in entries {
            if i == 0 {
                return Err(ModuleError::IndexOutOfSystem(0));
            }
            if f.descriptor() != descriptor {
                return Err(ModuleError::ContextMismatch);
            }
            if !f.is_zero_fn() {
                map.insert(i, f);
            }
        }
        Ok(ModuleVector::Free { entries: map })
    }

    /// The zero vector of any context.
    pub fn zero(ctx: &ModuleContext) -> Self {
        match ctx {
            ModuleContext::Free { .. } => ModuleVector::Free {
                entries: BTreeMap::new(),
            },
            ModuleContext::BranchedCover { cover } => ModuleVector::Cover {
                branches: (0..cover.branch_count())
                    .map(|i| PPoly::zero(&cover.branch_descriptor(i)))
                    .collect(),
            },
        }
    }

    /// The standard basis vector `e_i` in a unital free module.
    pub fn basis(ctx: &ModuleContext, i: u64) -> Result<Self, ModuleError> {
        let ModuleContext::Free { descriptor } = ctx else {
            return Err(ModuleError::ContextMismatch);
        };
        let one = PPoly::one(descriptor)?;
        ModuleVector::free(ctx, [(i, one)])
    }

    /// A glued cover element: one function per branch (base branch first),
    /// all agreeing at the branch point.
    pub fn cover(ctx: &ModuleContext, branches: Vec<PPoly>) -> Result<Self, ModuleError> {
        let ModuleContext::BranchedCover { cover } = ctx else {
            return Err(ModuleError::ContextMismatch);
        };
        if branches.len() != cover.branch_count() {
            return Err(ModuleError::ContextMismatch);
        }
        let beta = cover.branch_point();
        let glued = branches[0].eval(beta);
        for (i, b) in branches.iter().enumerate() {
            if b.descriptor() != &cover.branch_descriptor(i) {
                return Err(ModuleError::ContextMismatch);
            }
            if b.eval(beta) != glued {
                return Err(ModuleError::Algebra(AlgebraError::InvalidPiecewise(
                    format!("branches disagree at the branch point {beta}"),
                )));
            }
        }
        Ok(ModuleVector::Cover { branches })
    }

    /// Revalidates a deserialized vector against a context.
    pub fn validate_in(&self, ctx: &ModuleContext) -> Result<(), ModuleError> {
        match self {
            ModuleVector::Free { entries } => {
                ModuleVector::free(ctx, entries.clone())?;
            }
            ModuleVector::Cover { branches } => {
                ModuleVector::cover(ctx, branches.clone())?;
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ModuleVector::Free { entries } => entries.values().all(PPoly::is_zero_fn),
            ModuleVector::Cover { branches } => branches.iter().all(PPoly::is_zero_fn),
        }
    }

    /// Index support of a free vector (empty for cover elements).
    pub fn support(&self) -> BTreeSet<u64> {
        match self {
            ModuleVector::Free { entries } => entries.keys().copied().collect(),
            ModuleVector::Cover { .. } => BTreeSet::new(),
        }
    }

    pub fn entry(&self, i: u64) -> Option<&PPoly> {
        match self {
            ModuleVector::Free { entries } => entries.get(&i),
            ModuleVector::Cover { .. } => None,
        }
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector, ModuleError> {
        match (self, other) {
            (ModuleVector::Free { entries: a }, ModuleVector::Free { entries: b }) => {
                let mut out = a.clone();
                for (i, g) in b {
                    match out.remove(i) {
                        Some(f) => {
                            let sum = f.add(g)?;
                            if !sum.is_zero_fn() {
                                out.insert(*i, sum);
                            }
                        }
                        None => {
                            out.insert(*i, g.clone());
                        }
                    }
                }
                Ok(ModuleVector::Free { entries: out })
            }
            (ModuleVector::Cover { branches: a }, ModuleVector::Cover { branches: b }) => {
                if a.len() != b.len() {
                    return Err(ModuleError::ContextMismatch);
                }
                let branches = a
                    .iter()
                    .zip(b)
                    .map(|(f, g)| f.add(g))
                    .collect::<Result<_, _>>()?;
                Ok(ModuleVector::Cover { branches })
            }
            _ => Err(ModuleError::ContextMismatch),
        }
    }

    pub fn sub(&self, other: &ModuleVector) -> Result<ModuleVector, ModuleError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModuleVector {
        match self {
            ModuleVector::Free { entries } => ModuleVector::Free {
                entries: entries.iter().map(|(i, f)| (*i, f.neg())).collect(),
            },
            ModuleVector::Cover { branches } => ModuleVector::Cover {
                branches: branches.iter().map(PPoly::neg).collect(),
            },
        }
    }

    /// Right module action `x·a` by an element of the coefficient algebra.
    /// On a cover the action is `(x·a)(y) = x(y)·a(p(y))`: each branch is
    /// multiplied by the restriction of `a` to the branch's base interval.
    pub fn scale(&self, ctx: &ModuleContext, a: &PPoly) -> Result<ModuleVector, ModuleError> {
        match (self, ctx) {
            (ModuleVector::Free { entries }, ModuleContext::Free { descriptor }) => {
                if a.descriptor() != descriptor {
                    return Err(ModuleError::ContextMismatch);
                }
                let mut out = BTreeMap::new();
                for (i, f) in entries {
                    let prod = f.mul(a)?;
                    if !prod.is_zero_fn() {
                        out.insert(*i, prod);
                    }
                }
                Ok(ModuleVector::Free { entries: out })
            }
            (ModuleVector::Cover { branches }, ModuleContext::BranchedCover { cover }) => {
                if a.descriptor() != &cover.base_descriptor() {
                    return Err(ModuleError::ContextMismatch);
                }
                let out = branches
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let restricted = a.restrict_to(&cover.branch_descriptor(i))?;
                        f.mul(&restricted)
                    })
                    .collect::<Result<_, AlgebraError>>()?;
                Ok(ModuleVector::Cover { branches: out })
            }
            _ => Err(ModuleError::ContextMismatch),
        }
    }
}

/// The algebra-valued inner product. For free vectors this is the finite
/// sum of entrywise products (real coefficients: conjugation is the
/// identity); for cover elements the fiber average, whose continuity across
/// the branch point is verified during construction of the result.
pub fn inner_product(
    ctx: &ModuleContext,
    x: &ModuleVector,
    y: &ModuleVector,
) -> Result<PPoly, ModuleError> {
    match (ctx, x, y) {
        (
            ModuleContext::Free { descriptor },
            ModuleVector::Free { entries: a },
            ModuleVector::Free { entries: b },
        ) => {
            let mut acc = PPoly::zero(descriptor);
            for (i, f) in a {
                if let Some(g) = b.get(i) {
                    acc = acc.add(&f.mul(g)?)?;
                }
            }
            Ok(acc)
        }
        (
            ModuleContext::BranchedCover { cover },
            ModuleVector::Cover { branches: a },
            ModuleVector::Cover { branches: b },
        ) => {
            if a.len() != cover.branch_count() || b.len() != cover.branch_count() {
                return Err(ModuleError::ContextMismatch);
            }
            // Base part: fiber of size one.
            let left = a[0].mul(&b[0])?;
            // Upper part: average over the upper branches.
            let upper_desc = cover.branch_descriptor(1);
            let mut right = PPoly::zero(&upper_desc);
            for i in 1..cover.branch_count() {
                right = right.add(&a[i].mul(&b[i])?)?;
            }
            let k = Rat::int(cover.upper_branches as i64);
            let right = right.scale(&(&Rat::one() / &k));
            glue_cover_inner(cover, &left, &right).map_err(ModuleError::from)
        }
        _ => Err(ModuleError::ContextMismatch),
    }
}

/// Joins the base-side and upper-side inner-product parts into one element
/// of the base algebra over the full interval; the membership validation
/// checks continuity across the branch point exactly.
fn glue_cover_inner(
    cover: &CoverSpace,
    left: &PPoly,
    right: &PPoly,
) -> Result<PPoly, AlgebraError> {
    let mut breakpoints: Vec<Rat> = left.breakpoints().to_vec();
    let mut pieces: Vec<crate::poly::Poly> = left.pieces().map(|(_, _, p)| p.clone()).collect();
    breakpoints.extend(right.breakpoints().iter().skip(1).cloned());
    pieces.extend(right.pieces().map(|(_, _, p)| p.clone()));
    PPoly::new(
        cover.base_descriptor(),
        crate::algebra::RawPiecewise {
            breakpoints,
            pieces,
        },
    )
}

/// Gram value of a single vector, `⟨x,x⟩`.
pub fn inner_square(ctx: &ModuleContext, x: &ModuleVector) -> Result<PPoly, ModuleError> {
    inner_product(ctx, x, x)
}

#[cfg(test)]
mod tests;

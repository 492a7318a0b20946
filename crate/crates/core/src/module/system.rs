//! Orthogonal systems: finite vector lists or lazily generated families
//! with declared support geometry, plus exact Gram classification.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::PPoly;
use crate::error::ModuleError;
use crate::exec;

use super::{inner_product, ModuleContext, ModuleVector};

/// Which indices of a generated family can have nonzero inner product with
/// a vector of the given support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overlap {
    Finite(Vec<u64>),
    /// Infinitely many indices interact; enumeration cannot decide.
    Unbounded,
}

/// An infinite (or unboundedly indexed) family of module vectors, produced
/// on demand. Indices start at 1. The support geometry declares which
/// indices can interact with a finitely supported vector, which is what
/// makes completeness checks against infinite systems computable.
pub trait VectorFamily: Send + Sync {
    fn name(&self) -> &str;
    fn vector(&self, i: u64) -> ModuleVector;
    fn overlap_indices(&self, support: &BTreeSet<u64>) -> Overlap;
}

#[derive(Clone)]
enum SystemVectors {
    Explicit(Vec<ModuleVector>),
    Generated(Arc<dyn VectorFamily>),
}

/// An ordered family of module vectors in a fixed context.
#[derive(Clone)]
pub struct OrthoSystem {
    context: ModuleContext,
    vectors: SystemVectors,
}

impl fmt::Debug for OrthoSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.vectors {
            SystemVectors::Explicit(vs) => write!(f, "OrthoSystem({} explicit vectors)", vs.len()),
            SystemVectors::Generated(g) => write!(f, "OrthoSystem(generated: {})", g.name()),
        }
    }
}

impl OrthoSystem {
    pub fn explicit(
        context: ModuleContext,
        vectors: Vec<ModuleVector>,
    ) -> Result<Self, ModuleError> {
        for v in &vectors {
            v.validate_in(&context)?;
        }
        Ok(OrthoSystem {
            context,
            vectors: SystemVectors::Explicit(vectors),
        })
    }

    pub fn generated(context: ModuleContext, family: Arc<dyn VectorFamily>) -> Self {
        OrthoSystem {
            context,
            vectors: SystemVectors::Generated(family),
        }
    }

    pub fn context(&self) -> &ModuleContext {
        &self.context
    }

    /// Number of vectors for explicit systems; `None` for generated ones.
    pub fn len(&self) -> Option<usize> {
        match &self.vectors {
            SystemVectors::Explicit(vs) => Some(vs.len()),
            SystemVectors::Generated(_) => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The `i`-th system vector, 1-based.
    pub fn vector(&self, i: u64) -> Result<ModuleVector, ModuleError> {
        if i == 0 {
            return Err(ModuleError::IndexOutOfSystem(0));
        }
        match &self.vectors {
            SystemVectors::Explicit(vs) => vs
                .get((i - 1) as usize)
                .cloned()
                .ok_or(ModuleError::IndexOutOfSystem(i)),
            SystemVectors::Generated(g) => Ok(g.vector(i)),
        }
    }

    /// Indices whose vectors can overlap the given support.
    pub fn overlap_indices(&self, support: &BTreeSet<u64>) -> Overlap {
        match &self.vectors {
            SystemVectors::Explicit(vs) => Overlap::Finite((1..=vs.len() as u64).collect()),
            SystemVectors::Generated(g) => g.overlap_indices(support),
        }
    }

    /// Pairwise orthogonality of the vectors at the given indices; the
    /// error names the first failing pair.
    pub fn ensure_orthogonal(&self, indices: &[u64]) -> Result<(), ModuleError> {
        for (a, i) in indices.iter().enumerate() {
            let vi = self.vector(*i)?;
            for j in &indices[a + 1..] {
                let vj = self.vector(*j)?;
                if !inner_product(&self.context, &vi, &vj)?.is_zero_fn() {
                    return Err(ModuleError::NotOrthogonal(*i, *j));
                }
            }
        }
        Ok(())
    }

    /// Orthogonality plus unit inner squares.
    pub fn ensure_orthonormal(&self, indices: &[u64]) -> Result<(), ModuleError> {
        self.ensure_orthogonal(indices)?;
        let one = PPoly::one(&self.context.algebra())
            .map_err(|_| ModuleError::NotOrthonormal(*indices.first().unwrap_or(&1)))?;
        for i in indices {
            let v = self.vector(*i)?;
            if inner_product(&self.context, &v, &v)? != one {
                return Err(ModuleError::NotOrthonormal(*i));
            }
        }
        Ok(())
    }

    /// Orthogonality plus the norm-one hypothesis `‖e_i‖ = 1`, decided by
    /// the exact norm comparator on the inner squares.
    pub fn ensure_norm_one(&self, indices: &[u64]) -> Result<(), ModuleError> {
        self.ensure_orthogonal(indices)?;
        for i in indices {
            let v = self.vector(*i)?;
            let sq = inner_product(&self.context, &v, &v)?;
            if crate::algebra::norm_cmp(&sq, &crate::rat::Rat::one())
                != crate::algebra::NormOrdering::Eq
            {
                return Err(ModuleError::SystemNotNormOne(*i));
            }
        }
        Ok(())
    }

    /// The pointwise hypothesis `⟨e_i, e_i⟩ ≤ 1`.
    pub fn ensure_bounded_by_one(&self, indices: &[u64]) -> Result<(), ModuleError> {
        for i in indices {
            let v = self.vector(*i)?;
            let sq = inner_product(&self.context, &v, &v)?;
            if !sq.is_bounded_above_by(&crate::rat::Rat::one()) {
                return Err(ModuleError::HypothesisViolated(*i));
            }
        }
        Ok(())
    }
}

/// Gram classification, ordered weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GramClass {
    #[serde(rename = "none")]
    None,
    #[serde(rename = "orthogonal")]
    Orthogonal,
    #[serde(rename = "quasi-orthonormal")]
    QuasiOrthonormal,
    #[serde(rename = "orthonormal")]
    Orthonormal,
}

impl fmt::Display for GramClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GramClass::None => "none",
            GramClass::Orthogonal => "orthogonal",
            GramClass::QuasiOrthonormal => "quasi-orthonormal",
            GramClass::Orthonormal => "orthonormal",
        };
        write!(f, "{s}")
    }
}

/// Classification result with witnesses naming the first failing pair or
/// index at each level.
#[derive(Clone, Debug, Serialize)]
pub struct GramVerdict {
    pub class: GramClass,
    /// First pair `(i, j)` with nonzero inner product, when not orthogonal.
    pub nonorthogonal_pair: Option<(u64, u64)>,
    /// First index whose inner square is not idempotent.
    pub nonidempotent_index: Option<u64>,
    /// First index whose inner square is not the unit.
    pub nonunit_index: Option<u64>,
}

/// Exact Gram classification of the first `prefix` vectors of a system:
/// orthogonal (`⟨e_i,e_j⟩ = 0` for `i ≠ j`), quasi-orthonormal (inner
/// squares are projections, `q² = q`), orthonormal (inner squares equal
/// the unit). Off-diagonal products are evaluated in parallel.
pub fn gram_classify(system: &OrthoSystem, prefix: u64) -> Result<GramVerdict, ModuleError> {
    let ctx = system.context();
    let indices: Vec<u64> = (1..=prefix).collect();
    let vectors: Vec<ModuleVector> = indices
        .iter()
        .map(|i| system.vector(*i))
        .collect::<Result<_, _>>()?;

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..vectors.len() {
        for b in (a + 1)..vectors.len() {
            pairs.push((a, b));
        }
    }
    let off_diag: Vec<Result<bool, ModuleError>> = exec::map_collect(&pairs, |(a, b)| {
        Ok(inner_product(ctx, &vectors[*a], &vectors[*b])?.is_zero_fn())
    });
    for ((a, b), zero) in pairs.iter().zip(off_diag) {
        if !zero? {
            return Ok(GramVerdict {
                class: GramClass::None,
                nonorthogonal_pair: Some((indices[*a], indices[*b])),
                nonidempotent_index: None,
                nonunit_index: None,
            });
        }
    }

    let squares: Vec<PPoly> = vectors
        .iter()
        .map(|v| inner_product(ctx, v, v))
        .collect::<Result<_, _>>()?;

    let mut verdict = GramVerdict {
        class: GramClass::Orthogonal,
        nonorthogonal_pair: None,
        nonidempotent_index: None,
        nonunit_index: None,
    };

    for (k, q) in squares.iter().enumerate() {
        if q.mul(q)? != *q {
            verdict.nonidempotent_index = Some(indices[k]);
            break;
        }
    }
    if verdict.nonidempotent_index.is_none() {
        verdict.class = GramClass::QuasiOrthonormal;
    } else {
        return Ok(verdict);
    }

    match PPoly::one(&ctx.algebra()) {
        Err(_) => {
            // Non-unital algebra: inner squares cannot equal a unit.
            verdict.nonunit_index = indices.first().copied();
        }
        Ok(one) => {
            for (k, q) in squares.iter().enumerate() {
                if *q != one {
                    verdict.nonunit_index = Some(indices[k]);
                    break;
                }
            }
        }
    }
    if verdict.nonunit_index.is_none() {
        verdict.class = GramClass::Orthonormal;
    }
    Ok(verdict)
}

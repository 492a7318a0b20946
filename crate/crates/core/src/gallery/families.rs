//! Lazily generated infinite vector families with declared support
//! geometry.
//!
//! Each family knows which of its indices can interact with a given finite
//! support, which is what keeps inner products and completeness checks
//! against infinite systems finite — except where the geometry is genuinely
//! unbounded, and then it says so.

use std::collections::BTreeSet;

use crate::algebra::{AlgebraDescriptor, PPoly};
use crate::module::{ModuleContext, ModuleVector, Overlap, VectorFamily};
use crate::rat::Rat;

/// The essentially-bounded algebra on `[0,1]`, coefficient algebra of every
/// standard-module example.
pub fn lebesgue_unit_interval() -> AlgebraDescriptor {
    AlgebraDescriptor::measurable(Rat::zero(), Rat::one())
}

fn indicator(a: &Rat, b: &Rat) -> PPoly {
    PPoly::indicator(&lebesgue_unit_interval(), a, b).expect("indicator in measurable algebra")
}

/// χ_[0,1/2] and χ_(1/2,1], the complementary half indicators.
pub fn half_indicators() -> (PPoly, PPoly) {
    let half = Rat::new(1, 2);
    (
        indicator(&Rat::zero(), &half),
        indicator(&half, &Rat::one()),
    )
}

fn free_ctx() -> ModuleContext {
    ModuleContext::free(lebesgue_unit_interval())
}

/// The standard basis `e_i` of the free module over a unital algebra.
pub struct StandardBasisFamily {
    descriptor: AlgebraDescriptor,
}

impl StandardBasisFamily {
    pub fn new(descriptor: AlgebraDescriptor) -> Self {
        assert!(descriptor.unital(), "standard basis needs a unit");
        StandardBasisFamily { descriptor }
    }
}

impl VectorFamily for StandardBasisFamily {
    fn name(&self) -> &str {
        "standard-basis"
    }

    fn vector(&self, i: u64) -> ModuleVector {
        ModuleVector::basis(&ModuleContext::free(self.descriptor.clone()), i)
            .expect("unital algebra has basis vectors")
    }

    fn overlap_indices(&self, support: &BTreeSet<u64>) -> Overlap {
        Overlap::Finite(support.iter().copied().collect())
    }
}

/// The orthonormal family `x_i = f₁ e_i + f₂ e_{i+1}` that cannot be
/// extended to a complete orthonormal system.
pub struct InterleavedIndicatorFamily;

impl VectorFamily for InterleavedIndicatorFamily {
    fn name(&self) -> &str {
        "nonextendable-ons"
    }

    fn vector(&self, i: u64) -> ModuleVector {
        let (f1, f2) = half_indicators();
        ModuleVector::free(&free_ctx(), [(i, f1), (i + 1, f2)]).expect("valid entries")
    }

    fn overlap_indices(&self, support: &BTreeSet<u64>) -> Overlap {
        let mut out = BTreeSet::new();
        for j in support {
            out.insert(*j);
            if *j > 1 {
                out.insert(*j - 1);
            }
        }
        Overlap::Finite(out.into_iter().collect())
    }
}

/// Breakpoints `c_i = 1 − 1/2^i` of the dyadic tail construction.
pub fn dyadic_breakpoint(i: u64) -> Rat {
    &Rat::one() - &Rat::pow2_neg(i as u32)
}

/// The complete orthonormal system that is not closed: each vector carries
/// a dyadic slice in its first entry, the complementary head on the
/// diagonal and the tail one step past it:
/// `e_i = (χ_[c_{i−1},c_i], …, χ_[0,c_{i−1}] at i, χ_[c_i,1] at i+1, …)`.
pub struct DyadicTailFamily;

impl VectorFamily for DyadicTailFamily {
    fn name(&self) -> &str {
        "ons-not-closed"
    }

    fn vector(&self, i: u64) -> ModuleVector {
        assert!(i >= 1);
        let c_prev = dyadic_breakpoint(i - 1);
        let c_i = dyadic_breakpoint(i);
        let mut entries = vec![(1u64, indicator(&c_prev, &c_i))];
        if i > 1 {
            entries.push((i, indicator(&Rat::zero(), &c_prev)));
        }
        entries.push((i + 1, indicator(&c_i, &Rat::one())));
        ModuleVector::free(&free_ctx(), entries).expect("valid entries")
    }

    fn overlap_indices(&self, support: &BTreeSet<u64>) -> Overlap {
        if support.contains(&1) {
            // Every vector of the family has a nonzero first entry.
            return Overlap::Unbounded;
        }
        let mut out = BTreeSet::new();
        for j in support {
            out.insert(*j);
            if *j > 1 {
                out.insert(*j - 1);
            }
        }
        Overlap::Finite(out.into_iter().collect())
    }
}

/// Rows of the block-diagonal circulant matrix built from the uniform
/// partition indicators `f_j = χ_[(j−1)/n, j/n)`: row `r` of each block is
/// the cyclic shift `(f_r, f_{r+1}, …)`, repeated down the diagonal.
pub struct CirculantFamily {
    n: u64,
}

impl CirculantFamily {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "circulant block size must be positive");
        CirculantFamily { n }
    }

    pub fn block_size(&self) -> u64 {
        self.n
    }

    fn cell(&self, j: u64) -> PPoly {
        // f_j, 1-based.
        let lo = Rat::new((j - 1) as i64, self.n as i64);
        let hi = Rat::new(j as i64, self.n as i64);
        indicator(&lo, &hi)
    }
}

impl VectorFamily for CirculantFamily {
    fn name(&self) -> &str {
        "circulant"
    }

    fn vector(&self, i: u64) -> ModuleVector {
        assert!(i >= 1);
        let block = (i - 1) / self.n;
        let row = (i - 1) % self.n; // 0-based within the block
        let entries = (0..self.n).map(|col| {
            let cell_index = (row + col) % self.n + 1;
            (block * self.n + col + 1, self.cell(cell_index))
        });
        ModuleVector::free(&free_ctx(), entries).expect("valid entries")
    }

    fn overlap_indices(&self, support: &BTreeSet<u64>) -> Overlap {
        let mut out = BTreeSet::new();
        for col in support {
            let block = (*col - 1) / self.n;
            for r in 1..=self.n {
                out.insert(block * self.n + r);
            }
        }
        Overlap::Finite(out.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{gram_classify, GramClass, OrthoSystem};
    use crate::rat::rat;
    use std::sync::Arc;

    #[test]
    fn dyadic_breakpoints() {
        assert_eq!(dyadic_breakpoint(0), Rat::zero());
        assert_eq!(dyadic_breakpoint(1), rat(1, 2));
        assert_eq!(dyadic_breakpoint(3), rat(7, 8));
    }

    #[test]
    fn dyadic_tail_vector_shape() {
        let fam = DyadicTailFamily;
        assert_eq!(fam.vector(1).support(), [1, 2].into_iter().collect());
        assert_eq!(fam.vector(3).support(), [1, 3, 4].into_iter().collect());
    }

    #[test]
    fn dyadic_tail_overlap_geometry() {
        let fam = DyadicTailFamily;
        assert_eq!(
            fam.overlap_indices(&[1u64].into_iter().collect()),
            Overlap::Unbounded
        );
        assert_eq!(
            fam.overlap_indices(&[4u64].into_iter().collect()),
            Overlap::Finite(vec![3, 4])
        );
    }

    #[test]
    fn circulant_row_partition() {
        let fam = CirculantFamily::new(3);
        // Row 2 of block 0 shifts the cells by one.
        let v = fam.vector(2);
        assert_eq!(v.support(), [1, 2, 3].into_iter().collect());
        assert_eq!(v.entry(1), Some(&fam.cell(2)));
        assert_eq!(v.entry(3), Some(&fam.cell(1)));
        // Second block lives on columns 4..6.
        let v = fam.vector(4);
        assert_eq!(v.support(), [4, 5, 6].into_iter().collect());
    }

    #[test]
    fn circulant_blocks_are_orthonormal() {
        for n in 1..=4u64 {
            let sys = OrthoSystem::generated(
                ModuleContext::free(lebesgue_unit_interval()),
                Arc::new(CirculantFamily::new(n)),
            );
            let v = gram_classify(&sys, 2 * n).unwrap();
            assert_eq!(v.class, GramClass::Orthonormal, "block size {n}");
        }
    }

    #[test]
    fn interleaved_family_is_orthonormal() {
        let sys = OrthoSystem::generated(
            ModuleContext::free(lebesgue_unit_interval()),
            Arc::new(InterleavedIndicatorFamily),
        );
        let v = gram_classify(&sys, 6).unwrap();
        assert_eq!(v.class, GramClass::Orthonormal);
    }
}

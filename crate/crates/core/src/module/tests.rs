use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::algebra::{norm_cmp, NormOrdering, RawPiecewise};
use crate::poly::Poly;
use crate::rat::rat;

fn linf() -> AlgebraDescriptor {
    AlgebraDescriptor::measurable(Rat::zero(), Rat::one())
}

fn free_ctx() -> ModuleContext {
    ModuleContext::free(linf())
}

fn f1() -> PPoly {
    PPoly::indicator(&linf(), &Rat::zero(), &rat(1, 2)).unwrap()
}

fn f2() -> PPoly {
    PPoly::indicator(&linf(), &rat(1, 2), &Rat::one()).unwrap()
}

/// The orthonormal family x_i = f₁e_i + f₂e_{i+1}, as an explicit prefix.
fn interleaved_prefix(ctx: &ModuleContext, n: u64) -> Vec<ModuleVector> {
    (1..=n)
        .map(|i| ModuleVector::free(ctx, [(i, f1()), (i + 1, f2())]).unwrap())
        .collect()
}

fn standard_basis_system(n: u64) -> OrthoSystem {
    let ctx = free_ctx();
    let vectors = (1..=n)
        .map(|i| ModuleVector::basis(&ctx, i).unwrap())
        .collect();
    OrthoSystem::explicit(ctx, vectors).unwrap()
}

fn fset(indices: &[u64]) -> BTreeSet<u64> {
    indices.iter().copied().collect()
}

#[test]
fn witness_vector_is_orthogonal_to_interleaved_family() {
    let ctx = free_ctx();
    let x = ModuleVector::free(&ctx, [(1, f2())]).unwrap();
    for xi in interleaved_prefix(&ctx, 6) {
        let ip = inner_product(&ctx, &xi, &x).unwrap();
        assert!(ip.is_zero_fn());
    }
}

#[test]
fn inner_square_of_standard_basis_is_one() {
    let ctx = free_ctx();
    let e3 = ModuleVector::basis(&ctx, 3).unwrap();
    let sq = inner_square(&ctx, &e3).unwrap();
    assert_eq!(sq, PPoly::one(&linf()).unwrap());
}

#[test]
fn sesquilinearity_is_exact() {
    let ctx = free_ctx();
    let x = ModuleVector::free(&ctx, [(1, f1()), (2, f2())]).unwrap();
    let y = ModuleVector::free(&ctx, [(1, f2()), (3, f1())]).unwrap();
    let z = ModuleVector::free(&ctx, [(2, f1())]).unwrap();
    let a = f1();

    // ⟨x, y·a⟩ = ⟨x,y⟩·a
    let lhs = inner_product(&ctx, &x, &y.scale(&ctx, &a).unwrap()).unwrap();
    let rhs = inner_product(&ctx, &x, &y).unwrap().mul(&a).unwrap();
    assert_eq!(lhs, rhs);

    // ⟨x+y, z⟩ = ⟨x,z⟩ + ⟨y,z⟩
    let lhs = inner_product(&ctx, &x.add(&y).unwrap(), &z).unwrap();
    let rhs = inner_product(&ctx, &x, &z)
        .unwrap()
        .add(&inner_product(&ctx, &y, &z).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn positivity_of_inner_squares() {
    let ctx = free_ctx();
    let x = ModuleVector::free(&ctx, [(1, f1()), (4, f2())]).unwrap();
    assert!(inner_square(&ctx, &x).unwrap().is_nonneg());
    let z = ModuleVector::zero(&ctx);
    assert!(inner_square(&ctx, &z).unwrap().is_zero_fn());
}

#[test]
fn empty_partial_sum_is_zero() {
    let sys = standard_basis_system(4);
    let x = ModuleVector::free(sys.context(), [(1, f1())]).unwrap();
    let s = partial_sum(&sys, &x, &fset(&[])).unwrap();
    assert!(s.is_zero());
}

#[test]
fn fourier_coefficient_out_of_system() {
    let sys = standard_basis_system(2);
    let x = ModuleVector::free(sys.context(), [(1, f1())]).unwrap();
    assert!(matches!(
        fourier_coefficient(&sys, &x, 5),
        Err(ModuleError::IndexOutOfSystem(5))
    ));
}

#[test]
fn residual_identity_with_empty_f_reduces_to_gram() {
    let sys = standard_basis_system(3);
    let x = ModuleVector::free(sys.context(), [(2, f2())]).unwrap();
    let id = residual_identity_check(&sys, &x, &fset(&[])).unwrap();
    assert!(id.equal);
    assert_eq!(id.lhs, inner_square(sys.context(), &x).unwrap());
}

#[test]
fn residual_identity_exact_on_quasi_orthonormal_system() {
    let ctx = free_ctx();
    let sys = OrthoSystem::explicit(ctx.clone(), interleaved_prefix(&ctx, 4)).unwrap();
    let x = ModuleVector::free(&ctx, [(1, f1()), (2, f2()), (3, f1())]).unwrap();
    for f in [fset(&[1]), fset(&[1, 2]), fset(&[1, 2, 3, 4])] {
        let id = residual_identity_check(&sys, &x, &f).unwrap();
        assert!(id.equal, "identity must hold exactly for F = {f:?}");
    }
}

#[test]
fn residual_identity_requires_orthogonality() {
    let ctx = free_ctx();
    // Two copies of e₁ are not orthogonal.
    let e1 = ModuleVector::basis(&ctx, 1).unwrap();
    let sys = OrthoSystem::explicit(ctx.clone(), vec![e1.clone(), e1.clone()]).unwrap();
    assert!(matches!(
        residual_identity_check(&sys, &e1, &fset(&[1, 2])),
        Err(ModuleError::NotOrthogonal(1, 2))
    ));
}

#[test]
fn bessel_equality_on_basis_vector() {
    let sys = standard_basis_system(2);
    let e1 = ModuleVector::basis(sys.context(), 1).unwrap();
    let rep = bessel_check(&sys, &e1, &fset(&[1])).unwrap();
    assert!(rep.holds);
    assert!(rep.slack.is_zero_fn(), "slack must vanish exactly");
}

#[test]
fn bessel_with_orthogonal_witness() {
    // x = f₂e₁ against the interleaved family: B_F = 0 ≤ ⟨x,x⟩ = f₂.
    let ctx = free_ctx();
    let sys = OrthoSystem::explicit(ctx.clone(), interleaved_prefix(&ctx, 5)).unwrap();
    let x = ModuleVector::free(&ctx, [(1, f2())]).unwrap();
    let rep = bessel_check(&sys, &x, &fset(&[1, 2, 3, 4, 5])).unwrap();
    assert!(rep.holds);
    assert_eq!(rep.slack, f2());
}

#[test]
fn bessel_requires_norm_one() {
    let ctx = free_ctx();
    let half = ModuleVector::free(&ctx, [(1, f1().scale(&rat(1, 2)))]).unwrap();
    let sys = OrthoSystem::explicit(ctx.clone(), vec![half]).unwrap();
    let x = ModuleVector::basis(&ctx, 1).unwrap();
    assert!(matches!(
        bessel_check(&sys, &x, &fset(&[1])),
        Err(ModuleError::SystemNotNormOne(1))
    ));
}

#[test]
fn net_terms_collapse_for_orthonormal_systems() {
    let sys = standard_basis_system(3);
    let x = ModuleVector::free(sys.context(), [(1, f1()), (2, f2())]).unwrap();
    let t = net_terms(&sys, &x, &fset(&[1, 2])).unwrap();
    assert_eq!(t.a, t.b);
    assert_eq!(t.b, t.c);
}

#[test]
fn net_monotonicity_and_equal_sets() {
    let ctx = free_ctx();
    let sys = OrthoSystem::explicit(ctx.clone(), interleaved_prefix(&ctx, 4)).unwrap();
    let x = ModuleVector::free(&ctx, [(1, f1()), (3, f2())]).unwrap();
    let m = net_monotonicity_check(&sys, &x, &fset(&[1, 2]), &fset(&[1, 2, 3, 4])).unwrap();
    assert!(m.monotone);
    assert!(m.lower_bound_ok);

    // F = G: the difference is exactly zero, still monotone.
    let m = net_monotonicity_check(&sys, &x, &fset(&[1, 2]), &fset(&[1, 2])).unwrap();
    assert!(m.monotone);

    assert!(matches!(
        net_monotonicity_check(&sys, &x, &fset(&[1, 3]), &fset(&[1, 2])),
        Err(ModuleError::NotASubset)
    ));
}

#[test]
fn net_hypothesis_violation_detected() {
    let ctx = free_ctx();
    let big = ModuleVector::free(&ctx, [(1, f1().scale(&rat(2, 1)))]).unwrap();
    let sys = OrthoSystem::explicit(ctx.clone(), vec![big]).unwrap();
    let x = ModuleVector::basis(&ctx, 1).unwrap();
    assert!(matches!(
        net_terms(&sys, &x, &fset(&[1])),
        Err(ModuleError::HypothesisViolated(1))
    ));
}

#[test]
fn optimality_gap_examples() {
    let sys = standard_basis_system(3);
    let ctx = sys.context().clone();
    let x = ModuleVector::free(&ctx, [(1, f1()), (2, f2())]).unwrap();
    let f = fset(&[1, 2]);

    // Fourier coefficients: zero gap, equality.
    let fourier: BTreeMap<u64, PPoly> = [(1u64, f1()), (2u64, f2())].into_iter().collect();
    let rep = optimality_gap(&sys, &x, &f, &fourier).unwrap();
    assert!(rep.gap.is_zero_fn());
    assert!(rep.matches_square_sum);
    assert!(rep.equality);

    // Perturbing one coefficient by δ raises the residual Gram by δ².
    let delta = rat(1, 3);
    let mut perturbed = fourier.clone();
    let bump = PPoly::constant(&linf(), delta.clone()).unwrap();
    perturbed.insert(1, f1().add(&bump).unwrap());
    let rep = optimality_gap(&sys, &x, &f, &perturbed).unwrap();
    assert!(rep.matches_square_sum);
    assert!(!rep.equality);
    assert_eq!(
        rep.gap,
        PPoly::constant(&linf(), &delta * &delta).unwrap()
    );

    // All-zero coefficients against x = e₁ on F = {1}: gap is 1.
    let e1 = ModuleVector::basis(&ctx, 1).unwrap();
    let rep = optimality_gap(&sys, &e1, &fset(&[1]), &BTreeMap::new()).unwrap();
    assert!(rep.matches_square_sum);
    assert_eq!(rep.gap, PPoly::one(&linf()).unwrap());
}

#[test]
fn optimality_requires_orthonormal() {
    let ctx = free_ctx();
    let sys = OrthoSystem::explicit(ctx.clone(), vec![
        ModuleVector::free(&ctx, [(1, f1())]).unwrap(),
    ])
    .unwrap();
    let x = ModuleVector::basis(&ctx, 1).unwrap();
    assert!(matches!(
        optimality_gap(&sys, &x, &fset(&[1]), &BTreeMap::new()),
        Err(ModuleError::NotOrthonormal(1))
    ));
}

#[test]
fn gram_classification_levels() {
    let ctx = free_ctx();

    // {f₁, f₂} as elements of M = A: quasi-orthonormal (inner squares are
    // the idempotents themselves), not orthonormal.
    let sys = OrthoSystem::explicit(ctx.clone(), vec![
        ModuleVector::free(&ctx, [(1, f1())]).unwrap(),
        ModuleVector::free(&ctx, [(1, f2())]).unwrap(),
    ])
    .unwrap();
    let v = gram_classify(&sys, 2).unwrap();
    assert_eq!(v.class, GramClass::QuasiOrthonormal);
    assert_eq!(v.nonunit_index, Some(1));

    // Standard basis: orthonormal.
    let v = gram_classify(&standard_basis_system(3), 3).unwrap();
    assert_eq!(v.class, GramClass::Orthonormal);

    // Overlapping supports: not orthogonal, witness (1,2).
    let sys = OrthoSystem::explicit(ctx.clone(), vec![
        ModuleVector::free(&ctx, [(1, f1())]).unwrap(),
        ModuleVector::free(&ctx, [(1, f1())]).unwrap(),
    ])
    .unwrap();
    let v = gram_classify(&sys, 2).unwrap();
    assert_eq!(v.class, GramClass::None);
    assert_eq!(v.nonorthogonal_pair, Some((1, 2)));

    // Orthogonal but non-idempotent inner squares.
    let sys = OrthoSystem::explicit(ctx.clone(), vec![
        ModuleVector::free(&ctx, [(1, f1().scale(&rat(1, 2)))]).unwrap(),
    ])
    .unwrap();
    let v = gram_classify(&sys, 1).unwrap();
    assert_eq!(v.class, GramClass::Orthogonal);
    assert_eq!(v.nonidempotent_index, Some(1));
}

#[test]
fn frame_check_standard_partition() {
    // {f₁e₁, f₂e₁} with test x = e₁: S(x) = f₁ + f₂ = 1 = ⟨x,x⟩.
    let ctx = free_ctx();
    let vectors = vec![
        ModuleVector::free(&ctx, [(1, f1())]).unwrap(),
        ModuleVector::free(&ctx, [(1, f2())]).unwrap(),
    ];
    let e1 = ModuleVector::basis(&ctx, 1).unwrap();
    let rep = frame_check(&ctx, &vectors, &[e1], &Rat::one(), &Rat::one()).unwrap();
    let r = &rep.per_vector[0];
    assert!(r.lower_ok && r.upper_ok && r.tight && r.standard);
    assert_eq!(r.frame_sum, PPoly::one(&linf()).unwrap());
}

#[test]
fn frame_check_reversed_bounds_fail_with_witness() {
    let ctx = free_ctx();
    let vectors = vec![ModuleVector::basis(&ctx, 1).unwrap()];
    let e1 = ModuleVector::basis(&ctx, 1).unwrap();
    let rep = frame_check(&ctx, &vectors, &[e1], &rat(2, 1), &Rat::one()).unwrap();
    let r = &rep.per_vector[0];
    assert!(!r.lower_ok);
    assert!(r.lower_witness.is_some());
    assert!(r.upper_ok);
}

#[test]
fn riesz_independence_cases() {
    let ctx = free_ctx();

    // Disjoint-support coefficients: the combination is zero and every
    // term vanishes individually.
    let vectors = vec![
        ModuleVector::free(&ctx, [(1, f1())]).unwrap(),
        ModuleVector::free(&ctx, [(1, f2())]).unwrap(),
    ];
    let rep = riesz_independence_check(&ctx, &vectors, &[f2(), f1()]).unwrap();
    assert!(rep.combination_zero);
    assert!(rep.independent);

    // Orthonormal vectors with nonzero coefficients: nonzero combination.
    let basis = vec![
        ModuleVector::basis(&ctx, 1).unwrap(),
        ModuleVector::basis(&ctx, 2).unwrap(),
    ];
    let rep = riesz_independence_check(&ctx, &basis, &[f1(), f2()]).unwrap();
    assert!(!rep.combination_zero);
    assert!(rep.independent);

    // All-zero coefficients: trivially independent.
    let z = PPoly::zero(&linf());
    let rep = riesz_independence_check(&ctx, &basis, &[z.clone(), z]).unwrap();
    assert!(rep.combination_zero);
    assert!(rep.independent);

    // A cancellation where terms do not vanish individually.
    let e1 = ModuleVector::basis(&ctx, 1).unwrap();
    let rep =
        riesz_independence_check(&ctx, &[e1.clone(), e1], &[f1(), f1().neg()]).unwrap();
    assert!(rep.combination_zero);
    assert!(!rep.independent);
    assert_eq!(rep.offending, Some(0));
}

#[test]
fn completeness_witness_paths() {
    let ctx = free_ctx();
    let sys = OrthoSystem::explicit(ctx.clone(), interleaved_prefix(&ctx, 5)).unwrap();

    let x = ModuleVector::free(&ctx, [(1, f2())]).unwrap();
    let w = completeness_witness_check(&sys, &x).unwrap();
    assert!(w.refutes_completeness);

    let basis = standard_basis_system(3);
    let e1 = ModuleVector::basis(basis.context(), 1).unwrap();
    let w = completeness_witness_check(&basis, &e1).unwrap();
    assert!(!w.refutes_completeness);
    assert_eq!(w.nonorthogonal_index, Some(1));

    assert!(matches!(
        completeness_witness_check(&sys, &ModuleVector::zero(&ctx)),
        Err(ModuleError::ZeroWitness)
    ));
}

#[test]
fn reconstruction_of_zero_and_basis_vectors() {
    let sys = standard_basis_system(4);
    let width = Rat::pow2_neg(20);

    let zero = ModuleVector::zero(sys.context());
    for row in reconstruction_check(&sys, &zero, &[1, 2, 3], &width).unwrap() {
        assert!(row.converged_exactly);
        assert_eq!(row.residual_norm.exact_value(), Some(&Rat::zero()));
    }

    let x = ModuleVector::free(sys.context(), [(1, f1()), (2, f2())]).unwrap();
    let rows = reconstruction_check(&sys, &x, &[1, 2, 4], &width).unwrap();
    assert!(!rows[0].converged_exactly);
    assert!(rows[1].converged_exactly);
    assert!(rows[2].converged_exactly);

    assert!(matches!(
        reconstruction_check(&sys, &x, &[2, 2], &width),
        Err(ModuleError::BadSchedule)
    ));
}

#[test]
fn convergence_table_shape() {
    let sys = standard_basis_system(4);
    let x = ModuleVector::basis(sys.context(), 1).unwrap();
    let rows = convergence_table(
        &sys,
        &x,
        &[1, 2, 4],
        &[rat(1, 2), rat(1, 4)],
        &Rat::pow2_neg(20),
    )
    .unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].superlevel.len(), 2);
    // x is reconstructed from the first step onward.
    for row in &rows {
        assert_eq!(row.residual_norm.exact_value(), Some(&Rat::zero()));
        for m in &row.superlevel {
            assert_eq!(m.exact_value(), Some(&Rat::zero()));
        }
    }
}

mod cover {
    use super::*;

    /// The paper-shaped cover: base [−1,0], two upper branches over [0,1],
    /// branch point 0.
    fn cover_ctx() -> ModuleContext {
        let cover = CoverSpace::new(rat(-1, 1), Rat::one(), Rat::zero(), 2).unwrap();
        ModuleContext::branched_cover(cover)
    }

    fn bump_base(cover: &CoverSpace) -> PPoly {
        // −4y² − 4y: vanishes at −1 and 0, peaks at 1 in between.
        PPoly::from_poly(
            &cover.branch_descriptor(0),
            Poly::new(vec![Rat::zero(), rat(-4, 1), rat(-4, 1)]),
        )
        .unwrap()
    }

    fn bump_upper(cover: &CoverSpace, branch: usize) -> PPoly {
        // 4x(1−x) on [0,1].
        PPoly::from_poly(
            &cover.branch_descriptor(branch),
            Poly::new(vec![Rat::zero(), rat(4, 1), rat(-4, 1)]),
        )
        .unwrap()
    }

    fn cover_generators(ctx: &ModuleContext) -> Vec<ModuleVector> {
        let ModuleContext::BranchedCover { cover } = ctx else {
            unreachable!()
        };
        let zero_base = PPoly::zero(&cover.branch_descriptor(0));
        let zero_up = PPoly::zero(&cover.branch_descriptor(1));
        vec![
            ModuleVector::cover(ctx, vec![bump_base(cover), zero_up.clone(), zero_up.clone()])
                .unwrap(),
            ModuleVector::cover(ctx, vec![zero_base.clone(), bump_upper(cover, 1), zero_up.clone()])
                .unwrap(),
            ModuleVector::cover(ctx, vec![zero_base, zero_up, bump_upper(cover, 2)]).unwrap(),
        ]
    }

    #[test]
    fn fiber_count_jumps_at_branch_point() {
        let cover = CoverSpace::new(rat(-1, 1), Rat::one(), Rat::zero(), 2).unwrap();
        assert_eq!(cover.fiber_count(&rat(-1, 2)), 1);
        assert_eq!(cover.fiber_count(&Rat::zero()), 1);
        assert_eq!(cover.fiber_count(&rat(1, 2)), 2);
    }

    #[test]
    fn glue_constraint_enforced() {
        let ctx = cover_ctx();
        let ModuleContext::BranchedCover { cover } = &ctx else {
            unreachable!()
        };
        let one_base = PPoly::one(&cover.branch_descriptor(0)).unwrap();
        let zero_up = PPoly::zero(&cover.branch_descriptor(1));
        // Base branch value 1 at β, upper branches 0: not glued.
        assert!(ModuleVector::cover(&ctx, vec![one_base, zero_up.clone(), zero_up]).is_err());
    }

    #[test]
    fn disjoint_branch_supports_are_orthogonal() {
        let ctx = cover_ctx();
        let gens = cover_generators(&ctx);
        for i in 0..3 {
            for j in (i + 1)..3 {
                let ip = inner_product(&ctx, &gens[i], &gens[j]).unwrap();
                assert!(ip.is_zero_fn(), "⟨f{}, f{}⟩ ≠ 0", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn inner_squares_are_continuous_across_branch_point() {
        let ctx = cover_ctx();
        for g in cover_generators(&ctx) {
            // Construction of the inner product validates continuity; a
            // violation would surface as an error here.
            let sq = inner_square(&ctx, &g).unwrap();
            assert!(sq.is_nonneg());
            assert!(sq.eval(&Rat::zero()).is_zero());
        }
    }

    #[test]
    fn fiber_average_halves_upper_products() {
        let ctx = cover_ctx();
        let gens = cover_generators(&ctx);
        let sq = inner_square(&ctx, &gens[1]).unwrap();
        // On the upper part: (4x(1−x))² averaged over 2 branches, one of
        // which is zero.
        let expected_at_half = &rat(1, 2) * &(&Rat::one() * &Rat::one());
        assert_eq!(sq.eval(&rat(1, 2)), expected_at_half);
        // On the base part the product vanishes.
        assert!(sq.eval(&rat(-1, 2)).is_zero());
    }

    #[test]
    fn scaling_acts_through_the_projection() {
        let ctx = cover_ctx();
        let ModuleContext::BranchedCover { cover } = &ctx else {
            unreachable!()
        };
        let xi = PPoly::from_poly(&cover.base_descriptor(), Poly::x()).unwrap();
        let g = cover_generators(&ctx).remove(1);
        let scaled = g.scale(&ctx, &xi).unwrap();
        let sq = inner_square(&ctx, &scaled).unwrap();
        // ⟨g·ξ, g·ξ⟩ = ξ²·⟨g,g⟩.
        let direct = inner_square(&ctx, &g).unwrap().mul(&xi).unwrap().mul(&xi).unwrap();
        assert_eq!(sq, direct);
    }

    #[test]
    fn gram_classification_of_cover_generators() {
        let ctx = cover_ctx();
        let sys = OrthoSystem::explicit(ctx.clone(), cover_generators(&ctx)).unwrap();
        let v = gram_classify(&sys, 3).unwrap();
        // Orthogonal with non-idempotent inner squares.
        assert_eq!(v.class, GramClass::Orthogonal);
    }
}

#[test]
fn vector_and_context_serde_round_trip() {
    let ctx = free_ctx();
    let x = ModuleVector::free(&ctx, [(1, f1()), (3, f2())]).unwrap();
    let json = serde_json::to_string(&x).unwrap();
    assert!(json.contains("\"entries\""));
    assert!(json.contains("\"1\""));
    let back: ModuleVector = serde_json::from_str(&json).unwrap();
    assert_eq!(back, x);
    back.validate_in(&ctx).unwrap();

    let cj = serde_json::to_string(&ctx).unwrap();
    assert!(cj.contains("\"type\":\"free\""));
    let cb: ModuleContext = serde_json::from_str(&cj).unwrap();
    assert_eq!(cb, ctx);

    let cover = CoverSpace::new(rat(-1, 1), Rat::one(), Rat::zero(), 2).unwrap();
    let ctx2 = ModuleContext::branched_cover(cover);
    let cj2 = serde_json::to_string(&ctx2).unwrap();
    assert!(cj2.contains("branched-cover"));
    let cb2: ModuleContext = serde_json::from_str(&cj2).unwrap();
    assert_eq!(cb2, ctx2);
}

#[test]
fn norm_of_indicator_vector() {
    let ctx = free_ctx();
    let x = ModuleVector::free(&ctx, [(1, f1())]).unwrap();
    let sq = inner_square(&ctx, &x).unwrap();
    assert_eq!(norm_cmp(&sq, &Rat::one()), NormOrdering::Eq);
}

use super::*;
use crate::rat::rat;
use crate::roots::SignClass;

fn linf() -> AlgebraDescriptor {
    AlgebraDescriptor::measurable(Rat::zero(), Rat::one())
}

fn c01() -> AlgebraDescriptor {
    AlgebraDescriptor::continuous(Rat::zero(), Rat::one())
}

fn c0_punctured() -> AlgebraDescriptor {
    AlgebraDescriptor::continuous_vanishing(Rat::zero(), Rat::one(), [Rat::zero()]).unwrap()
}

fn suspension() -> AlgebraDescriptor {
    AlgebraDescriptor::continuous_vanishing(Rat::zero(), Rat::one(), [Rat::zero(), Rat::one()])
        .unwrap()
}

/// χ_[0,1/2] and its complementary indicator.
fn f1() -> PPoly {
    PPoly::indicator(&linf(), &Rat::zero(), &rat(1, 2)).unwrap()
}

fn f2() -> PPoly {
    PPoly::indicator(&linf(), &rat(1, 2), &Rat::one()).unwrap()
}

fn ident(d: &AlgebraDescriptor) -> PPoly {
    PPoly::from_poly(d, Poly::x()).unwrap()
}

/// The tent function: x on [0,1/2], 1−x on (1/2,1].
fn tent(d: &AlgebraDescriptor) -> PPoly {
    PPoly::new(
        d.clone(),
        RawPiecewise {
            breakpoints: vec![Rat::zero(), rat(1, 2), Rat::one()],
            pieces: vec![Poly::x(), Poly::linear(1, -1)],
        },
    )
    .unwrap()
}

#[test]
fn disjoint_indicators_multiply_to_zero() {
    let prod = f1().mul(&f2()).unwrap();
    assert!(prod.is_zero_fn());
}

#[test]
fn additive_identity() {
    let f = tent(&c01());
    let z = PPoly::zero(&c01());
    assert_eq!(f.add(&z).unwrap(), f);
}

#[test]
fn product_matches_grid_oracle() {
    // x·(1−x) on [0,1] against evaluation at 10^3 rational points.
    let x = ident(&c01());
    let one_minus_x = PPoly::from_poly(&c01(), Poly::linear(1, -1)).unwrap();
    let prod = x.mul(&one_minus_x).unwrap();
    for k in 0..=1000 {
        let t = rat(k, 1000);
        assert_eq!(prod.eval(&t), &x.eval(&t) * &one_minus_x.eval(&t));
    }
}

#[test]
fn descriptor_mismatch_is_an_error() {
    let x = ident(&c01());
    let g = f1();
    assert_eq!(x.add(&g).unwrap_err(), AlgebraError::DescriptorMismatch);
}

#[test]
fn membership_examples() {
    // f(x) = x belongs to the algebra vanishing at 0.
    let raw_x = RawPiecewise {
        breakpoints: vec![Rat::zero(), Rat::one()],
        pieces: vec![Poly::x()],
    };
    assert!(is_member(&raw_x, &c0_punctured()).is_member);

    // The constant 1 violates the vanishing constraint.
    let raw_one = RawPiecewise {
        breakpoints: vec![Rat::zero(), Rat::one()],
        pieces: vec![Poly::one()],
    };
    let report = is_member(&raw_one, &c0_punctured());
    assert!(!report.is_member);
    assert!(matches!(
        report.violations[0],
        MembershipViolation::VanishingViolatedAt { .. }
    ));

    // The tent function lies in the suspension (vanishing at both ends).
    let raw_tent = RawPiecewise {
        breakpoints: vec![Rat::zero(), rat(1, 2), Rat::one()],
        pieces: vec![Poly::x(), Poly::linear(1, -1)],
    };
    assert!(is_member(&raw_tent, &suspension()).is_member);

    // A genuine jump is rejected in continuous algebras.
    let raw_jump = RawPiecewise {
        breakpoints: vec![Rat::zero(), rat(1, 2), Rat::one()],
        pieces: vec![Poly::zero(), Poly::one()],
    };
    assert!(!is_member(&raw_jump, &c01()).is_member);
    assert!(is_member(&raw_jump, &linf()).is_member);
}

#[test]
fn nonnegativity_examples() {
    let one = PPoly::one(&linf()).unwrap();
    assert!(one.sub(&f1()).unwrap().is_nonneg());

    // x − x² ≥ 0 on [0,1], confirmed on a grid.
    let g = PPoly::from_poly(&c01(), Poly::new(vec![Rat::zero(), Rat::one(), rat(-1, 1)])).unwrap();
    assert!(g.is_nonneg());
    for k in 0..=1000 {
        assert!(!g.eval(&rat(k, 1000)).is_negative());
    }

    let h = PPoly::from_poly(&c01(), Poly::linear(rat(-1, 2), Rat::one())).unwrap();
    assert!(!h.is_nonneg());
    let w = negativity_witness(&h).expect("witness exists");
    assert!(h.eval(&w).is_negative());
}

#[test]
fn norm_comparisons() {
    assert_eq!(norm_cmp(&f1(), &Rat::one()), NormOrdering::Eq);
    assert_eq!(norm_cmp(&f1(), &rat(2, 1)), NormOrdering::Lt);
    assert_eq!(norm_cmp(&f1(), &rat(1, 2)), NormOrdering::Gt);
    assert_eq!(norm_cmp(&PPoly::zero(&linf()), &Rat::zero()), NormOrdering::Eq);
}

#[test]
fn sup_norm_of_cubic_hump() {
    // ‖x(1−2x)‖ on [0,1/2]: the critical point x = 1/4 gives exactly 1/8.
    let d = AlgebraDescriptor::continuous(Rat::zero(), rat(1, 2));
    let f = PPoly::from_poly(&d, &Poly::x() * &Poly::linear(1, -2)).unwrap();
    assert_eq!(norm_cmp(&f, &rat(1, 8)), NormOrdering::Eq);
    let enc = sup_norm(&f, &Rat::pow2_neg(20)).unwrap();
    assert!(enc.contains(&rat(1, 8)));
    assert!(enc.width() <= Rat::pow2_neg(20));
    // Dense-grid oracle: the sampled maximum never exceeds the enclosure.
    let mut best = Rat::zero();
    for k in 0..=500 {
        let v = f.eval(&rat(k, 1000)).abs();
        if v > best {
            best = v;
        }
    }
    assert!(best <= enc.hi);
    assert_eq!(best, rat(1, 8));
}

#[test]
fn invertibility() {
    let one = PPoly::one(&c01()).unwrap();
    let inv = is_invertible(&one).unwrap();
    assert!(inv.invertible);

    assert!(!is_invertible(&f1()).unwrap().invertible);

    let g = PPoly::from_poly(&c01(), Poly::new(vec![Rat::one(), Rat::zero(), Rat::one()])).unwrap();
    let inv = is_invertible(&g).unwrap();
    assert!(inv.invertible);
    assert_eq!(inv.lower_bound, Some(Rat::one()));

    let x0 = ident(&c0_punctured());
    assert_eq!(
        is_invertible(&x0).unwrap_err(),
        AlgebraError::NonUnitalAlgebra
    );
}

#[test]
fn divide_identity_by_itself_fails_in_punctured_algebra() {
    // x / x would require the quotient 1, which cannot vanish at 0.
    let f = ident(&c0_punctured());
    let out = divide_exact(&f, &f).unwrap();
    match out.failure().expect("no quotient in this algebra") {
        DivisionFailure::QuotientNotMember(vs) => {
            assert!(matches!(
                vs[0],
                MembershipViolation::VanishingViolatedAt { .. }
            ));
        }
        other => panic!("unexpected failure {other:?}"),
    }
}

#[test]
fn idempotent_division_keeps_the_indicator() {
    let out = divide_exact(&f1(), &f1()).unwrap();
    let q = out.quotient().expect("idempotent quotient exists");
    assert_eq!(q, f1());
    assert_eq!(f1().mul(&q).unwrap(), f1());
}

#[test]
fn divisor_vanishing_blocks_division() {
    let one = PPoly::one(&c01()).unwrap();
    let x = ident(&c01());
    let out = divide_exact(&one, &x).unwrap();
    assert_eq!(
        out.failure(),
        Some(&DivisionFailure::DivisorVanishes { at: Rat::zero() })
    );
}

#[test]
fn zero_set_examples() {
    // Indicator: one plateau, reported as the closed closure.
    let zs = zero_set(&f1());
    assert_eq!(zs.plateaus, vec![(rat(1, 2), Rat::one())]);
    assert!(zs.points.is_empty());

    // x on [0,1]: a single isolated root at 0.
    let zs = zero_set(&ident(&c01()));
    assert!(zs.plateaus.is_empty());
    assert_eq!(zs.points.len(), 1);
    let (a, b) = zs.points[0].bounds();
    assert_eq!((a, b), (Rat::zero(), Rat::zero()));

    let zs = zero_set(&PPoly::one(&c01()).unwrap());
    assert!(zs.is_empty());
}

#[test]
fn spectral_projection_for_plateau_zero_set() {
    // f₂ vanishes exactly on [0,1/2]; the projection is f₁.
    let b = spectral_zero_projection(&f2()).unwrap().expect("projection exists");
    assert_eq!(b, f1());
    assert!(f2().mul(&b).unwrap().is_zero_fn());
    assert_eq!(b.mul(&b).unwrap(), b);
}

#[test]
fn spectral_projection_none_for_isolated_zero() {
    // a(x) = x takes arbitrarily small positive values: 0 is not isolated
    // in the spectrum. Oracle: the range of each piece reaches below any ε.
    let a = ident(&c01());
    assert!(spectral_zero_projection(&a).unwrap().is_none());
    for k in 1..=10 {
        let eps = rat(1, 1 << k);
        assert!(a.eval(&(&eps * &rat(1, 2))) < eps);
    }

    let one = PPoly::one(&c01()).unwrap();
    assert!(spectral_zero_projection(&one).unwrap().is_none());
}

#[test]
fn spectral_projection_requires_nonnegative() {
    let neg = PPoly::constant(&c01(), rat(-1, 1)).unwrap();
    assert_eq!(
        spectral_zero_projection(&neg).unwrap_err(),
        AlgebraError::NotPositive
    );
}

#[test]
fn annihilator_examples() {
    // Indicator: annihilated by anything supported on its zero plateau.
    let b = annihilator(&f1()).expect("plateau annihilator");
    assert!(!b.is_zero_fn());
    assert!(f1().mul(&b).unwrap().is_zero_fn());

    // Isolated zeros only: no annihilator.
    let g = PPoly::from_poly(&c01(), &Poly::x() * &Poly::linear(1, -1)).unwrap();
    assert!(annihilator(&g).is_none());

    // Everything annihilates zero; in a unital algebra the unit is chosen.
    let b = annihilator(&PPoly::zero(&linf())).unwrap();
    assert_eq!(b, PPoly::one(&linf()).unwrap());

    // Continuous algebra with a plateau: the bump is continuous and
    // vanishes at the plateau boundary.
    let plateau_then_rise = PPoly::new(
        c01(),
        RawPiecewise {
            breakpoints: vec![Rat::zero(), rat(1, 2), Rat::one()],
            pieces: vec![Poly::zero(), Poly::linear(rat(-1, 2), Rat::one())],
        },
    )
    .unwrap();
    let b = annihilator(&plateau_then_rise).expect("bump annihilator");
    assert!(!b.is_zero_fn());
    assert!(plateau_then_rise.mul(&b).unwrap().is_zero_fn());
}

#[test]
fn superlevel_measures() {
    // Tail indicator χ_(c_n, 1] with c_n = 1 − 2^-n: measure 2^-n exactly.
    for n in 1..=10u32 {
        let c_n = &Rat::one() - &Rat::pow2_neg(n);
        let tail = PPoly::indicator(&linf(), &c_n, &Rat::one()).unwrap();
        let m = superlevel_measure(&tail, &rat(1, 2), &Rat::pow2_neg(40)).unwrap();
        assert_eq!(m.exact_value(), Some(&Rat::pow2_neg(n)));
    }

    // Zero function: measure 0 for every ε.
    let m = superlevel_measure(&PPoly::zero(&linf()), &rat(1, 3), &Rat::pow2_neg(10)).unwrap();
    assert_eq!(m.exact_value(), Some(&Rat::zero()));

    // x on [0,1] above 1/2: the root of x − 1/2 gives exactly 1/2.
    let m = superlevel_measure(&ident(&c01()), &rat(1, 2), &Rat::pow2_neg(10)).unwrap();
    assert_eq!(m.exact_value(), Some(&rat(1, 2)));

    // Irrational crossing: {x² > 1/2} on [0,1] has measure 1 − √(1/2);
    // the enclosure brackets it and refines below the requested width.
    let sq = PPoly::from_poly(&c01(), &Poly::x() * &Poly::x()).unwrap();
    let m = superlevel_measure(&sq, &rat(1, 2), &Rat::pow2_neg(30)).unwrap();
    assert!(m.width() < Rat::pow2_neg(30));
    // 1 − hi ≤ √(1/2) ≤ 1 − lo, i.e. (1−hi)² ≤ 1/2 ≤ (1−lo)².
    let a = &Rat::one() - &m.hi;
    let b = &Rat::one() - &m.lo;
    assert!(&a * &a <= rat(1, 2));
    assert!(&b * &b >= rat(1, 2));

    assert_eq!(
        superlevel_measure(&sq, &Rat::zero(), &Rat::one()).unwrap_err(),
        AlgebraError::NonpositiveEpsilon(Rat::zero())
    );
}

#[test]
fn cstar_identity_within_enclosures() {
    // ‖f·f‖ enclosure overlaps the square of the ‖f‖ enclosure.
    let w = Rat::pow2_neg(30);
    for f in [tent(&c01()), ident(&c01()), f1().reinterpret(&linf()).unwrap()] {
        let ff = f.mul(&f).unwrap();
        let e1 = sup_norm(&ff, &w).unwrap();
        let e2 = sup_norm(&f, &w).unwrap();
        let e2sq = Enclosure {
            lo: &e2.lo * &e2.lo,
            hi: &e2.hi * &e2.hi,
        };
        assert!(e1.overlaps(&e2sq), "C*-identity violated: {e1} vs {e2sq}");
    }
}

#[test]
fn submultiplicativity_of_upper_bounds() {
    let w = Rat::pow2_neg(30);
    let pairs = [
        (tent(&c01()), ident(&c01())),
        (ident(&c01()), ident(&c01())),
    ];
    for (f, g) in pairs {
        let fg = f.mul(&g).unwrap();
        let e = sup_norm(&fg, &w).unwrap();
        let ef = sup_norm(&f, &w).unwrap();
        let eg = sup_norm(&g, &w).unwrap();
        assert!(e.hi <= &ef.hi * &eg.hi);
    }
}

#[test]
fn canonical_form_merges_equal_neighbours() {
    let f = PPoly::new(
        linf(),
        RawPiecewise {
            breakpoints: vec![Rat::zero(), rat(1, 4), rat(1, 2), Rat::one()],
            pieces: vec![Poly::one(), Poly::one(), Poly::zero()],
        },
    )
    .unwrap();
    assert_eq!(f, f1());
    assert_eq!(f.piece_count(), 2);
}

#[test]
fn ae_equality_ignores_breakpoint_values() {
    // χ_[0,1/2] and χ_[0,1/2) are the same element of the measurable
    // algebra; the canonical representation makes them identical.
    let a = PPoly::indicator(&linf(), &Rat::zero(), &rat(1, 2)).unwrap();
    let b = PPoly::new(
        linf(),
        RawPiecewise {
            breakpoints: vec![Rat::zero(), rat(1, 2), Rat::one()],
            pieces: vec![Poly::one(), Poly::zero()],
        },
    )
    .unwrap();
    assert_eq!(a, b);
}

#[test]
fn ppoly_json_round_trip() {
    let f = tent(&suspension());
    let json = serde_json::to_string(&f).unwrap();
    let back: PPoly = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);

    // Rationals appear as canonical p/q strings.
    assert!(json.contains("\"1/2\""));
    assert!(json.contains("\"regularity\":\"continuous\""));

    // Deserialization validates membership.
    let bad = r#"{
        "descriptor": {"domain": ["0/1","1/1"], "regularity": "continuous"},
        "breakpoints": ["0/1","1/2","1/1"],
        "pieces": [["0/1"],["1/1"]]
    }"#;
    assert!(serde_json::from_str::<PPoly>(bad).is_err());
}

#[test]
fn restriction() {
    let f = tent(&c01());
    let left = AlgebraDescriptor::continuous(Rat::zero(), rat(1, 2));
    let g = f.restrict_to(&left).unwrap();
    assert_eq!(g.eval(&rat(1, 4)), rat(1, 4));
    assert_eq!(g.piece_count(), 1);

    let mid = AlgebraDescriptor::continuous(rat(1, 4), rat(3, 4));
    let h = f.restrict_to(&mid).unwrap();
    assert_eq!(h.eval(&rat(1, 4)), rat(1, 4));
    assert_eq!(h.eval(&rat(3, 4)), rat(1, 4));
}

#[test]
fn unitization_admits_the_unit() {
    let d = c0_punctured();
    assert!(PPoly::one(&d).is_err());
    assert!(PPoly::one(&d.unitization()).is_ok());
}

#[test]
fn sign_class_on_point_support() {
    let f = tent(&suspension());
    assert_eq!(f.sign_class(), SignClass::Nonnegative);
    assert_eq!(f.neg().sign_class(), SignClass::Nonpositive);
    assert_eq!(PPoly::zero(&linf()).sign_class(), SignClass::Zero);
}

#[test]
fn bounded_above_by_one() {
    assert!(f1().is_bounded_above_by(&Rat::one()));
    assert!(!f1().scale(&rat(3, 2)).is_bounded_above_by(&Rat::one()));
}

//! Builders and claim suites, one section per gallery id.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{
    annihilator, divide_exact, norm_cmp, spectral_zero_projection, superlevel_measure,
    AlgebraDescriptor, DivisionFailure, NormOrdering, PPoly, RawPiecewise,
};
use crate::error::{GalleryError, ModuleError};
use crate::exec;
use crate::module::{
    bessel_check, completeness_witness_check, frame_check, gram_classify, inner_product,
    inner_square, reconstruction_check, residual_identity_check, CoverSpace,
    GramClass, ModuleContext, ModuleVector, OrthoSystem,
};
use crate::poly::Poly;
use crate::rat::{rat, Rat};

use super::families::{
    half_indicators, lebesgue_unit_interval, CirculantFamily,
    DyadicTailFamily, InterleavedIndicatorFamily,
};
use super::{Check, ExampleBundle, GalleryParams, VerdictReport};

fn c0_punctured() -> AlgebraDescriptor {
    AlgebraDescriptor::continuous_vanishing(Rat::zero(), Rat::one(), [Rat::zero()])
        .expect("valid descriptor")
}

fn suspension() -> AlgebraDescriptor {
    AlgebraDescriptor::continuous_vanishing(Rat::zero(), Rat::one(), [Rat::zero(), Rat::one()])
        .expect("valid descriptor")
}

fn params_map(n: u64) -> BTreeMap<String, String> {
    [("n".to_owned(), n.to_string())].into_iter().collect()
}

fn step_key(m: u64) -> String {
    format!("step-{m:03}")
}

// ---------------------------------------------------------------------------
// c0-c1-without-c2: the one-point system {f}, f(x) = x, over the algebra of
// continuous functions vanishing at 0. Complete and generating, yet f admits
// no exact factorization f = f·g; the cut-off approximants g_k certify the
// generating property with the exact rate ‖f − f·g_k‖ = 1/(4k).
// ---------------------------------------------------------------------------

/// min(kx, 1) as a piecewise polynomial.
fn cutoff_approximant(d: &AlgebraDescriptor, k: u64) -> PPoly {
    let kink = Rat::new(1, k as i64);
    if kink >= Rat::one() {
        return PPoly::from_poly(d, Poly::linear(0, 1)).expect("x is a member");
    }
    PPoly::new(
        d.clone(),
        RawPiecewise {
            breakpoints: vec![Rat::zero(), kink, Rat::one()],
            pieces: vec![Poly::linear(0, k as i64), Poly::one()],
        },
    )
    .expect("cut-off is continuous and vanishes at 0")
}

pub fn build_c0_c1_without_c2(params: GalleryParams) -> Result<ExampleBundle, GalleryError> {
    let n = params.resolve("c0-c1-without-c2", 7, 16)?;
    let d = c0_punctured();
    let ctx = ModuleContext::free(d.clone());
    let f = PPoly::from_poly(&d, Poly::x()).expect("x vanishes at 0");
    let v_f = ModuleVector::free(&ctx, [(1, f.clone())])?;
    let system = OrthoSystem::explicit(ctx.clone(), vec![v_f.clone()])?;

    let mut bundle = ExampleBundle::new("c0-c1-without-c2", ctx);
    bundle.params = params_map(n);
    bundle.elements.insert("f".into(), f);
    for j in 0..n {
        let k = 1u64 << j;
        bundle
            .elements
            .insert(format!("g_{k:03}"), cutoff_approximant(&d, k));
    }
    bundle.vectors.insert("f-as-vector".into(), v_f);
    bundle.systems.insert("singleton".into(), system);
    Ok(bundle)
}

pub fn verify_c0_c1_without_c2(params: GalleryParams) -> Result<VerdictReport, GalleryError> {
    let bundle = build_c0_c1_without_c2(params)?;
    let n: u64 = bundle.params["n"].parse().expect("stored by build");
    let f = &bundle.elements["f"];
    let system = &bundle.systems["singleton"];
    let mut checks = Vec::new();

    checks.push(
        Check::new(
            "membership",
            "f(x) = x belongs to the algebra of continuous functions vanishing at 0",
            true,
        )
        .with("f(0)", f.eval(&Rat::zero())),
    );

    let verdict = gram_classify(system, 1)?;
    checks.push(
        Check::new(
            "singleton-orthogonal",
            "the one-point family {f} is an orthogonal system",
            verdict.class >= GramClass::Orthogonal,
        )
        .with("class", verdict.class),
    );

    let ann = annihilator(f);
    checks.push(Check::new(
        "complete-singleton",
        "no nonzero algebra element annihilates f, so {f} is complete",
        ann.is_none(),
    ));

    let division = divide_exact(f, f)?;
    let (passed, reason) = match division.failure() {
        Some(DivisionFailure::QuotientNotMember(vs)) => (
            true,
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ),
        Some(other) => (false, other.to_string()),
        None => (false, "a quotient was found".to_owned()),
    };
    checks.push(
        Check::new(
            "no-exact-factorization",
            "f cannot be written as f·g with g in the algebra: the quotient would \
             be the constant 1, which violates vanishing at 0",
            passed,
        )
        .with("reason", reason),
    );

    let mut rate = Check::new(
        "approximation-rate",
        "the cut-off approximants satisfy ‖f − f·g_k‖ = 1/(4k) exactly",
        true,
    );
    for j in 0..n {
        let k = 1u64 << j;
        let g_k = &bundle.elements[&format!("g_{k:03}")];
        let diff = f.sub(&f.mul(g_k)?).map_err(ModuleError::from)?;
        let expected = Rat::new(1, 4 * k as i64);
        let cmp = norm_cmp(&diff, &expected);
        if cmp != NormOrdering::Eq {
            rate.passed = false;
        }
        rate = rate.with(format!("k-{k:03}"), format!("norm vs {expected}: {cmp:?}"));
    }
    checks.push(rate);

    Ok(VerdictReport::from_checks(
        &bundle.id,
        bundle.params,
        checks,
    ))
}

// ---------------------------------------------------------------------------
// suspension-not-c1: the tent-function system {g} over the same algebra.
// Complete, but every product g·h vanishes at both endpoints, so the closed
// span sits inside the suspension and misses f(x) = x by distance ≥ 1.
// ---------------------------------------------------------------------------

fn tent(d: &AlgebraDescriptor) -> PPoly {
    PPoly::new(
        d.clone(),
        RawPiecewise {
            breakpoints: vec![Rat::zero(), rat(1, 2), Rat::one()],
            pieces: vec![Poly::x(), Poly::linear(1, -1)],
        },
    )
    .expect("tent is continuous and vanishes at 0")
}

/// Deterministic members of the vanishing-at-0 algebra used as sampled
/// multipliers.
fn sample_multipliers(d: &AlgebraDescriptor, n: u64) -> Vec<(String, PPoly)> {
    let x = Poly::x();
    let mut out: Vec<(String, PPoly)> = vec![
        ("x".into(), PPoly::from_poly(d, x.clone()).unwrap()),
        ("x^2".into(), PPoly::from_poly(d, &x * &x).unwrap()),
        ("x/2".into(), PPoly::from_poly(d, x.scale(&rat(1, 2))).unwrap()),
        ("tent".into(), tent(d)),
        ("min(2x,1)".into(), cutoff_approximant(d, 2)),
        ("min(4x,1)".into(), cutoff_approximant(d, 4)),
        (
            "x(1-x)".into(),
            PPoly::from_poly(d, &x * &Poly::linear(1, -1)).unwrap(),
        ),
        ("x^3".into(), PPoly::from_poly(d, &(&x * &x) * &x).unwrap()),
    ];
    out.truncate(n as usize);
    out
}

pub fn build_suspension_not_c1(params: GalleryParams) -> Result<ExampleBundle, GalleryError> {
    let n = params.resolve("suspension-not-c1", 8, 8)?;
    let d = c0_punctured();
    let ctx = ModuleContext::free(d.clone());
    let g = tent(&d);
    let v_g = ModuleVector::free(&ctx, [(1, g.clone())])?;
    let system = OrthoSystem::explicit(ctx.clone(), vec![v_g])?;

    let mut bundle = ExampleBundle::new("suspension-not-c1", ctx);
    bundle.params = params_map(n);
    bundle.elements.insert("g".into(), g);
    for (name, h) in sample_multipliers(&d, n) {
        bundle.elements.insert(format!("h:{name}"), h);
    }
    bundle.systems.insert("singleton".into(), system);
    Ok(bundle)
}

pub fn verify_suspension_not_c1(params: GalleryParams) -> Result<VerdictReport, GalleryError> {
    let bundle = build_suspension_not_c1(params)?;
    let g = &bundle.elements["g"];
    let sa = suspension();
    let target = PPoly::from_poly(g.descriptor(), Poly::x()).expect("x vanishes at 0");
    let mut checks = Vec::new();

    checks.push(
        Check::new(
            "tent-membership",
            "the tent function is continuous and vanishes at 0",
            true,
        )
        .with("g(1/2)", g.eval(&rat(1, 2)))
        .with("g(1)", g.eval(&Rat::one())),
    );

    checks.push(Check::new(
        "complete-singleton",
        "no nonzero algebra element annihilates the tent, so {g} is complete",
        annihilator(g).is_none(),
    ));

    let mut in_suspension = Check::new(
        "products-live-in-suspension",
        "every product g·h vanishes at both endpoints, hence lies in the suspension",
        true,
    );
    let mut distance = Check::new(
        "distance-to-identity",
        "‖x − g·h‖ ≥ 1 for every sampled h, by evaluation at the right endpoint",
        true,
    );
    for (name, h) in bundle
        .elements
        .iter()
        .filter_map(|(k, v)| k.strip_prefix("h:").map(|n| (n.to_owned(), v)))
    {
        let gh = g.mul(h).map_err(ModuleError::from)?;
        let member = gh.reinterpret(&sa).is_ok();
        if !member {
            in_suspension.passed = false;
        }
        in_suspension = in_suspension.with(format!("gh({name})(1)"), gh.eval(&Rat::one()));

        let diff = target.sub(&gh).map_err(ModuleError::from)?;
        let cmp = norm_cmp(&diff, &Rat::one());
        let far_enough = cmp != NormOrdering::Lt && gh.eval(&Rat::one()).is_zero();
        if !far_enough {
            distance.passed = false;
        }
        distance = distance.with(format!("norm(x - g·{name}) vs 1"), format!("{cmp:?}"));
    }
    checks.push(in_suspension);
    checks.push(distance);

    Ok(VerdictReport::from_checks(
        &bundle.id,
        bundle.params,
        checks,
    ))
}

// ---------------------------------------------------------------------------
// orthogonal-basis-L∞: the complementary half indicators {f₁, f₂} over the
// essentially bounded algebra. A quasi-orthonormal basis whose coefficient
// decompositions are not unique, plus the singular-vector constructions: the
// spectral zero projection of ⟨e_t,e_t⟩ and the resulting second coefficient
// representation e_t(b+1) = e_t·1.
// ---------------------------------------------------------------------------

pub fn build_orthogonal_basis(params: GalleryParams) -> Result<ExampleBundle, GalleryError> {
    let n = params.resolve("orthogonal-basis-L∞", 6, 6)?;
    let d = lebesgue_unit_interval();
    let ctx = ModuleContext::free(d.clone());
    let (f1, f2) = half_indicators();

    let mut bundle = ExampleBundle::new("orthogonal-basis-L∞", ctx.clone());
    bundle.params = params_map(n);
    let samples: Vec<(String, PPoly)> = vec![
        ("one".into(), PPoly::one(&d).unwrap()),
        ("x".into(), PPoly::from_poly(&d, Poly::x()).unwrap()),
        (
            "x^2".into(),
            PPoly::from_poly(&d, &Poly::x() * &Poly::x()).unwrap(),
        ),
        ("f1".into(), f1.clone()),
        (
            "chi[1/4,3/4]".into(),
            PPoly::indicator(&d, &rat(1, 4), &rat(3, 4)).unwrap(),
        ),
        (
            "2x-1".into(),
            PPoly::from_poly(&d, Poly::linear(-1, 2)).unwrap(),
        ),
    ];
    for (name, g) in samples.into_iter().take(n as usize) {
        bundle.elements.insert(format!("sample:{name}"), g);
    }
    bundle.elements.insert("f1".into(), f1.clone());
    bundle.elements.insert("f2".into(), f2.clone());
    bundle.vectors.insert(
        "e_t".into(),
        ModuleVector::free(&ctx, [(1, f2.clone())])?,
    );
    bundle.systems.insert(
        "pair".into(),
        OrthoSystem::explicit(
            ctx.clone(),
            vec![
                ModuleVector::free(&ctx, [(1, f1)])?,
                ModuleVector::free(&ctx, [(1, f2)])?,
            ],
        )?,
    );
    Ok(bundle)
}

pub fn verify_orthogonal_basis(params: GalleryParams) -> Result<VerdictReport, GalleryError> {
    let bundle = build_orthogonal_basis(params)?;
    let d = lebesgue_unit_interval();
    let f1 = &bundle.elements["f1"];
    let f2 = &bundle.elements["f2"];
    let one = PPoly::one(&d).unwrap();
    let mut checks = Vec::new();

    checks.push(Check::new(
        "partition-of-unity",
        "f₁ + f₂ = 1 exactly",
        f1.add(f2).map_err(ModuleError::from)? == one,
    ));

    let verdict = gram_classify(&bundle.systems["pair"], 2)?;
    checks.push(
        Check::new(
            "gram-class",
            "the pair {f₁, f₂} is quasi-orthonormal: orthogonal with idempotent inner squares",
            verdict.class == GramClass::QuasiOrthonormal,
        )
        .with("class", verdict.class),
    );

    let mut decomposition = Check::new(
        "c2-decomposition",
        "g = f₁·g + f₂·g exactly for every sampled g",
        true,
    );
    for (name, g) in bundle
        .elements
        .iter()
        .filter_map(|(k, v)| k.strip_prefix("sample:").map(|n| (n.to_owned(), v)))
    {
        let recombined = f1
            .mul(g)
            .and_then(|a| f2.mul(g).and_then(|b| a.add(&b)))
            .map_err(ModuleError::from)?;
        if recombined != *g {
            decomposition.passed = false;
            decomposition = decomposition.with(format!("fail:{name}"), "recombination differs");
        }
    }
    checks.push(decomposition);

    // Non-uniqueness: 1 = f₁·1 + f₂·1 = f₁·f₁ + f₂·f₂, three equal
    // expressions with two distinct coefficient families.
    let via_unit = f1
        .mul(&one)
        .and_then(|a| f2.mul(&one).and_then(|b| a.add(&b)))
        .map_err(ModuleError::from)?;
    let via_self = f1
        .mul(f1)
        .and_then(|a| f2.mul(f2).and_then(|b| a.add(&b)))
        .map_err(ModuleError::from)?;
    checks.push(
        Check::new(
            "non-uniqueness",
            "1 = f₁·1 + f₂·1 = f₁·f₁ + f₂·f₂: two coefficient families represent the unit",
            via_unit == one && via_self == one && (f1 != &one || f2 != &one),
        )
        .with("via-unit-coeffs", via_unit == one)
        .with("via-self-coeffs", via_self == one),
    );

    // Singular vector machinery: e_t = f₂·e₁ has inner square f₂ with a
    // zero plateau, so the spectral projection exists.
    let ctx = &bundle.context;
    let e_t = &bundle.vectors["e_t"];
    let a = inner_square(ctx, e_t)?;
    let b = spectral_zero_projection(&a).map_err(ModuleError::from)?;
    match b {
        Some(ref b) => {
            let product_zero = a.mul(b).map_err(ModuleError::from)?.is_zero_fn();
            let idempotent = b.mul(b).map_err(ModuleError::from)? == *b;
            checks.push(
                Check::new(
                    "spectral-zero-projection",
                    "zero is isolated in the spectrum of ⟨e_t,e_t⟩: the projection b \
                     is nonzero, idempotent, and annihilates it",
                    !b.is_zero_fn() && product_zero && idempotent,
                )
                .with("b-equals-f1", b == f1),
            );

            let b_plus_one = b.add(&one).map_err(ModuleError::from)?;
            let lhs = e_t.scale(ctx, &b_plus_one)?;
            let rhs = e_t.scale(ctx, &one)?;
            checks.push(
                Check::new(
                    "schauder-failure-witness",
                    "e_t(b + 1) = e_t·1 with b + 1 ≠ 1: coefficient uniqueness fails, \
                     so no system containing e_t is a Schauder basis",
                    lhs == rhs && b_plus_one != one,
                )
                .with("coefficient", b_plus_one.to_string()),
            );
        }
        None => {
            checks.push(Check::new(
                "spectral-zero-projection",
                "projection expected for a plateau zero set",
                false,
            ));
        }
    }

    // Contrast cases for the two theorem branches.
    let x_elem = PPoly::from_poly(&d, Poly::x()).unwrap();
    checks.push(Check::new(
        "spectral-none-for-isolated-zero",
        "for a(x) = x the zero is not isolated in the spectrum: no projection",
        spectral_zero_projection(&x_elem)
            .map_err(ModuleError::from)?
            .is_none(),
    ));

    let c01 = AlgebraDescriptor::continuous(Rat::zero(), Rat::one());
    let plateau_free = PPoly::from_poly(&c01, &Poly::x() * &Poly::linear(1, -1)).unwrap();
    checks.push(Check::new(
        "annihilator-none-on-plateau-free",
        "x(1−x) on the continuous algebra has isolated zeros only: no nonzero annihilator",
        annihilator(&plateau_free).is_none(),
    ));

    Ok(VerdictReport::from_checks(
        &bundle.id,
        bundle.params,
        checks,
    ))
}

// ---------------------------------------------------------------------------
// nonextendable-ons: the orthonormal family x_i = f₁e_i + f₂e_{i+1}. It is
// not complete (x = f₂e₁ is orthogonal to everything) yet admits no
// orthonormal extension: any candidate's inner square is trapped below f₂.
// ---------------------------------------------------------------------------

pub fn build_nonextendable_ons(params: GalleryParams) -> Result<ExampleBundle, GalleryError> {
    let n = params.resolve("nonextendable-ons", 6, 64)?;
    let ctx = ModuleContext::free(lebesgue_unit_interval());
    let (f1, f2) = half_indicators();

    let mut bundle = ExampleBundle::new("nonextendable-ons", ctx.clone());
    bundle.params = params_map(n);
    bundle.elements.insert("f1".into(), f1);
    bundle.elements.insert("f2".into(), f2.clone());
    bundle
        .vectors
        .insert("witness".into(), ModuleVector::free(&ctx, [(1, f2)])?);
    bundle.systems.insert(
        "family".into(),
        OrthoSystem::generated(ctx.clone(), Arc::new(InterleavedIndicatorFamily)),
    );
    Ok(bundle)
}

pub fn verify_nonextendable_ons(params: GalleryParams) -> Result<VerdictReport, GalleryError> {
    let bundle = build_nonextendable_ons(params)?;
    let n: u64 = bundle.params["n"].parse().expect("stored by build");
    let ctx = &bundle.context;
    let system = &bundle.systems["family"];
    let f2 = &bundle.elements["f2"];
    let one = PPoly::one(&lebesgue_unit_interval()).unwrap();
    let mut checks = Vec::new();

    let verdict = gram_classify(system, n)?;
    checks.push(
        Check::new(
            "gram-prefix-orthonormal",
            "the first n family vectors form an orthonormal system",
            verdict.class == GramClass::Orthonormal,
        )
        .with("class", verdict.class)
        .with("prefix", n),
    );

    let witness = completeness_witness_check(system, &bundle.vectors["witness"])?;
    checks.push(
        Check::new(
            "incompleteness-witness",
            "the nonzero vector f₂e₁ is orthogonal to every family vector, \
             so the system is not complete",
            witness.refutes_completeness,
        )
        .with("checked-indices", format!("{:?}", witness.checked)),
    );

    // Extension obstruction: any vector orthogonal to the family has first
    // entry vanishing on [0,1/2] and all later entries zero, hence inner
    // square ≤ f₂ < 1 on the first half: never a unit.
    let q_list: Vec<(&str, Poly)> = vec![
        ("1", Poly::one()),
        ("x", Poly::x()),
        ("2x-1", Poly::linear(-1, 2)),
        ("x^2", &Poly::x() * &Poly::x()),
        ("3/4", Poly::constant(rat(3, 4))),
        ("x^3", &(&Poly::x() * &Poly::x()) * &Poly::x()),
    ];
    let mut obstruction = Check::new(
        "extension-obstruction",
        "every constrained candidate y = (f₂·q)e₁ stays orthogonal to the family \
         and has inner square ≤ f₂, which is < 1 on [0,1/2]: no orthonormal extension",
        true,
    );
    for (name, q) in q_list.into_iter().take(n.min(6) as usize) {
        let g1 = f2
            .mul(&PPoly::from_poly(&lebesgue_unit_interval(), q).unwrap())
            .map_err(ModuleError::from)?;
        let y = ModuleVector::free(ctx, [(1, g1)])?;
        if y.is_zero() {
            continue;
        }
        let w = completeness_witness_check(system, &y)?;
        let sq = inner_square(ctx, &y)?;
        let trapped = sq.is_le(f2).map_err(ModuleError::from)? && sq != one;
        if !(w.refutes_completeness && trapped) {
            obstruction.passed = false;
        }
        obstruction = obstruction.with(
            format!("candidate-{name}"),
            format!("orthogonal={} trapped={trapped}", w.refutes_completeness),
        );
    }
    checks.push(obstruction);

    // The witness extends the family to a complete *orthogonal* system
    // (quasi-orthonormal: its inner square is the idempotent f₂).
    let mut extended = vec![bundle.vectors["witness"].clone()];
    for i in 1..=n {
        extended.push(system.vector(i)?);
    }
    let ext_sys = OrthoSystem::explicit(ctx.clone(), extended)?;
    let ext_verdict = gram_classify(&ext_sys, n + 1)?;
    checks.push(
        Check::new(
            "extended-system-quasi-orthonormal",
            "adjoining f₂e₁ keeps the family orthogonal with projection inner squares",
            ext_verdict.class == GramClass::QuasiOrthonormal,
        )
        .with("class", ext_verdict.class),
    );

    Ok(VerdictReport::from_checks(
        &bundle.id,
        bundle.params,
        checks,
    ))
}

// ---------------------------------------------------------------------------
// ons-not-closed: the dyadic-tail orthonormal system. Complete (certified by
// the support-cover measure), yet the Fourier series of x = (1,0,0,…) keeps
// residual norm exactly 1 at every truncation while the superlevel measure
// of the net residual decays like 2^−n: divergence in norm, convergence in
// the strong-type proxy.
// ---------------------------------------------------------------------------

pub fn build_ons_not_closed(params: GalleryParams) -> Result<ExampleBundle, GalleryError> {
    let n = params.resolve("ons-not-closed", 20, 30)?;
    let ctx = ModuleContext::free(lebesgue_unit_interval());

    let mut bundle = ExampleBundle::new("ons-not-closed", ctx.clone());
    bundle.params = params_map(n);
    bundle
        .vectors
        .insert("x".into(), ModuleVector::basis(&ctx, 1)?);
    bundle.systems.insert(
        "family".into(),
        OrthoSystem::generated(ctx.clone(), Arc::new(DyadicTailFamily)),
    );
    Ok(bundle)
}

pub fn verify_ons_not_closed(params: GalleryParams) -> Result<VerdictReport, GalleryError> {
    let bundle = build_ons_not_closed(params)?;
    let n: u64 = bundle.params["n"].parse().expect("stored by build");
    let _ctx = &bundle.context;
    let system = &bundle.systems["family"];
    let x = &bundle.vectors["x"];
    let one = PPoly::one(&lebesgue_unit_interval()).unwrap();
    let width = Rat::pow2_neg(40);
    let mut checks = Vec::new();

    let verdict = gram_classify(system, n)?;
    checks.push(
        Check::new(
            "gram-prefix-orthonormal",
            "the first n dyadic-tail vectors form an orthonormal system",
            verdict.class == GramClass::Orthonormal,
        )
        .with("class", verdict.class)
        .with("prefix", n),
    );

    // Support-cover certificate: for each vector the entries sum to the
    // unit, so their supports cover [0,1] up to null sets — the system is
    // complete even though no finite witness enumeration exists.
    let mut cover = Check::new(
        "support-union-measure",
        "for every i ≤ n the entry supports of e_i cover [0,1]: the entry sum \
         equals 1 and its superlevel measure at 1/2 is exactly 1",
        true,
    );
    for i in 1..=n {
        let e_i = system.vector(i)?;
        let mut entry_sum = PPoly::zero(&lebesgue_unit_interval());
        for j in e_i.support() {
            entry_sum = entry_sum
                .add(e_i.entry(j).expect("support index"))
                .map_err(ModuleError::from)?;
        }
        let measure =
            superlevel_measure(&entry_sum, &rat(1, 2), &width).map_err(ModuleError::from)?;
        let good = entry_sum == one && measure.exact_value() == Some(&Rat::one());
        if !good {
            cover.passed = false;
            cover = cover.with(format!("fail-{}", step_key(i)), measure.to_string());
        }
    }
    checks.push(cover);

    checks.push(Check::new(
        "witness-enumeration-unbounded",
        "x overlaps infinitely many family vectors, so completeness cannot be \
         decided by finite witness enumeration; the support-cover certificate \
         replaces it",
        matches!(
            completeness_witness_check(system, x),
            Err(ModuleError::UnboundedOverlap)
        ),
    ));

    // Per-step divergence and strong-type convergence data, in parallel.
    let steps: Vec<u64> = (1..=n).collect();
    struct StepData {
        m: u64,
        identity_ok: bool,
        residual_is_one: bool,
        bessel_ok: bool,
        measure: Option<Rat>,
    }
    let rows: Vec<Result<StepData, GalleryError>> = exec::map_collect(&steps, |m| {
        let f_set: BTreeSet<u64> = (1..=*m).collect();
        let identity = residual_identity_check(system, x, &f_set)?;
        let residual_is_one = norm_cmp(&identity.lhs, &Rat::one()) == NormOrdering::Eq;
        let bessel = bessel_check(system, x, &f_set)?;
        // ⟨x,x⟩ − A_F equals the residual Gram for orthonormal systems;
        // its superlevel measure at 1/2 is the tail length.
        let measure = superlevel_measure(&identity.lhs, &rat(1, 2), &width)
            .map_err(ModuleError::from)?
            .exact_value()
            .cloned();
        Ok(StepData {
            m: *m,
            identity_ok: identity.equal,
            residual_is_one,
            bessel_ok: bessel.holds,
            measure,
        })
    });

    let mut identity_check = Check::new(
        "residual-identity",
        "the two sides of the residual identity agree exactly at every step",
        true,
    );
    let mut divergence = Check::new(
        "residual-norm-one",
        "‖x − S_{F_n}‖ = 1 exactly at every truncation: the Fourier series \
         does not converge in norm",
        true,
    );
    let mut bessel_all = Check::new(
        "finite-bessel",
        "Σ_F ⟨x,e_i⟩⟨e_i,x⟩ ≤ ⟨x,x⟩ exactly at every step",
        true,
    );
    let mut decay = Check::new(
        "superlevel-decay",
        "the measure of {⟨x,x⟩ − A_{F_n} > 1/2} is exactly 2^−n: strong-type \
         convergence despite norm divergence",
        true,
    );
    for row in rows {
        let row = row?;
        identity_check.passed &= row.identity_ok;
        divergence.passed &= row.residual_is_one;
        bessel_all.passed &= row.bessel_ok;
        let expected = Rat::pow2_neg(row.m as u32);
        let got = row.measure.clone();
        if got.as_ref() != Some(&expected) {
            decay.passed = false;
        }
        decay = decay.with(
            step_key(row.m),
            got.map_or("inexact".to_owned(), |r| r.to_string()),
        );
    }
    checks.push(identity_check);
    checks.push(divergence);
    checks.push(bessel_all);
    checks.push(decay);

    Ok(VerdictReport::from_checks(
        &bundle.id,
        bundle.params,
        checks,
    ))
}

// ---------------------------------------------------------------------------
// branched-cover: the countably-but-not-finitely-generated module of
// functions on a Y-shaped cover of [−1,1] with fiber-averaged inner
// product. Three bump generators supported on the three intervals form a
// finite complete orthogonal system.
// ---------------------------------------------------------------------------

pub fn build_branched_cover(params: GalleryParams) -> Result<ExampleBundle, GalleryError> {
    let n = params.resolve("branched-cover", 6, 50)?;
    let cover = CoverSpace::new(rat(-1, 1), Rat::one(), Rat::zero(), 2).expect("valid cover");
    let ctx = ModuleContext::branched_cover(cover.clone());

    // Quadratic bumps, sup-norm one on their interval, vanishing at the
    // branch point (and at the free end, keeping them continuous on Y).
    let base_bump = PPoly::from_poly(
        &cover.branch_descriptor(0),
        Poly::new(vec![Rat::zero(), rat(-4, 1), rat(-4, 1)]),
    )
    .unwrap();
    let upper_bump = |branch: usize| {
        PPoly::from_poly(
            &cover.branch_descriptor(branch),
            Poly::new(vec![Rat::zero(), rat(4, 1), rat(-4, 1)]),
        )
        .unwrap()
    };
    let zero_base = PPoly::zero(&cover.branch_descriptor(0));
    let zero_up = PPoly::zero(&cover.branch_descriptor(1));

    let generators = vec![
        ModuleVector::cover(&ctx, vec![base_bump, zero_up.clone(), zero_up.clone()])?,
        ModuleVector::cover(&ctx, vec![zero_base.clone(), upper_bump(1), zero_up.clone()])?,
        ModuleVector::cover(&ctx, vec![zero_base, zero_up, upper_bump(2)])?,
    ];

    let mut bundle = ExampleBundle::new("branched-cover", ctx.clone());
    bundle.params = params_map(n);
    for (k, g) in generators.iter().enumerate() {
        bundle.vectors.insert(format!("f{}", k + 1), g.clone());
    }
    bundle
        .systems
        .insert("generators".into(), OrthoSystem::explicit(ctx, generators)?);
    Ok(bundle)
}

/// Deterministic glued elements for the completeness spot-check: the zero
/// element, the generators themselves, constants, and polynomial mixes.
fn cover_witnesses(ctx: &ModuleContext, bundle: &ExampleBundle, n: u64) -> Vec<ModuleVector> {
    let ModuleContext::BranchedCover { cover } = ctx else {
        unreachable!("branched-cover bundle")
    };
    let mut out = vec![ModuleVector::zero(ctx)];
    for k in 1..=3 {
        out.push(bundle.vectors[&format!("f{k}")].clone());
    }
    let mut j = 1i64;
    while out.len() < n as usize {
        let c = rat(j, 4);
        let base = PPoly::from_poly(
            &cover.branch_descriptor(0),
            &Poly::x() * &Poly::constant(c.clone()),
        )
        .unwrap();
        let up1 = PPoly::from_poly(
            &cover.branch_descriptor(1),
            &(&Poly::x() * &Poly::x()) * &Poly::constant(c.clone()),
        )
        .unwrap();
        let up2 = PPoly::from_poly(
            &cover.branch_descriptor(2),
            &Poly::x() * &Poly::constant(-&c),
        )
        .unwrap();
        out.push(ModuleVector::cover(ctx, vec![base, up1, up2]).expect("glued at 0"));
        j += 1;
    }
    out.truncate(n as usize);
    out
}

pub fn verify_branched_cover(params: GalleryParams) -> Result<VerdictReport, GalleryError> {
    let bundle = build_branched_cover(params)?;
    let n: u64 = bundle.params["n"].parse().expect("stored by build");
    let ctx = &bundle.context;
    let system = &bundle.systems["generators"];
    let mut checks = Vec::new();

    let mut orth = Check::new(
        "pairwise-orthogonal",
        "⟨f_i, f_j⟩ = 0 exactly for i ≠ j: branch supports are disjoint",
        true,
    );
    for i in 1..=3u64 {
        for j in (i + 1)..=3 {
            let ip = inner_product(ctx, &system.vector(i)?, &system.vector(j)?)?;
            if !ip.is_zero_fn() {
                orth.passed = false;
                orth = orth.with(format!("nonzero-{i}{j}"), ip.to_string());
            }
        }
    }
    checks.push(orth);

    let mut continuity = Check::new(
        "inner-squares-continuous",
        "each ⟨f_i, f_i⟩ is a member of the base algebra: continuity across the \
         branch point is verified during construction",
        true,
    );
    let expected_norms = [Rat::one(), rat(1, 2), rat(1, 2)];
    let mut norms = Check::new(
        "inner-square-norms",
        "‖⟨f₁,f₁⟩‖ = 1 (single fiber) and ‖⟨f_i,f_i⟩‖ = 1/2 for the upper \
         branches (two-point fiber average)",
        true,
    );
    for i in 1..=3u64 {
        let sq = inner_square(ctx, &system.vector(i)?)?;
        continuity = continuity.with(
            format!("f{i}-at-branch-point"),
            sq.eval(&Rat::zero()).to_string(),
        );
        if !sq.eval(&Rat::zero()).is_zero() {
            continuity.passed = false;
        }
        let cmp = norm_cmp(&sq, &expected_norms[(i - 1) as usize]);
        if cmp != NormOrdering::Eq {
            norms.passed = false;
        }
        norms = norms.with(
            format!("f{i}"),
            format!("vs {}: {cmp:?}", expected_norms[(i - 1) as usize]),
        );
    }
    checks.push(continuity);
    checks.push(norms);

    let verdict = gram_classify(system, 3)?;
    checks.push(
        Check::new(
            "complete-orthogonal-class",
            "the three generators form an orthogonal (not orthonormal) system",
            verdict.class == GramClass::Orthogonal,
        )
        .with("class", verdict.class),
    );

    let witnesses = cover_witnesses(ctx, &bundle, n.max(4));
    let mut spot = Check::new(
        "completeness-spot-check",
        "every witness orthogonal to all three generators is exactly zero",
        true,
    );
    for (k, g) in witnesses.iter().enumerate() {
        let mut all_zero = true;
        for i in 1..=3u64 {
            if !inner_product(ctx, &system.vector(i)?, g)?.is_zero_fn() {
                all_zero = false;
                break;
            }
        }
        let ok = !all_zero || g.is_zero();
        if !ok {
            spot.passed = false;
        }
        spot = spot.with(
            format!("witness-{k:02}"),
            format!("orthogonal-to-all={all_zero} zero={}", g.is_zero()),
        );
    }
    checks.push(spot);

    Ok(VerdictReport::from_checks(
        &bundle.id,
        bundle.params,
        checks,
    ))
}

// ---------------------------------------------------------------------------
// circulant: block-diagonal circulant rows over the uniform partition
// indicators form an orthonormal basis; reconstruction is exact once the
// schedule covers the blocks a vector touches, and the first 3n rows act as
// a standard normalized tight frame on everything they span.
// ---------------------------------------------------------------------------

pub fn build_circulant(params: GalleryParams) -> Result<ExampleBundle, GalleryError> {
    let n = params.resolve("circulant", 8, 12)?;
    let ctx = ModuleContext::free(lebesgue_unit_interval());
    let family = CirculantFamily::new(n);

    let mut bundle = ExampleBundle::new("circulant", ctx.clone());
    bundle.params = params_map(n);
    let d = lebesgue_unit_interval();
    let test_vectors: Vec<ModuleVector> = vec![
        ModuleVector::basis(&ctx, 1)?,
        ModuleVector::free(
            &ctx,
            [
                (1, PPoly::from_poly(&d, Poly::x()).unwrap()),
                (2, PPoly::indicator(&d, &rat(1, 4), &Rat::one()).unwrap()),
            ],
        )?,
        ModuleVector::free(
            &ctx,
            [
                (n, half_indicators().0),
                (n + 1, PPoly::from_poly(&d, Poly::linear(-1, 2)).unwrap()),
            ],
        )?,
        ModuleVector::free(&ctx, [(2 * n + 1, PPoly::constant(&d, rat(3, 4)).unwrap())])?,
        ModuleVector::free(
            &ctx,
            [
                (1, PPoly::one(&d).unwrap()),
                (n + 1, PPoly::from_poly(&d, &Poly::x() * &Poly::x()).unwrap()),
                (2 * n + 1, PPoly::indicator(&d, &Rat::zero(), &rat(1, 3)).unwrap()),
            ],
        )?,
    ];
    for (k, v) in test_vectors.into_iter().enumerate() {
        bundle.vectors.insert(format!("test-{}", k + 1), v);
    }
    bundle.systems.insert(
        "rows".into(),
        OrthoSystem::generated(ctx, Arc::new(family)),
    );
    Ok(bundle)
}

pub fn verify_circulant(params: GalleryParams) -> Result<VerdictReport, GalleryError> {
    let bundle = build_circulant(params)?;
    let n: u64 = bundle.params["n"].parse().expect("stored by build");
    let ctx = &bundle.context;
    let system = &bundle.systems["rows"];
    let one = PPoly::one(&lebesgue_unit_interval()).unwrap();
    let width = Rat::pow2_neg(40);
    let mut checks = Vec::new();

    let verdict = gram_classify(system, 3 * n)?;
    checks.push(
        Check::new(
            "gram-three-blocks",
            "the Gram family of the first 3n rows is exactly the Kronecker delta \
             with unit diagonal",
            verdict.class == GramClass::Orthonormal,
        )
        .with("rows", 3 * n)
        .with("class", verdict.class),
    );

    let mut partition = Check::new(
        "row-partition-of-unity",
        "the entries of every row sum to the unit function",
        true,
    );
    for i in 1..=3 * n {
        let e_i = system.vector(i)?;
        let mut sum = PPoly::zero(&lebesgue_unit_interval());
        for j in e_i.support() {
            sum = sum.add(e_i.entry(j).expect("support index")).map_err(ModuleError::from)?;
        }
        if sum != one {
            partition.passed = false;
            partition = partition.with(format!("fail-row-{i:03}"), sum.to_string());
        }
    }
    checks.push(partition);

    let schedule = [n, 2 * n, 3 * n];
    let mut reconstruction = Check::new(
        "reconstruction-exact",
        "every test vector is reconstructed with residual Gram exactly zero once \
         the schedule covers its blocks, and not before",
        true,
    );
    for (name, x) in bundle.vectors.iter() {
        let max_block = x
            .support()
            .iter()
            .map(|c| (c - 1) / n + 1)
            .max()
            .expect("nonzero test vector");
        let rows = reconstruction_check(system, x, &schedule, &width)?;
        for row in rows {
            let expected = row.n >= max_block * n;
            if row.converged_exactly != expected {
                reconstruction.passed = false;
                reconstruction = reconstruction.with(
                    format!("fail-{name}-at-{}", row.n),
                    format!("{}", row.residual_norm),
                );
            }
        }
        reconstruction = reconstruction.with(format!("{name}-covered-at"), max_block * n);
    }
    checks.push(reconstruction);

    let rows: Vec<ModuleVector> = (1..=3 * n)
        .map(|i| system.vector(i))
        .collect::<Result<_, _>>()?;
    let tests: Vec<ModuleVector> = bundle.vectors.values().cloned().collect();
    let frame = frame_check(ctx, &rows, &tests, &Rat::one(), &Rat::one())?;
    let all_standard = frame
        .per_vector
        .iter()
        .all(|r| r.lower_ok && r.upper_ok && r.tight && r.standard);
    checks.push(
        Check::new(
            "standard-normalized-tight-frame",
            "on the spanned test vectors the first 3n rows satisfy the reconstruction \
             identity S(x) = ⟨x,x⟩ with frame bounds C = D = 1",
            all_standard,
        )
        .with("test-vectors", frame.per_vector.len()),
    );

    Ok(VerdictReport::from_checks(
        &bundle.id,
        bundle.params,
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{build, verify, GalleryParams};

    #[test]
    fn every_gallery_id_passes_with_small_params() {
        for id in crate::gallery::GALLERY_IDS {
            let params = match id {
                "ons-not-closed" => GalleryParams::with_n(5),
                "circulant" => GalleryParams::with_n(3),
                "nonextendable-ons" => GalleryParams::with_n(4),
                _ => GalleryParams::default(),
            };
            let report = verify(id, params).unwrap_or_else(|e| panic!("{id}: {e}"));
            for check in &report.checks {
                assert!(check.passed, "{id} / {}: {:?}", check.name, check.witness);
            }
            assert!(report.all_passed);
        }
    }

    #[test]
    fn unknown_id_and_bad_params() {
        assert!(matches!(
            verify("no-such-id", GalleryParams::default()),
            Err(GalleryError::UnknownId(_))
        ));
        assert!(matches!(
            verify("ons-not-closed", GalleryParams::with_n(0)),
            Err(GalleryError::BadParams { .. })
        ));
        assert!(matches!(
            verify("circulant", GalleryParams::with_n(500)),
            Err(GalleryError::BadParams { .. })
        ));
    }

    #[test]
    fn ascii_alias_resolves() {
        let report = verify("orthogonal-basis-linf", GalleryParams::default()).unwrap();
        assert_eq!(report.id, "orthogonal-basis-L∞");
    }

    #[test]
    fn build_exposes_named_objects() {
        let bundle = build("orthogonal-basis-L∞", GalleryParams::default()).unwrap();
        assert!(bundle.elements.contains_key("f1"));
        assert!(bundle.vectors.contains_key("e_t"));
        assert!(bundle.systems.contains_key("pair"));

        let bundle = build("circulant", GalleryParams::with_n(1)).unwrap();
        // Block size 1: the single row is the standard basis vector.
        let sys = &bundle.systems["rows"];
        let row = sys.vector(1).unwrap();
        let ctx = &bundle.context;
        assert_eq!(row, ModuleVector::basis(ctx, 1).unwrap());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify("ons-not-closed", GalleryParams::with_n(4)).unwrap();
        let b = verify("ons-not-closed", GalleryParams::with_n(4)).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}

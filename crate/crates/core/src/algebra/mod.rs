//! Piecewise-polynomial models of commutative function algebras on a closed
//! rational interval.
//!
//! An [`AlgebraDescriptor`] fixes which algebra an element lives in: the
//! domain, the regularity (continuous functions, or essentially bounded
//! measurable ones with almost-everywhere semantics), and a finite set of
//! prescribed vanishing points (empty means the algebra is unital).
//!
//! A [`PPoly`] is one element: polynomial pieces on half-open intervals
//! `[t_k, t_{k+1})`, the final piece also covering the right endpoint. In
//! measurable algebras equality is almost-everywhere equality, which the
//! canonical form (merged equal neighbours) decides exactly; in continuous
//! algebras the validated matching of one-sided limits makes the convention
//! invisible.

mod divide;
mod measure;
mod predicates;
mod zeroset;

pub use divide::{divide_exact, Division, DivisionFailure};
pub use measure::superlevel_measure;
pub use predicates::{
    is_invertible, negativity_witness, norm_cmp, sup_norm, Invertibility, NormOrdering,
};
pub use zeroset::{annihilator, spectral_zero_projection, zero_set, ZeroSet};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::roots::{sign_on_interval, SignClass};

/// Function-regularity class of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regularity {
    #[serde(rename = "continuous")]
    Continuous,
    #[serde(rename = "measurable")]
    MeasurableBounded,
}

/// Which commutative function algebra an element belongs to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DescriptorJson", into = "DescriptorJson")]
pub struct AlgebraDescriptor {
    domain: (Rat, Rat),
    regularity: Regularity,
    vanishing: BTreeSet<Rat>,
}

impl AlgebraDescriptor {
    pub fn new(
        lo: Rat,
        hi: Rat,
        regularity: Regularity,
        vanishing: impl IntoIterator<Item = Rat>,
    ) -> Result<Self, AlgebraError> {
        if lo >= hi {
            return Err(AlgebraError::InvalidPiecewise(
                "domain must be a nondegenerate interval".into(),
            ));
        }
        let vanishing: BTreeSet<Rat> = vanishing.into_iter().collect();
        if vanishing.iter().any(|v| *v < lo || *v > hi) {
            return Err(AlgebraError::InvalidPiecewise(
                "vanishing points must lie in the domain".into(),
            ));
        }
        if regularity == Regularity::MeasurableBounded && !vanishing.is_empty() {
            return Err(AlgebraError::InvalidPiecewise(
                "vanishing at a point is meaningless modulo null sets".into(),
            ));
        }
        Ok(AlgebraDescriptor {
            domain: (lo, hi),
            regularity,
            vanishing,
        })
    }

    /// Continuous functions on `[lo, hi]`.
    pub fn continuous(lo: Rat, hi: Rat) -> Self {
        Self::new(lo, hi, Regularity::Continuous, []).expect("valid descriptor")
    }

    /// Continuous functions vanishing at the given points.
    pub fn continuous_vanishing(
        lo: Rat,
        hi: Rat,
        vanishing: impl IntoIterator<Item = Rat>,
    ) -> Result<Self, AlgebraError> {
        Self::new(lo, hi, Regularity::Continuous, vanishing)
    }

    /// Essentially bounded measurable functions on `[lo, hi]`.
    pub fn measurable(lo: Rat, hi: Rat) -> Self {
        Self::new(lo, hi, Regularity::MeasurableBounded, []).expect("valid descriptor")
    }

    pub fn domain(&self) -> (&Rat, &Rat) {
        (&self.domain.0, &self.domain.1)
    }

    pub fn regularity(&self) -> Regularity {
        self.regularity
    }

    pub fn vanishing_points(&self) -> impl Iterator<Item = &Rat> {
        self.vanishing.iter()
    }

    /// The algebra is unital iff no vanishing constraints are prescribed.
    pub fn unital(&self) -> bool {
        self.vanishing.is_empty()
    }

    /// The forced unitization: same functions, vanishing constraints
    /// dropped. Identity on unital algebras.
    pub fn unitization(&self) -> AlgebraDescriptor {
        AlgebraDescriptor {
            domain: self.domain.clone(),
            regularity: self.regularity,
            vanishing: BTreeSet::new(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    domain: [Rat; 2],
    regularity: Regularity,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    vanishing: Vec<Rat>,
}

impl TryFrom<DescriptorJson> for AlgebraDescriptor {
    type Error = String;
    fn try_from(j: DescriptorJson) -> Result<Self, String> {
        let [lo, hi] = j.domain;
        AlgebraDescriptor::new(lo, hi, j.regularity, j.vanishing).map_err(|e| e.to_string())
    }
}

impl From<AlgebraDescriptor> for DescriptorJson {
    fn from(d: AlgebraDescriptor) -> Self {
        DescriptorJson {
            domain: [d.domain.0, d.domain.1],
            regularity: d.regularity,
            vanishing: d.vanishing.into_iter().collect(),
        }
    }
}

/// Unvalidated piecewise data, the ingestion form for membership checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawPiecewise {
    pub breakpoints: Vec<Rat>,
    pub pieces: Vec<Poly>,
}

/// One reason a raw piecewise function fails membership in an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MembershipViolation {
    Structural(String),
    DiscontinuityAt { t: Rat, left: Rat, right: Rat },
    VanishingViolatedAt { t: Rat, value: Rat },
}

impl fmt::Display for MembershipViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipViolation::Structural(s) => write!(f, "{s}"),
            MembershipViolation::DiscontinuityAt { t, left, right } => {
                write!(f, "jump at t = {t}: left limit {left}, right value {right}")
            }
            MembershipViolation::VanishingViolatedAt { t, value } => {
                write!(f, "must vanish at t = {t} but takes value {value}")
            }
        }
    }
}

/// Exact membership verdict with reasons.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub is_member: bool,
    pub violations: Vec<MembershipViolation>,
}

/// Decides whether raw piecewise data defines an element of the algebra:
/// structural sanity, matching one-sided limits at interior breakpoints when
/// the algebra is continuous, and exact vanishing at prescribed points.
pub fn is_member(raw: &RawPiecewise, d: &AlgebraDescriptor) -> MembershipReport {
    let mut violations = Vec::new();
    let (lo, hi) = d.domain();

    if raw.breakpoints.len() < 2 || raw.pieces.len() + 1 != raw.breakpoints.len() {
        violations.push(MembershipViolation::Structural(
            "need n+1 breakpoints for n pieces, n ≥ 1".into(),
        ));
        return MembershipReport {
            is_member: false,
            violations,
        };
    }
    if raw.breakpoints.first() != Some(lo) || raw.breakpoints.last() != Some(hi) {
        violations.push(MembershipViolation::Structural(format!(
            "breakpoints must span the domain [{lo}, {hi}]"
        )));
    }
    if raw.breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        violations.push(MembershipViolation::Structural(
            "breakpoints must be strictly increasing".into(),
        ));
    }
    if !violations.is_empty() {
        return MembershipReport {
            is_member: false,
            violations,
        };
    }

    if d.regularity() == Regularity::Continuous {
        for k in 1..raw.pieces.len() {
            let t = &raw.breakpoints[k];
            let left = raw.pieces[k - 1].eval(t);
            let right = raw.pieces[k].eval(t);
            if left != right {
                violations.push(MembershipViolation::DiscontinuityAt {
                    t: t.clone(),
                    left,
                    right,
                });
            }
        }
        for v in d.vanishing_points() {
            let k = piece_index(&raw.breakpoints, v);
            let value = raw.pieces[k].eval(v);
            if !value.is_zero() {
                violations.push(MembershipViolation::VanishingViolatedAt {
                    t: v.clone(),
                    value,
                });
            }
        }
    }

    MembershipReport {
        is_member: violations.is_empty(),
        violations,
    }
}

/// Index of the piece whose half-open interval contains `t` (the last piece
/// also owns the right domain endpoint).
fn piece_index(breakpoints: &[Rat], t: &Rat) -> usize {
    debug_assert!(t >= &breakpoints[0] && t <= breakpoints.last().unwrap());
    match breakpoints.binary_search(t) {
        Ok(k) => k.min(breakpoints.len() - 2),
        Err(k) => k - 1,
    }
}

/// An element of a commutative function algebra: piecewise polynomial with
/// exact rational breakpoints and coefficients, in canonical form.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PPolyJson", into = "PPolyJson")]
pub struct PPoly {
    descriptor: AlgebraDescriptor,
    breakpoints: Vec<Rat>,
    pieces: Vec<Poly>,
}

#[derive(Serialize, Deserialize)]
struct PPolyJson {
    descriptor: AlgebraDescriptor,
    breakpoints: Vec<Rat>,
    pieces: Vec<Poly>,
}

impl TryFrom<PPolyJson> for PPoly {
    type Error = String;
    fn try_from(j: PPolyJson) -> Result<Self, String> {
        PPoly::new(
            j.descriptor,
            RawPiecewise {
                breakpoints: j.breakpoints,
                pieces: j.pieces,
            },
        )
        .map_err(|e| e.to_string())
    }
}

impl From<PPoly> for PPolyJson {
    fn from(p: PPoly) -> Self {
        PPolyJson {
            descriptor: p.descriptor,
            breakpoints: p.breakpoints,
            pieces: p.pieces,
        }
    }
}

impl PPoly {
    /// Validates raw data against the descriptor and canonicalizes.
    pub fn new(descriptor: AlgebraDescriptor, raw: RawPiecewise) -> Result<Self, AlgebraError> {
        let report = is_member(&raw, &descriptor);
        if !report.is_member {
            let reasons: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(AlgebraError::InvalidPiecewise(reasons.join("; ")));
        }
        Ok(PPoly {
            descriptor,
            breakpoints: raw.breakpoints,
            pieces: raw.pieces,
        }
        .canonicalized())
    }

    /// Internal constructor for results of algebra operations, which
    /// preserve membership by construction.
    pub(crate) fn from_parts(
        descriptor: AlgebraDescriptor,
        breakpoints: Vec<Rat>,
        pieces: Vec<Poly>,
    ) -> Self {
        let p = PPoly {
            descriptor,
            breakpoints,
            pieces,
        }
        .canonicalized();
        debug_assert!(
            is_member(
                &RawPiecewise {
                    breakpoints: p.breakpoints.clone(),
                    pieces: p.pieces.clone()
                },
                &p.descriptor
            )
            .is_member,
            "internal construction violated membership"
        );
        p
    }

    fn canonicalized(mut self) -> Self {
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut pieces: Vec<Poly> = Vec::with_capacity(self.pieces.len());
        bps.push(self.breakpoints[0].clone());
        for (k, piece) in self.pieces.drain(..).enumerate() {
            if pieces.last() == Some(&piece) {
                // Merge with the previous piece: drop the breakpoint.
            } else {
                if k > 0 {
                    bps.push(self.breakpoints[k].clone());
                }
                pieces.push(piece);
            }
        }
        bps.push(self.breakpoints.last().unwrap().clone());
        PPoly {
            descriptor: self.descriptor,
            breakpoints: bps,
            pieces,
        }
    }

    pub fn zero(descriptor: &AlgebraDescriptor) -> Self {
        let (lo, hi) = descriptor.domain();
        PPoly {
            descriptor: descriptor.clone(),
            breakpoints: vec![lo.clone(), hi.clone()],
            pieces: vec![Poly::zero()],
        }
    }

    /// A single polynomial across the whole domain; fails when it violates
    /// the vanishing constraints.
    pub fn from_poly(descriptor: &AlgebraDescriptor, poly: Poly) -> Result<Self, AlgebraError> {
        let (lo, hi) = descriptor.domain();
        PPoly::new(
            descriptor.clone(),
            RawPiecewise {
                breakpoints: vec![lo.clone(), hi.clone()],
                pieces: vec![poly],
            },
        )
    }

    pub fn constant(descriptor: &AlgebraDescriptor, c: Rat) -> Result<Self, AlgebraError> {
        PPoly::from_poly(descriptor, Poly::constant(c))
    }

    /// The unit function; only a member of unital algebras.
    pub fn one(descriptor: &AlgebraDescriptor) -> Result<Self, AlgebraError> {
        PPoly::constant(descriptor, Rat::one())
    }

    /// Characteristic function of `[a, b] ∩ domain`, an element of
    /// measurable algebras (and of continuous ones only in degenerate cases).
    pub fn indicator(descriptor: &AlgebraDescriptor, a: &Rat, b: &Rat) -> Result<Self, AlgebraError> {
        let (lo, hi) = descriptor.domain();
        if a > b || b < lo || a > hi {
            return Ok(PPoly::zero(descriptor));
        }
        let a = a.max(lo).clone();
        let b = b.min(hi).clone();
        if a == b {
            // A single point is null; the indicator is the zero class.
            return Ok(PPoly::zero(descriptor));
        }
        let mut breakpoints = vec![lo.clone()];
        let mut pieces = Vec::new();
        if a > *lo {
            breakpoints.push(a.clone());
            pieces.push(Poly::zero());
        }
        pieces.push(Poly::one());
        if b < *hi {
            breakpoints.push(b.clone());
            pieces.push(Poly::zero());
        }
        breakpoints.push(hi.clone());
        PPoly::new(
            descriptor.clone(),
            RawPiecewise {
                breakpoints,
                pieces,
            },
        )
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.descriptor
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    /// Iterates over `(piece_lo, piece_hi, polynomial)` triples.
    pub fn pieces(&self) -> impl Iterator<Item = (&Rat, &Rat, &Poly)> {
        self.pieces
            .iter()
            .enumerate()
            .map(move |(k, p)| (&self.breakpoints[k], &self.breakpoints[k + 1], p))
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_zero_fn(&self) -> bool {
        self.pieces.iter().all(Poly::is_zero)
    }

    /// Pointwise value under the half-open piece convention. In measurable
    /// algebras this is a representative value, never used for a.e.
    /// decisions.
    pub fn eval(&self, t: &Rat) -> Rat {
        let k = piece_index(&self.breakpoints, t);
        self.pieces[k].eval(t)
    }

    fn require_same_descriptor(&self, other: &PPoly) -> Result<(), AlgebraError> {
        if self.descriptor == other.descriptor {
            Ok(())
        } else {
            Err(AlgebraError::DescriptorMismatch)
        }
    }

    /// Exact sum. Membership is preserved: vanishing constraints and
    /// continuity are linear.
    pub fn add(&self, other: &PPoly) -> Result<PPoly, AlgebraError> {
        self.binop(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PPoly) -> Result<PPoly, AlgebraError> {
        self.binop(other, |a, b| a - b)
    }

    /// Exact product on the common refinement of breakpoints. Conjugation is
    /// the identity: these algebras are real-valued.
    pub fn mul(&self, other: &PPoly) -> Result<PPoly, AlgebraError> {
        self.binop(other, |a, b| a * b)
    }

    fn binop(
        &self,
        other: &PPoly,
        op: impl Fn(&Poly, &Poly) -> Poly,
    ) -> Result<PPoly, AlgebraError> {
        self.require_same_descriptor(other)?;
        let (breakpoints, pairs) = refine_pair(self, other);
        let pieces = pairs.iter().map(|(a, b)| op(a, b)).collect();
        Ok(PPoly::from_parts(
            self.descriptor.clone(),
            breakpoints,
            pieces,
        ))
    }

    pub fn neg(&self) -> PPoly {
        PPoly::from_parts(
            self.descriptor.clone(),
            self.breakpoints.clone(),
            self.pieces.iter().map(|p| -p).collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> PPoly {
        PPoly::from_parts(
            self.descriptor.clone(),
            self.breakpoints.clone(),
            self.pieces.iter().map(|p| p.scale(c)).collect(),
        )
    }

    /// Subtracts a constant without membership validation; the result is a
    /// comparison aid, not an algebra element.
    pub(crate) fn shift_const(&self, c: &Rat) -> Vec<(Rat, Rat, Poly)> {
        let shift = Poly::constant(c.clone());
        self.pieces()
            .map(|(u, v, p)| (u.clone(), v.clone(), p - &shift))
            .collect()
    }

    /// Reinterprets the element in another algebra over the same domain,
    /// revalidating membership (e.g. the forced unitization, or a suspension
    /// membership check).
    pub fn reinterpret(&self, descriptor: &AlgebraDescriptor) -> Result<PPoly, AlgebraError> {
        PPoly::new(
            descriptor.clone(),
            RawPiecewise {
                breakpoints: self.breakpoints.clone(),
                pieces: self.pieces.clone(),
            },
        )
    }

    /// Restriction to a subinterval, as an element of the target algebra.
    pub fn restrict_to(&self, descriptor: &AlgebraDescriptor) -> Result<PPoly, AlgebraError> {
        let (lo, hi) = descriptor.domain();
        let (slo, shi) = self.descriptor.domain();
        if lo < slo || hi > shi {
            return Err(AlgebraError::InvalidPiecewise(
                "restriction target exceeds the source domain".into(),
            ));
        }
        let mut breakpoints = vec![lo.clone()];
        let mut pieces = Vec::new();
        for (u, v, p) in self.pieces() {
            if v <= lo || u >= hi {
                continue;
            }
            pieces.push(p.clone());
            let cut = v.min(hi);
            breakpoints.push(cut.clone());
        }
        *breakpoints.last_mut().unwrap() = hi.clone();
        PPoly::new(
            descriptor.clone(),
            RawPiecewise {
                breakpoints,
                pieces,
            },
        )
    }

    /// Exact sign classification over the whole domain (almost-everywhere
    /// semantics and pointwise semantics agree for piecewise polynomials).
    pub fn sign_class(&self) -> SignClass {
        let mut any_pos = false;
        let mut any_neg = false;
        for (u, v, p) in self.pieces() {
            match sign_on_interval(p, u, v).expect("piece intervals are nonempty") {
                SignClass::Zero => {}
                SignClass::Nonnegative => any_pos = true,
                SignClass::Nonpositive => any_neg = true,
                SignClass::Mixed => return SignClass::Mixed,
            }
        }
        match (any_pos, any_neg) {
            (true, true) => SignClass::Mixed,
            (true, false) => SignClass::Nonnegative,
            (false, true) => SignClass::Nonpositive,
            (false, false) => SignClass::Zero,
        }
    }

    /// Exact pointwise `f ≥ 0` decision.
    pub fn is_nonneg(&self) -> bool {
        self.sign_class().is_nonnegative()
    }

    /// Exact pointwise `self ≤ other` decision.
    pub fn is_le(&self, other: &PPoly) -> Result<bool, AlgebraError> {
        Ok(other.sub(self)?.is_nonneg())
    }

    /// Exact pointwise `self ≤ c` decision against a constant, valid in any
    /// algebra (the constant need not be a member).
    pub fn is_bounded_above_by(&self, c: &Rat) -> bool {
        self.shift_const(c)
            .iter()
            .all(|(u, v, p)| {
                sign_on_interval(p, u, v)
                    .expect("piece intervals are nonempty")
                    .is_nonpositive()
            })
    }
}

/// Common refinement of two elements over the same descriptor: merged
/// breakpoints and the polynomial pair active on each refined piece.
pub(crate) fn refine_pair(f: &PPoly, g: &PPoly) -> (Vec<Rat>, Vec<(Poly, Poly)>) {
    let mut breakpoints: Vec<Rat> = f
        .breakpoints
        .iter()
        .chain(g.breakpoints.iter())
        .cloned()
        .collect();
    breakpoints.sort();
    breakpoints.dedup();
    let pairs = breakpoints
        .windows(2)
        .map(|w| {
            let fi = piece_index(&f.breakpoints, &w[0]);
            let gi = piece_index(&g.breakpoints, &w[0]);
            (f.pieces[fi].clone(), g.pieces[gi].clone())
        })
        .collect();
    (breakpoints, pairs)
}

impl fmt::Debug for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (u, v, p) in self.pieces() {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "[{u},{v}): {p}")?;
        }
        Ok(())
    }
}

/// A rational interval `[lo, hi]` known to contain an exact real quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn exact(v: Rat) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// The exactly determined value, when the enclosure is a point.
    pub fn exact_value(&self) -> Option<&Rat> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Enclosure of the square root of a nonnegative enclosed quantity, by
    /// rational bisection. The requested width is met whenever the input
    /// enclosure is tight enough; the result is sound regardless.
    pub fn sqrt_enclosure(&self, width: &Rat) -> Enclosure {
        assert!(!self.lo.is_negative(), "square root of a negative enclosure");
        if let Some(v) = self.exact_value() {
            if let Some(r) = v.exact_sqrt() {
                return Enclosure::exact(r);
            }
        }
        let mut lo = Rat::zero();
        let mut hi = if self.hi > Rat::one() {
            self.hi.clone()
        } else {
            Rat::one()
        };
        while &(&hi - &lo) > width {
            let mid = Rat::midpoint(&lo, &hi);
            let sq = &mid * &mid;
            if sq <= self.lo {
                lo = mid;
            } else if sq >= self.hi {
                hi = mid;
            } else {
                break;
            }
        }
        Enclosure { lo, hi }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.exact_value() {
            write!(f, "{v}")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests;

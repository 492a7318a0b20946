//! Zero-set geometry: plateau decomposition, spectral zero projections and
//! annihilators.
//!
//! The spectrum of a piecewise polynomial in these function algebras is the
//! closure of its (essential) range, so "zero is isolated in the spectrum"
//! is decided by plateau geometry: the zero set must consist of whole pieces
//! and the element must stay away from zero on every other piece.

use crate::error::AlgebraError;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::roots::{isolate_roots, RootLocation};

use super::{PPoly, RawPiecewise, Regularity};

/// Exact decomposition of `{t : f(t) = 0}` into plateau intervals (pieces
/// where `f` vanishes identically) and isolated roots.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    /// Disjoint closed nondegenerate intervals on which `f ≡ 0`, sorted.
    pub plateaus: Vec<(Rat, Rat)>,
    /// Isolated zeros outside the plateaus: exact rational points or
    /// isolating brackets for irrational roots, sorted and disjoint.
    pub points: Vec<RootLocation>,
}

impl ZeroSet {
    pub fn is_empty(&self) -> bool {
        self.plateaus.is_empty() && self.points.is_empty()
    }

    /// True when the zero set has nonempty interior.
    pub fn has_plateau(&self) -> bool {
        !self.plateaus.is_empty()
    }
}

pub fn zero_set(f: &PPoly) -> ZeroSet {
    let mut plateaus: Vec<(Rat, Rat)> = Vec::new();
    let mut points: Vec<RootLocation> = Vec::new();

    for (u, v, p) in f.pieces() {
        if p.is_zero() {
            // Closed closure of the half-open piece; merge with an adjacent
            // plateau sharing the breakpoint.
            match plateaus.last_mut() {
                Some((_, phi)) if phi == u => *phi = v.clone(),
                _ => plateaus.push((u.clone(), v.clone())),
            }
        } else {
            let iso = isolate_roots(p, u, v).expect("nonzero piece polynomial");
            points.extend(iso.roots().iter().cloned());
        }
    }

    // Absorb isolated points sitting on plateau boundaries (a root shared
    // with a vanishing neighbour piece) and deduplicate breakpoint roots
    // discovered from both adjacent pieces. Only exact points can coincide:
    // bracketed roots are irrational and breakpoints are rational.
    points.sort_by(|a, b| a.bounds().0.cmp(&b.bounds().0));
    points.dedup();
    points.retain(|loc| match loc {
        RootLocation::Exact(r) => !plateaus.iter().any(|(a, b)| a <= r && r <= b),
        RootLocation::Bracket { .. } => true,
    });

    ZeroSet { plateaus, points }
}

/// The projection onto the kernel: for a pointwise-nonnegative `a` whose
/// zero set is a union of plateaus with `a` bounded away from zero
/// elsewhere, returns the indicator `b` of the plateau union, which
/// satisfies `a·b = 0`, `b ≠ 0`, `b² = b`. Returns `None` when zero is not
/// an isolated point of the spectrum or the indicator is not a member of
/// the algebra.
pub fn spectral_zero_projection(a: &PPoly) -> Result<Option<PPoly>, AlgebraError> {
    if !a.is_nonneg() {
        return Err(AlgebraError::NotPositive);
    }
    let mut breakpoints = vec![a.breakpoints()[0].clone()];
    let mut pieces = Vec::new();
    let mut any_zero_piece = false;
    for (_, v, p) in a.pieces() {
        if p.is_zero() {
            any_zero_piece = true;
            pieces.push(Poly::one());
        } else {
            // Bounded below off the plateaus: the piece closure must be
            // root-free, including boundary points shared with a plateau.
            if !isolate_roots(p, breakpoints.last().unwrap(), v)?.is_empty() {
                return Ok(None);
            }
            pieces.push(Poly::zero());
        }
        breakpoints.push(v.clone());
    }
    if !any_zero_piece {
        // Zero is not in the spectrum (a invertible-like) or not isolated.
        return Ok(None);
    }
    let raw = RawPiecewise {
        breakpoints,
        pieces,
    };
    match PPoly::new(a.descriptor().clone(), raw) {
        Ok(b) => {
            debug_assert!(a.mul(&b)?.is_zero_fn());
            debug_assert_eq!(b.mul(&b)?, b);
            Ok(Some(b))
        }
        // The indicator exists as a function but not in this algebra
        // (discontinuous, or violating a vanishing constraint).
        Err(AlgebraError::InvalidPiecewise(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// A nonzero annihilator of `a`: some `b ≠ 0` in the same algebra with
/// `a·b = 0`. Exists iff the zero set of `a` has a plateau component;
/// measurable algebras use the plateau indicator, continuous ones a
/// polynomial bump vanishing at the plateau endpoints (and at any vanishing
/// point inside).
pub fn annihilator(a: &PPoly) -> Option<PPoly> {
    let d = a.descriptor().clone();
    let zs = zero_set(a);
    if !zs.has_plateau() {
        return None;
    }

    // The unit annihilates the zero element whenever the algebra has one.
    if a.is_zero_fn() {
        if let Ok(one) = PPoly::one(&d) {
            return Some(one);
        }
    }

    match d.regularity() {
        Regularity::MeasurableBounded => {
            let mut b = PPoly::zero(&d);
            for (u, v) in &zs.plateaus {
                let chunk = PPoly::indicator(&d, u, v).expect("indicator in measurable algebra");
                b = b.add(&chunk).expect("same descriptor");
            }
            debug_assert!(a.mul(&b).expect("same descriptor").is_zero_fn());
            Some(b)
        }
        Regularity::Continuous => {
            let (u, v) = zs.plateaus[0].clone();
            // Bump (t−u)(v−t), forced to vanish at interior vanishing points.
            let mut bump = &Poly::linear(-&u, Rat::one()) * &Poly::linear(v.clone(), -Rat::one());
            for w in d.vanishing_points() {
                if *w > u && *w < v {
                    let lin = Poly::linear(-w, Rat::one());
                    bump = &bump * &(&lin * &lin);
                }
            }
            let (dlo, dhi) = d.domain();
            let mut breakpoints = vec![dlo.clone()];
            let mut pieces = Vec::new();
            if u > *dlo {
                breakpoints.push(u.clone());
                pieces.push(Poly::zero());
            }
            pieces.push(bump);
            if v < *dhi {
                breakpoints.push(v.clone());
                pieces.push(Poly::zero());
            }
            breakpoints.push(dhi.clone());
            let b = PPoly::new(
                d,
                RawPiecewise {
                    breakpoints,
                    pieces,
                },
            )
            .expect("bump vanishes at plateau endpoints");
            debug_assert!(a.mul(&b).expect("same descriptor").is_zero_fn());
            Some(b)
        }
    }
}

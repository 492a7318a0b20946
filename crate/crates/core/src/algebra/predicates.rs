//! Exact norm comparison, norm enclosures, invertibility and sign
//! witnesses.
//!
//! The supremum norm of a piecewise polynomial equals the maximum of each
//! piece polynomial over its closed piece (one-sided limits make values at
//! isolated breakpoints irrelevant under both pointwise and a.e. semantics),
//! so norm decisions reduce to sign classification and root existence.

use crate::error::AlgebraError;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::roots::{isolate_roots, sign_on_interval, RootLocation, SignClass};

use super::{Enclosure, PPoly};

/// Exact three-way comparison of `‖f‖_∞` against a rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormOrdering {
    Lt,
    Eq,
    Gt,
}

/// Decides `‖f‖_∞` versus `q` exactly: bounded iff `q − f ≥ 0` and
/// `q + f ≥ 0` everywhere, attained iff `|f|` reaches `q` on some closed
/// piece.
pub fn norm_cmp(f: &PPoly, q: &Rat) -> NormOrdering {
    if q.is_negative() {
        return NormOrdering::Gt;
    }
    if !bounded_by(f, q) {
        return NormOrdering::Gt;
    }
    if attains(f, q) {
        NormOrdering::Eq
    } else {
        NormOrdering::Lt
    }
}

/// `|f| ≤ q` everywhere (equivalently a.e.).
fn bounded_by(f: &PPoly, q: &Rat) -> bool {
    f.pieces().all(|(u, v, p)| {
        let upper = &Poly::constant(q.clone()) - p;
        let lower = &Poly::constant(q.clone()) + p;
        sign_on_interval(&upper, u, v)
            .expect("piece intervals are nonempty")
            .is_nonnegative()
            && sign_on_interval(&lower, u, v)
                .expect("piece intervals are nonempty")
                .is_nonnegative()
    })
}

/// `|f|` takes the value `q` somewhere (sup over any piece closure reaches
/// `q`; for polynomials the essential supremum and supremum agree).
fn attains(f: &PPoly, q: &Rat) -> bool {
    f.pieces().any(|(u, v, p)| {
        for g in [
            &Poly::constant(q.clone()) - p,
            &Poly::constant(q.clone()) + p,
        ] {
            if g.is_zero() {
                return true;
            }
            if !isolate_roots(&g, u, v)
                .expect("nonzero piece difference")
                .is_empty()
            {
                return true;
            }
        }
        false
    })
}

/// Rational interval enclosure of `‖f‖_∞` with width at most `width`, by
/// binary search on the exact comparator.
pub fn sup_norm(f: &PPoly, width: &Rat) -> Result<Enclosure, AlgebraError> {
    if !width.is_positive() {
        return Err(AlgebraError::NonpositiveWidth(width.clone()));
    }
    if f.is_zero_fn() {
        return Ok(Enclosure::exact(Rat::zero()));
    }
    let mut hi = coefficient_bound(f);
    let mut lo = Rat::zero();
    debug_assert!(bounded_by(f, &hi));
    while &(&hi - &lo) > width {
        let mid = Rat::midpoint(&lo, &hi);
        if bounded_by(f, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Enclosure { lo, hi })
}

/// Crude rational upper bound on `|f|`: per piece, the sum of coefficient
/// magnitudes times the largest power of the endpoint magnitude.
fn coefficient_bound(f: &PPoly) -> Rat {
    let (dlo, dhi) = f.descriptor().domain();
    let m = dlo.abs().max(dhi.abs());
    let mut best = Rat::zero();
    for (_, _, p) in f.pieces() {
        let mut bound = Rat::zero();
        let mut power = Rat::one();
        for c in p.coeffs() {
            bound += &(&c.abs() * &power);
            power *= &m;
        }
        if bound > best {
            best = bound;
        }
    }
    if best.is_zero() {
        Rat::one()
    } else {
        best
    }
}

/// Invertibility verdict; invertible elements carry a certified positive
/// rational lower bound on `|f|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invertibility {
    pub invertible: bool,
    pub lower_bound: Option<Rat>,
}

/// An element of a unital algebra is invertible iff no piece polynomial has
/// a root in the closure of its piece.
pub fn is_invertible(f: &PPoly) -> Result<Invertibility, AlgebraError> {
    if !f.descriptor().unital() {
        return Err(AlgebraError::NonUnitalAlgebra);
    }
    for (u, v, p) in f.pieces() {
        if p.is_zero() {
            return Ok(Invertibility {
                invertible: false,
                lower_bound: None,
            });
        }
        if !isolate_roots(p, u, v)?.is_empty() {
            return Ok(Invertibility {
                invertible: false,
                lower_bound: None,
            });
        }
    }
    // |f| is bounded below by a positive rational; halve until certified
    // via f² − δ² ≥ 0.
    let mut delta = Rat::one();
    loop {
        let delta_sq = &delta * &delta;
        let certified = f.pieces().all(|(u, v, p)| {
            let g = &(p * p) - &Poly::constant(delta_sq.clone());
            sign_on_interval(&g, u, v)
                .expect("piece intervals are nonempty")
                .is_nonnegative()
        });
        if certified {
            return Ok(Invertibility {
                invertible: true,
                lower_bound: Some(delta),
            });
        }
        delta = &delta * &Rat::new(1, 2);
    }
}

/// A rational point where `f` is strictly negative, when one exists.
pub fn negativity_witness(f: &PPoly) -> Option<Rat> {
    for (u, v, p) in f.pieces() {
        match sign_on_interval(p, u, v).expect("piece intervals are nonempty") {
            SignClass::Zero | SignClass::Nonnegative => continue,
            _ => {}
        }
        // Sample the root-free segments of this piece.
        if p.is_zero() {
            continue;
        }
        let iso = isolate_roots(p, u, v).expect("nonzero piece");
        let mut samples: Vec<Rat> = Vec::new();
        let mut cursor = u.clone();
        for root in iso.roots() {
            let (a, b) = root.bounds();
            if cursor < a {
                samples.push(Rat::midpoint(&cursor, &a));
            }
            if let RootLocation::Bracket { lo, hi } = root {
                samples.push(lo.clone());
                samples.push(hi.clone());
            }
            cursor = b;
        }
        if cursor < *v {
            samples.push(Rat::midpoint(&cursor, v));
        }
        if iso.is_empty() {
            samples.push(u.clone());
        }
        if let Some(t) = samples.into_iter().find(|t| p.eval(t).is_negative()) {
            return Some(t);
        }
    }
    None
}

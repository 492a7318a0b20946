//! Exact division inside the piecewise-polynomial model.

use serde::Serialize;

use crate::error::AlgebraError;
use crate::rat::Rat;
use crate::roots::isolate_roots;

use super::{is_member, refine_pair, MembershipViolation, PPoly, RawPiecewise};

/// Outcome of [`divide_exact`]: either a certified quotient or a structured
/// reason why none exists in the model. Absence is a value, not an error.
#[derive(Clone, Debug)]
pub enum Division {
    Exact(PPoly),
    Impossible(DivisionFailure),
}

impl Division {
    pub fn quotient(self) -> Option<PPoly> {
        match self {
            Division::Exact(q) => Some(q),
            Division::Impossible(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&DivisionFailure> {
        match self {
            Division::Exact(_) => None,
            Division::Impossible(f) => Some(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DivisionFailure {
    /// The divisor vanishes at a point where the dividend does not.
    DivisorVanishes { at: Rat },
    /// Polynomial division leaves a nonzero remainder on some piece.
    NonzeroRemainder { piece_lo: Rat, piece_hi: Rat },
    /// The divisor is identically zero on a piece where the dividend is not.
    DivisorZeroOnPiece { piece_lo: Rat, piece_hi: Rat },
    /// A quotient exists piecewise but is not a member of the algebra.
    QuotientNotMember(Vec<MembershipViolation>),
}

impl std::fmt::Display for DivisionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DivisionFailure::DivisorVanishes { at } => {
                write!(f, "divisor vanishes at t = {at} while the dividend does not")
            }
            DivisionFailure::NonzeroRemainder { piece_lo, piece_hi } => {
                write!(f, "nonzero remainder on [{piece_lo}, {piece_hi})")
            }
            DivisionFailure::DivisorZeroOnPiece { piece_lo, piece_hi } => write!(
                f,
                "divisor is identically zero on [{piece_lo}, {piece_hi}) where the dividend is not"
            ),
            DivisionFailure::QuotientNotMember(vs) => {
                write!(f, "quotient is not a member of the algebra: ")?;
                for (k, v) in vs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Finds `g` with `divisor · g = dividend` exactly, `g` a member of the
/// shared algebra, when such a `g` exists within the piecewise-polynomial
/// model. On pieces where the divisor is identically zero the dividend must
/// vanish too and the quotient is free there; the canonical choice is zero.
pub fn divide_exact(dividend: &PPoly, divisor: &PPoly) -> Result<Division, AlgebraError> {
    if dividend.descriptor() != divisor.descriptor() {
        return Err(AlgebraError::DescriptorMismatch);
    }
    let (breakpoints, pairs) = refine_pair(dividend, divisor);
    let mut quotient_pieces = Vec::with_capacity(pairs.len());
    for (k, (num, den)) in pairs.iter().enumerate() {
        let (u, v) = (&breakpoints[k], &breakpoints[k + 1]);
        if den.is_zero() {
            if num.is_zero() {
                quotient_pieces.push(crate::poly::Poly::zero());
                continue;
            }
            return Ok(Division::Impossible(DivisionFailure::DivisorZeroOnPiece {
                piece_lo: u.clone(),
                piece_hi: v.clone(),
            }));
        }
        match num.div_exact(den) {
            Some(q) => quotient_pieces.push(q),
            None => {
                // Prefer the pointwise explanation when an exact root of the
                // divisor carries a nonzero dividend value.
                let iso = isolate_roots(den, u, v)?;
                for root in iso.roots() {
                    if let crate::roots::RootLocation::Exact(r) = root {
                        if !num.eval(r).is_zero() {
                            return Ok(Division::Impossible(DivisionFailure::DivisorVanishes {
                                at: r.clone(),
                            }));
                        }
                    }
                }
                return Ok(Division::Impossible(DivisionFailure::NonzeroRemainder {
                    piece_lo: u.clone(),
                    piece_hi: v.clone(),
                }));
            }
        }
    }
    let raw = RawPiecewise {
        breakpoints,
        pieces: quotient_pieces,
    };
    let report = is_member(&raw, dividend.descriptor());
    if !report.is_member {
        return Ok(Division::Impossible(DivisionFailure::QuotientNotMember(
            report.violations,
        )));
    }
    let quotient = PPoly::new(dividend.descriptor().clone(), raw)?;
    debug_assert_eq!(&divisor.mul(&quotient)?, dividend);
    Ok(Division::Exact(quotient))
}

//! Exact Lebesgue measure of superlevel sets `{t : f(t) > ε}`.
//!
//! Per piece, the set is a finite union of intervals whose endpoints are
//! roots of `f − ε`; rational roots give exact contributions and bracketed
//! irrational roots contribute their bracket width to the enclosure
//! uncertainty, which refinement drives below any requested bound.

use crate::error::AlgebraError;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::roots::isolate_roots;

use super::{Enclosure, PPoly};

/// Enclosure of `|{t : f(t) > ε}|` with width below `width`.
pub fn superlevel_measure(f: &PPoly, eps: &Rat, width: &Rat) -> Result<Enclosure, AlgebraError> {
    if !eps.is_positive() {
        return Err(AlgebraError::NonpositiveEpsilon(eps.clone()));
    }
    if !width.is_positive() {
        return Err(AlgebraError::NonpositiveWidth(width.clone()));
    }

    // First pass: isolate the level crossings per piece.
    let mut work = Vec::new();
    let mut bracket_count = 0usize;
    for (u, v, p) in f.pieces() {
        let g = p - &Poly::constant(eps.clone());
        if g.is_zero() {
            // f ≡ ε on the piece: not strictly above the level.
            continue;
        }
        let iso = isolate_roots(&g, u, v)?;
        bracket_count += iso.roots().iter().filter(|r| !r.is_exact()).count();
        work.push((u.clone(), v.clone(), g, iso));
    }

    // Second pass: shrink all brackets so total uncertainty stays below the
    // requested width, then accumulate certain and uncertain lengths.
    let per_bracket = if bracket_count > 0 {
        &(width.clone()) / &Rat::int(bracket_count as i64)
    } else {
        width.clone()
    };
    let mut lo_total = Rat::zero();
    let mut hi_total = Rat::zero();
    for (u, v, g, mut iso) in work {
        iso.refine_below(&per_bracket);
        let mut cursor = u.clone();
        for root in iso.roots() {
            let (a, b) = root.bounds();
            if cursor < a {
                let sample = Rat::midpoint(&cursor, &a);
                if g.eval(&sample).is_positive() {
                    let len = &a - &cursor;
                    lo_total += &len;
                    hi_total += &len;
                }
            }
            // The bracket interior is uncertain; it only ever adds to the
            // upper bound.
            if !root.is_exact() {
                hi_total += &(&b - &a);
            }
            cursor = b;
        }
        if cursor < v {
            let sample = Rat::midpoint(&cursor, &v);
            if g.eval(&sample).is_positive() {
                let len = &v - &cursor;
                lo_total += &len;
                hi_total += &len;
            }
        }
    }
    Ok(Enclosure {
        lo: lo_total,
        hi: hi_total,
    })
}

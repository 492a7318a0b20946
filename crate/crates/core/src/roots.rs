//! Exact real-root isolation and sign classification for rational
//! polynomials, via Sturm-sequence sign-variation counting.
//!
//! Every `≥ 0` style predicate in the higher layers reduces to
//! [`sign_on_interval`], which in turn reduces to [`isolate_roots`]. The
//! isolation result keeps rational roots as exact points and irrational roots
//! as shrinkable sign-change brackets; no floating point is involved.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ScalarError;
use crate::poly::Poly;
use crate::rat::Rat;

/// One isolated real root: either an exact rational point or a closed
/// bracket `[lo, hi]` with rational endpoints containing exactly one
/// (irrational) root in its interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLocation {
    Exact(Rat),
    Bracket { lo: Rat, hi: Rat },
}

impl RootLocation {
    pub fn bounds(&self) -> (Rat, Rat) {
        match self {
            RootLocation::Exact(r) => (r.clone(), r.clone()),
            RootLocation::Bracket { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RootLocation::Exact(_))
    }

    pub fn width(&self) -> Rat {
        let (lo, hi) = self.bounds();
        &hi - &lo
    }
}

/// All real roots of a polynomial in a queried closed interval, pairwise
/// disjoint and sorted, with multiplicity collapsed.
#[derive(Clone, Debug)]
pub struct RootIsolation {
    roots: Vec<RootLocation>,
    /// Square-free part of the isolated polynomial; the sign-change witness
    /// used when shrinking brackets.
    square_free: Poly,
}

impl RootIsolation {
    pub fn roots(&self) -> &[RootLocation] {
        &self.roots
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    /// Shrinks every bracket until its width is strictly below `width`.
    /// Roots are never lost: each bracket keeps a sign change of the
    /// square-free part.
    pub fn refine_below(&mut self, width: &Rat) {
        assert!(width.is_positive(), "refinement width must be positive");
        for root in &mut self.roots {
            while let RootLocation::Bracket { lo, hi } = root {
                if (&*hi - &*lo) < *width {
                    break;
                }
                let mid = Rat::midpoint(lo, hi);
                let vm = self.square_free.eval(&mid);
                if vm.is_zero() {
                    *root = RootLocation::Exact(mid);
                    break;
                }
                if vm.signum() * self.square_free.eval(lo).signum() < 0 {
                    *hi = mid;
                } else {
                    *lo = mid;
                }
            }
        }
    }
}

/// Sign behaviour of a polynomial on a closed interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignClass {
    /// Identically zero on the interval.
    Zero,
    /// `p ≥ 0` everywhere, with at least one strictly positive value.
    Nonnegative,
    /// `p ≤ 0` everywhere, with at least one strictly negative value.
    Nonpositive,
    /// Takes both strictly positive and strictly negative values.
    Mixed,
}

impl SignClass {
    pub fn is_nonnegative(self) -> bool {
        matches!(self, SignClass::Zero | SignClass::Nonnegative)
    }

    pub fn is_nonpositive(self) -> bool {
        matches!(self, SignClass::Zero | SignClass::Nonpositive)
    }
}

/// Isolates every real root of `p` in `[lo, hi]`.
pub fn isolate_roots(p: &Poly, lo: &Rat, hi: &Rat) -> Result<RootIsolation, ScalarError> {
    if p.is_zero() {
        return Err(ScalarError::ZeroPolynomial);
    }
    if lo > hi {
        return Err(ScalarError::EmptyInterval);
    }
    let square_free = p.square_free_part();
    if lo == hi {
        let roots = if p.eval(lo).is_zero() {
            vec![RootLocation::Exact(lo.clone())]
        } else {
            Vec::new()
        };
        return Ok(RootIsolation { roots, square_free });
    }

    // Split off all rational roots we can certify, then Sturm-isolate the
    // rest. `rest` never vanishes at a rational point we evaluate, except
    // when up-front stripping was incomplete; midpoint hits are then folded
    // back in as exact roots.
    let (mut exact, mut rest) = strip_rational_roots(&square_free);
    exact.retain(|r| r >= lo && r <= hi);
    let mut exact: Vec<Rat> = exact.into_iter().collect();
    exact.sort();

    let mut brackets: Vec<(Rat, Rat)> = Vec::new();
    if rest.degree().map_or(false, |d| d >= 1) {
        loop {
            match sturm_bisect(&rest, lo, hi) {
                Ok(found) => {
                    brackets = found;
                    break;
                }
                Err(hit) => {
                    // A bisection point turned out to be a rational root.
                    if hit >= *lo && hit <= *hi {
                        exact.push(hit.clone());
                        exact.sort();
                    }
                    rest = rest
                        .div_exact(&Poly::linear(-&hit, Rat::one()))
                        .expect("evaluated root divides exactly");
                }
            }
        }
    }

    let roots = finalize_roots(&rest, &square_free, exact, brackets);
    Ok(RootIsolation { roots, square_free })
}

/// Classifies the sign of `p` on `[lo, hi]` exactly.
pub fn sign_on_interval(p: &Poly, lo: &Rat, hi: &Rat) -> Result<SignClass, ScalarError> {
    if lo > hi {
        return Err(ScalarError::EmptyInterval);
    }
    if p.is_zero() {
        return Ok(SignClass::Zero);
    }
    if lo == hi {
        return Ok(match p.eval(lo).signum() {
            0 => SignClass::Zero,
            s if s > 0 => SignClass::Nonnegative,
            _ => SignClass::Nonpositive,
        });
    }
    let isolation = isolate_roots(p, lo, hi)?;

    // Sample once in every root-free segment. Bracket endpoints are
    // guaranteed non-roots of `p`, and the sign between a bracket endpoint
    // and the root inside is the sign at that endpoint.
    let mut samples: Vec<Rat> = Vec::new();
    let mut cursor = lo.clone();
    for root in isolation.roots() {
        let (a, b) = root.bounds();
        if cursor < a {
            samples.push(Rat::midpoint(&cursor, &a));
        }
        if let RootLocation::Bracket { lo: bl, hi: bh } = root {
            samples.push(bl.clone());
            samples.push(bh.clone());
        }
        cursor = b;
    }
    if cursor < *hi {
        samples.push(Rat::midpoint(&cursor, hi));
    }
    if isolation.is_empty() {
        samples.push(lo.clone());
        samples.push(hi.clone());
    }

    let mut pos = false;
    let mut neg = false;
    for t in &samples {
        match p.eval(t).signum() {
            s if s > 0 => pos = true,
            s if s < 0 => neg = true,
            _ => unreachable!("sample points are never roots"),
        }
    }
    Ok(match (pos, neg) {
        (true, true) => SignClass::Mixed,
        (true, false) => SignClass::Nonnegative,
        (false, true) => SignClass::Nonpositive,
        (false, false) => SignClass::Zero,
    })
}

/// Removes certified rational roots from a square-free polynomial.
/// Returns the roots and the remaining cofactor.
fn strip_rational_roots(q: &Poly) -> (BTreeSet<Rat>, Poly) {
    let mut roots = BTreeSet::new();
    let mut rest = q.clone();

    // Zero roots: factors of x.
    while !rest.is_zero() && rest.coeff(0).is_zero() && rest.degree() != Some(0) {
        roots.insert(Rat::zero());
        rest = rest
            .div_exact(&Poly::x())
            .expect("x divides a polynomial with zero constant term");
    }

    match rest.degree() {
        None | Some(0) => return (roots, rest),
        Some(1) => {
            let r = -&(&rest.coeff(0) / &rest.coeff(1));
            roots.insert(r);
            return (roots, Poly::one());
        }
        Some(2) => {
            let (a, b, c) = (rest.coeff(2), rest.coeff(1), rest.coeff(0));
            let disc = &(&b * &b) - &(&Rat::int(4) * &(&a * &c));
            if let Some(s) = disc.exact_sqrt() {
                let two_a = &Rat::int(2) * &a;
                roots.insert(&(-&b + &s) / &two_a);
                roots.insert(&(-&b - &s) / &two_a);
                return (roots, Poly::one());
            }
            return (roots, rest);
        }
        _ => {}
    }

    // Rational root theorem on the primitive integer form. Incomplete
    // divisor enumeration (huge prime factors) only costs exactness flags,
    // never soundness: missed roots are still isolated as brackets.
    let ints = rest.primitive_integer_coeffs();
    let a0 = ints.first().cloned().unwrap_or_else(BigInt::zero);
    let an = ints.last().cloned().unwrap_or_else(BigInt::one);
    if let (Some(num_divs), Some(den_divs)) = (divisors(&a0), divisors(&an)) {
        let mut candidates: BTreeSet<Rat> = BTreeSet::new();
        for u in &num_divs {
            for v in &den_divs {
                let r = Rat::new(u.clone(), v.clone());
                candidates.insert(r.clone());
                candidates.insert(-&r);
            }
        }
        for r in candidates {
            if rest.eval(&r).is_zero() {
                rest = rest
                    .div_exact(&Poly::linear(-&r, Rat::one()))
                    .expect("root divides exactly");
                roots.insert(r);
            }
        }
    }
    (roots, rest)
}

/// Positive divisors of `|n|` by trial division; `None` when `n` has a
/// factor too large to enumerate.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    const TRIAL_LIMIT: u64 = 100_000;
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= m && d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        let mut mult = 0;
        while (&m % &bd).is_zero() {
            m /= &bd;
            mult += 1;
        }
        if mult > 0 {
            primes.push((bd, mult));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        if m > BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) {
            // Cofactor may be composite; give up rather than miss divisors.
            return None;
        }
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, mult) in primes {
        let base = divs.clone();
        let mut power = BigInt::one();
        for _ in 0..mult {
            power *= &p;
            divs.extend(base.iter().map(|d| d * &power));
        }
    }
    divs.sort();
    Some(divs)
}

/// Sturm bisection on `(lo, hi]`. `rest` must have no rational roots among
/// evaluated points; when a bisection point is a root anyway the root value
/// is returned as `Err` so the caller can strip it and retry.
fn sturm_bisect(rest: &Poly, lo: &Rat, hi: &Rat) -> Result<Vec<(Rat, Rat)>, Rat> {
    let chain = SturmChain::new(rest);
    if rest.eval(lo).is_zero() {
        return Err(lo.clone());
    }
    if rest.eval(hi).is_zero() {
        return Err(hi.clone());
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.variations(lo), chain.variations(hi))];
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va - vb;
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push((a, b));
            continue;
        }
        let mid = Rat::midpoint(&a, &b);
        if rest.eval(&mid).is_zero() {
            return Err(mid);
        }
        let vm = chain.variations(&mid);
        stack.push((a, mid.clone(), va, vm));
        stack.push((mid, b, vm, vb));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Post-processing: brackets end up pairwise strictly disjoint, free of
/// exact roots in their interior, and with endpoints where the full
/// polynomial is nonzero. A probe that lands exactly on a bracket's root
/// (possible only when up-front stripping was incomplete) demotes the
/// bracket to an exact point.
fn finalize_roots(
    rest: &Poly,
    full: &Poly,
    exact: Vec<Rat>,
    brackets: Vec<(Rat, Rat)>,
) -> Vec<RootLocation> {
    let sign_at = |t: &Rat| rest.eval(t).signum();
    let mut out: Vec<RootLocation> = exact.into_iter().map(RootLocation::Exact).collect();

    let mut previous_hi: Option<Rat> = None;
    'bracket: for (mut lo, mut hi) in brackets {
        // Shove exact roots out of the interior; they are roots of `full`
        // but never of `rest`, so the sign test locates the bracket's root.
        for r in out.iter().filter_map(|r| match r {
            RootLocation::Exact(v) => Some(v.clone()),
            _ => None,
        }) {
            if r > lo && r < hi {
                if sign_at(&lo) * sign_at(&r) < 0 {
                    hi = r;
                } else {
                    lo = r;
                }
            }
        }
        let lo_bad = |v: &Rat, prev: &Option<Rat>| {
            full.eval(v).is_zero() || prev.as_ref().is_some_and(|p| v <= p)
        };
        while lo_bad(&lo, &previous_hi) {
            let probe = Rat::midpoint(&lo, &hi);
            match sign_at(&lo) * sign_at(&probe) {
                0 => {
                    out.push(RootLocation::Exact(probe));
                    continue 'bracket;
                }
                s if s < 0 => hi = probe,
                _ => lo = probe,
            }
        }
        while full.eval(&hi).is_zero() {
            let probe = Rat::midpoint(&lo, &hi);
            match sign_at(&probe) * sign_at(&hi) {
                0 => {
                    out.push(RootLocation::Exact(probe));
                    continue 'bracket;
                }
                s if s < 0 => lo = probe,
                _ => hi = probe,
            }
        }
        previous_hi = Some(hi.clone());
        out.push(RootLocation::Bracket { lo, hi });
    }
    out.sort_by(|a, b| a.bounds().0.cmp(&b.bounds().0));
    out
}

/// Sturm chain with elements normalised to primitive integer form (positive
/// scaling only, so sign variations are preserved).
struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    fn new(p: &Poly) -> Self {
        let mut chain = vec![normalize(p), normalize(&p.derivative())];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[n - 1].is_constant() {
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            chain.push(normalize(&-&r));
        }
        SturmChain { chain }
    }

    fn variations(&self, t: &Rat) -> i64 {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let s = p.eval(t).signum();
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

fn normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    Poly::new(
        p.primitive_integer_coeffs()
            .into_iter()
            .map(Rat::int)
            .collect(),
    )
}

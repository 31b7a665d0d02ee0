//! Characteristic function, domain indicator, support term and fundamental
//! sequences.
//!
//! The engine follows the clause tree for the simultaneous system, which on
//! stepwise terms never reaches the lifted clause; the stepwise entry points
//! live here and the simultaneous ones in [`crate::bar`].

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{OrdError, Result};
use crate::order::{cmp_terms, fixp, localize, star, valid_t};
use crate::term::{nat_to_term, split_high, term_to_nat, OrdTerm, SystemTag};

/// Which clause of the assignment produced a fundamental-sequence element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FsClause {
    /// Zero and one.
    Base,
    /// A proper sum; the last summand is approximated.
    SumTail,
    /// Limit `eta` that is not a fixed point.
    Continuity,
    /// Zero fixed-point level: finite multiples of the support, or the
    /// parameter itself for `Omega_i`.
    PrincipalMultiple,
    /// Fixed-point level of cofinality `Omega_{i+1}`: nesting from the support.
    ChiOne,
    /// Fixed-point level of cofinality `Omega_{j+1}` with `j > i`
    /// (simultaneous system only).
    ChiOneAbove,
    /// Remaining case: the fixed-point level is approximated directly.
    ChiZero,
}

/// Clause together with the support term it used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FsCase {
    pub clause: FsClause,
    pub support: OrdTerm,
}

/// A fundamental-sequence element with its explanation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FsOutcome {
    pub value: OrdTerm,
    pub case: FsCase,
}

/// Sequence parameter: a natural number or a term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Nat(u64),
    Term(OrdTerm),
}

impl Param {
    fn nat(&self) -> Result<u64> {
        match self {
            Param::Nat(n) => Ok(*n),
            Param::Term(t) => term_to_nat(t)
                .ok_or_else(|| OrdError::Domain(format!("parameter {t} must be a natural number"))),
        }
    }

    fn term(&self, sys: SystemTag) -> OrdTerm {
        match self {
            Param::Nat(n) => nat_to_term(*n, sys),
            Param::Term(t) => t.clone(),
        }
    }
}

impl From<u64> for Param {
    fn from(n: u64) -> Self {
        Param::Nat(n)
    }
}

impl From<OrdTerm> for Param {
    fn from(t: OrdTerm) -> Self {
        Param::Term(t)
    }
}

/// Characteristic function for `Omega_{i+1}`-cofinality (either system).
pub(crate) fn chi_raw(i: u32, a: &OrdTerm) -> u8 {
    match a {
        OrdTerm::Zero => 0,
        OrdTerm::Sum(_) => chi_raw(i, &a.end()),
        OrdTerm::Collapse(t) => {
            if t.level <= i {
                return 0;
            }
            if t.level == i + 1 && t.arg.is_zero() {
                return 1;
            }
            let (delta, eta) = split_high(&t.arg, t.level);
            if !eta.is_limit() || fixp(&delta, &eta, t.level) {
                chi_raw(i, &delta)
            } else {
                chi_raw(i, &eta)
            }
        }
    }
}

/// Least `j >= i` with `chi_j(delta) = 1`, if any.
fn chi_one_from(i: u32, delta: &OrdTerm) -> Option<u32> {
    let top = delta.max_level()?;
    (i..top).find(|&j| chi_raw(j, delta) == 1)
}

/// Domain indicator: `d` with parameters ranging below `Omega_d`, zero for
/// countable cofinality.
pub(crate) fn dom_raw(a: &OrdTerm) -> u32 {
    match a {
        OrdTerm::Zero => 0,
        OrdTerm::Sum(_) => dom_raw(&a.end()),
        OrdTerm::Collapse(t) => {
            let i = t.level;
            let (delta, eta) = split_high(&t.arg, i);
            if eta.is_limit() && !fixp(&delta, &eta, i) {
                dom_raw(&eta)
            } else if delta.is_zero() {
                if eta.is_zero() {
                    i
                } else {
                    0
                }
            } else if chi_one_from(i, &delta).is_some() {
                0
            } else {
                dom_raw(&delta)
            }
        }
    }
}

/// Support term of a collapse term.
pub(crate) fn support_raw(a: &OrdTerm) -> OrdTerm {
    let t = a.as_theta().expect("collapse term");
    let i = t.level;
    let (delta, eta) = split_high(&t.arg, i);
    if fixp(&delta, &eta, i) {
        let loc = localize(a);
        return loc[loc.len() - 2].clone();
    }
    if eta.is_zero() {
        let loc = localize(a);
        let m = loc.len() - 1;
        if m > 1 {
            let prev = &loc[m - 1];
            let d0 = fs_raw(&delta, &Param::Nat(0)).expect("zero is always admissible");
            if cmp_terms(&star(&d0.value, i), prev) == Ordering::Less && *prev == star(&delta, i) {
                return prev.clone();
            }
        }
        return OrdTerm::Zero;
    }
    match eta.predecessor() {
        Some(pred) => OrdTerm::theta(t.sys, i, delta.add(&pred)),
        None => OrdTerm::Zero,
    }
}

/// Fundamental-sequence element without validation of the inputs.
pub(crate) fn fs_raw(a: &OrdTerm, z: &Param) -> Result<FsOutcome> {
    fs_with(a, z, &support_raw)
}

/// Engine shared with the star-support variant used as a negative fixture.
pub(crate) fn fs_with(a: &OrdTerm, z: &Param, sup: &dyn Fn(&OrdTerm) -> OrdTerm) -> Result<FsOutcome> {
    let done = |value: OrdTerm, clause: FsClause, support: OrdTerm| {
        Ok(FsOutcome { value, case: FsCase { clause, support } })
    };
    if a.is_zero() || a.is_one() {
        return done(OrdTerm::Zero, FsClause::Base, OrdTerm::Zero);
    }
    let t = match a {
        OrdTerm::Sum(parts) => {
            let tail = fs_with(parts.last().unwrap(), z, sup)?;
            let head = OrdTerm::from_components(parts[..parts.len() - 1].to_vec());
            return done(head.add(&tail.value), FsClause::SumTail, OrdTerm::Zero);
        }
        OrdTerm::Collapse(t) => t,
        OrdTerm::Zero => unreachable!(),
    };
    let (sys, i) = (t.sys, t.level);
    let (delta, eta) = split_high(&t.arg, i);
    let theta = |x: OrdTerm| OrdTerm::theta(sys, i, x);
    if eta.is_limit() && !fixp(&delta, &eta, i) {
        let inner = fs_with(&eta, z, sup)?.value;
        return done(theta(delta.add(&inner)), FsClause::Continuity, OrdTerm::Zero);
    }
    let s = sup(a);
    if delta.is_zero() {
        let value = if eta.is_zero() { z.term(sys) } else { s.times(z.nat()? + 1) };
        return done(value, FsClause::PrincipalMultiple, s);
    }
    match chi_one_from(i, &delta) {
        Some(j) if j == i => {
            let n = z.nat()?;
            let at = |x: OrdTerm| fs_with(&delta, &Param::Term(x), sup).map(|o| absorb(&delta, o.value));
            let mut cur = theta(at(s.clone())?);
            for _ in 0..n {
                cur = theta(at(cur)?);
            }
            done(cur, FsClause::ChiOne, s)
        }
        Some(j) => {
            let n = z.nat()?;
            let sigma = OrdTerm::theta(sys, j, delta.clone());
            let sigma_at = |k: u64| fs_with(&sigma, &Param::Nat(k), sup).map(|o| o.value);
            // Xi' + Omega_{j+1} steps along sigma[n] once past the base term
            let omega_tail = delta.components().last() == Some(&OrdTerm::omega(sys, j + 1));
            let sigma_prime = if delta == OrdTerm::omega(sys, j + 1) || (omega_tail && n > 0) {
                sigma_at(n)?
            } else if n == 0 {
                OrdTerm::Zero
            } else {
                sigma_at(n - 1)?
            };
            let inner = absorb(&delta, fs_with(&delta, &Param::Term(sigma_prime), sup)?.value);
            done(theta(inner.add(&s)), FsClause::ChiOneAbove, s)
        }
        None => {
            let inner = absorb(&delta, fs_with(&delta, z, sup)?.value);
            done(theta(inner.add(&s)), FsClause::ChiZero, s)
        }
    }
}

/// Adjusts an element of the sequence of a collapse argument `delta`.
/// When `delta = Xi + D` with `Xi > 0` and `D` a single component of some
/// level `l` below all of `Xi`, an element `Xi + theta_l(Xi) + rest` becomes
/// `Xi + rest`: inside the collapse, `Xi` alone already stands for
/// `theta_l(Xi)`. Stepwise arguments never have this shape.
fn absorb(delta: &OrdTerm, value: OrdTerm) -> OrdTerm {
    let parts = delta.components();
    let Some(low) = parts.last().and_then(|c| c.level()) else { return value };
    let k = parts.len() - 1;
    if k == 0 || parts[k - 1].level() == Some(low) {
        return value;
    }
    let sys = parts[k].as_theta().expect("component").sys;
    let marker = OrdTerm::theta(sys, low, OrdTerm::from_components(parts[..k].to_vec()));
    let v = value.components();
    if v.len() > k && v[..k] == parts[..k] && v[k] == marker {
        let mut out = parts[..k].to_vec();
        out.extend_from_slice(&v[k + 1..]);
        OrdTerm::from_components(out)
    } else {
        value
    }
}

/// Checks that `z` is an admissible parameter for a term with domain
/// indicator `d`.
pub(crate) fn check_param(d: u32, z: &Param, sys: SystemTag) -> Result<()> {
    match z {
        _ if d == 0 => z.nat().map(|_| ()),
        Param::Nat(_) => Ok(()),
        Param::Term(t) => {
            if t.system().is_some_and(|s| s != sys) {
                return Err(OrdError::WrongSystem { expected: sys });
            }
            if cmp_terms(t, &OrdTerm::omega(sys, d)) == Ordering::Less {
                Ok(())
            } else {
                Err(OrdError::Domain(format!("parameter {t} must be below Omega_{d}")))
            }
        }
    }
}

fn require_t(a: &OrdTerm) -> Result<()> {
    if a.system().is_some_and(|s| s != SystemTag::Stepwise) {
        return Err(OrdError::WrongSystem { expected: SystemTag::Stepwise });
    }
    if !valid_t(a) {
        return Err(OrdError::Invalid(a.to_string()));
    }
    Ok(())
}

/// `chi` at index `i` for a valid stepwise term.
pub fn chi(i: u32, a: &OrdTerm) -> Result<u8> {
    require_t(a)?;
    Ok(chi_raw(i, a))
}

/// Domain indicator of a valid stepwise term.
pub fn dom_ind(a: &OrdTerm) -> Result<u32> {
    require_t(a)?;
    Ok(dom_raw(a))
}

/// Support term of a valid stepwise collapse term.
pub fn support(a: &OrdTerm) -> Result<OrdTerm> {
    require_t(a)?;
    if !a.is_principal() {
        return Err(OrdError::Domain(format!("{a} is not a collapse term")));
    }
    Ok(support_raw(a))
}

/// `a[z]` for a valid stepwise term and an admissible parameter.
pub fn fundseq(a: &OrdTerm, z: &OrdTerm) -> Result<FsOutcome> {
    require_t(a)?;
    let z = Param::Term(z.clone());
    if let Param::Term(t) = &z {
        if !t.is_zero() {
            require_t(t)?;
        }
    }
    check_param(dom_raw(a), &z, SystemTag::Stepwise)?;
    fs_raw(a, &z)
}

/// `a[n]` for a natural `n`.
pub fn fundseq_nat(a: &OrdTerm, n: u64) -> Result<OrdTerm> {
    require_t(a)?;
    fs_raw(a, &Param::Nat(n)).map(|o| o.value)
}

/// The variant that uses the star of the fixed-point level as support in
/// place of the localization-based support term when `eta = 0`. It converges
/// but lacks the Bachmann property; kept for testing the checker.
pub fn fundseq_star_support(a: &OrdTerm, n: u64) -> Result<OrdTerm> {
    fn sup(a: &OrdTerm) -> OrdTerm {
        let t = a.as_theta().expect("collapse term");
        let (delta, eta) = split_high(&t.arg, t.level);
        if eta.is_zero() && !delta.is_zero() && chi_one_from(t.level, &delta).is_none() {
            star(&delta, t.level)
        } else {
            support_raw(a)
        }
    }
    require_t(a)?;
    fs_with(a, &Param::Nat(n), &sup).map(|o| o.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_any;

    fn p(s: &str) -> OrdTerm {
        parse_any(s).unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(0, &p("t1(0)")).unwrap(), 1);
        assert_eq!(chi(0, &p("t1(t0(0))")).unwrap(), 0);
        assert_eq!(chi(0, &p("t1(t2(t1(0)))")).unwrap(), 1);
    }

    #[test]
    fn dom_examples() {
        assert_eq!(dom_ind(&p("t1(0)")).unwrap(), 1);
        assert_eq!(dom_ind(&p("t0(t1(0))")).unwrap(), 0);
        assert_eq!(dom_ind(&p("t1(t2(t1(0)))")).unwrap(), 1);
    }

    #[test]
    fn support_examples() {
        assert_eq!(support(&p("t0(t0(0))")).unwrap(), p("t0(0)"));
        assert_eq!(support(&p("t0(t1(0)+t0(t1(t1(0))))")).unwrap(), p("t0(t1(t1(0)))"));
        assert_eq!(support(&p("t0(t1(t0(0)))")).unwrap(), OrdTerm::Zero);
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(fundseq_nat(&p("t0(t1(t0(0)))"), 1).unwrap(), p("t0(t1(0)+t1(0))"));
        assert_eq!(fundseq_nat(&p("t0(t1(0))"), 0).unwrap(), p("t0(0)"));
        assert_eq!(fundseq_nat(&p("t0(t1(0))"), 1).unwrap(), p("t0(t0(0))"));
        assert_eq!(fundseq_nat(&p("t0(t1(t2(t1(0))))"), 0).unwrap(), p("t0(t1(t2(0)))"));
        let d = p("t1(t2(t1(0)))");
        for z in ["0", "t0(0)", "t0(t0(0))"] {
            let want = OrdTerm::theta(SystemTag::Stepwise, 1, OrdTerm::theta(SystemTag::Stepwise, 2, p(z)));
            assert_eq!(fundseq(&d, &p(z)).unwrap().value, want);
        }
        let e = p("t0(t1(0)+t0(t1(t1(0))))");
        for n in 0..3 {
            let prev = fundseq_nat(&e, n).unwrap();
            assert_eq!(fundseq_nat(&e, n + 1).unwrap(), OrdTerm::theta(SystemTag::Stepwise, 0, prev));
        }
    }

    #[test]
    fn parameter_checks() {
        assert!(fundseq(&p("t0(t1(0))"), &p("t1(0)")).is_err());
        assert!(fundseq(&p("t1(0)"), &p("t1(0)")).is_err());
        assert_eq!(fundseq(&p("t1(0)"), &p("t0(t1(0))")).unwrap().value, p("t0(t1(0))"));
        assert_eq!(fundseq_nat(&p("t0(0)"), 5).unwrap(), OrdTerm::Zero);
    }
}

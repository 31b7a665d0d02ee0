//! Norms, the Hardy hierarchy and bracket walks.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{OrdError, Result};
use crate::fundseq::{dom_raw, fs_raw, Param};
use crate::iso::g;
use crate::order::{cmp_terms, valid_t};
use crate::term::{nat_to_term, OrdTerm, SystemTag};

/// Iteration cap for [`gnorm`].
pub const GNORM_CAP: u64 = 1_000_000;

/// Limits for Hardy evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardyBudget {
    pub max_steps: u64,
    pub max_value: u64,
}

impl Default for HardyBudget {
    fn default() -> Self {
        HardyBudget { max_steps: 10_000_000, max_value: 1_000_000_000 }
    }
}

/// Symbol count: zeros, plus signs and collapse symbols.
pub fn cnorm(a: &OrdTerm) -> u64 {
    match a {
        OrdTerm::Zero => 1,
        OrdTerm::Sum(parts) => parts.iter().map(cnorm).sum::<u64>() + parts.len() as u64 - 1,
        OrdTerm::Collapse(t) => cnorm(&t.arg) + 1,
    }
}

/// Norm of a simultaneous term, taken through the isomorphism.
pub fn norm_bar(a: &OrdTerm) -> Result<u64> {
    Ok(cnorm(&g(a)?))
}

/// Number of `[0]` steps from `a` down to zero.
pub fn gnorm(a: &OrdTerm) -> Result<u64> {
    let mut cur = a.clone();
    let mut steps = 0;
    while !cur.is_zero() {
        if steps == GNORM_CAP {
            return Err(OrdError::Internal(format!("no descent to zero from {a} within {GNORM_CAP} steps")));
        }
        cur = fs_raw(&cur, &Param::Nat(0))?.value;
        steps += 1;
    }
    Ok(steps)
}

/// `end(a) >= mc(b)` for nonzero `a`, `b`.
pub fn nf_predicate(a: &OrdTerm, b: &OrdTerm) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(OrdError::Domain("both arguments must be nonzero".into()));
    }
    Ok(cmp_terms(&a.end(), &b.mc()) != Ordering::Less)
}

fn require_countable(a: &OrdTerm) -> Result<()> {
    if a.system().is_some_and(|s| s != SystemTag::Stepwise) || !valid_t(a) {
        return Err(OrdError::Invalid(a.to_string()));
    }
    if a.components().iter().any(|c| c.level() != Some(0)) || dom_raw(a) != 0 {
        return Err(OrdError::Domain(format!("{a} is not below Omega_1")));
    }
    Ok(())
}

/// `H_a(n)`, evaluated iteratively under `budget`.
///
/// The current ordinal is kept as runs of equal summands, so a step only
/// touches the last one: `(x + c)[n] = x + c[n]` and `H_(x+1)(n) = H_x(n+1)`.
pub fn hardy(a: &OrdTerm, n: u64, budget: HardyBudget) -> Result<u64> {
    require_countable(a)?;
    let mut runs: Vec<(OrdTerm, u64)> = Vec::new();
    push_runs(&mut runs, a);
    let (mut n, mut steps) = (n, 0u64);
    while let Some((c, k)) = runs.pop() {
        if steps >= budget.max_steps || n >= budget.max_value {
            return Err(OrdError::Budget { term: a.to_string(), n, steps });
        }
        if k > 1 {
            runs.push((c.clone(), k - 1));
        }
        steps += 1;
        if !c.is_one() {
            push_runs(&mut runs, &fs_raw(&c, &Param::Nat(n))?.value);
        }
        n += 1;
    }
    Ok(n)
}

fn push_runs(runs: &mut Vec<(OrdTerm, u64)>, a: &OrdTerm) {
    for c in a.components() {
        match runs.last_mut() {
            Some((d, k)) if d == c => *k += 1,
            _ => runs.push((c.clone(), 1)),
        }
    }
}

/// `a[n:k]`: `a + (n - k)` for `k <= n`, then `[n][n+1]...[k-1]`.
pub fn bracket_walk(a: &OrdTerm, n: u64, k: u64) -> Result<OrdTerm> {
    require_countable(a)?;
    if k <= n {
        return Ok(a.add(&nat_to_term(n - k, SystemTag::Stepwise)));
    }
    let mut cur = a.clone();
    for j in n..k {
        cur = fs_raw(&cur, &Param::Nat(j))?.value;
    }
    Ok(cur)
}

/// Least `k` with `a[n:k] = 0`, found by stepping the walk.
pub fn walk_length(a: &OrdTerm, n: u64, budget: HardyBudget) -> Result<u64> {
    require_countable(a)?;
    let (mut cur, mut k) = (a.clone(), n);
    while !cur.is_zero() {
        if k - n >= budget.max_steps || k >= budget.max_value {
            return Err(OrdError::Budget { term: a.to_string(), n: k, steps: k - n });
        }
        cur = fs_raw(&cur, &Param::Nat(k))?.value;
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_any;

    fn p(s: &str) -> OrdTerm {
        parse_any(s).unwrap()
    }

    #[test]
    fn canonical_norm() {
        assert_eq!(cnorm(&OrdTerm::Zero), 1);
        assert_eq!(cnorm(&p("t0(t1(0))")), 3);
        assert_eq!(cnorm(&p("t1(0)+t0(0)")), 5);
    }

    #[test]
    fn iterate_norm() {
        assert_eq!(gnorm(&OrdTerm::Zero).unwrap(), 0);
        assert_eq!(gnorm(&p("t0(t0(0))")).unwrap(), 2);
        assert_eq!(gnorm(&p("t0(t1(0))")).unwrap(), 2);
    }

    #[test]
    fn normal_form_predicate() {
        assert!(nf_predicate(&p("t1(0)"), &p("t0(0)")).unwrap());
        assert!(!nf_predicate(&p("t0(0)"), &p("t0(t0(0))")).unwrap());
        assert!(nf_predicate(&p("t0(2)"), &p("t0(1)")).unwrap());
        assert!(nf_predicate(&OrdTerm::Zero, &p("1")).is_err());
    }

    #[test]
    fn hardy_values() {
        let b = HardyBudget::default();
        assert_eq!(hardy(&OrdTerm::Zero, 5, b).unwrap(), 5);
        assert_eq!(hardy(&p("t0(0)"), 3, b).unwrap(), 4);
        assert_eq!(hardy(&p("t0(t0(0))"), 2, b).unwrap(), 6);
        assert!(hardy(&p("t1(0)"), 2, b).is_err());
        let tight = HardyBudget { max_steps: 10, max_value: 100 };
        assert!(matches!(hardy(&p("t0(t1(0))"), 3, tight), Err(OrdError::Budget { .. })));
    }

    #[test]
    fn walks() {
        assert_eq!(bracket_walk(&p("t0(0)"), 3, 2).unwrap(), p("2"));
        assert_eq!(bracket_walk(&p("t0(t0(0))"), 2, 3).unwrap(), p("3"));
        assert_eq!(walk_length(&p("t0(t0(0))"), 2, HardyBudget::default()).unwrap(), 6);
    }
}

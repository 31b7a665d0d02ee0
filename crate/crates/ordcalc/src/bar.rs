//! The simultaneous system: subterm sets, domains, order, height, and its
//! fundamental sequences.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{OrdError, Result};
use crate::fundseq::{check_param, chi_raw, dom_raw, fs_raw, FsOutcome, Param};
use crate::order::{anf_ok, cmp_terms, k_tau, star};
use crate::term::{OrdTerm, SystemTag};

const B: SystemTag = SystemTag::Simultaneous;

/// The two subterm sets of a term at index `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSets {
    /// Level-`i` collapse subterms reachable through higher levels only.
    pub ktau: BTreeSet<OrdTerm>,
    /// Arguments of collapse subterms of level at least `i`, recursively.
    pub kstar: BTreeSet<OrdTerm>,
    pub level: u32,
}

pub fn k_sets(a: &OrdTerm, i: u32) -> KSets {
    let mut kstar = BTreeSet::new();
    collect_kstar(a, i, &mut kstar);
    KSets { ktau: k_tau(a, i).into_iter().collect(), kstar, level: i }
}

fn collect_kstar(a: &OrdTerm, i: u32, out: &mut BTreeSet<OrdTerm>) {
    for c in a.components() {
        let t = c.as_theta().expect("principal");
        if t.level >= i {
            out.insert(t.arg.clone());
            collect_kstar(&t.arg, i, out);
        }
    }
}

/// Largest element of the argument set, or zero.
pub fn kstar_max(a: &OrdTerm, i: u32) -> OrdTerm {
    k_sets(a, i).kstar.into_iter().next_back().unwrap_or(OrdTerm::Zero)
}

/// Largest element of the level-`i` subterm set, or zero.
pub fn star_bar(a: &OrdTerm, i: u32) -> OrdTerm {
    star(a, i)
}

/// Whether `a` lies in the domain of the level-`m` collapsing function.
pub fn in_dom(a: &OrdTerm, m: u32) -> bool {
    let mut ok = true;
    check_kstar(a, a, m + 1, &mut ok);
    ok
}

fn check_kstar(root: &OrdTerm, a: &OrdTerm, i: u32, ok: &mut bool) {
    for c in a.components() {
        if !*ok {
            return;
        }
        let t = c.as_theta().expect("principal");
        if t.level >= i {
            if cmp_terms(&t.arg, root) != Ordering::Less {
                *ok = false;
                return;
            }
            check_kstar(root, &t.arg, i, ok);
        }
    }
}

/// Every collapse `b_i(x)` has `x` in the domain of `b_i`, sums are in
/// additive normal form.
pub fn valid_bar(a: &OrdTerm) -> bool {
    anf_ok(a, B)
        && a.components().iter().all(|c| {
            let t = c.as_theta().expect("principal");
            valid_bar(&t.arg) && in_dom(&t.arg, t.level)
        })
}

fn require_bar(a: &OrdTerm) -> Result<()> {
    if a.system().is_some_and(|s| s != B) {
        return Err(OrdError::WrongSystem { expected: B });
    }
    if !valid_bar(a) {
        return Err(OrdError::Invalid(a.to_string()));
    }
    Ok(())
}

/// Checked comparison of two valid simultaneous terms.
pub fn compare_bar(a: &OrdTerm, b: &OrdTerm) -> Result<Ordering> {
    require_bar(a)?;
    require_bar(b)?;
    Ok(cmp_terms(a, b))
}

/// One more than the largest collapse index, zero for the term zero.
pub fn ht(a: &OrdTerm) -> u32 {
    a.max_level().map_or(0, |l| l + 1)
}

pub fn chi_bar(i: u32, a: &OrdTerm) -> Result<u8> {
    require_bar(a)?;
    Ok(chi_raw(i, a))
}

pub fn dom_ind_bar(a: &OrdTerm) -> Result<u32> {
    require_bar(a)?;
    Ok(dom_raw(a))
}

/// `a[z]` computed directly on simultaneous terms.
pub fn fundseq_bar(a: &OrdTerm, z: &OrdTerm) -> Result<FsOutcome> {
    require_bar(a)?;
    if !z.is_zero() {
        require_bar(z)?;
    }
    let z = Param::Term(z.clone());
    check_param(dom_raw(a), &z, B)?;
    let out = fs_raw(a, &z)?;
    if !valid_bar(&out.value) {
        return Err(OrdError::Internal(format!("{a}[{z:?}] left the domain: {}", out.value)));
    }
    Ok(out)
}

/// `a[n]` for a natural `n`.
pub fn fundseq_bar_nat(a: &OrdTerm, n: u64) -> Result<OrdTerm> {
    require_bar(a)?;
    fs_raw(a, &Param::Nat(n)).map(|o| o.value)
}

//! Order, star operators, subterm sets and localization.
//!
//! The comparison, the star operator and localization are shared by both
//! notation systems; the stepwise-specific part is [`valid_t`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::error::{OrdError, Result};
use crate::term::{split_high, OrdTerm, SystemTag, Theta};

/// Raw comparison of two terms of one system.
pub fn cmp_terms(a: &OrdTerm, b: &OrdTerm) -> Ordering {
    terms(a, b)
}

/// Per-thread memo tables keyed by collapse-node address. Each entry keeps
/// its nodes alive, so an address cannot be reused while it is a key.
#[derive(Default)]
struct Memo {
    pairs: HashMap<(usize, usize), (OrdTerm, OrdTerm, Ordering)>,
    stars: HashMap<(usize, u32), (OrdTerm, OrdTerm)>,
    /// Argument components kept alive by the entries, roughly.
    weight: usize,
}

const MEMO_LIMIT: usize = 1 << 18;
const WEIGHT_LIMIT: usize = 1 << 22;

impl Memo {
    fn make_room(&mut self, add: usize) {
        self.weight += add;
        if self.pairs.len() + self.stars.len() >= MEMO_LIMIT || self.weight >= WEIGHT_LIMIT {
            self.pairs.clear();
            self.stars.clear();
            self.weight = add;
        }
    }
}

fn width(t: &Theta) -> usize {
    1 + t.arg.components().len()
}

thread_local! {
    static MEMO: RefCell<Memo> = RefCell::new(Memo::default());
}

fn addr(t: &Theta) -> usize {
    t as *const Theta as usize
}

fn terms(a: &OrdTerm, b: &OrdTerm) -> Ordering {
    let (xa, xb) = (a.components(), b.components());
    for (p, q) in xa.iter().zip(xb) {
        match principal(p, q) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    xa.len().cmp(&xb.len())
}

fn principal(p: &OrdTerm, q: &OrdTerm) -> Ordering {
    let (s, t) = (p.as_theta().expect("principal"), q.as_theta().expect("principal"));
    if std::ptr::eq(s, t) {
        return Ordering::Equal;
    }
    let o = s.sys.cmp(&t.sys).then(s.level.cmp(&t.level));
    if o != Ordering::Equal {
        return o;
    }
    let key = (addr(s), addr(t));
    if let Some(o) = MEMO.with(|m| m.borrow().pairs.get(&key).map(|e| e.2)) {
        return o;
    }
    let i = s.level;
    // star(x, i) < theta_i(x) for valid terms, which decides each branch
    let o = match terms(&s.arg, &t.arg) {
        Ordering::Equal => Ordering::Equal,
        Ordering::Less => {
            let sp = star_memo(&s.arg, i);
            if sp.is_zero() || principal(&sp, q).is_lt() {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        Ordering::Greater => {
            let sq = star_memo(&t.arg, i);
            if !sq.is_zero() && principal(p, &sq).is_le() {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    };
    MEMO.with(|m| {
        let mut m = m.borrow_mut();
        m.make_room(width(s) + width(t));
        m.pairs.insert(key, (p.clone(), q.clone(), o));
    });
    o
}

fn star_memo(a: &OrdTerm, j: u32) -> OrdTerm {
    let mut best = OrdTerm::Zero;
    for c in a.components() {
        let s = star_of(c, j);
        if !s.is_zero() && (best.is_zero() || principal(&best, &s).is_lt()) {
            best = s;
        }
    }
    best
}

fn star_of(c: &OrdTerm, j: u32) -> OrdTerm {
    let t = c.as_theta().expect("principal");
    match t.level.cmp(&j) {
        Ordering::Less => OrdTerm::Zero,
        Ordering::Equal => c.clone(),
        Ordering::Greater => {
            let key = (addr(t), j);
            if let Some(s) = MEMO.with(|m| m.borrow().stars.get(&key).map(|e| e.1.clone())) {
                return s;
            }
            let s = star_memo(&t.arg, j);
            MEMO.with(|m| {
                let mut m = m.borrow_mut();
                m.make_room(width(t) + s.as_theta().map_or(0, width));
                m.stars.insert(key, (c.clone(), s.clone()));
            });
            s
        }
    }
}

fn check_system(a: &OrdTerm, sys: SystemTag) -> Result<()> {
    match a.system() {
        Some(s) if s != sys => Err(OrdError::WrongSystem { expected: sys }),
        _ => Ok(()),
    }
}

/// Checked comparison of two valid stepwise terms.
pub fn compare_t(a: &OrdTerm, b: &OrdTerm) -> Result<Ordering> {
    for x in [a, b] {
        check_system(x, SystemTag::Stepwise)?;
        if !valid_t(x) {
            return Err(OrdError::Invalid(x.to_string()));
        }
    }
    Ok(cmp_terms(a, b))
}

/// Collapse subterms at level `j`, not descending into them and skipping
/// anything below level `j`.
pub fn k_tau(a: &OrdTerm, j: u32) -> Vec<OrdTerm> {
    let mut out = Vec::new();
    collect_k(a, j, &mut out);
    out
}

fn collect_k(a: &OrdTerm, j: u32, out: &mut Vec<OrdTerm>) {
    for c in a.components() {
        let t = c.as_theta().expect("principal");
        match t.level.cmp(&j) {
            Ordering::Less => {}
            Ordering::Equal => out.push(c.clone()),
            Ordering::Greater => collect_k(&t.arg, j, out),
        }
    }
}

/// Largest level-`j` collapse subterm, or zero.
pub fn star(a: &OrdTerm, j: u32) -> OrdTerm {
    star_memo(a, j)
}

/// Every collapse argument has all components of level at most `j + 1` and
/// every sum is in additive normal form.
pub fn valid_t(a: &OrdTerm) -> bool {
    anf_ok(a, SystemTag::Stepwise)
        && a.components().iter().all(|c| {
            let t = c.as_theta().expect("principal");
            t.arg.components().iter().all(|p| p.level().expect("principal") <= t.level + 1)
                && valid_t(&t.arg)
        })
}

/// Sum shape and system tag check for the top level of `a`.
pub(crate) fn anf_ok(a: &OrdTerm, sys: SystemTag) -> bool {
    let parts = a.components();
    if let OrdTerm::Sum(p) = a {
        if p.len() < 2 {
            return false;
        }
    }
    parts.iter().all(|c| c.as_theta().is_some_and(|t| t.sys == sys))
        && parts.windows(2).all(|w| cmp_terms(&w[0], &w[1]) != Ordering::Less)
}

/// Level-`i` collapse subterms not inside a collapse of lower level,
/// ascending and without duplicates.
pub fn p_set(a: &OrdTerm, i: u32) -> Vec<OrdTerm> {
    let mut set = BTreeSet::new();
    collect_p(a, i, &mut set, &mut HashSet::new());
    set.into_iter().collect()
}

// `seen` holds visited nodes; shared subterms are walked once
fn collect_p(a: &OrdTerm, i: u32, out: &mut BTreeSet<OrdTerm>, seen: &mut HashSet<usize>) {
    for c in a.components() {
        let t = c.as_theta().expect("principal");
        if t.level < i || !seen.insert(addr(t)) {
            continue;
        }
        if t.level == i {
            out.insert(c.clone());
        }
        collect_p(&t.arg, i, out, seen);
    }
}

/// Fixed-point condition: `eta` is a level-`j` collapse whose own part above
/// `Omega_{j+1}` exceeds `delta`, and `eta` exceeds the star of `delta`.
pub(crate) fn fixp(delta: &OrdTerm, eta: &OrdTerm, j: u32) -> bool {
    let Some(t) = eta.as_theta() else { return false };
    if t.level != j {
        return false;
    }
    let (gamma, _) = split_high(&t.arg, j);
    cmp_terms(&gamma, delta) == Ordering::Greater && cmp_terms(eta, &star(delta, j)) == Ordering::Greater
}

/// Checked fixed-point predicate `F_j(delta, eta)`.
pub fn fixpoint_f(delta: &OrdTerm, eta: &OrdTerm, j: u32) -> Result<bool> {
    if eta.components().iter().any(|c| c.level().expect("principal") > j) {
        return Err(OrdError::Domain(format!("{eta} is not below Omega_{}", j + 1)));
    }
    if delta.components().iter().any(|c| c.level().expect("principal") <= j) {
        return Err(OrdError::Domain(format!("{delta} is not a multiple of Omega_{}", j + 1)));
    }
    Ok(fixp(delta, eta, j))
}

/// `theta_i(xi + 1)` for `a = theta_i(xi)`.
pub fn alpha_plus(a: &OrdTerm) -> Result<OrdTerm> {
    let t = a.as_theta().ok_or_else(|| OrdError::Domain(format!("{a} is not a collapse term")))?;
    Ok(OrdTerm::theta(t.sys, t.level, t.arg.add(&OrdTerm::one(t.sys))))
}

/// The `Omega_i`-localization of a level-`i` collapse term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalizationSeq {
    pub level: u32,
    pub entries: Vec<OrdTerm>,
}

/// Checked localization.
pub fn localization(a: &OrdTerm, i: u32) -> Result<LocalizationSeq> {
    match a.as_theta() {
        Some(t) if t.level == i => Ok(LocalizationSeq { level: i, entries: localize(a) }),
        _ => Err(OrdError::Domain(format!("{a} is not a collapse term of level {i}"))),
    }
}

/// Localization entries of a collapse term at its own level.
pub(crate) fn localize(a: &OrdTerm) -> Vec<OrdTerm> {
    let t = a.as_theta().expect("principal");
    let i = t.level;
    let pool = p_set(a, i);
    let mut entries = vec![OrdTerm::omega(t.sys, i)];
    loop {
        let cur = entries.last().unwrap();
        if cmp_terms(cur, a) != Ordering::Less {
            break;
        }
        let start = pool.partition_point(|x| cmp_terms(x, cur) != Ordering::Greater);
        let next = pool[start..]
            .iter()
            .max_by(|x, y| {
                let (ax, ay) = (&x.as_theta().unwrap().arg, &y.as_theta().unwrap().arg);
                let o = cmp_terms(ax, ay);
                debug_assert!(o != Ordering::Equal || x == y, "tie in localization of {a}");
                o
            })
            .expect("the term itself is a candidate")
            .clone();
        entries.push(next);
    }
    entries
}

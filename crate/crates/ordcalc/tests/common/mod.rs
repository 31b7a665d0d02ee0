//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::rc::Rc;

use ordcalc::{OrdTerm, SystemTag};

/// An ordinal below epsilon_0 in Cantor normal form: the exponents of
/// omega^e_1 + ... + omega^e_k, weakly descending. Exponents are shared,
/// so clones are cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf(pub Rc<Vec<Cnf>>);

impl Cnf {
    pub fn zero() -> Cnf {
        Cnf(Rc::new(Vec::new()))
    }

    pub fn nat(n: usize) -> Cnf {
        Cnf(Rc::new(vec![Cnf::zero(); n]))
    }

    /// Reads a term built from t0 and 0 only, with t0(x) = omega^x.
    pub fn from_term(a: &OrdTerm) -> Option<Cnf> {
        a.components()
            .iter()
            .map(|c| {
                let t = c.as_theta()?;
                (t.level == 0 && t.sys == SystemTag::Stepwise).then_some(())?;
                Cnf::from_term(&t.arg)
            })
            .collect::<Option<Vec<_>>>()
            .map(|v| Cnf(Rc::new(v)))
    }

    pub fn cmp(&self, other: &Cnf) -> Ordering {
        for (x, y) in self.0.iter().zip(other.0.iter()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Standard fundamental sequences: (x+1)[n] = x,
    /// (x + w^(e+1))[n] = x + w^e * (n+1), (x + w^l)[n] = x + w^(l[n]).
    pub fn fs(&self, n: usize) -> Cnf {
        let Some((last, head)) = self.0.split_last() else { return Cnf::zero() };
        let mut out = head.to_vec();
        if last.is_zero() {
            return Cnf(Rc::new(out));
        }
        match last.0.split_last() {
            Some((e, rest)) if e.is_zero() => {
                let lower = Cnf(Rc::new(rest.to_vec()));
                out.extend(std::iter::repeat_n(lower, n + 1));
            }
            _ => out.push(last.fs(n)),
        }
        Cnf(Rc::new(out))
    }

    /// H_a(n) by direct iteration, `None` past `budget` steps.
    pub fn hardy(&self, n: usize, budget: usize) -> Option<usize> {
        let (mut cur, mut n) = (self.clone(), n);
        for _ in 0..budget {
            if cur.is_zero() {
                return Some(n);
            }
            cur = cur.fs(n);
            n += 1;
        }
        cur.is_zero().then_some(n)
    }

    /// Steps of `[0]` down to zero.
    pub fn gnorm(&self) -> u64 {
        let (mut cur, mut k) = (self.clone(), 0);
        while !cur.is_zero() {
            cur = cur.fs(0);
            k += 1;
        }
        k
    }

    /// Symbol count of the matching term.
    pub fn cnorm(&self) -> u64 {
        if self.is_zero() {
            return 1;
        }
        self.0.iter().map(|e| e.cnorm() + 1).sum::<u64>() + self.0.len() as u64 - 1
    }
}

/// The order by its defining clauses, with no memo and no shortcuts:
/// theta_i(x) < theta_i(y) iff (x < y and star_i(x) < theta_i(y)) or
/// theta_i(x) <= star_i(y).
pub fn naive_cmp(a: &OrdTerm, b: &OrdTerm) -> Ordering {
    let (xa, xb) = (a.components(), b.components());
    for (p, q) in xa.iter().zip(xb) {
        match naive_principal(p, q) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    xa.len().cmp(&xb.len())
}

fn naive_principal(p: &OrdTerm, q: &OrdTerm) -> Ordering {
    let (s, t) = (p.as_theta().unwrap(), q.as_theta().unwrap());
    let o = s.sys.cmp(&t.sys).then(s.level.cmp(&t.level));
    if o != Ordering::Equal {
        return o;
    }
    if s.arg == t.arg {
        return Ordering::Equal;
    }
    let i = s.level;
    let less = (naive_cmp(&s.arg, &t.arg).is_lt() && naive_cmp(&naive_star(&s.arg, i), q).is_lt())
        || naive_cmp(p, &naive_star(&t.arg, i)).is_le();
    if less {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Largest level-`j` collapse subterm, reached through collapses of level
/// at least `j`, found by listing all of them.
pub fn naive_star(a: &OrdTerm, j: u32) -> OrdTerm {
    let mut found = Vec::new();
    let mut todo = vec![a.clone()];
    while let Some(x) = todo.pop() {
        for c in x.components() {
            let t = c.as_theta().unwrap();
            if t.level == j {
                found.push(c.clone());
            } else if t.level > j {
                todo.push(t.arg.clone());
            }
        }
    }
    found.into_iter().max_by(naive_cmp).unwrap_or(OrdTerm::Zero)
}

/// Every syntactic term of canonical norm exactly `n` with collapse levels
/// up to `max_level`, valid or not.
pub fn all_trees(n: u64, max_level: u32, sys: SystemTag) -> Vec<OrdTerm> {
    fn principals(n: u64, l: u32, sys: SystemTag) -> Vec<OrdTerm> {
        if n < 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for arg in all_trees(n - 1, l, sys) {
            for i in 0..=l {
                out.push(OrdTerm::theta(sys, i, arg.clone()));
            }
        }
        out
    }
    // lists of principals p_1 + ... + p_k with norms plus k - 1 signs
    fn lists(n: u64, l: u32, sys: SystemTag) -> Vec<Vec<OrdTerm>> {
        let mut out: Vec<Vec<OrdTerm>> = principals(n, l, sys).into_iter().map(|p| vec![p]).collect();
        for a in 2..n {
            let Some(rest) = n.checked_sub(a + 1) else { continue };
            for p in principals(a, l, sys) {
                for tail in lists(rest, l, sys) {
                    let mut v = vec![p.clone()];
                    v.extend(tail);
                    out.push(v);
                }
            }
        }
        out
    }
    if n == 1 {
        return vec![OrdTerm::Zero];
    }
    lists(n, max_level, sys).into_iter().map(OrdTerm::from_components).collect()
}

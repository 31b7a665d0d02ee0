//! Laws of the norms and of the Hardy hierarchy.

use std::cell::RefCell;
use std::collections::HashMap;

use super::props_fs::regularity;
use super::{at, cx, cx_with, par_each, Ctx, PropertyInfo, Tally};
use crate::error::OrdError;
use crate::fundseq::{dom_raw, Param};
use crate::norms::{cnorm, gnorm, hardy, nf_predicate, walk_length, HardyBudget};
use crate::order::cmp_terms;
use crate::term::{split_high, OrdTerm, SystemTag};

pub(super) const PROPS: &[PropertyInfo] = &[
    PropertyInfo {
        id: "cnorm_regularity",
        statement: "b < a implies b <= a[|b|] for every limit a of countable cofinality",
        run: cnorm_regularity,
    },
    PropertyInfo {
        id: "g_normed",
        statement: "a[n] < b < a implies G(a[n]) < G(b); G(a) = G(a[0]) + 1 for a > 0",
        run: g_normed,
    },
    PropertyInfo {
        id: "g_additive",
        statement: "G(x + y) = G(x) + G(y) for sums in normal form",
        run: g_additive,
    },
    PropertyInfo {
        id: "g_param_bound",
        statement: "d(a) > 0 implies G(a[z]) >= G(a[0]) + G(z)",
        run: g_param_bound,
    },
    PropertyInfo {
        id: "g_collapse_bound",
        statement: "G(theta_i(Delta + eta)) >= G(Delta) + G(eta) + 1",
        run: g_collapse_bound,
    },
    PropertyInfo {
        id: "norm_bound",
        statement: "|a| <= (G(a) + 1)^2",
        run: norm_bound,
    },
    PropertyInfo {
        id: "hardy_monotone",
        statement: "H_a(n) < H_a(n+1); b[m] < a < b gives H_b[m](n) <= H_a(n); m <= n gives H_a[m](n+1) <= H_a(n); b < a with G(b) <= n gives H_b(n+1) <= H_a(n)",
        run: hardy_monotone,
    },
    PropertyInfo {
        id: "hardy_composition",
        statement: "NF(a, b) implies H_a(H_b(n)) <= H_(a+b)(n)",
        run: hardy_composition,
    },
    PropertyInfo {
        id: "walk_equivalence",
        statement: "H_a(n) is the least k with a[n:k] = 0",
        run: walk_equivalence,
    },
];

/// Budget for Hardy evaluations inside the suite.
pub const SUITE_BUDGET: HardyBudget = HardyBudget { max_steps: 64, max_value: 64 };

/// Bounds of the Hardy sub-universe.
pub const HARDY_MAX_NORM: u64 = 5;
pub const HARDY_MAX_LEVEL: u32 = 1;
pub const HARDY_MAX_N: u64 = 3;
/// Largest inner value `H_b(n)` fed back into `H_a` by the composition law.
pub const HARDY_MAX_INNER: u64 = 24;

fn g_of(ctx: &Ctx, x: &OrdTerm) -> u64 {
    match ctx.t.binary_search_by(|y| cmp_terms(y, x)) {
        Ok(k) => ctx.gn[k],
        Err(_) => gnorm(x).unwrap_or(u64::MAX),
    }
}

fn cnorm_regularity(ctx: &Ctx) -> Tally {
    let norms: Vec<u64> = ctx.t.iter().map(cnorm).collect();
    regularity(ctx, &norms)
}

fn g_normed(ctx: &Ctx) -> Tally {
    let u = &ctx.t;
    let idx: Vec<usize> = (0..u.len()).collect();
    par_each(&idx, |&k, t| {
        let a = &u[k];
        if !a.is_zero() {
            let want = g_of(ctx, &ctx.t0[k]) + 1;
            t.check(ctx.gn[k] == want, || cx(&[a], want, ctx.gn[k]));
        }
        if !a.is_limit() || dom_raw(a) != 0 {
            return;
        }
        for n in 0..=ctx.n_cap {
            let Ok(v) = at(a, &Param::Nat(n)) else { continue };
            let gv = g_of(ctx, &v);
            let (s, e) = Ctx::open_range(u, &v, a);
            if let Some(m) = (s..e).min_by_key(|&m| ctx.gn[m]) {
                t.check(gv < ctx.gn[m], || cx_with(&[a, &u[m]], n, format!("G above {gv}"), ctx.gn[m]));
            } else {
                t.checked += 1;
            }
        }
    })
}

fn g_additive(ctx: &Ctx) -> Tally {
    let idx: Vec<usize> = (0..ctx.t.len()).collect();
    par_each(&idx, |&k, t| {
        let a = &ctx.t[k];
        let parts = a.components();
        for cut in 1..parts.len() {
            let head = OrdTerm::from_components(parts[..cut].to_vec());
            let tail = OrdTerm::from_components(parts[cut..].to_vec());
            let want = g_of(ctx, &head) + g_of(ctx, &tail);
            t.check(ctx.gn[k] == want, || cx_with(&[a], cut, want, ctx.gn[k]));
        }
    })
}

fn g_param_bound(ctx: &Ctx) -> Tally {
    let cands: Vec<OrdTerm> = ctx.t.iter().filter(|a| dom_raw(a) > 0).cloned().collect();
    par_each(&cands, |a, t| {
        let Ok(a0) = at(a, &Param::Nat(0)) else { return };
        let g0 = g_of(ctx, &a0);
        for z in ctx.params(a, SystemTag::Stepwise) {
            let Param::Term(zt) = &z else { continue };
            match at(a, &z) {
                Ok(v) => {
                    let (gv, want) = (g_of(ctx, &v), g0 + g_of(ctx, zt));
                    t.check(gv >= want, || cx_with(&[a], zt, format!(">= {want}"), gv));
                }
                Err(e) => t.fail(cx_with(&[a], zt, "a value", e)),
            }
        }
    })
}

fn g_collapse_bound(ctx: &Ctx) -> Tally {
    let idx: Vec<usize> = (0..ctx.t.len()).filter(|&k| ctx.t[k].is_principal()).collect();
    par_each(&idx, |&k, t| {
        let a = &ctx.t[k];
        let th = a.as_theta().unwrap();
        let (delta, eta) = split_high(&th.arg, th.level);
        let want = g_of(ctx, &delta) + g_of(ctx, &eta) + 1;
        t.check(ctx.gn[k] >= want, || cx(&[a], format!(">= {want}"), ctx.gn[k]));
    })
}

fn norm_bound(ctx: &Ctx) -> Tally {
    let idx: Vec<usize> = (0..ctx.t.len()).collect();
    par_each(&idx, |&k, t| {
        let a = &ctx.t[k];
        let bound = (ctx.gn[k] + 1).saturating_mul(ctx.gn[k] + 1);
        t.check(cnorm(a) <= bound, || cx(&[a], format!("<= {bound}"), cnorm(a)));
    })
}

/// Countable terms of the Hardy sub-universe.
fn hardy_universe(ctx: &Ctx) -> Vec<OrdTerm> {
    let omega1 = OrdTerm::omega(SystemTag::Stepwise, 1);
    ctx.t
        .iter()
        .filter(|a| {
            cnorm(a) <= HARDY_MAX_NORM.min(ctx.spec.max_norm)
                && a.max_level().is_none_or(|l| l <= HARDY_MAX_LEVEL)
                && cmp_terms(a, &omega1).is_lt()
        })
        .cloned()
        .collect()
}

/// Memoized Hardy values; `None` marks an exhausted budget.
#[derive(Default)]
struct HardyMemo {
    cache: RefCell<HashMap<(OrdTerm, u64), Option<u64>>>,
}

impl HardyMemo {
    fn h(&self, a: &OrdTerm, n: u64) -> Result<Option<u64>, OrdError> {
        if let Some(v) = self.cache.borrow().get(&(a.clone(), n)) {
            return Ok(*v);
        }
        let v = match hardy(a, n, SUITE_BUDGET) {
            Ok(v) => Some(v),
            Err(OrdError::Budget { .. }) => None,
            Err(e) => return Err(e),
        };
        self.cache.borrow_mut().insert((a.clone(), n), v);
        Ok(v)
    }
}

/// Records `lhs <= rhs` (or `<` when `strict`) when both values are known.
fn cmp_hardy(
    t: &mut Tally,
    lhs: Result<Option<u64>, OrdError>,
    rhs: Result<Option<u64>, OrdError>,
    strict: bool,
    witness: impl FnOnce(String) -> super::Counterexample,
) {
    match (lhs, rhs) {
        (Ok(Some(x)), Ok(Some(y))) => {
            let ok = if strict { x < y } else { x <= y };
            t.check(ok, || witness(format!("{x} vs {y}")));
        }
        (Err(e), _) | (_, Err(e)) => t.fail(witness(e.to_string())),
        _ => t.skipped += 1,
    }
}

fn hardy_monotone(ctx: &Ctx) -> Tally {
    let hu = hardy_universe(ctx);
    let memo = HardyMemo::default();
    let mut t = Tally::default();
    let top = HARDY_MAX_N.min(ctx.n_cap);
    for a in &hu {
        for n in 0..=top {
            cmp_hardy(&mut t, memo.h(a, n), memo.h(a, n + 1), true, |got| cx_with(&[a], n, "H(n) < H(n+1)", got));
            if a.is_zero() {
                continue;
            }
            for m in 0..=n {
                let Ok(am) = at(a, &Param::Nat(m)) else { continue };
                cmp_hardy(&mut t, memo.h(&am, n + 1), memo.h(a, n), false, |got| {
                    cx_with(&[a], format!("m={m} n={n}"), "H_a[m](n+1) <= H_a(n)", got)
                });
            }
        }
    }
    for (x, a) in hu.iter().enumerate() {
        for b in &hu[x + 1..] {
            for n in 0..=top {
                for m in 0..=ctx.n_cap {
                    let Ok(bm) = at(b, &Param::Nat(m)) else { continue };
                    if cmp_terms(&bm, a).is_lt() {
                        cmp_hardy(&mut t, memo.h(&bm, n), memo.h(a, n), false, |got| {
                            cx_with(&[a, b], format!("m={m} n={n}"), "H_b[m](n) <= H_a(n)", got)
                        });
                    }
                }
            }
        }
        for b in &hu[..x] {
            for n in 0..=top {
                if g_of(ctx, b) <= n {
                    cmp_hardy(&mut t, memo.h(b, n + 1), memo.h(a, n), false, |got| {
                        cx_with(&[a, b], n, "H_b(n+1) <= H_a(n)", got)
                    });
                }
            }
        }
    }
    t
}

fn hardy_composition(ctx: &Ctx) -> Tally {
    let hu = hardy_universe(ctx);
    let memo = HardyMemo::default();
    let mut t = Tally::default();
    let top = HARDY_MAX_N.min(ctx.n_cap);
    for a in hu.iter().filter(|a| !a.is_zero()) {
        for b in hu.iter().filter(|b| !b.is_zero()) {
            if !nf_predicate(a, b).unwrap_or(false) {
                continue;
            }
            let ab = a.add(b);
            for n in 0..=top {
                let inner = match memo.h(b, n) {
                    Ok(Some(k)) if k <= HARDY_MAX_INNER => k,
                    Ok(_) => {
                        t.skipped += 1;
                        continue;
                    }
                    Err(e) => {
                        t.fail(cx_with(&[b], n, "a value", e));
                        continue;
                    }
                };
                let lhs = memo.h(a, inner);
                if matches!(lhs, Ok(None)) {
                    t.skipped += 1;
                    continue;
                }
                cmp_hardy(&mut t, lhs, memo.h(&ab, n), false, |got| {
                    cx_with(&[a, b], n, "H_a(H_b(n)) <= H_(a+b)(n)", got)
                });
            }
        }
    }
    t
}

fn walk_equivalence(ctx: &Ctx) -> Tally {
    let hu = hardy_universe(ctx);
    let top = HARDY_MAX_N.min(ctx.n_cap);
    par_each(&hu, |a, t| {
        for n in 0..=top {
            match (hardy(a, n, SUITE_BUDGET), walk_length(a, n, SUITE_BUDGET)) {
                (Ok(x), Ok(y)) => t.check(x == y, || cx_with(&[a], n, x, y)),
                (Err(OrdError::Budget { .. }), _) | (_, Err(OrdError::Budget { .. })) => t.skipped += 1,
                (x, y) => t.fail(cx_with(&[a], n, format!("{x:?}"), format!("{y:?}"))),
            }
        }
    })
}

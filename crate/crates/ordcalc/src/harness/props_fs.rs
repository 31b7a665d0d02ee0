//! Laws of the fundamental-sequence assignment.

use std::cmp::Ordering;

use super::props_order::show;
use super::{at, cx, cx_with, par_each, param_text, Ctx, MinTable, PropertyInfo, Tally};
use crate::fundseq::{chi_raw, dom_raw, fs_raw, support_raw, FsClause, Param};
use crate::order::{cmp_terms, fixp, localize, star};
use crate::term::{split_high, OrdTerm, SystemTag};

const T: SystemTag = SystemTag::Stepwise;

pub(super) const PROPS: &[PropertyInfo] = &[
    PropertyInfo {
        id: "cantorian_laws",
        statement: "0[n] = 0; (a+1)[n] = a; countable limits ascend strictly; (x+y)[n] = x + y[n]; theta_i(e+1)[n] = theta_i(e)*(n+1)",
        run: cantorian_laws,
    },
    PropertyInfo {
        id: "fs_strictly_increasing",
        statement: "z -> a[z] is strictly increasing and bounded by a for every limit a",
        run: strictly_increasing,
    },
    PropertyInfo {
        id: "monotone_star",
        statement: "star(a[z], k) is weakly increasing in z and bounded by star(a, k) for k >= d(a)",
        run: monotone_star,
    },
    PropertyInfo {
        id: "loc_floor",
        statement: "the second-to-last localization entry of a is at most a[0]",
        run: loc_floor,
    },
    PropertyInfo {
        id: "sandwich",
        statement: "a[z] <= b < a implies star(b, k) >= star(a[z], k), for all k when z = 0 and for k + 1 >= d(a) otherwise",
        run: sandwich,
    },
    PropertyInfo {
        id: "support_control",
        statement: "support > 0 and chi_j(Delta) = 0 imply star(Delta[z], j) < support",
        run: support_control,
    },
    PropertyInfo {
        id: "loc_elements",
        statement: "the localization of a[z] follows the case table of the clause that produced it",
        run: loc_elements,
    },
    PropertyInfo {
        id: "supremum_proxy",
        statement: "b < a implies b <= a[G(b)] for every limit a of countable cofinality",
        run: supremum_proxy,
    },
    PropertyInfo {
        id: "bachmann",
        statement: "a[n] < b < a implies a[n] <= b[0] for every a of countable cofinality",
        run: bachmann,
    },
    PropertyInfo {
        id: "variant_bachmann_detected",
        statement: "the star-support variant of the assignment is caught violating the Bachmann property at t0(t1(t0(t0(0))))",
        run: variant_detected,
    },
];

fn limits(u: &[OrdTerm]) -> Vec<OrdTerm> {
    u.iter().filter(|a| a.is_limit()).cloned().collect()
}

fn record(t: &mut Tally, a: &OrdTerm, z: &Param, r: &crate::error::Result<OrdTerm>) -> Option<OrdTerm> {
    match r {
        Ok(v) => Some(v.clone()),
        Err(e) => {
            t.fail(cx_with(&[a], param_text(z), "a value", e));
            None
        }
    }
}

fn cantorian_laws(ctx: &Ctx) -> Tally {
    let n_cap = ctx.n_cap;
    par_each(&ctx.t, move |a, t| {
        let vals: Vec<Option<OrdTerm>> = (0..=n_cap)
            .map(|n| {
                let z = Param::Nat(n);
                record(t, a, &z, &at(a, &z))
            })
            .collect();
        let d = dom_raw(a);
        for (n, v) in vals.iter().enumerate() {
            let Some(v) = v else { continue };
            if a.is_zero() {
                t.check(v.is_zero(), || cx_with(&[a], n, "0", v));
            } else if let Some(p) = a.predecessor() {
                t.check(*v == p, || cx_with(&[a], n, &p, v));
            } else if d == 0 {
                t.check(cmp_terms(v, a).is_lt(), || cx_with(&[a], n, format!("below {a}"), v));
                if let Some(Some(w)) = vals.get(n + 1) {
                    t.check(cmp_terms(v, w).is_lt(), || cx_with(&[a], n, format!("below a[{}] = {w}", n + 1), v));
                }
            }
            if let OrdTerm::Sum(parts) = a {
                let head = OrdTerm::from_components(parts[..parts.len() - 1].to_vec());
                if let Ok(tail) = at(parts.last().unwrap(), &Param::Nat(n as u64)) {
                    let want = head.add(&tail);
                    t.check(*v == want, || cx_with(&[a], n, &want, v));
                }
            }
            if let Some(th) = a.as_theta() {
                let (delta, eta) = split_high(&th.arg, th.level);
                if let (true, Some(e)) = (delta.is_zero(), eta.predecessor()) {
                    let want = OrdTerm::theta(T, th.level, e).times(n as u64 + 1);
                    t.check(*v == want, || cx_with(&[a], n, &want, v));
                }
            }
        }
    })
}

/// Values of `a` at all its parameters, in parameter order.
fn values(ctx: &Ctx, a: &OrdTerm, t: &mut Tally) -> Vec<(Param, OrdTerm)> {
    ctx.params(a, T)
        .into_iter()
        .filter_map(|z| {
            let r = at(a, &z);
            record(t, a, &z, &r).map(|v| (z, v))
        })
        .collect()
}

fn strictly_increasing(ctx: &Ctx) -> Tally {
    par_each(&limits(&ctx.t), |a, t| {
        let vals = values(ctx, a, t);
        for w in vals.windows(2) {
            let ((z0, v0), (z1, v1)) = (&w[0], &w[1]);
            t.check(cmp_terms(v0, v1).is_lt(), || {
                cx_with(&[a], format!("{} < {}", param_text(z0), param_text(z1)), format!("{v0} < {v1}"), "not ascending")
            });
        }
        for (z, v) in &vals {
            t.check(cmp_terms(v, a).is_lt(), || cx_with(&[a], param_text(z), format!("below {a}"), v));
        }
    })
}

fn monotone_star(ctx: &Ctx) -> Tally {
    let top = ctx.spec.max_level + 1;
    par_each(&limits(&ctx.t), |a, t| {
        let vals = values(ctx, a, t);
        for k in dom_raw(a)..=top {
            let bound = star(a, k);
            let stars: Vec<OrdTerm> = vals.iter().map(|(_, v)| star(v, k)).collect();
            for (x, s) in stars.iter().enumerate() {
                t.check(cmp_terms(s, &bound).is_le(), || cx_with(&[a], param_text(&vals[x].0), format!("star_{k} <= {bound}"), s));
                if x > 0 {
                    let prev = &stars[x - 1];
                    t.check(cmp_terms(prev, s).is_le(), || {
                        cx_with(&[a], param_text(&vals[x].0), format!("star_{k} >= {prev}"), s)
                    });
                }
            }
        }
    })
}

fn collapses_above_omega(u: &[OrdTerm]) -> Vec<OrdTerm> {
    u.iter().filter(|a| a.as_theta().is_some_and(|th| !th.arg.is_zero())).cloned().collect()
}

fn loc_floor(ctx: &Ctx) -> Tally {
    par_each(&collapses_above_omega(&ctx.t), |a, t| {
        let loc = localize(a);
        let prev = &loc[loc.len() - 2];
        let z = Param::Nat(0);
        if let Some(v) = record(t, a, &z, &at(a, &z)) {
            t.check(cmp_terms(prev, &v).is_le(), || cx(&[a], format!("a[0] >= {prev}"), &v));
        }
    })
}

fn sandwich(ctx: &Ctx) -> Tally {
    let u = &ctx.t;
    let top = ctx.spec.max_level + 1;
    let stars: Vec<Vec<OrdTerm>> = (0..=top).map(|k| u.iter().map(|b| star(b, k)).collect()).collect();
    let tables: Vec<MinTable> = stars.iter().map(|s| MinTable::new(s)).collect();
    par_each(&limits(u), |a, t| {
        let d = dom_raw(a);
        for (z, v) in values(ctx, a, t) {
            let s = u.partition_point(|x| cmp_terms(x, &v).is_lt());
            let e = u.partition_point(|x| cmp_terms(x, a).is_lt());
            if s >= e {
                continue;
            }
            let zero = matches!(&z, Param::Nat(0)) || matches!(&z, Param::Term(x) if x.is_zero());
            for k in 0..=top {
                if !zero && k + 1 < d {
                    continue;
                }
                let want = star(&v, k);
                let m = tables[k as usize].argmin(&stars[k as usize], s, e);
                let got = &stars[k as usize][m];
                t.check(cmp_terms(got, &want).is_ge(), || {
                    cx_with(&[a, &u[m]], format!("z={} k={k}", param_text(&z)), format!("star >= {want}"), got)
                });
            }
        }
    })
}

fn support_control(ctx: &Ctx) -> Tally {
    par_each(&collapses_above_omega(&ctx.t), |a, t| {
        let th = a.as_theta().unwrap();
        let j = th.level;
        let (delta, eta) = split_high(&th.arg, j);
        if eta.is_limit() && !fixp(&delta, &eta, j) {
            return;
        }
        let sup = support_raw(a);
        if sup.is_zero() || chi_raw(j, &delta) != 0 {
            return;
        }
        for z in ctx.params(a, T) {
            match at(&delta, &z) {
                Ok(v) => {
                    let s = star(&v, j);
                    t.check(cmp_terms(&s, &sup).is_lt(), || cx_with(&[a], param_text(&z), format!("below {sup}"), &s));
                }
                Err(e) => t.fail(cx_with(&[a, &delta], param_text(&z), "a value", e)),
            }
        }
    })
}

/// The clause a level-`i` collapse term falls under, decided from its shape.
fn expected_clause(a: &OrdTerm) -> FsClause {
    let th = a.as_theta().unwrap();
    let (delta, eta) = split_high(&th.arg, th.level);
    if eta.is_limit() && !fixp(&delta, &eta, th.level) {
        FsClause::Continuity
    } else if delta.is_zero() {
        FsClause::PrincipalMultiple
    } else if chi_raw(th.level, &delta) == 1 {
        FsClause::ChiOne
    } else {
        FsClause::ChiZero
    }
}

/// Localization of `a[z]` predicted from the localization of `a`; `None`
/// when the value is not a collapse term.
fn predicted_loc(a: &OrdTerm, z: &Param, v: &OrdTerm) -> Option<Vec<OrdTerm>> {
    let th = a.as_theta().unwrap();
    let i = th.level;
    let (delta, eta) = split_high(&th.arg, i);
    let loc = localize(a);
    let base = &loc[..loc.len() - 1];
    let zero = matches!(z, Param::Nat(0)) || matches!(z, Param::Term(x) if x.is_zero());
    let omega_i = || vec![OrdTerm::omega(T, i)];
    let with = |extra: &[OrdTerm]| {
        let mut out = base.to_vec();
        out.extend_from_slice(extra);
        out
    };
    let theta = |x: OrdTerm| OrdTerm::theta(T, i, x);
    match expected_clause(a) {
        FsClause::Continuity => {
            let small_omega = delta.is_zero() && eta.as_theta().is_some_and(|e| e.arg.is_zero() && e.level > 0);
            Some(if zero && small_omega { omega_i() } else { with(std::slice::from_ref(v)) })
        }
        FsClause::PrincipalMultiple => {
            if !zero {
                return None;
            }
            match eta.predecessor() {
                Some(p) if !p.is_zero() => Some(with(&[theta(p)])),
                _ => Some(base.to_vec()),
            }
        }
        FsClause::ChiOne => Some(match eta.predecessor() {
            Some(p) => with(&[theta(delta.add(&p)), v.clone()]),
            None if zero && eta.is_zero() && delta == OrdTerm::omega(T, i + 1) => omega_i(),
            None => with(std::slice::from_ref(v)),
        }),
        _ => Some(match eta.predecessor() {
            Some(p) => with(&[theta(delta.add(&p)), v.clone()]),
            None => with(std::slice::from_ref(v)),
        }),
    }
}

fn loc_elements(ctx: &Ctx) -> Tally {
    par_each(&collapses_above_omega(&ctx.t), |a, t| {
        let want_clause = expected_clause(a);
        let i = a.level().unwrap();
        for z in ctx.params(a, T) {
            let out = match fs_raw(a, &z) {
                Ok(o) => o,
                Err(e) => {
                    t.fail(cx_with(&[a], param_text(&z), "a value", e));
                    continue;
                }
            };
            t.check(out.case.clause == want_clause, || {
                cx_with(&[a], param_text(&z), format!("{want_clause:?}"), format!("{:?}", out.case.clause))
            });
            let v = &out.value;
            let is_collapse = v.level() == Some(i);
            match predicted_loc(a, &z, v) {
                None => t.check(!is_collapse, || cx_with(&[a], param_text(&z), "not a collapse term", v)),
                Some(want) => {
                    if !is_collapse {
                        t.fail(cx_with(&[a], param_text(&z), format!("a level-{i} collapse term"), v));
                        continue;
                    }
                    let got = localize(v);
                    t.check(got == want, || cx_with(&[a], param_text(&z), show(&want), show(&got)));
                }
            }
        }
    })
}

/// Countable-cofinality limits of the stepwise universe.
fn countable_limits(ctx: &Ctx) -> Vec<OrdTerm> {
    ctx.t.iter().filter(|a| a.is_limit() && dom_raw(a) == 0).cloned().collect()
}

/// For every norm value `v` occurring in `norms`, the universe positions
/// holding that value, ascending.
pub(super) fn buckets(norms: &[u64]) -> Vec<(u64, Vec<usize>)> {
    let mut vals: Vec<u64> = norms.to_vec();
    vals.sort_unstable();
    vals.dedup();
    vals.into_iter()
        .map(|v| (v, (0..norms.len()).filter(|&k| norms[k] == v).collect()))
        .collect()
}

/// Checks `b <= a[N(b)]` for all universe `b < a`, using only the largest
/// `b` of each norm value.
pub(super) fn regularity(ctx: &Ctx, norms: &[u64]) -> Tally {
    let u = &ctx.t;
    let groups = buckets(norms);
    par_each(&countable_limits(ctx), |a, t| {
        let below = u.partition_point(|x| cmp_terms(x, a).is_lt());
        for (v, idx) in &groups {
            let k = idx.partition_point(|&p| p < below);
            if k == 0 {
                continue;
            }
            let b = &u[idx[k - 1]];
            match at(a, &Param::Nat(*v)) {
                Ok(x) => t.check(cmp_terms(b, &x).is_le(), || cx_with(&[a, b], v, format!("{b} <= a[{v}]"), &x)),
                Err(e) => t.fail(cx_with(&[a, b], v, "a value", e)),
            }
        }
    })
}

fn supremum_proxy(ctx: &Ctx) -> Tally {
    regularity(ctx, &ctx.gn)
}

/// Bachmann check over `u` with `[0]` values `u0`, using `fs` for `a[n]`.
fn bachmann_over(
    ctx: &Ctx,
    u: &[OrdTerm],
    u0: &[OrdTerm],
    fs: &(dyn Fn(&OrdTerm, u64) -> crate::error::Result<OrdTerm> + Sync),
) -> Tally {
    let table = MinTable::new(u0);
    let cands: Vec<OrdTerm> = u.iter().filter(|a| a.is_limit() && dom_raw(a) == 0).cloned().collect();
    par_each(&cands, |a, t| {
        for n in 0..=ctx.n_cap {
            let v = match fs(a, n) {
                Ok(v) => v,
                Err(e) => {
                    t.fail(cx_with(&[a], n, "a value", e));
                    continue;
                }
            };
            let (s, e) = super::Ctx::open_range(u, &v, a);
            if s == e {
                t.checked += 1;
                continue;
            }
            let m = table.argmin(u0, s, e);
            t.check(cmp_terms(&v, &u0[m]).is_le(), || cx_with(&[a, &u[m]], n, format!("b[0] >= {v}"), &u0[m]));
        }
    })
}

fn bachmann(ctx: &Ctx) -> Tally {
    bachmann_over(ctx, &ctx.t, &ctx.t0, &|a, n| at(a, &Param::Nat(n)))
}

pub(super) fn bar_bachmann(ctx: &Ctx) -> Tally {
    let b0: Vec<OrdTerm> = ctx.b.iter().map(|b| at(b, &Param::Nat(0)).unwrap_or(OrdTerm::Zero)).collect();
    bachmann_over(ctx, &ctx.b, &b0, &|a, n| at(a, &Param::Nat(n)))
}

/// Known Bachmann witness for the star-support variant.
pub const VARIANT_WITNESS: &str = "t0(t1(t0(t0(0))))";

fn variant(a: &OrdTerm, n: u64) -> crate::error::Result<OrdTerm> {
    crate::fundseq::fundseq_star_support(a, n)
}

/// Bachmann violations of the star-support variant at `a`: pairs `(n, b)`
/// with `a[n] < b < a` and `b[0] < a[n]`. Candidates for `b` are the
/// universe terms and the first elements of both sequences for `a`.
pub fn variant_violations(a: &OrdTerm, universe: &[OrdTerm], n_cap: u64) -> Vec<(u64, OrdTerm)> {
    let mut out = Vec::new();
    let seq: Vec<OrdTerm> = (0..=n_cap + 1).filter_map(|n| variant(a, n).ok()).collect();
    let std_seq: Vec<OrdTerm> = (0..=n_cap + 1).filter_map(|n| at(a, &Param::Nat(n)).ok()).collect();
    for n in 0..=n_cap {
        let Some(v) = seq.get(n as usize) else { continue };
        for b in universe.iter().chain(&seq).chain(&std_seq) {
            if cmp_terms(v, b).is_lt() && cmp_terms(b, a).is_lt()
                && variant(b, 0).is_ok_and(|b0| cmp_terms(&b0, v) == Ordering::Less) {
                    out.push((n, b.clone()));
                }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn variant_detected(ctx: &Ctx) -> Tally {
    let mut t = Tally::default();
    let witness = crate::term::parse(VARIANT_WITNESS, T).expect("fixed text");
    let u0: Vec<OrdTerm> = ctx.t.iter().map(|b| variant(b, 0).unwrap_or(OrdTerm::Zero)).collect();
    let found = bachmann_over(ctx, &ctx.t, &u0, &|a, n| variant(a, n));
    t.checked += found.checked;
    let at_witness = variant_violations(&witness, &ctx.t, ctx.n_cap);
    t.check(!found.cex.is_empty() || !at_witness.is_empty(), || {
        cx(&[], "a Bachmann violation", "none in the universe")
    });
    t.check(!at_witness.is_empty(), || cx(&[&witness], "a Bachmann violation", "none"));
    t
}

//! Laws of the simultaneous system and of the isomorphism with the stepwise
//! system.

use super::props_order::show;
use super::{at, cx, cx_with, par_each, par_range, param_text, Ctx, PropertyInfo, Tally};
use crate::bar::{in_dom, valid_bar};
use crate::fundseq::{chi_raw, dom_raw, Param};
use crate::iso::{f_raw, g_raw, rt_raw};
use crate::order::{cmp_terms, fixp, localize, star, valid_t};
use crate::term::{split_high, OrdTerm, SystemTag};

pub(super) const PROPS: &[PropertyInfo] = &[
    PropertyInfo {
        id: "bar_injective",
        statement: "distinct simultaneous collapse terms never compare Equal and respect their level segments",
        run: bar_injective,
    },
    PropertyInfo {
        id: "bar_dom_monotone",
        statement: "membership in the domain of b_i implies membership in the domain of b_j for i <= j",
        run: bar_dom_monotone,
    },
    PropertyInfo {
        id: "bar_pivotal",
        statement: "star(x, k) < b_k(x) for every simultaneous collapse term",
        run: bar_pivotal,
    },
    PropertyInfo {
        id: "bar_transport",
        statement: "chi and d agree on a simultaneous term and its stepwise counterpart",
        run: bar_transport,
    },
    PropertyInfo {
        id: "commutation",
        statement: "f(a)[f(z)] = f(a[z]) for every admissible parameter, and the value stays in the domain",
        run: commutation,
    },
    PropertyInfo {
        id: "bar_bachmann",
        statement: "a[n] < b < a implies a[n] <= b[0] directly on simultaneous terms",
        run: super::props_fs::bar_bachmann,
    },
    PropertyInfo {
        id: "iso_roundtrip",
        statement: "g(f(a)) = a and f(g(b)) = b, with images valid in the target system",
        run: iso_roundtrip,
    },
    PropertyInfo {
        id: "iso_order",
        statement: "compare(a, b) = compare(f(a), f(b)) for all pairs",
        run: iso_order,
    },
    PropertyInfo {
        id: "iso_star",
        statement: "star(rt_m(x), i) = g(star(x, i)) for i <= m and x in the domain of b_m",
        run: iso_star,
    },
    PropertyInfo {
        id: "iso_fixp_transport",
        statement: "F_i(Xi + Delta, eta) holds for simultaneous terms iff F_i(rt_i(Xi + Delta), g(eta)) holds for stepwise terms",
        run: iso_fixp_transport,
    },
    PropertyInfo {
        id: "iso_loc_transport",
        statement: "the localization of f(a) is the pointwise f-image of the localization of a",
        run: iso_loc_transport,
    },
];

fn bar_injective(ctx: &Ctx) -> Tally {
    let prin: Vec<OrdTerm> = ctx.b.iter().filter(|a| a.is_principal()).cloned().collect();
    par_range(prin.len(), |x, t| {
        let a = &prin[x];
        let th = a.as_theta().unwrap();
        let lo = OrdTerm::omega(th.sys, th.level);
        let hi = OrdTerm::omega(th.sys, th.level + 1);
        t.check(cmp_terms(&lo, a).is_le() && cmp_terms(a, &hi).is_lt(), || cx(&[a], format!("in [{lo}, {hi})"), "outside"));
        for b in &prin[x + 1..] {
            t.check(!cmp_terms(a, b).is_eq(), || cx(&[a, b], "distinct", "Equal"));
        }
    })
}

fn bar_dom_monotone(ctx: &Ctx) -> Tally {
    let top = ctx.spec.max_level + 1;
    par_each(&ctx.b, |a, t| {
        let member: Vec<bool> = (0..=top).map(|m| in_dom(a, m)).collect();
        for i in 0..member.len() {
            for j in i..member.len() {
                t.check(!member[i] || member[j], || cx_with(&[a], format!("{i} <= {j}"), "in both domains", "only the smaller"));
            }
        }
    })
}

fn bar_pivotal(ctx: &Ctx) -> Tally {
    let prin: Vec<OrdTerm> = ctx.b.iter().filter(|a| a.is_principal()).cloned().collect();
    par_each(&prin, |a, t| {
        let th = a.as_theta().unwrap();
        let s = star(&th.arg, th.level);
        t.check(cmp_terms(&s, a).is_lt(), || cx(&[a], format!("below {a}"), &s));
    })
}

fn bar_transport(ctx: &Ctx) -> Tally {
    let top = ctx.spec.max_level + 1;
    par_each(&ctx.b, |a, t| {
        let s = g_raw(a);
        for i in 0..=top {
            let (x, y) = (chi_raw(i, a), chi_raw(i, &s));
            t.check(x == y, || cx_with(&[a], format!("chi_{i}"), y, x));
        }
        let (x, y) = (dom_raw(a), dom_raw(&s));
        t.check(x == y, || cx_with(&[a], "d", y, x));
    })
}

fn commutation(ctx: &Ctx) -> Tally {
    par_each(&ctx.t, |a, t| {
        let fa = f_raw(a);
        for z in ctx.params(a, SystemTag::Stepwise) {
            let fz = match &z {
                Param::Nat(n) => Param::Nat(*n),
                Param::Term(x) => Param::Term(f_raw(x)),
            };
            match (at(a, &z), at(&fa, &fz)) {
                (Ok(v), Ok(w)) => {
                    let want = f_raw(&v);
                    t.check(w == want, || cx_with(&[a], param_text(&z), &want, &w));
                    t.check(valid_bar(&w), || cx_with(&[&fa], param_text(&fz), "a term in the domain", &w));
                }
                (v, w) => t.fail(cx_with(&[a], param_text(&z), format!("{v:?}"), format!("{w:?}"))),
            }
        }
    })
}

fn iso_roundtrip(ctx: &Ctx) -> Tally {
    let there = par_each(&ctx.t, |a, t| {
        let fa = f_raw(a);
        t.check(valid_bar(&fa), || cx(&[a], "a valid image", &fa));
        let back = g_raw(&fa);
        t.check(back == *a, || cx(&[a], a, &back));
    });
    let back = par_each(&ctx.b, |b, t| {
        let gb = g_raw(b);
        t.check(valid_t(&gb), || cx(&[b], "a valid image", &gb));
        let again = f_raw(&gb);
        t.check(again == *b, || cx(&[b], b, &again));
    });
    there.merge(back)
}

fn iso_order(ctx: &Ctx) -> Tally {
    let u = &ctx.t;
    let images: Vec<OrdTerm> = u.iter().map(f_raw).collect();
    par_range(u.len(), |i, t| {
        for j in 0..u.len() {
            let (x, y) = (cmp_terms(&u[i], &u[j]), cmp_terms(&images[i], &images[j]));
            t.check(x == y, || cx(&[&u[i], &u[j]], format!("{x:?}"), format!("{y:?}")));
        }
    })
}

fn iso_star(ctx: &Ctx) -> Tally {
    let top = ctx.spec.max_level;
    par_each(&ctx.b, |x, t| {
        for m in 0..=top {
            if !in_dom(x, m) {
                continue;
            }
            let r = rt_raw(m, x);
            for i in 0..=m {
                let (want, got) = (g_raw(&star(x, i)), star(&r, i));
                t.check(want == got, || cx_with(&[x], format!("m={m} i={i}"), &want, &got));
            }
        }
    })
}

fn iso_fixp_transport(ctx: &Ctx) -> Tally {
    let prin: Vec<OrdTerm> = ctx.b.iter().filter(|a| a.is_principal()).cloned().collect();
    par_each(&prin, |a, t| {
        let th = a.as_theta().unwrap();
        let i = th.level;
        let (high, eta) = split_high(&th.arg, i);
        let gamma = rt_raw(i, &high);
        let (x, y) = (fixp(&high, &eta, i), fixp(&gamma, &g_raw(&eta), i));
        t.check(x == y, || cx_with(&[a], &gamma, y, x));
    })
}

fn iso_loc_transport(ctx: &Ctx) -> Tally {
    let prin: Vec<OrdTerm> = ctx.t.iter().filter(|a| a.is_principal()).cloned().collect();
    par_each(&prin, |a, t| {
        let want: Vec<OrdTerm> = localize(a).iter().map(f_raw).collect();
        let got = localize(&f_raw(a));
        t.check(want == got, || cx(&[a], show(&want), show(&got)));
    })
}

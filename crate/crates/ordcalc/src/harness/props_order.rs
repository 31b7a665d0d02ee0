//! Laws of the order, the star operator and localization.

use std::cmp::Ordering;

use super::{cx, cx_with, par_each, par_range, Ctx, PropertyInfo, Tally};
use crate::order::{cmp_terms, localize, star};
use crate::term::{split_high, OrdTerm, SystemTag};

pub(super) const PROPS: &[PropertyInfo] = &[
    PropertyInfo {
        id: "order_laws",
        statement: "the comparison is a strict total order on the universe and Equal is structural equality",
        run: order_laws,
    },
    PropertyInfo {
        id: "pivotal_star",
        statement: "star(x, j) < theta_j(x) for every collapse term",
        run: pivotal_star,
    },
    PropertyInfo {
        id: "segment",
        statement: "Omega_i <= theta_i(x) < Omega_{i+1}",
        run: segment,
    },
    PropertyInfo {
        id: "eps_char",
        statement: "theta_j(Delta + eta) is closed under theta_j of smaller arguments below Omega_{j+1} iff Delta > 0",
        run: eps_char,
    },
    PropertyInfo {
        id: "loc_lex",
        statement: "for level-i collapse terms Omega_i < a < b, loc(a) without its first entry is lexicographically below loc(b)",
        run: loc_lex,
    },
    PropertyInfo {
        id: "loc_prefix",
        statement: "every proper prefix of a localization is the localization of its last entry",
        run: loc_prefix,
    },
    PropertyInfo {
        id: "loc_fixp_levels",
        statement: "the fixed-point levels of localization entries strictly descend",
        run: loc_fixp_levels,
    },
];

fn order_laws(ctx: &Ctx) -> Tally {
    let check = |u: &[OrdTerm]| {
        par_range(u.len(), |i, t| {
            for (j, b) in u.iter().enumerate() {
                let a = &u[i];
                let (ab, ba) = (cmp_terms(a, b), cmp_terms(b, a));
                let ok = ab == i.cmp(&j) && ba == ab.reverse() && ((ab == Ordering::Equal) == (a == b));
                t.check(ok, || cx(&[a, b], format!("{:?}", i.cmp(&j)), format!("{ab:?}/{ba:?}")));
            }
        })
    };
    check(&ctx.t).merge(check(&ctx.b))
}

fn principals(u: &[OrdTerm]) -> Vec<OrdTerm> {
    u.iter().filter(|a| a.is_principal()).cloned().collect()
}

fn pivotal_star(ctx: &Ctx) -> Tally {
    par_each(&principals(&ctx.t), |a, t| {
        let th = a.as_theta().unwrap();
        let s = star(&th.arg, th.level);
        t.check(cmp_terms(&s, a).is_lt(), || cx(&[a], format!("below {a}"), &s));
    })
}

fn segment(ctx: &Ctx) -> Tally {
    let body = |a: &OrdTerm, t: &mut Tally| {
        let th = a.as_theta().unwrap();
        let lo = OrdTerm::omega(th.sys, th.level);
        let hi = OrdTerm::omega(th.sys, th.level + 1);
        let ok = cmp_terms(&lo, a).is_le() && cmp_terms(a, &hi).is_lt();
        t.check(ok, || cx(&[a], format!("in [{lo}, {hi})"), "outside"));
    };
    par_each(&principals(&ctx.t), body).merge(par_each(&principals(&ctx.b), body))
}

fn eps_char(ctx: &Ctx) -> Tally {
    let u = &ctx.t;
    par_each(&principals(u), |a, t| {
        let th = a.as_theta().unwrap();
        let j = th.level;
        let (delta, _) = split_high(&th.arg, j);
        let cap = OrdTerm::omega(SystemTag::Stepwise, j + 1);
        let bound = if cmp_terms(a, &cap).is_lt() { a } else { &cap };
        let k = u.partition_point(|x| cmp_terms(x, bound).is_lt());
        if k == 0 {
            return;
        }
        let beta = &u[k - 1];
        let image = OrdTerm::theta(SystemTag::Stepwise, j, beta.clone());
        let closed = cmp_terms(&image, a).is_lt();
        t.check(closed == !delta.is_zero(), || {
            cx_with(&[a], beta, format!("closed = {}", !delta.is_zero()), format!("theta_{j}({beta}) = {image}"))
        });
    })
}

fn above_omega(u: &[OrdTerm]) -> Vec<(OrdTerm, Vec<OrdTerm>)> {
    u.iter()
        .filter(|a| a.as_theta().is_some_and(|th| !th.arg.is_zero()))
        .map(|a| (a.clone(), localize(a)))
        .collect()
}

fn lex(a: &[OrdTerm], b: &[OrdTerm]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match cmp_terms(x, y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

fn loc_lex(ctx: &Ctx) -> Tally {
    let locs = above_omega(&ctx.t);
    par_range(locs.len(), |x, t| {
        let (a, la) = &locs[x];
        for (b, lb) in &locs[x + 1..] {
            if a.level() != b.level() {
                continue;
            }
            let o = lex(&la[1..], &lb[1..]);
            t.check(o.is_lt(), || cx(&[a, b], "Less", format!("{o:?}")));
        }
    })
}

fn loc_prefix(ctx: &Ctx) -> Tally {
    par_each(&above_omega(&ctx.t), |(a, la), t| {
        for j in 0..la.len() - 1 {
            let sub = localize(&la[j]);
            t.check(sub[..] == la[..=j], || cx_with(&[a], j, show(&la[..=j]), show(&sub)));
        }
    })
}

fn loc_fixp_levels(ctx: &Ctx) -> Tally {
    par_each(&above_omega(&ctx.t), |(a, la), t| {
        let i = a.level().unwrap();
        let deltas: Vec<OrdTerm> = la[1..].iter().map(|e| split_high(&e.as_theta().unwrap().arg, i).0).collect();
        let ok = deltas.windows(2).all(|w| cmp_terms(&w[0], &w[1]).is_gt());
        t.check(ok, || cx(&[a], "strictly descending", show(&deltas)));
    })
}

pub(super) fn show(ts: &[OrdTerm]) -> String {
    let parts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    format!("({})", parts.join(", "))
}

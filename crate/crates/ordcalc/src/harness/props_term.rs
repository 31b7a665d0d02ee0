//! Laws of the term layer: printing, normalization, classification, splitting.

use super::{cx, cx_with, par_each, par_range, Ctx, PropertyInfo, Tally};
use crate::bar::valid_bar;
use crate::norms::cnorm;
use crate::order::{cmp_terms, valid_t};
use crate::term::{make_sum, parse, split_arg, OrdTerm, SystemTag, TermClass};

pub(super) const PROPS: &[PropertyInfo] = &[
    PropertyInfo {
        id: "roundtrip_print_parse",
        statement: "parse(print(a)) = a, also for the decimal-sugar form, in both systems",
        run: roundtrip,
    },
    PropertyInfo {
        id: "make_sum_assoc",
        statement: "normalizing a concatenation equals normalizing the normalized parts",
        run: make_sum_assoc,
    },
    PropertyInfo {
        id: "classify_partition",
        statement: "every term is exactly one of zero, successor, limit; successors are pred + 1",
        run: classify_partition,
    },
    PropertyInfo {
        id: "split_arg_reassembly",
        statement: "xi + delta + eta = a for every split index, with the level bands respected",
        run: split_reassembly,
    },
    PropertyInfo {
        id: "enumeration_sound",
        statement: "enumerated terms are valid, within bounds, strictly ascending and stable",
        run: enumeration_sound,
    },
];

fn roundtrip(ctx: &Ctx) -> Tally {
    let body = |a: &OrdTerm, t: &mut Tally| {
        let sys = a.system().unwrap_or(SystemTag::Stepwise);
        for text in [a.to_string(), a.pretty()] {
            match parse(&text, sys) {
                Ok(back) => t.check(back == *a, || cx(&[a], a, &back)),
                Err(e) => t.fail(cx(&[a], a, e)),
            }
        }
    };
    par_each(&ctx.t, body).merge(par_each(&ctx.b, body))
}

fn make_sum_assoc(ctx: &Ctx) -> Tally {
    let u = &ctx.t;
    let pairs = par_range(u.len(), |i, t| {
        let a = &u[i];
        for b in u {
            let flat = a.components().iter().chain(b.components()).cloned();
            match (make_sum([a.clone(), b.clone()]), make_sum(flat)) {
                (Ok(x), Ok(y)) => t.check(x == y, || cx(&[a, b], &x, &y)),
                (x, y) => t.fail(cx(&[a, b], "two sums", format!("{x:?} / {y:?}"))),
            }
        }
    });
    // triples only over the small terms
    let small: Vec<OrdTerm> = u.iter().filter(|a| cnorm(a) <= 4).cloned().collect();
    let sum = |x: &OrdTerm, y: &OrdTerm| make_sum([x.clone(), y.clone()]).expect("one system");
    let triples = par_each(&small, |a, t| {
        for b in &small {
            for c in &small {
                let (left, right) = (sum(&sum(a, b), c), sum(a, &sum(b, c)));
                t.check(left == right, || cx(&[a, b, c], &left, &right));
            }
        }
    });
    pairs.merge(triples)
}

fn classify_partition(ctx: &Ctx) -> Tally {
    let body = |a: &OrdTerm, t: &mut Tally| {
        let flags = [a.is_zero(), a.is_successor(), a.is_limit()];
        let hits = flags.iter().filter(|&&f| f).count();
        t.check(hits == 1, || cx(&[a], "exactly one class", format!("{flags:?}")));
        if let TermClass::Successor(p) = a.classify() {
            let sys = a.system().unwrap();
            let back = p.add(&OrdTerm::one(sys));
            t.check(back == *a, || cx(&[a], a, &back));
        }
    };
    par_each(&ctx.t, body).merge(par_each(&ctx.b, body))
}

fn split_reassembly(ctx: &Ctx) -> Tally {
    let top = ctx.spec.max_level + 1;
    par_each(&ctx.t, |a, t| {
        for j in 0..=top {
            let s = split_arg(a, j);
            let whole = make_sum([s.xi.clone(), s.delta.clone(), s.eta.clone()]);
            let ok_bands = s.xi.components().iter().all(|c| c.level().unwrap() > j + 1)
                && s.delta.components().iter().all(|c| c.level().unwrap() == j + 1)
                && s.eta.components().iter().all(|c| c.level().unwrap() <= j);
            t.check(ok_bands, || cx_with(&[a], j, "level bands", format!("{s:?}")));
            match whole {
                Ok(w) => t.check(w == *a, || cx_with(&[a], j, a, &w)),
                Err(e) => t.fail(cx_with(&[a], j, a, e)),
            }
        }
    })
}

fn enumeration_sound(ctx: &Ctx) -> Tally {
    let mut t = Tally::default();
    let again = super::enumerate(&ctx.spec);
    let own = match ctx.spec.system {
        SystemTag::Stepwise => &ctx.t,
        SystemTag::Simultaneous => &ctx.b,
    };
    t.check(again == *own, || super::Counterexample {
        inputs: vec!["enumerate twice".into()],
        expected: own.len().to_string(),
        actual: again.len().to_string(),
        weight: 0,
    });
    for w in own.windows(2) {
        t.check(cmp_terms(&w[0], &w[1]).is_lt(), || cx(&[&w[0], &w[1]], "ascending", "not ascending"));
    }
    for a in own {
        let (valid, norm) = match ctx.spec.system {
            SystemTag::Stepwise => (valid_t(a), cnorm(a)),
            SystemTag::Simultaneous => (valid_bar(a), super::cnorm_sys(a)),
        };
        let level_ok = a.max_level().is_none_or(|l| l <= ctx.spec.max_level);
        t.check(valid && norm <= ctx.spec.max_norm && level_ok, || {
            cx(&[a], "valid term within bounds", format!("valid={valid} norm={norm}"))
        });
    }
    t
}

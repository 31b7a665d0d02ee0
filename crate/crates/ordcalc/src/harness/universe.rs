//! Enumeration of bounded term universes.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bar::valid_bar;
use crate::iso::f_raw;
use crate::order::{cmp_terms, valid_t};
use crate::term::{OrdTerm, SystemTag};

/// Bounds describing a finite set of terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub system: SystemTag,
    pub max_norm: u64,
    pub max_level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<OrdTerm>,
}

impl UniverseSpec {
    pub fn new(system: SystemTag, max_norm: u64, max_level: u32) -> Self {
        UniverseSpec { system, max_norm, max_level, upper_bound: None }
    }
}

/// Stepwise terms grouped by canonical norm: `by_norm[n]` holds the terms of
/// norm exactly `n`.
fn stepwise_by_norm(max_norm: u64, max_level: u32) -> Vec<Vec<OrdTerm>> {
    let max = max_norm as usize;
    let mut all: Vec<Vec<OrdTerm>> = vec![Vec::new(); max + 1];
    let mut principal: Vec<Vec<OrdTerm>> = vec![Vec::new(); max + 1];
    if max >= 1 {
        all[1].push(OrdTerm::Zero);
    }
    for n in 2..=max {
        let mut prin = Vec::new();
        for arg in &all[n - 1] {
            let top = arg.components().iter().filter_map(|c| c.level()).max();
            for i in 0..=max_level {
                if top.is_none_or(|l| l <= i + 1) {
                    prin.push(OrdTerm::theta(SystemTag::Stepwise, i, arg.clone()));
                }
            }
        }
        let mut terms = prin.clone();
        // p + rest with norm(p) + norm(rest) + 1 = n and p >= mc(rest)
        for (a, prins) in principal.iter().enumerate().take(n.saturating_sub(2)).skip(2) {
            let b = n - a - 1;
            for p in prins {
                for rest in &all[b] {
                    if rest.is_zero() || cmp_terms(p, &rest.mc()) == Ordering::Less {
                        continue;
                    }
                    let mut parts = vec![p.clone()];
                    parts.extend_from_slice(rest.components());
                    terms.push(OrdTerm::from_components(parts));
                }
            }
        }
        principal[n] = prin;
        all[n] = terms;
    }
    all
}

/// All valid terms within `spec`, ascending and without duplicates.
pub fn enumerate(spec: &UniverseSpec) -> Vec<OrdTerm> {
    let flat = stepwise_by_norm(spec.max_norm, spec.max_level).into_iter().flatten();
    let mut out: Vec<OrdTerm> = match spec.system {
        SystemTag::Stepwise => flat.filter(valid_t).collect(),
        SystemTag::Simultaneous => flat
            .map(|t| f_raw(&t))
            .filter(|b| b.max_level().is_none_or(|l| l <= spec.max_level) && valid_bar(b))
            .collect(),
    };
    if let Some(ub) = &spec.upper_bound {
        out.retain(|t| cmp_terms(t, ub) == Ordering::Less);
    }
    out.sort_by(cmp_terms);
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_any;

    fn names(spec: UniverseSpec) -> Vec<String> {
        enumerate(&spec).iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn small_universes() {
        assert_eq!(names(UniverseSpec::new(SystemTag::Stepwise, 2, 1)), ["0", "t0(0)", "t1(0)"]);
        assert_eq!(
            names(UniverseSpec::new(SystemTag::Stepwise, 5, 0)),
            ["0", "t0(0)", "t0(0)+t0(0)", "t0(t0(0))", "t0(t0(t0(0)))", "t0(t0(t0(t0(0))))"]
        );
        assert_eq!(names(UniverseSpec::new(SystemTag::Simultaneous, 2, 1)), ["0", "b0(0)", "b1(0)"]);
    }

    #[test]
    fn upper_bound_filters() {
        let mut spec = UniverseSpec::new(SystemTag::Stepwise, 3, 1);
        spec.upper_bound = Some(parse_any("t1(0)").unwrap());
        let below = enumerate(&spec);
        assert!(below.iter().all(|t| t.components().iter().all(|c| c.level() == Some(0))));
        assert!(below.iter().any(|t| t.to_string() == "t0(t1(0))"));
    }
}

//! Exhaustive verification over enumerated term universes.
//!
//! Every law is registered under a property id. A run enumerates the
//! universe once, evaluates the selected properties (outer loops are sharded
//! with rayon) and returns one [`PropertyReport`] per property.

use std::cmp::Ordering;
use std::fmt::Display;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::fundseq::{dom_raw, fs_raw, Param};
use crate::iso::{f_raw, g_raw};
use crate::norms::cnorm;
use crate::order::cmp_terms;
use crate::term::{nat_to_term, OrdTerm, SystemTag};

mod props_fs;
mod props_iso;
mod props_norms;
mod props_order;
mod props_term;
mod universe;

pub use props_fs::{variant_violations, VARIANT_WITNESS};
pub use universe::{enumerate, UniverseSpec};

/// Stored witnesses per report; the total is kept in `failures`.
pub const MAX_WITNESSES: usize = 20;

/// One failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
    #[serde(skip)]
    weight: u64,
}

/// Result of checking one property over a universe.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property_id: String,
    pub universe: UniverseSpec,
    pub instances_checked: u64,
    /// Instances left out because an evaluation exceeded its budget.
    pub skipped: u64,
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// A registered law.
#[derive(Debug, Clone, Copy)]
pub struct PropertyInfo {
    pub id: &'static str,
    pub statement: &'static str,
    run: fn(&Ctx) -> Tally,
}

/// Default suite parameters.
pub const DEFAULT_MAX_NORM: u64 = 8;
pub const DEFAULT_MAX_LEVEL: u32 = 2;
pub const DEFAULT_N_CAP: u64 = 3;

/// All registered properties, in report order.
pub fn registry() -> Vec<PropertyInfo> {
    let mut all = Vec::new();
    all.extend_from_slice(props_term::PROPS);
    all.extend_from_slice(props_order::PROPS);
    all.extend_from_slice(props_fs::PROPS);
    all.extend_from_slice(props_iso::PROPS);
    all.extend_from_slice(props_norms::PROPS);
    all
}

/// Looks up property ids; `all` selects the whole registry.
pub fn select(ids: &[String]) -> std::result::Result<Vec<PropertyInfo>, String> {
    let reg = registry();
    if ids.is_empty() || ids.iter().any(|s| s == "all") {
        return Ok(reg);
    }
    ids.iter()
        .map(|id| reg.iter().find(|p| p.id == id).copied().ok_or_else(|| format!("unknown property id `{id}`")))
        .collect()
}

const SUITE_STACK: usize = 256 << 20;

/// Runs the selected properties over `spec` with parameter cap `n_cap`.
pub fn run_suite(spec: &UniverseSpec, which: &[PropertyInfo], n_cap: u64) -> Vec<PropertyReport> {
    // deep terms recurse deeply, so workers get roomy stacks
    let pool = rayon::ThreadPoolBuilder::new().stack_size(SUITE_STACK).build().expect("thread pool");
    pool.install(|| {
        let ctx = Ctx::new(spec.clone(), n_cap);
        which.iter().map(|p| run_one(&ctx, p)).collect()
    })
}

fn run_one(ctx: &Ctx, p: &PropertyInfo) -> PropertyReport {
    let start = Instant::now();
    let mut tally = (p.run)(ctx);
    let failures = tally.cex.len() as u64;
    tally.cex.sort_by(|a, b| a.weight.cmp(&b.weight).then_with(|| a.inputs.cmp(&b.inputs)));
    tally.cex.truncate(MAX_WITNESSES);
    PropertyReport {
        property_id: p.id.to_string(),
        universe: ctx.spec.clone(),
        instances_checked: tally.checked,
        skipped: tally.skipped,
        failures,
        counterexamples: tally.cex,
        elapsed: start.elapsed().as_secs_f64(),
    }
}

/// Accumulated outcome of one property, mergeable across shards.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    checked: u64,
    skipped: u64,
    cex: Vec<Counterexample>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok {
            self.cex.push(witness());
        }
    }

    fn fail(&mut self, c: Counterexample) {
        self.checked += 1;
        self.cex.push(c);
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.cex.extend(other.cex);
        self
    }
}

/// Builds a witness; inputs are weighed by their canonical norm so the
/// smallest failures are reported first.
fn cx(inputs: &[&OrdTerm], expected: impl Display, actual: impl Display) -> Counterexample {
    Counterexample {
        inputs: inputs.iter().map(|t| t.to_string()).collect(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        weight: inputs.iter().map(|t| cnorm(t)).sum(),
    }
}

/// Like [`cx`] with an extra textual input such as a parameter or index.
fn cx_with(inputs: &[&OrdTerm], extra: impl Display, expected: impl Display, actual: impl Display) -> Counterexample {
    let mut c = cx(inputs, expected, actual);
    c.inputs.push(extra.to_string());
    c
}

/// Sharded loop over `items`.
fn par_each<T: Sync>(items: &[T], body: impl Fn(&T, &mut Tally) + Sync + Send) -> Tally {
    items
        .par_iter()
        .fold(Tally::default, |mut t, x| {
            body(x, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Sharded loop over indices `0..n`.
fn par_range(n: usize, body: impl Fn(usize, &mut Tally) + Sync + Send) -> Tally {
    (0..n)
        .into_par_iter()
        .fold(Tally::default, |mut t, k| {
            body(k, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Shared data for one run: both universes and per-term caches.
pub(crate) struct Ctx {
    spec: UniverseSpec,
    n_cap: u64,
    /// Stepwise universe, ascending.
    t: Vec<OrdTerm>,
    /// Simultaneous universe, ascending.
    b: Vec<OrdTerm>,
    /// `t[k][0]`.
    t0: Vec<OrdTerm>,
    /// Iteration norm of `t[k]`.
    gn: Vec<u64>,
}

impl Ctx {
    fn new(spec: UniverseSpec, n_cap: u64) -> Ctx {
        let own = enumerate(&spec);
        let (mut t, mut b): (Vec<OrdTerm>, Vec<OrdTerm>) = match spec.system {
            SystemTag::Stepwise => {
                let b = own.par_iter().map(f_raw).collect();
                (own, b)
            }
            SystemTag::Simultaneous => {
                let t = own.par_iter().map(g_raw).collect();
                (t, own)
            }
        };
        t.sort_by(cmp_terms);
        b.sort_by(cmp_terms);
        let t0: Vec<OrdTerm> = t.par_iter().map(|a| at(a, &Param::Nat(0)).unwrap_or(OrdTerm::Zero)).collect();
        let gn = t.par_iter().map(|a| crate::norms::gnorm(a).unwrap_or(u64::MAX)).collect();
        Ctx { spec, n_cap, t, b, t0, gn }
    }

    /// Admissible parameters for `a`: naturals up to the cap, and for
    /// uncountable cofinality also the small universe terms below `Omega_d`.
    fn params(&self, a: &OrdTerm, sys: SystemTag) -> Vec<Param> {
        let d = dom_raw(a);
        let nats = (0..=self.n_cap).map(|n| nat_to_term(n, sys));
        if d == 0 {
            return (0..=self.n_cap).map(Param::Nat).collect();
        }
        let bound = OrdTerm::omega(sys, d);
        let pool = match sys {
            SystemTag::Stepwise => &self.t,
            SystemTag::Simultaneous => &self.b,
        };
        let mut out: Vec<OrdTerm> = nats
            .chain(pool.iter().filter(|z| cnorm_sys(z) <= 4 && cmp_terms(z, &bound) == Ordering::Less).cloned())
            .collect();
        out.sort_by(cmp_terms);
        out.dedup();
        out.into_iter().map(Param::Term).collect()
    }

    /// Index range of universe elements strictly between `lo` and `hi`
    /// (`lo` excluded, `hi` excluded).
    fn open_range(u: &[OrdTerm], lo: &OrdTerm, hi: &OrdTerm) -> (usize, usize) {
        let s = u.partition_point(|x| cmp_terms(x, lo) != Ordering::Greater);
        let e = u.partition_point(|x| cmp_terms(x, hi) == Ordering::Less);
        (s, e.max(s))
    }
}

/// Canonical norm of either system, taken through the isomorphism for
/// simultaneous terms.
fn cnorm_sys(a: &OrdTerm) -> u64 {
    match a.system() {
        Some(SystemTag::Simultaneous) => cnorm(&g_raw(a)),
        _ => cnorm(a),
    }
}

fn at(a: &OrdTerm, z: &Param) -> crate::error::Result<OrdTerm> {
    fs_raw(a, z).map(|o| o.value)
}

fn param_text(z: &Param) -> String {
    match z {
        Param::Nat(n) => n.to_string(),
        Param::Term(t) => t.to_string(),
    }
}

/// Sparse table answering range-minimum queries over a fixed slice.
struct MinTable {
    levels: Vec<Vec<usize>>,
}

impl MinTable {
    fn new(vals: &[OrdTerm]) -> MinTable {
        let mut levels = vec![(0..vals.len()).collect::<Vec<_>>()];
        let mut w = 1;
        while 2 * w <= vals.len() {
            let prev = levels.last().unwrap();
            let next = (0..=vals.len() - 2 * w)
                .map(|k| {
                    let (a, b) = (prev[k], prev[k + w]);
                    if cmp_terms(&vals[b], &vals[a]) == Ordering::Less {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            levels.push(next);
            w *= 2;
        }
        MinTable { levels }
    }

    /// Position of a minimal value in `s..e`, which must be nonempty.
    fn argmin(&self, vals: &[OrdTerm], s: usize, e: usize) -> usize {
        let k = (usize::BITS - 1 - (e - s).leading_zeros()) as usize;
        let (a, b) = (self.levels[k][s], self.levels[k][e - (1 << k)]);
        if cmp_terms(&vals[b], &vals[a]) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_table_matches_scan() {
        let spec = UniverseSpec::new(SystemTag::Stepwise, 5, 1);
        let u = enumerate(&spec);
        let rev: Vec<OrdTerm> = u.iter().rev().cloned().collect();
        let mt = MinTable::new(&rev);
        for s in 0..rev.len() {
            for e in s + 1..=rev.len() {
                let best = (s..e).min_by(|&a, &b| cmp_terms(&rev[a], &rev[b])).unwrap();
                assert_eq!(rev[mt.argmin(&rev, s, e)], rev[best]);
            }
        }
    }

    #[test]
    fn selection() {
        assert_eq!(select(&["all".into()]).unwrap().len(), registry().len());
        assert!(select(&["no_such_law".into()]).is_err());
        let ids: Vec<_> = registry().iter().map(|p| p.id).collect();
        let mut dedup = ids.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(ids.len(), dedup.len());
    }
}

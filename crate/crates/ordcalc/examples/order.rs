//! Comparison, the star operator, fixed points and localization.

use ordcalc::order::{fixpoint_f, localization, star};
use ordcalc::{compare_t, parse, OrdTerm, SystemTag};

fn t(s: &str) -> OrdTerm {
    parse(s, SystemTag::Stepwise).expect("valid term")
}

fn main() -> ordcalc::Result<()> {
    let mut terms = ["t1(0)", "t0(t1(0))", "t0(t1(0)+t0(0))", "t0(t1(t0(0)))", "t0(t0(0))", "t1(t2(0))"].map(t);
    terms.sort_by(|a, b| compare_t(a, b).expect("valid terms"));
    let names: Vec<String> = terms.iter().map(|a| a.to_string()).collect();
    println!("ascending: {}", names.join(" < "));

    let a = t("t1(t0(t0(0)))+t0(t1(0))");
    println!("largest level-0 subterm of {a}: {}", star(&a, 0));
    println!("largest level-1 subterm of {a}: {}", star(&a, 1));

    // fixed-point test at level 1 for two choices of delta
    let eta = t("t1(t2(0))");
    println!("F_1(t2(0), {eta}) = {}", fixpoint_f(&t("t2(0)"), &eta, 1)?);
    println!("F_1(0, {eta}) = {}", fixpoint_f(&OrdTerm::Zero, &eta, 1)?);

    let b = t("t0(t1(t0(t1(0))))");
    let loc = localization(&b, 0)?;
    let entries: Vec<String> = loc.entries.iter().map(|e| e.to_string()).collect();
    println!("localization of {b}: ({})", entries.join(", "));
    Ok(())
}

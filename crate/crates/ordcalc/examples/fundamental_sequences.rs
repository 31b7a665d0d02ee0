//! Fundamental sequences with the clause that produced each element.

use ordcalc::{chi, dom_ind, fundseq, fundseq_nat, parse, support, OrdTerm, SystemTag};

fn t(s: &str) -> OrdTerm {
    parse(s, SystemTag::Stepwise).expect("valid term")
}

fn main() -> ordcalc::Result<()> {
    for text in ["t0(t1(0))", "t0(t1(t0(0)))", "t0(t1(t0(t1(t1(0)))))", "t0(t1(t2(t1(0))))"] {
        let a = t(text);
        let first: Vec<String> = (0..4).map(|n| fundseq_nat(&a, n).map(|v| v.pretty())).collect::<Result<_, _>>()?;
        println!("{text}: d = {}, support = {}", dom_ind(&a)?, support(&a)?);
        println!("    {}", first.join(", "));
    }

    // uncountable cofinality: the parameter ranges over terms below Omega_d
    let a = t("t1(t1(t1(0)))");
    println!("{a}: chi_1 = {}, d = {}", chi(1, &a)?, dom_ind(&a)?);
    for z in ["0", "t0(0)", "t0(t0(0))", "t0(t1(0))"] {
        let out = fundseq(&a, &t(z))?;
        println!("    [{z}] = {}  ({:?})", out.value, out.case.clause);
    }
    Ok(())
}

//! Parsing, printing and basic arithmetic on terms of both systems.

use ordcalc::term::{parse_any, TermClass};
use ordcalc::{cnorm, make_sum, parse, SystemTag};

fn main() -> ordcalc::Result<()> {
    let eps0 = parse("t0(t1(0))", SystemTag::Stepwise)?;
    let omega = parse("t0(t0(0))", SystemTag::Stepwise)?;

    // decimal sugar: a trailing number n stands for n copies of t0(0)
    let w_plus_3 = parse("t0(1)+3", SystemTag::Stepwise)?;
    println!("{} is written {}", w_plus_3.pretty(), w_plus_3);

    // sums are normalized: smaller summands in front of larger ones vanish
    let absorbed = make_sum([omega.clone(), eps0.clone()])?;
    println!("{omega} + {eps0} = {absorbed}");
    let kept = make_sum([eps0.clone(), omega.clone()])?;
    println!("{eps0} + {omega} = {kept}");

    for text in ["0", "t0(0)+t0(0)", "t0(t1(0))", "b1(b2(0))"] {
        let a = parse_any(text)?;
        let class = match a.classify() {
            TermClass::Zero => "zero".to_string(),
            TermClass::Successor(p) => format!("successor of {p}"),
            TermClass::Limit => "limit".to_string(),
        };
        println!("{text:<14} norm {:<2} {class}", cnorm(&a));
    }
    Ok(())
}

//! Hardy functions, bracket walks and the G norm.

use ordcalc::norms::{bracket_walk, walk_length};
use ordcalc::{gnorm, hardy, parse, HardyBudget, SystemTag};

fn main() -> ordcalc::Result<()> {
    let budget = HardyBudget::default();
    for (name, text) in [("0", "0"), ("1", "t0(0)"), ("w", "t0(t0(0))"), ("w^2", "t0(2)"), ("w^w", "t0(t0(1))")] {
        let a = parse(text, SystemTag::Stepwise)?;
        let values: Vec<String> = (0..4)
            .map(|n| match hardy(&a, n, HardyBudget { max_steps: 100_000, ..budget }) {
                Ok(v) => v.to_string(),
                Err(_) => "too big".to_string(),
            })
            .collect();
        println!("H_{name:<4} G = {:<3} values at 0..3: {}", gnorm(&a)?, values.join(", "));
    }

    // H_a(n) is the first k at which the walk a[n][n+1]...[k-1] reaches zero
    let w2 = parse("t0(2)", SystemTag::Stepwise)?;
    let k = walk_length(&w2, 2, budget)?;
    println!("walk from w^2 at 2 ends at {k}; one step earlier it is {}", bracket_walk(&w2, 2, k - 1)?);
    Ok(())
}

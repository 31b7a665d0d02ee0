//! A plausible alteration of the assignment that converges but breaks the
//! Bachmann property, and the witness the checker finds for it.

use ordcalc::fundseq::fundseq_star_support;
use ordcalc::harness::{enumerate, variant_violations, UniverseSpec, VARIANT_WITNESS};
use ordcalc::{fundseq_nat, parse, SystemTag};

fn main() -> ordcalc::Result<()> {
    let a = parse(VARIANT_WITNESS, SystemTag::Stepwise)?;
    for n in 0..3 {
        println!("a[{n}] = {:<40} variant: {}", fundseq_nat(&a, n)?, fundseq_star_support(&a, n)?);
    }
    let universe = enumerate(&UniverseSpec::new(SystemTag::Stepwise, 7, 2));
    let found = variant_violations(&a, &universe, 3);
    println!("{} violations at {a}", found.len());
    for (n, b) in found.iter().take(3) {
        println!("    a[{n}] < {b} < a, but {b}[0] = {} is below a[{n}]", fundseq_star_support(b, 0)?);
    }
    Ok(())
}

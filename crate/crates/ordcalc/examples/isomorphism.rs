//! Translating between the stepwise and simultaneous systems, and checking
//! that fundamental sequences commute with the translation.

use ordcalc::bar::ht;
use ordcalc::{f, fundseq, fundseq_bar, g, parse, SystemTag};

fn main() -> ordcalc::Result<()> {
    for text in ["t0(t1(t2(0)+t0(0)))", "t0(t1(t0(t1(t1(0)))))", "t1(t2(t1(0)))"] {
        let a = parse(text, SystemTag::Stepwise)?;
        let b = f(&a)?;
        println!("{a}  ->  {b}  (height {})  ->  {}", ht(&b), g(&b)?);
    }

    let b = parse("b0(b2(0)+b1(b2(0)+b0(0)))", SystemTag::Simultaneous)?;
    for n in 0..3u64 {
        let z = ordcalc::term::nat_to_term(n, SystemTag::Simultaneous);
        let direct = fundseq_bar(&b, &z)?.value;
        let routed = f(&fundseq(&g(&b)?, &ordcalc::term::nat_to_term(n, SystemTag::Stepwise))?.value)?;
        println!("[{n}]  direct {direct}  via g/f {routed}  agree: {}", direct == routed);
    }
    Ok(())
}

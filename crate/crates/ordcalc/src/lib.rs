//! Ordinal notation workbench.
//!
//! Two notation systems built from collapsing functions over `tau = 1`: the
//! stepwise system (`t_i`) and the simultaneous system (`b_i`). The crate
//! provides their order, fundamental sequences with the Bachmann property,
//! the order isomorphism between them, norms, the Hardy hierarchy, and an
//! exhaustive checker for the laws these operations satisfy.
//!
//! ```
//! use ordcalc::{parse, fundseq_nat, SystemTag};
//!
//! let eps0 = parse("t0(t1(0))", SystemTag::Stepwise).unwrap();
//! assert_eq!(fundseq_nat(&eps0, 1).unwrap().to_string(), "t0(t0(0))");
//! ```

pub mod bar;
pub mod cli;
pub mod error;
pub mod fundseq;
pub mod harness;
pub mod iso;
pub mod norms;
pub mod order;
pub mod term;

pub use bar::{compare_bar, dom_ind_bar, fundseq_bar, fundseq_bar_nat, valid_bar};
pub use error::{OrdError, Result};
pub use fundseq::{chi, dom_ind, fundseq, fundseq_nat, support, FsCase, FsClause, FsOutcome};
pub use iso::{f, g};
pub use norms::{cnorm, gnorm, hardy, HardyBudget};
pub use order::{compare_t, localization, star, valid_t, LocalizationSeq};
pub use term::{make_sum, parse, OrdTerm, SystemTag};

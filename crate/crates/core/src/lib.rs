//! A workbench for the constructive side of countability.
//!
//! * [`canonical`]: ranking and unranking strings in canonical order.
//! * [`machine`]: budgeted Turing machines, their text format and their
//!   binary encoding with a validator.
//! * [`enumerator`]: enumerators as streams, dovetailing, and the
//!   conversions between recognizers, enumerators and counting bijections.
//! * [`counting_order`]: counting orders, `deleteMin`, and bounded chain
//!   search.
//! * [`diagonal`]: finite diagonal constructions.
//!
//! The guide in `book/` walks through each module; its code samples are
//! compiled and run as doc-tests of this crate.

pub mod bijection;
pub mod canonical;
pub mod counting_order;
pub mod diagonal;
pub mod enumerator;
pub mod machine;
pub mod samples;

pub use bijection::{CountingBijection, Unranking};
pub use canonical::{unrank, Alphabet, CanonicalString, Rank};
pub use enumerator::{EnumerationStream, Pull};
pub use machine::{Outcome, RunOutcome, TuringMachine, Verdict};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/canonical-order.md")]
    mod canonical_order {}
    #[doc = include_str!("../../../book/src/machines.md")]
    mod machines {}
    #[doc = include_str!("../../../book/src/enumerators.md")]
    mod enumerators {}
    #[doc = include_str!("../../../book/src/counting-orders.md")]
    mod counting_orders {}
    #[doc = include_str!("../../../book/src/diagonalization.md")]
    mod diagonalization {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

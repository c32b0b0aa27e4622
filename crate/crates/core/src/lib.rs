//! Exact arithmetic for k-Fibonacci and k-Lucas numbers: fast evaluation,
//! closed-form matrix powers over arithmetic index steps, identity checking
//! on finite grids, and closed-form sums.
//!
//! The guide in `book/` walks through each module; its snippets run as
//! doc-tests of this crate.

pub mod bench;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod exact;
pub mod identities;
pub mod sequences;
pub mod sums;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/sums.md")]
    mod sums {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! The book chapters, compiled as doctests.
//!
//! The guide under `book/` is an mdbook; mdbook itself cannot run the code
//! blocks in the chapters against this crate, so each chapter is also
//! included here as a module doc. `cargo test --doc` then compiles and
//! runs every snippet, keeping the book and the library in sync. A failing
//! doctest names the chapter module it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/counting-functions.md")]
pub mod counting_functions {}

#[doc = include_str!("../../../book/src/mobius-machinery.md")]
pub mod mobius_machinery {}

#[doc = include_str!("../../../book/src/subset-oracle.md")]
pub mod subset_oracle {}

#[doc = include_str!("../../../book/src/bounds-and-gaps.md")]
pub mod bounds_and_gaps {}

#[doc = include_str!("../../../book/src/ratio-chain.md")]
pub mod ratio_chain {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}

#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}

//! Compiles the guide's code snippets as doctests so the book stays in
//! sync with the library (`cargo test --doc` runs every chapter).

#![allow(unused)]

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/states.md")]
pub mod states {}

#[doc = include_str!("../../../book/src/schmidt.md")]
pub mod schmidt {}

#[doc = include_str!("../../../book/src/subspaces.md")]
pub mod subspaces {}

#[doc = include_str!("../../../book/src/protocols.md")]
pub mod protocols {}

#[doc = include_str!("../../../book/src/two-qubit.md")]
pub mod two_qubit {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

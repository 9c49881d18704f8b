//! mdbook cannot run a book's code fences against a real dependency
//! graph, so each chapter is included here as a doc comment and
//! `cargo test --doc -p qent-book` executes every `rust` snippet.
//! One module per chapter keeps failures attributable to their source
//! file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/states.md")]
pub mod states {}

#[doc = include_str!("../../../book/src/operator-bases.md")]
pub mod operator_bases {}

#[doc = include_str!("../../../book/src/measures.md")]
pub mod measures {}

#[doc = include_str!("../../../book/src/criteria.md")]
pub mod criteria {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

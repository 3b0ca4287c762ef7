//! Compiles the guide in `book/src` so that `cargo test` runs every listing
//! as a doc-test. mdbook cannot resolve crate dependencies on its own.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../book/src/forms.md")]
pub mod forms {}
#[doc = include_str!("../../book/src/runs.md")]
pub mod runs {}
#[doc = include_str!("../../book/src/cycle.md")]
pub mod cycle {}
#[doc = include_str!("../../book/src/negative.md")]
pub mod negative {}
#[doc = include_str!("../../book/src/stern_brocot.md")]
pub mod stern_brocot {}
#[doc = include_str!("../../book/src/verify.md")]
pub mod verify {}
#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}

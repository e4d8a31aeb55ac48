//! The guide under `book/`, compiled so that its Rust snippets run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scalars.md")]
pub mod scalars {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/gv.md")]
pub mod gv {}
#[doc = include_str!("../../../book/src/fiber.md")]
pub mod fiber {}
#[doc = include_str!("../../../book/src/weil.md")]
pub mod weil {}
#[doc = include_str!("../../../book/src/tables.md")]
pub mod tables {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

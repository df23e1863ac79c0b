//! The chapters of the guide in `book/src`, one module each, so that
//! `cargo test --doc` runs every listing against the current library.
//! A failing doc-test names the module, and so the chapter, it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scalars.md")]
pub mod scalars {}
#[doc = include_str!("../../../book/src/systems.md")]
pub mod systems {}
#[doc = include_str!("../../../book/src/decompositions.md")]
pub mod decompositions {}
#[doc = include_str!("../../../book/src/faces.md")]
pub mod faces {}
#[doc = include_str!("../../../book/src/catalog.md")]
pub mod catalog {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}

//! Compiles the guide under `book/` as doc-tests, one module per chapter, so
//! every snippet in the book runs with `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/valuation.md")]
pub mod valuation {}
#[doc = include_str!("../../../book/src/integer-parts.md")]
pub mod integer_parts {}
#[doc = include_str!("../../../book/src/exponential-groups.md")]
pub mod exponential_groups {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

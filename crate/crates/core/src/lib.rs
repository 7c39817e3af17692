//! Exact arithmetic in generalized power series fields `k((G))`.
//!
//! The crate models `k((G))` for a coefficient field `k ∈ {ℚ, ℚ(√2)}` and a
//! presentable ordered abelian group `G` (a Hahn sum over a catalog chain),
//! restricted to finitely supported series. On top of the arithmetic it
//! provides the natural valuation and its toolkit (valuation ring, residue
//! map, additive and multiplicative decompositions), the canonical integer
//! part `ℤ + {negative-support series}` with an exact floor, and a checker
//! for the necessary conditions a value group must meet before its field can
//! carry an integer part that models Peano Arithmetic.
//!
//! ```
//! use hahnfield::syntax::{parse_series, SessionContext};
//!
//! let ctx = SessionContext::parse_carriers("field Rat; group HahnSum(Finite(1); Rat)").unwrap();
//! let x = parse_series("(1+t)*(1-t)", &ctx).unwrap();
//! assert_eq!(x.to_string(), "1 - t^{2}");
//! ```

pub mod cli;
pub mod error;
pub mod exp_analysis;
pub mod group;
pub mod integer_part;
pub mod sample;
pub mod scalar;
pub mod series;
pub mod syntax;
pub mod valuation;

pub use error::{Error, Result};
pub use group::{ArchClass, ChainOrder, ChainPoint, GroupElement, GroupPresentation};
pub use scalar::{FieldClass, Scalar};
pub use series::{Series, Valuation};

//! Exact alcove combinatorics for extended affine Weyl groups.
//!
//! The crate builds based root data for the classical and exceptional
//! families, realizes the extended affine Weyl group `X_* ⋊ W_0` with exact
//! rational arithmetic, and enumerates the admissible, permissible and
//! strongly permissible sets attached to a dominant cocharacter.

pub mod affine;
pub mod alcoves;
pub mod error;
pub mod musets;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod steinberg;
pub mod verify;

pub use affine::ExtAffineElement;
pub use error::{Error, Result};
pub use rational::{RationalVector, Q};
pub use rootsys::{build_root_datum, Family, FiniteWeylElement, RootDatum};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

//! Exact computations with braid-group cocycles over free-group rings.
//!
//! The crate covers
//!
//! * free groups `Γ_m`, the braid action on them, integer group rings and
//!   their Laurent reductions ([`algebra`], [`matrices`], [`braid`]);
//! * the monomial Picard–Lefschetz cocycle, the Magnus cocycle and the
//!   Burau, Tong–Yang–Ma, Gassner and linking reductions ([`cocycles`]);
//! * intersection matrices, the representation `ρ_N` and the induced braid
//!   action on intersection matrices ([`monodromy`]);
//! * exact planar geometry of admissible point configurations, the groupoid
//!   of straight-line paths with its character evaluator, and reconstruction
//!   of intersection matrices from straight-line data ([`geometry`],
//!   [`groupoid`], [`reconstruct`]).
//!
//! All arithmetic is exact.

pub mod algebra;
pub mod braid;
pub mod cocycles;
pub mod error;
pub mod geometry;
pub mod groupoid;
pub mod io;
pub mod matrices;
pub mod monodromy;
pub mod reconstruct;
pub mod selftest;

pub use error::{Error, Result};

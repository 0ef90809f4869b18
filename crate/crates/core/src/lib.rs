//! Exact subgroup counting for small finite groups.
//!
//! Groups are realized as dense multiplication tables ([`Group`]), their
//! subgroup lattices are enumerated exhaustively ([`lattice`]), and the
//! closed-form counts for abelian groups ([`abelian`]), the lower bounds for
//! non-nilpotent groups ([`bounds`]) and the classification of groups with few
//! subgroups ([`similarity`], [`catalog`]) are checked against that brute force.
//!
//! The exact-arithmetic formulas are generic over the integer scalar (see
//! [`Exact`]); [`Count`] and [`BigCount`] are the two concrete choices used
//! throughout.

pub mod abelian;
pub mod arith;
pub mod bounds;
pub mod catalog;
mod error;
pub mod expr;
pub mod group;
pub mod invariants;
pub mod iso;
pub mod lattice;
mod scalar;
pub mod similarity;

pub use abelian::AbelianShape;
pub use arith::FactoredOrder;
pub use error::{Error, Result};
pub use expr::GroupExpr;
pub use group::{order_cap, set_order_cap, Group, Permutation, DEFAULT_ORDER_CAP};
pub use lattice::{Lattice, LatticeSummary, SubgroupSet};
pub use scalar::Exact;
pub use similarity::SimilarityClass;

/// Machine-word subgroup count.
pub type Count = u64;

/// Arbitrary-precision subgroup count.
pub type BigCount = num_bigint::BigUint;

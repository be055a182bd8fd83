//! Fair and efficient completion of partially frozen allocations of
//! indivisible goods.
//!
//! An instance fixes a set of agents, a set of goods, a valuation profile
//! (binary additive, lexicographic, or general additive), and a *frozen*
//! partial allocation that pre-assigns some goods irrevocably. The library
//! decides whether the remaining goods can be allocated so that the final
//! allocation satisfies fairness and efficiency properties (EF1, PROP1,
//! maximin share, Pareto optimality), and constructs a witness allocation
//! when one exists.
//!
//! All arithmetic is exact: item values are arbitrary-precision integers and
//! proportionality thresholds are compared by cross-multiplication. The
//! [`oracle`] module provides an exhaustive ground-truth engine used to
//! cross-check every polynomial-time solver at desk scale.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod checkers;
pub mod graphs;
pub mod mms;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod solvers;

pub use num_bigint::BigUint;

pub use model::{
    Alpha, Completion, Instance, ModelError, PartialAllocation, SolveOutcome, SolveStatus,
    ValuationClass,
};

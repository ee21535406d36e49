//! Constrained fractional set programs on weighted graphs.
//!
//! A set program `min R(C)/S(C)` subject to volume bounds and a seed set is
//! solved through its tight continuous relaxation: Lovász extensions of the
//! numerator and denominator plus an exact penalty for the constraints. The
//! relaxation is minimized by RatioDCA, whose convex inner problems are solved
//! in the dual with FISTA. Optimal thresholding maps continuous iterates back
//! to vertex sets.
//!
//! Two applications come with builders: the constrained local normalized cut
//! and constrained maximum-density community detection. The unconstrained
//! density problem is also solved to global optimality with Dinkelbach
//! iterations over s-t min-cuts. A lazy random walk baseline and an
//! exhaustive oracle round out the toolbox.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod baselines;
pub mod constraints;
pub mod dc;
mod error;
pub mod graph;
pub mod inner;
pub mod lovasz;
mod math;
pub mod problems;
pub mod ratiodca;
pub mod setfn;

pub use error::{Error, Result};
pub use graph::{Graph, VertexWeights};

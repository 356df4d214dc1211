//! Basecondary functions: simplicial and circuital supports with their
//! orderings, the two evaluators, wall defects, convexifying multiples and
//! polytope reconstruction.

mod convexity;
mod eval;
mod supports;

pub use convexity::*;
pub use eval::*;
pub use supports::*;

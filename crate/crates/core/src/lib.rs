//! Exact computation of basecondary functions and polytopes, the Newton
//! polytopes of Morse discriminants of univariate Laurent polynomials, and
//! tropical Morse classification.

pub mod basecondary;
pub mod error;
pub mod fiber_morse;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod par;
pub mod polygon;
pub mod random;
pub mod rational;
pub mod secondary;
pub mod setfun;
pub mod subset;
pub mod tropical;

pub use error::{Error, Result};
pub use rational::Rational;

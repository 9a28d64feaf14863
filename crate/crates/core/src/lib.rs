//! Exact invariants of quadratic and quaternionic skew-hermitian forms over ℚ.

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod f2comb;
pub mod hermitian;
pub mod json;
pub mod lambda_ops;
pub mod pfister;
pub mod quadform;
pub mod quaternion;
pub mod rationals;
pub mod suites;

pub use error::{Error, Result};
pub use quadform::{DiagForm, FiltrationDegree, GWClass, WittProfile};
pub use rationals::{Place, Rat, SquareClass};

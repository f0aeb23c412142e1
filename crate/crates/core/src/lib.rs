//! Proto-norm families and Unital Norms of real finite-dimensional unital
//! algebras, with the accompanying functor checks, a spacetime anti-wedge
//! kernel, and geometric-mean regularization of linear inverse problems.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod antiwedge;
pub mod error;
pub mod functor;
pub mod linalg;
pub mod protonorm;
pub mod quadrature;
pub mod regularizer;
pub mod rng;
pub mod toeplitz;
pub mod unorm;

pub use algebra::{AlgebraDef, Element, InverseRule};
pub use error::{Error, Result};

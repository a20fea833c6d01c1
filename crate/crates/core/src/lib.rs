//! Exact computation of Frobenius-Euler and Bernoulli number families, their
//! character, twisted, `(h,q)` and p-adic variants, Dedekind-type sums and
//! Hardy-Berndt analogues, together with residual checkers for the
//! reciprocity, interpolation and distribution identities that relate them.

pub mod arith;
pub mod barnes;
pub mod characters;
pub mod classical;
pub mod dedekind;
pub mod error;
pub mod hardy;
pub mod hq;
pub mod lerch;
pub mod padic;
pub mod verify;

pub use error::{Error, Result};

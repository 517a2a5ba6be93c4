//! Quantum invariants, Dehn-filling geometry and saddle-point asymptotics
//! for rational surgeries W(p,q) on one component of the Whitehead link.
// `!(x < y)` is used deliberately so that NaN fails range checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod scalar;
pub mod special;
pub mod surgery;
pub mod xprec;

pub use error::{Error, Result};

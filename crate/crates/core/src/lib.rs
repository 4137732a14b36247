//! Implicitly closed fields and meadows over finite fields.
//!
//! The crate provides exact arithmetic in GF(p^n) and ℚ expanded with weak
//! inverses and weak prime roots, finite products of such fields, a small
//! term language with exhaustive model checking, dominion computation with
//! an independent homomorphism oracle, and a constructive amalgam builder.

pub mod amalgam;
pub mod crosscheck;
pub mod dominion;
pub mod error;
pub mod gf;
pub mod laws;
pub mod structure;
pub mod termlang;
pub mod wire;

pub use error::{Error, Result};

//! Exact arithmetic in GF(p^n) and ℚ, with the weak inverse and weak prime
//! root expansions.

mod embed;
mod field;
pub(crate) mod fp_poly;
mod poly;
mod rational;

pub use embed::{enumerate_embeddings, FieldEmbedding};
pub use field::{is_prime, make_field, FFElement, FieldSpec};
pub use poly::{minimal_polynomial, Polynomial};
pub use rational::Rational;

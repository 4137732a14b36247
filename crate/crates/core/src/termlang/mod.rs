//! Terms, equations, quasiequations and pp-formulas over the signature
//! {+, ·, −, 0, 1, *, r_p}: parsing, rendering, evaluation and exhaustive
//! satisfaction on finite algebras.

mod ast;
pub mod catalog;
mod eval;
mod gen;
mod parse;
mod sat;

pub use ast::{Equation, Formula, PPFormula, Parsed, Quasiequation, Term};
pub use eval::{eval, eval_in, Env};
pub(crate) use eval::Program;
pub use gen::random_term;
pub use parse::{parse, parse_equation, parse_pp, parse_term};
pub(crate) use sat::{pp_check_indices, Odometer};
pub use sat::{pp_check, satisfies, Assignment, Verdict};

//! Algebras as values: implicitly closed fields, finite products of them,
//! generated subalgebras, table-presented rings, ℚ, prime ideals and
//! homomorphisms between products.

mod algebra;
mod closure;
mod hom;
mod ideal;
mod ops;
mod product;
mod table;

pub use algebra::{Algebra, Element, Finite, DEFAULT_CAP};
pub use closure::{generator_var, sg_closure, Subalgebra};
pub use hom::{enumerate_homs, Hom};
pub use ideal::{prime_ideals, quotient, PrimeIdeal};
pub use ops::Operations;
pub use product::{PrimeSet, Product, Tuple};
pub use table::TableRing;

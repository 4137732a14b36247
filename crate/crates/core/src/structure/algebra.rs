use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{Operations, PrimeSet, Product, Subalgebra, TableRing, Tuple};
use crate::error::{Error, Result};
use crate::gf::{is_prime, FFElement, FieldSpec, Rational};

/// Default bound on carrier sizes for every exhaustive routine.
pub const DEFAULT_CAP: usize = 64;

/// A value in one of the supported carriers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Field(FFElement),
    Tuple(Tuple),
    Table(usize),
    Rational(Rational),
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Field(a) => write!(f, "{a}"),
            Element::Tuple(t) => write!(f, "{t:?}"),
            Element::Table(i) => write!(f, "#{i}"),
            Element::Rational(r) => write!(f, "{r}"),
        }
    }
}

impl Element {
    pub fn as_tuple(&self) -> Option<&Tuple> {
        match self {
            Element::Tuple(t) => Some(t),
            _ => None,
        }
    }
}

/// An algebra in the signature {+, ·, −, 0, 1, *, r_p : p ∈ P}.
#[derive(Clone, PartialEq, Eq)]
pub enum Algebra {
    /// A finite field with its implicitly closed expansion.
    Field { spec: FieldSpec, primes: PrimeSet },
    Product(Product),
    Subalgebra(Subalgebra),
    Table(TableRing),
    Rationals,
}

impl Algebra {
    /// GF(p^n)⁺ with P = {p}.
    pub fn field(spec: &FieldSpec) -> Self {
        Algebra::Field {
            spec: spec.clone(),
            primes: [spec.characteristic()].into(),
        }
    }

    pub fn field_with_primes(spec: &FieldSpec, primes: PrimeSet) -> Result<Self> {
        if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::NotPrime(q));
        }
        if !primes.contains(&spec.characteristic()) {
            return Err(Error::MissingPrime(spec.characteristic()));
        }
        Ok(Algebra::Field {
            spec: spec.clone(),
            primes,
        })
    }

    pub fn product(components: Vec<FieldSpec>, primes: PrimeSet) -> Result<Self> {
        Product::new(components, primes).map(Algebra::Product)
    }

    pub fn primes(&self) -> PrimeSet {
        match self {
            Algebra::Field { primes, .. } => primes.clone(),
            Algebra::Product(b) => b.primes().clone(),
            Algebra::Subalgebra(s) => s.ambient().primes().clone(),
            Algebra::Table(t) => t.primes(),
            Algebra::Rationals => PrimeSet::new(),
        }
    }

    /// `None` for ℚ or when the size overflows.
    pub fn size(&self) -> Option<usize> {
        match self {
            Algebra::Field { spec, .. } => usize::try_from(spec.order()).ok(),
            Algebra::Product(b) => b.size(),
            Algebra::Subalgebra(s) => Some(s.len()),
            Algebra::Table(t) => Some(t.size()),
            Algebra::Rationals => None,
        }
    }

    /// Additive order of 1 (0 for ℚ).
    pub fn characteristic(&self) -> u64 {
        match self {
            Algebra::Field { spec, .. } => spec.characteristic(),
            Algebra::Product(b) => lcm_of(b.components()),
            Algebra::Subalgebra(s) => lcm_of(s.ambient().components()),
            Algebra::Table(t) => t.characteristic(),
            Algebra::Rationals => 0,
        }
    }

    /// The same algebra viewed as an explicit product of fields, when it is one.
    pub fn as_product(&self) -> Option<Product> {
        match self {
            Algebra::Field { spec, primes } => {
                Some(Product::new(vec![spec.clone()], primes.clone()).expect("primes checked"))
            }
            Algebra::Product(b) => Some(b.clone()),
            _ => None,
        }
    }

    /// Single-field handles: a field, or a product with one component.
    pub fn is_icf(&self) -> bool {
        match self {
            Algebra::Field { .. } => true,
            Algebra::Product(b) => b.len() == 1,
            _ => false,
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (Algebra::Field { spec, .. }, Element::Field(a)) => a.spec() == spec,
            (Algebra::Product(b), Element::Tuple(t)) => b.contains(t),
            (Algebra::Subalgebra(s), Element::Tuple(t)) => s.contains(t),
            (Algebra::Table(r), Element::Table(i)) => *i < r.size(),
            (Algebra::Rationals, Element::Rational(_)) => true,
            _ => false,
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("{x:?} is not an element of {self}")))
        }
    }

    /// All elements in the canonical order (lexicographic on coefficient
    /// vectors, table index order for table rings).
    pub fn elements(&self, cap: usize) -> Result<Vec<Element>> {
        let size = self.size().ok_or(match self {
            Algebra::Rationals => Error::InfiniteCarrier,
            _ => Error::CapExceeded {
                size: usize::MAX,
                cap,
            },
        })?;
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        Ok(match self {
            Algebra::Field { spec, .. } => spec.elements().map(Element::Field).collect(),
            Algebra::Product(b) => b.elements(cap)?.into_iter().map(Element::Tuple).collect(),
            Algebra::Subalgebra(s) => s.carrier().iter().cloned().map(Element::Tuple).collect(),
            Algebra::Table(t) => (0..t.size()).map(Element::Table).collect(),
            Algebra::Rationals => unreachable!("size is None for the rationals"),
        })
    }

    fn field_op(
        &self,
        a: &Element,
        f: impl Fn(&FFElement) -> Result<FFElement>,
        t: impl Fn(&Tuple) -> Result<Tuple>,
        r: impl Fn(&Rational) -> Result<Rational>,
        i: impl Fn(&usize) -> Result<usize>,
    ) -> Result<Element> {
        self.check(a)?;
        Ok(match a {
            Element::Field(x) => Element::Field(f(x)?),
            Element::Tuple(x) => Element::Tuple(t(x)?),
            Element::Rational(x) => Element::Rational(r(x)?),
            Element::Table(x) => Element::Table(i(x)?),
        })
    }

    fn binary(
        &self,
        a: &Element,
        b: &Element,
        field: fn(&FFElement, &FFElement) -> Result<FFElement>,
        rational: fn(&Rational, &Rational) -> Rational,
        product: fn(&Product, &Tuple, &Tuple) -> Result<Tuple>,
        subalgebra: fn(&Subalgebra, &Tuple, &Tuple) -> Result<Tuple>,
        table: fn(&TableRing, &usize, &usize) -> Result<usize>,
    ) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (Algebra::Field { .. }, Element::Field(x), Element::Field(y)) => {
                Element::Field(field(x, y)?)
            }
            (Algebra::Product(p), Element::Tuple(x), Element::Tuple(y)) => {
                Element::Tuple(product(p, x, y)?)
            }
            (Algebra::Subalgebra(s), Element::Tuple(x), Element::Tuple(y)) => {
                Element::Tuple(subalgebra(s, x, y)?)
            }
            (Algebra::Table(t), Element::Table(x), Element::Table(y)) => {
                Element::Table(table(t, x, y)?)
            }
            (Algebra::Rationals, Element::Rational(x), Element::Rational(y)) => {
                Element::Rational(rational(x, y))
            }
            _ => unreachable!("membership checked above"),
        })
    }
}

fn lcm_of(components: &[FieldSpec]) -> u64 {
    components.iter().fold(1, |acc, c| {
        num_integer::lcm(acc, c.characteristic())
    })
}

impl Operations for Algebra {
    type Elem = Element;

    fn zero(&self) -> Element {
        match self {
            Algebra::Field { spec, .. } => Element::Field(spec.zero()),
            Algebra::Product(b) => Element::Tuple(b.zero()),
            Algebra::Subalgebra(s) => Element::Tuple(s.zero()),
            Algebra::Table(t) => Element::Table(t.zero()),
            Algebra::Rationals => Element::Rational(Rational::zero()),
        }
    }

    fn one(&self) -> Element {
        match self {
            Algebra::Field { spec, .. } => Element::Field(spec.one()),
            Algebra::Product(b) => Element::Tuple(b.one()),
            Algebra::Subalgebra(s) => Element::Tuple(s.one()),
            Algebra::Table(t) => Element::Table(t.one()),
            Algebra::Rationals => Element::Rational(Rational::one()),
        }
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.binary(
            a,
            b,
            FFElement::checked_add,
            |x, y| x + y,
            Product::add,
            Subalgebra::add,
            TableRing::add,
        )
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.binary(
            a,
            b,
            FFElement::checked_mul,
            |x, y| x * y,
            Product::mul,
            Subalgebra::mul,
            TableRing::mul,
        )
    }

    fn neg(&self, a: &Element) -> Result<Element> {
        self.field_op(
            a,
            |x| Ok(-x),
            |x| self.tuple_op(x, |alg, t| alg.neg(t), |s, t| s.neg(t)),
            |x| Ok(-x),
            |x| self.table().neg(x),
        )
    }

    fn star(&self, a: &Element) -> Result<Element> {
        self.field_op(
            a,
            |x| Ok(x.weak_inverse()),
            |x| self.tuple_op(x, |alg, t| alg.star(t), |s, t| s.star(t)),
            |x| Ok(x.weak_inverse()),
            |x| self.table().star(x),
        )
    }

    fn root(&self, p: u64, a: &Element) -> Result<Element> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let in_signature = self.primes().contains(&p);
        self.field_op(
            a,
            |x| {
                if in_signature {
                    x.weak_root(p)
                } else {
                    Ok(x.spec().zero())
                }
            },
            |x| self.tuple_op(x, |alg, t| alg.root(p, t), |s, t| s.root(p, t)),
            |x| x.weak_root(p),
            |x| self.table().root(p, x),
        )
    }
}

impl Algebra {
    fn tuple_op(
        &self,
        x: &Tuple,
        product: impl Fn(&Product, &Tuple) -> Result<Tuple>,
        subalgebra: impl Fn(&Subalgebra, &Tuple) -> Result<Tuple>,
    ) -> Result<Tuple> {
        match self {
            Algebra::Product(b) => product(b, x),
            Algebra::Subalgebra(s) => subalgebra(s, x),
            _ => unreachable!("tuples only live in products and subalgebras"),
        }
    }

    fn table(&self) -> &TableRing {
        match self {
            Algebra::Table(t) => t,
            _ => unreachable!("table indices only live in table rings"),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Field { spec, .. } => write!(f, "{spec}+"),
            Algebra::Product(b) => write!(f, "{b}"),
            Algebra::Subalgebra(s) => write!(f, "subalgebra of {} ({} elements)", s.ambient(), s.len()),
            Algebra::Table(t) => write!(f, "table ring of size {}", t.size()),
            Algebra::Rationals => write!(f, "Q"),
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite algebra compiled to operation tables, together with the map
/// between table indices and elements. Indices follow the canonical
/// element order.
#[derive(Clone, Debug)]
pub struct Finite {
    algebra: Algebra,
    tables: TableRing,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl Finite {
    /// Errors with `InfiniteCarrier` for ℚ and `CapExceeded` above `cap`.
    pub fn new(algebra: &Algebra, cap: usize) -> Result<Self> {
        let elements = algebra.elements(cap)?;
        let index: HashMap<Element, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let tables = match algebra {
            Algebra::Table(t) => t.clone(),
            _ => {
                let n = elements.len();
                let lookup = |e: Element| -> Result<usize> {
                    index.get(&e).copied().ok_or_else(|| {
                        Error::NotSubalgebra(format!("{e:?} escapes the carrier"))
                    })
                };
                let mut add = Vec::with_capacity(n * n);
                let mut mul = Vec::with_capacity(n * n);
                for a in &elements {
                    for b in &elements {
                        add.push(lookup(algebra.add(a, b)?)?);
                        mul.push(lookup(algebra.mul(a, b)?)?);
                    }
                }
                let unary = |f: &dyn Fn(&Element) -> Result<Element>| -> Result<Vec<usize>> {
                    elements.iter().map(|a| lookup(f(a)?)).collect()
                };
                let neg = unary(&|a| algebra.neg(a))?;
                let star = unary(&|a| algebra.star(a))?;
                let mut roots = BTreeMap::new();
                for p in algebra.primes() {
                    roots.insert(p, unary(&|a| algebra.root(p, a))?);
                }
                TableRing::new(
                    n,
                    lookup(algebra.zero())?,
                    lookup(algebra.one())?,
                    add,
                    mul,
                    neg,
                    Some(star),
                    roots,
                )?
            }
        };
        Ok(Finite {
            algebra: algebra.clone(),
            tables,
            elements,
            index,
        })
    }

    /// Compiles with [`DEFAULT_CAP`].
    pub fn of(algebra: &Algebra) -> Result<Self> {
        Finite::new(algebra, DEFAULT_CAP)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn tables(&self) -> &TableRing {
        &self.tables
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Result<usize> {
        self.index
            .get(e)
            .copied()
            .ok_or_else(|| Error::SpecMismatch(format!("{e:?} is not an element of {}", self.algebra)))
    }
}

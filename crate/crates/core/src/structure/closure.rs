use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::{Operations, Product, Tuple};
use crate::error::{Error, Result};
use crate::termlang::Term;

/// Name of the variable standing for the i-th generator in witness terms.
pub fn generator_var(i: usize) -> String {
    format!("g{i}")
}

/// The subalgebra of a product generated by a set of tuples, with one
/// witnessing term per element.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    ambient: Product,
    carrier: Vec<Tuple>,
    index: HashMap<Tuple, usize>,
    generators: Vec<Tuple>,
    witnesses: Vec<Term>,
}

impl PartialEq for Subalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.carrier == other.carrier
    }
}

impl Eq for Subalgebra {}

impl Hash for Subalgebra {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.carrier.hash(state);
    }
}

impl Subalgebra {
    pub fn ambient(&self) -> &Product {
        &self.ambient
    }

    /// Sorted carrier.
    pub fn carrier(&self) -> &[Tuple] {
        &self.carrier
    }

    pub fn generators(&self) -> &[Tuple] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn contains(&self, x: &[crate::gf::FFElement]) -> bool {
        self.index.contains_key(x)
    }

    /// A term over the generator variables `g0, g1, …` that evaluates to `x`.
    pub fn witness(&self, x: &[crate::gf::FFElement]) -> Option<&Term> {
        self.index.get(x).map(|&i| &self.witnesses[i])
    }

    fn inside(&self, x: Tuple) -> Result<Tuple> {
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(Error::NotSubalgebra(format!("{x:?} escapes the carrier")))
        }
    }

    fn check(&self, x: &Tuple) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("{x:?} is not in the subalgebra")))
        }
    }
}

impl Operations for Subalgebra {
    type Elem = Tuple;

    fn zero(&self) -> Tuple {
        self.ambient.zero()
    }

    fn one(&self) -> Tuple {
        self.ambient.one()
    }

    fn add(&self, a: &Tuple, b: &Tuple) -> Result<Tuple> {
        self.check(a)?;
        self.check(b)?;
        self.inside(self.ambient.add(a, b)?)
    }

    fn mul(&self, a: &Tuple, b: &Tuple) -> Result<Tuple> {
        self.check(a)?;
        self.check(b)?;
        self.inside(self.ambient.mul(a, b)?)
    }

    fn neg(&self, a: &Tuple) -> Result<Tuple> {
        self.check(a)?;
        self.inside(self.ambient.neg(a)?)
    }

    fn star(&self, a: &Tuple) -> Result<Tuple> {
        self.check(a)?;
        self.inside(self.ambient.star(a)?)
    }

    fn root(&self, p: u64, a: &Tuple) -> Result<Tuple> {
        self.check(a)?;
        self.inside(self.ambient.root(p, a)?)
    }
}

/// Least subset of `ambient` containing `gens`, 0 and 1 and closed under
/// +, ·, −, * and r_p for every p in the ambient prime set.
///
/// Worklist fixpoint in breadth-first order, so each element is witnessed by
/// one of the first terms that reaches it.
pub fn sg_closure(ambient: &Product, gens: &[Tuple], cap: usize) -> Result<Subalgebra> {
    for g in gens {
        ambient.check(g)?;
    }
    let mut list: Vec<(Tuple, Term)> = Vec::new();
    let mut seen: HashMap<Tuple, usize> = HashMap::new();
    let mut push = |x: Tuple, t: Term, list: &mut Vec<(Tuple, Term)>| -> Result<()> {
        if !seen.contains_key(&x) {
            if list.len() == cap {
                return Err(Error::CapExceeded {
                    size: list.len() + 1,
                    cap,
                });
            }
            seen.insert(x.clone(), list.len());
            list.push((x, t));
        }
        Ok(())
    };
    push(ambient.zero(), Term::Zero, &mut list)?;
    push(ambient.one(), Term::One, &mut list)?;
    for (i, g) in gens.iter().enumerate() {
        push(g.clone(), Term::Var(generator_var(i)), &mut list)?;
    }
    let primes: Vec<u64> = ambient.primes().iter().copied().collect();
    let mut next = 0;
    while next < list.len() {
        let (x, t) = list[next].clone();
        push(ambient.neg(&x)?, Term::neg(t.clone()), &mut list)?;
        push(ambient.star(&x)?, Term::star(t.clone()), &mut list)?;
        for &p in &primes {
            push(ambient.root(p, &x)?, Term::Root(p, Box::new(t.clone())), &mut list)?;
        }
        for j in 0..=next {
            let (y, s) = list[j].clone();
            push(ambient.add(&x, &y)?, Term::add(t.clone(), s.clone()), &mut list)?;
            push(ambient.mul(&x, &y)?, Term::mul(t.clone(), s), &mut list)?;
        }
        next += 1;
    }
    list.sort_by(|a, b| a.0.cmp(&b.0));
    let index = list
        .iter()
        .enumerate()
        .map(|(i, (x, _))| (x.clone(), i))
        .collect();
    let (carrier, witnesses) = list.into_iter().unzip();
    Ok(Subalgebra {
        ambient: ambient.clone(),
        carrier,
        index,
        generators: gens.to_vec(),
        witnesses,
    })
}

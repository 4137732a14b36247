use std::collections::BTreeSet;
use std::fmt;

use super::Operations;
use crate::error::{Error, Result};
use crate::gf::{is_prime, FFElement, FieldSpec};

pub type PrimeSet = BTreeSet<u64>;

pub type Tuple = Vec<FFElement>;

/// A finite direct product of implicitly closed finite fields. Operations,
/// including `*` and every `r_p`, act coordinatewise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Product {
    components: Vec<FieldSpec>,
    primes: PrimeSet,
}

impl Product {
    /// Errors with `MissingPrime` when a component characteristic is not in
    /// `primes`, and `NotPrime` when `primes` contains a composite.
    pub fn new(components: Vec<FieldSpec>, primes: PrimeSet) -> Result<Self> {
        if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::NotPrime(q));
        }
        if let Some(c) = components
            .iter()
            .find(|c| !primes.contains(&c.characteristic()))
        {
            return Err(Error::MissingPrime(c.characteristic()));
        }
        Ok(Product { components, primes })
    }

    /// A product whose prime set is exactly its component characteristics.
    pub fn of(components: Vec<FieldSpec>) -> Self {
        let primes = components.iter().map(FieldSpec::characteristic).collect();
        Product { components, primes }
    }

    pub fn components(&self) -> &[FieldSpec] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    /// Number of elements; `None` on overflow.
    pub fn size(&self) -> Option<usize> {
        self.components
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(usize::try_from(c.order()).ok()?))
    }

    pub fn check_size(&self, cap: usize) -> Result<usize> {
        match self.size() {
            Some(s) if s <= cap => Ok(s),
            Some(s) => Err(Error::CapExceeded { size: s, cap }),
            None => Err(Error::CapExceeded {
                size: usize::MAX,
                cap,
            }),
        }
    }

    /// All tuples in lexicographic order.
    pub fn elements(&self, cap: usize) -> Result<Vec<Tuple>> {
        let size = self.check_size(cap)?;
        let mut out = Vec::with_capacity(size);
        for mut index in 0..size as u64 {
            let mut tuple = Vec::with_capacity(self.len());
            for c in self.components.iter().rev() {
                tuple.push(c.element_at(index % c.order()));
                index /= c.order();
            }
            tuple.reverse();
            out.push(tuple);
        }
        Ok(out)
    }

    pub fn contains(&self, x: &[FFElement]) -> bool {
        x.len() == self.len() && x.iter().zip(&self.components).all(|(a, c)| a.spec() == c)
    }

    pub fn check(&self, x: &[FFElement]) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("{x:?} is not an element of {self}")))
        }
    }

    fn zip_with(
        &self,
        a: &[FFElement],
        b: &[FFElement],
        f: impl Fn(&FFElement, &FFElement) -> Result<FFElement>,
    ) -> Result<Tuple> {
        self.check(a)?;
        self.check(b)?;
        a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
    }

    fn map(&self, a: &[FFElement], f: impl Fn(&FFElement) -> Result<FFElement>) -> Result<Tuple> {
        self.check(a)?;
        a.iter().map(f).collect()
    }
}

impl Operations for Product {
    type Elem = Tuple;

    fn zero(&self) -> Tuple {
        self.components.iter().map(FieldSpec::zero).collect()
    }

    fn one(&self) -> Tuple {
        self.components.iter().map(FieldSpec::one).collect()
    }

    fn add(&self, a: &Tuple, b: &Tuple) -> Result<Tuple> {
        self.zip_with(a, b, FFElement::checked_add)
    }

    fn mul(&self, a: &Tuple, b: &Tuple) -> Result<Tuple> {
        self.zip_with(a, b, FFElement::checked_mul)
    }

    fn neg(&self, a: &Tuple) -> Result<Tuple> {
        self.map(a, |x| Ok(-x))
    }

    fn star(&self, a: &Tuple) -> Result<Tuple> {
        self.map(a, |x| Ok(x.weak_inverse()))
    }

    fn root(&self, p: u64, a: &Tuple) -> Result<Tuple> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !self.primes.contains(&p) {
            self.check(a)?;
            return Ok(self.zero());
        }
        self.map(a, |x| x.weak_root(p))
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", names.join(" x "))
    }
}

impl fmt::Debug for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} P={:?}", self.primes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn gf(p: u64, n: usize) -> FieldSpec {
        make_field(p, n).unwrap()
    }

    #[test]
    fn root_acts_per_characteristic() {
        let b = Product::new(vec![gf(2, 1), gf(3, 1)], [2, 3].into()).unwrap();
        let x = vec![gf(2, 1).one(), gf(3, 1).int(2)];
        assert_eq!(b.root(2, &x).unwrap(), vec![gf(2, 1).one(), gf(3, 1).zero()]);
    }

    #[test]
    fn missing_prime() {
        assert_eq!(
            Product::new(vec![gf(2, 1), gf(3, 1)], [2].into()).unwrap_err(),
            Error::MissingPrime(3)
        );
    }

    #[test]
    fn empty_product_is_trivial() {
        let t = Product::of(vec![]);
        assert_eq!(t.elements(64).unwrap(), vec![Vec::<FFElement>::new()]);
        assert_eq!(t.zero(), t.one());
    }

    #[test]
    fn root_outside_signature_is_zero() {
        let b = Product::of(vec![gf(2, 2)]);
        let x = vec![gf(2, 2).generator()];
        assert_eq!(b.root(5, &x).unwrap(), b.zero());
        assert_eq!(b.root(2, &x).unwrap(), vec![gf(2, 2).element(&[1, 1]).unwrap()]);
    }

    #[test]
    fn elements_are_sorted() {
        let b = Product::of(vec![gf(2, 1), gf(3, 1)]);
        let all = b.elements(64).unwrap();
        assert_eq!(all.len(), 6);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
        assert!(b.elements(5).is_err());
    }
}

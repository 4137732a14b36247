use std::collections::BTreeMap;

use super::{Operations, PrimeSet};
use crate::error::{Error, Result};
use crate::gf::is_prime;

/// A finite algebra given by explicit operation tables over `0..size`.
///
/// Binary tables are row-major: `add[a * size + b] = a + b`. The `*` table is
/// optional; root tables exist only for the primes listed in `roots`, and all
/// other `r_p` are the constant-zero map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableRing {
    size: usize,
    zero: usize,
    one: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    star: Option<Vec<usize>>,
    roots: BTreeMap<u64, Vec<usize>>,
}

fn check_unary(name: &str, table: &[usize], size: usize) -> Result<()> {
    if table.len() != size {
        return Err(Error::BadTable(format!(
            "{name} table has {} entries, expected {size}",
            table.len()
        )));
    }
    if let Some(v) = table.iter().find(|&&v| v >= size) {
        return Err(Error::BadTable(format!("{name} table entry {v} out of range")));
    }
    Ok(())
}

impl TableRing {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        size: usize,
        zero: usize,
        one: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        neg: Vec<usize>,
        star: Option<Vec<usize>>,
        roots: BTreeMap<u64, Vec<usize>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::BadTable("empty carrier".into()));
        }
        if zero >= size || one >= size {
            return Err(Error::BadTable("constant out of range".into()));
        }
        check_unary("+", &add, size * size)?;
        check_unary("*", &mul, size * size)?;
        check_unary("-", &neg, size)?;
        if let Some(s) = &star {
            check_unary("star", s, size)?;
        }
        for (&p, table) in &roots {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            check_unary(&format!("root {p}"), table, size)?;
        }
        Ok(TableRing {
            size,
            zero,
            one,
            add,
            mul,
            neg,
            star,
            roots,
        })
    }

    /// ℤ/nℤ with optional candidate tables for `*` and the roots.
    pub fn zn(n: usize, star: Option<Vec<usize>>, roots: BTreeMap<u64, Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadTable("Z/0 is infinite".into()));
        }
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
        let neg = (0..n).map(|a| (n - a) % n).collect();
        TableRing::new(n, 0, 1 % n, add, mul, neg, star, roots)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn one_index(&self) -> usize {
        self.one
    }

    pub fn add_at(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul_at(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn neg_at(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    pub fn star_table(&self) -> Option<&[usize]> {
        self.star.as_deref()
    }

    pub fn root_table(&self, p: u64) -> Option<&[usize]> {
        self.roots.get(&p).map(Vec::as_slice)
    }

    pub fn primes(&self) -> PrimeSet {
        self.roots.keys().copied().collect()
    }

    /// Additive order of 1.
    pub fn characteristic(&self) -> u64 {
        let mut k = 1;
        let mut acc = self.one;
        while acc != self.zero {
            acc = self.add_at(acc, self.one);
            k += 1;
        }
        k
    }

    /// True when 0 ≠ 1 and every nonzero element has a multiplicative inverse.
    pub fn is_field(&self) -> bool {
        self.zero != self.one
            && (0..self.size)
                .filter(|&a| a != self.zero)
                .all(|a| (0..self.size).any(|b| self.mul_at(a, b) == self.one))
    }

    pub fn with_add_entry(mut self, a: usize, b: usize, value: usize) -> Result<Self> {
        self.set(a, b, value, true)?;
        Ok(self)
    }

    pub fn with_mul_entry(mut self, a: usize, b: usize, value: usize) -> Result<Self> {
        self.set(a, b, value, false)?;
        Ok(self)
    }

    fn set(&mut self, a: usize, b: usize, value: usize, add: bool) -> Result<()> {
        if a >= self.size || b >= self.size || value >= self.size {
            return Err(Error::BadTable("entry out of range".into()));
        }
        let slot = a * self.size + b;
        if add {
            self.add[slot] = value;
        } else {
            self.mul[slot] = value;
        }
        Ok(())
    }

    pub fn with_neg(mut self, neg: Vec<usize>) -> Result<Self> {
        check_unary("-", &neg, self.size)?;
        self.neg = neg;
        Ok(self)
    }

    pub fn with_star(mut self, star: Option<Vec<usize>>) -> Result<Self> {
        if let Some(s) = &star {
            check_unary("star", s, self.size)?;
        }
        self.star = star;
        Ok(self)
    }

    /// Replaces (or removes, with `None`) the root table for `p`.
    pub fn with_root(mut self, p: u64, table: Option<Vec<usize>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match table {
            Some(t) => {
                check_unary(&format!("root {p}"), &t, self.size)?;
                self.roots.insert(p, t);
            }
            None => {
                self.roots.remove(&p);
            }
        }
        Ok(self)
    }

    fn check_index(&self, a: usize) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!(
                "index {a} outside a table of size {}",
                self.size
            )))
        }
    }
}

impl Operations for TableRing {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn add(&self, a: &usize, b: &usize) -> Result<usize> {
        self.check_index(*a)?;
        self.check_index(*b)?;
        Ok(self.add_at(*a, *b))
    }

    fn mul(&self, a: &usize, b: &usize) -> Result<usize> {
        self.check_index(*a)?;
        self.check_index(*b)?;
        Ok(self.mul_at(*a, *b))
    }

    fn neg(&self, a: &usize) -> Result<usize> {
        self.check_index(*a)?;
        Ok(self.neg[*a])
    }

    fn star(&self, a: &usize) -> Result<usize> {
        self.check_index(*a)?;
        self.star
            .as_ref()
            .map(|s| s[*a])
            .ok_or_else(|| Error::MissingOperation("star".into()))
    }

    fn root(&self, p: u64, a: &usize) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        self.check_index(*a)?;
        Ok(self.roots.get(&p).map_or(self.zero, |t| t[*a]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_characteristic() {
        assert_eq!(TableRing::zn(6, None, BTreeMap::new()).unwrap().characteristic(), 6);
        assert_eq!(TableRing::zn(1, None, BTreeMap::new()).unwrap().characteristic(), 1);
    }

    #[test]
    fn bad_tables() {
        assert!(matches!(
            TableRing::zn(4, Some(vec![0, 1, 2]), BTreeMap::new()),
            Err(Error::BadTable(_))
        ));
        assert!(matches!(
            TableRing::zn(4, Some(vec![0, 1, 2, 4]), BTreeMap::new()),
            Err(Error::BadTable(_))
        ));
        assert!(matches!(
            TableRing::zn(2, None, [(4, vec![0, 1])].into()),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn fields_among_zn() {
        let is_field = |n| TableRing::zn(n, None, BTreeMap::new()).unwrap().is_field();
        assert!(is_field(5));
        assert!(!is_field(4));
        assert!(!is_field(1));
    }

    #[test]
    fn missing_star() {
        let r = TableRing::zn(4, None, BTreeMap::new()).unwrap();
        assert_eq!(r.star(&2), Err(Error::MissingOperation("star".into())));
        assert_eq!(r.root(2, &3), Ok(0));
    }
}

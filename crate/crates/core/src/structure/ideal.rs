use super::{Algebra, Hom, Product};
use crate::error::{Error, Result};
use crate::gf::{FFElement, FieldEmbedding, FieldSpec};

/// The kernel `{x : x_i = 0}` of the projection onto component `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    of: Product,
    component: usize,
}

impl PrimeIdeal {
    pub fn new(of: &Product, component: usize) -> Result<Self> {
        if component >= of.len() {
            return Err(Error::SpecMismatch(format!(
                "component {component} out of range for {of}"
            )));
        }
        Ok(PrimeIdeal {
            of: of.clone(),
            component,
        })
    }

    pub fn product(&self) -> &Product {
        &self.of
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn contains(&self, x: &[FFElement]) -> bool {
        self.of.contains(x) && x[self.component].is_zero()
    }
}

/// One prime ideal per component. Only explicit products of fields (and
/// single fields) are accepted.
pub fn prime_ideals(b: &Algebra) -> Result<Vec<PrimeIdeal>> {
    let product = b.as_product().ok_or(Error::NotProduct)?;
    (0..product.len())
        .map(|i| PrimeIdeal::new(&product, i))
        .collect()
}

/// `B/I` identified with the component field, together with the quotient
/// map `b ↦ b_i` (a surjective ring hom with kernel `I`).
pub fn quotient(b: &Product, ideal: &PrimeIdeal) -> Result<(FieldSpec, Hom)> {
    if ideal.product() != b {
        return Err(Error::SpecMismatch("ideal belongs to another product".into()));
    }
    let field = b.components()[ideal.component()].clone();
    let target = Product::new(vec![field.clone()], b.primes().clone())?;
    let projection = Hom::from_parts(
        b,
        &target,
        vec![ideal.component()],
        vec![FieldEmbedding::identity(&field)],
    );
    Ok((field, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::structure::{TableRing, DEFAULT_CAP};
    use std::collections::BTreeMap;

    fn gf(p: u64, n: usize) -> FieldSpec {
        make_field(p, n).unwrap()
    }

    #[test]
    fn one_ideal_per_component() {
        let count = |specs: Vec<FieldSpec>| prime_ideals(&Algebra::Product(Product::of(specs))).unwrap().len();
        assert_eq!(prime_ideals(&Algebra::field(&gf(2, 2))).unwrap().len(), 1);
        assert_eq!(count(vec![gf(2, 1), gf(3, 1)]), 2);
        assert_eq!(count(vec![gf(2, 1), gf(2, 1), gf(5, 1)]), 3);
    }

    #[test]
    fn not_a_product() {
        let z4 = Algebra::Table(TableRing::zn(4, None, BTreeMap::new()).unwrap());
        assert_eq!(prime_ideals(&z4).unwrap_err(), Error::NotProduct);
        assert_eq!(prime_ideals(&Algebra::Rationals).unwrap_err(), Error::NotProduct);
    }

    #[test]
    fn quotient_by_first_kernel() {
        let b = Product::of(vec![gf(2, 1), gf(3, 1)]);
        let ideal = PrimeIdeal::new(&b, 0).unwrap();
        let (field, proj) = quotient(&b, &ideal).unwrap();
        assert_eq!(field, gf(2, 1));
        // kernel of the projection is exactly the ideal
        for x in b.elements(DEFAULT_CAP).unwrap() {
            let image = proj.apply(&x).unwrap();
            assert_eq!(image[0].is_zero(), ideal.contains(&x));
        }
    }
}

use std::collections::HashSet;
use std::fmt;

use super::{Operations, Product, Tuple, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::gf::{enumerate_embeddings, FieldEmbedding};

/// A unital ring homomorphism between finite products of finite fields.
///
/// Component `j` of the target receives `embeddings[j]` applied to
/// component `tau[j]` of the source. Every such map also commutes with `*`
/// and each `r_p`, because field embeddings do.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hom {
    src: Product,
    dst: Product,
    tau: Vec<usize>,
    embeddings: Vec<FieldEmbedding>,
}

impl Hom {
    /// Validates the component data and, when the source has at most
    /// [`DEFAULT_CAP`] elements, checks preservation of +, ·, −, 0, 1 on every
    /// element pair.
    pub fn new(
        src: &Product,
        dst: &Product,
        tau: Vec<usize>,
        embeddings: Vec<FieldEmbedding>,
    ) -> Result<Self> {
        if tau.len() != dst.len() || embeddings.len() != dst.len() {
            return Err(Error::SpecMismatch(format!(
                "a hom into {dst} needs {} component maps",
                dst.len()
            )));
        }
        for (j, (&i, e)) in tau.iter().zip(&embeddings).enumerate() {
            let Some(from) = src.components().get(i) else {
                return Err(Error::SpecMismatch(format!("component {i} out of range for {src}")));
            };
            if e.src() != from || e.dst() != &dst.components()[j] {
                return Err(Error::SpecMismatch(format!(
                    "embedding {e:?} does not map component {i} of {src} to component {j} of {dst}"
                )));
            }
        }
        let hom = Hom::from_parts(src, dst, tau, embeddings);
        if src.size().is_some_and(|s| s <= DEFAULT_CAP) {
            hom.verify_ring_hom(DEFAULT_CAP)?;
        }
        Ok(hom)
    }

    /// Assumes the component data is consistent.
    pub(crate) fn from_parts(
        src: &Product,
        dst: &Product,
        tau: Vec<usize>,
        embeddings: Vec<FieldEmbedding>,
    ) -> Self {
        Hom {
            src: src.clone(),
            dst: dst.clone(),
            tau,
            embeddings,
        }
    }

    pub fn identity(b: &Product) -> Self {
        Hom::from_parts(
            b,
            b,
            (0..b.len()).collect(),
            b.components().iter().map(FieldEmbedding::identity).collect(),
        )
    }

    pub fn src(&self) -> &Product {
        &self.src
    }

    pub fn dst(&self) -> &Product {
        &self.dst
    }

    /// For each target component, the source component it reads.
    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn embeddings(&self) -> &[FieldEmbedding] {
        &self.embeddings
    }

    pub fn apply(&self, x: &[crate::gf::FFElement]) -> Result<Tuple> {
        self.src.check(x)?;
        Ok(self
            .tau
            .iter()
            .zip(&self.embeddings)
            .map(|(&i, e)| e.apply(&x[i]))
            .collect())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Hom) -> Result<Hom> {
        if next.src != self.dst {
            return Err(Error::SpecMismatch(format!(
                "cannot compose a hom out of {} after one into {}",
                next.src, self.dst
            )));
        }
        let mut tau = Vec::with_capacity(next.dst.len());
        let mut embeddings = Vec::with_capacity(next.dst.len());
        for (&k, e) in next.tau.iter().zip(&next.embeddings) {
            tau.push(self.tau[k]);
            embeddings.push(self.embeddings[k].then(e)?);
        }
        Ok(Hom::from_parts(&self.src, &next.dst, tau, embeddings))
    }

    /// Injectivity, checked over every source element.
    pub fn is_embedding(&self, cap: usize) -> Result<bool> {
        let mut seen = HashSet::new();
        for x in self.src.elements(cap)? {
            if !seen.insert(self.apply(&x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exhaustive check that the map preserves the ring signature.
    pub fn verify_ring_hom(&self, cap: usize) -> Result<()> {
        let fail = |what: &str| Err(Error::NotEmbedding(format!("map does not preserve {what}")));
        if self.apply(&self.src.zero())? != self.dst.zero() {
            return fail("0");
        }
        if self.apply(&self.src.one())? != self.dst.one() {
            return fail("1");
        }
        let elems = self.src.elements(cap)?;
        let images: Vec<Tuple> = elems.iter().map(|x| self.apply(x)).collect::<Result<_>>()?;
        for (x, hx) in elems.iter().zip(&images) {
            if self.apply(&self.src.neg(x)?)? != self.dst.neg(hx)? {
                return fail("-");
            }
            for (y, hy) in elems.iter().zip(&images) {
                if self.apply(&self.src.add(x, y)?)? != self.dst.add(hx, hy)? {
                    return fail("+");
                }
                if self.apply(&self.src.mul(x, y)?)? != self.dst.mul(hx, hy)? {
                    return fail("*");
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check that the map commutes with `*` and with `r_p` for
    /// every prime in either endpoint's signature.
    pub fn preserves_expansions(&self, cap: usize) -> Result<bool> {
        let primes: Vec<u64> = self.src.primes().union(self.dst.primes()).copied().collect();
        for x in self.src.elements(cap)? {
            let hx = self.apply(&x)?;
            if self.apply(&self.src.star(&x)?)? != self.dst.star(&hx)? {
                return Ok(false);
            }
            for &p in &primes {
                if self.apply(&self.src.root(p, &x)?)? != self.dst.root(p, &hx)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({} -> {}, tau={:?}, {:?})", self.src, self.dst, self.tau, self.embeddings)
    }
}

/// Every unital ring homomorphism `b → c`: one per choice of source
/// component for each target component and field embedding between them.
pub fn enumerate_homs(b: &Product, c: &Product, cap: usize) -> Result<Vec<Hom>> {
    b.check_size(cap)?;
    c.check_size(cap)?;
    // options[j][i] = embeddings from component i of b into component j of c
    let options: Vec<Vec<Vec<FieldEmbedding>>> = c
        .components()
        .iter()
        .map(|cj| {
            b.components()
                .iter()
                .map(|bi| enumerate_embeddings(bi, cj).unwrap_or_default())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut tau = Vec::with_capacity(c.len());
    let mut embs = Vec::with_capacity(c.len());
    extend(b, c, &options, &mut tau, &mut embs, &mut out);
    Ok(out)
}

fn extend(
    b: &Product,
    c: &Product,
    options: &[Vec<Vec<FieldEmbedding>>],
    tau: &mut Vec<usize>,
    embs: &mut Vec<FieldEmbedding>,
    out: &mut Vec<Hom>,
) {
    let j = tau.len();
    if j == c.len() {
        out.push(Hom::from_parts(b, c, tau.clone(), embs.clone()));
        return;
    }
    for (i, choices) in options[j].iter().enumerate() {
        for e in choices {
            tau.push(i);
            embs.push(e.clone());
            extend(b, c, options, tau, embs, out);
            tau.pop();
            embs.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{make_field, FieldSpec};

    fn gf(p: u64, n: usize) -> FieldSpec {
        make_field(p, n).unwrap()
    }

    #[test]
    fn counts() {
        let p = |v: Vec<FieldSpec>| Product::of(v);
        assert_eq!(enumerate_homs(&p(vec![gf(2, 2)]), &p(vec![gf(2, 2)]), 64).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&p(vec![gf(2, 2)]), &p(vec![gf(2, 3)]), 64).unwrap().len(), 0);
        assert_eq!(
            enumerate_homs(&p(vec![gf(2, 1), gf(2, 1)]), &p(vec![gf(2, 1)]), 64).unwrap().len(),
            2
        );
    }

    #[test]
    fn identity_and_projection() {
        let f4 = Product::of(vec![gf(2, 2)]);
        assert!(Hom::identity(&f4).is_embedding(64).unwrap());
        let b = Product::of(vec![gf(2, 1), gf(2, 1)]);
        let c = Product::of(vec![gf(2, 1)]);
        let proj = Hom::new(&b, &c, vec![0], vec![FieldEmbedding::identity(&gf(2, 1))]).unwrap();
        assert!(!proj.is_embedding(64).unwrap());
    }

    #[test]
    fn frobenius_squared_is_identity() {
        let f = gf(2, 2);
        let b = Product::of(vec![f.clone()]);
        let frob = Hom::new(&b, &b, vec![0], vec![FieldEmbedding::identity(&f).twist(1)]).unwrap();
        assert_ne!(frob, Hom::identity(&b));
        assert_eq!(frob.then(&frob).unwrap(), Hom::identity(&b));
    }

    #[test]
    fn rejects_inconsistent_parts() {
        let b = Product::of(vec![gf(2, 2)]);
        let c = Product::of(vec![gf(2, 4)]);
        let wrong = FieldEmbedding::identity(&gf(2, 2));
        assert!(matches!(Hom::new(&b, &c, vec![0], vec![wrong]), Err(Error::SpecMismatch(_))));
        assert!(Hom::new(&b, &c, vec![], vec![]).is_err());
    }

    #[test]
    fn homs_preserve_expansions() {
        let b = Product::of(vec![gf(2, 1), gf(3, 1)]);
        let c = Product::new(vec![gf(3, 2), gf(2, 2)], [2, 3, 5].into()).unwrap();
        let homs = enumerate_homs(&b, &c, 64).unwrap();
        assert!(!homs.is_empty());
        for h in homs {
            h.verify_ring_hom(64).unwrap();
            assert!(h.preserves_expansions(64).unwrap());
        }
    }
}

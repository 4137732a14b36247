use std::fmt;

use super::{FFElement, FieldSpec};
use crate::error::{Error, Result};

/// A unital ring embedding GF(p^a) → GF(p^b), determined by the image of
/// the residue of x, which must be a root of the source modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldEmbedding {
    src: FieldSpec,
    dst: FieldSpec,
    image: FFElement,
}

impl FieldEmbedding {
    pub fn new(src: &FieldSpec, image: FFElement) -> Result<Self> {
        let dst = image.spec().clone();
        if src.characteristic() != dst.characteristic() {
            return Err(Error::CharMismatch {
                src: src.characteristic(),
                dst: dst.characteristic(),
            });
        }
        let emb = FieldEmbedding {
            src: src.clone(),
            dst,
            image,
        };
        if !emb.eval_modulus().is_zero() {
            return Err(Error::NotEmbedding(format!(
                "{} is not a root of the modulus of {src}",
                emb.image
            )));
        }
        Ok(emb)
    }

    pub fn identity(field: &FieldSpec) -> Self {
        FieldEmbedding {
            src: field.clone(),
            dst: field.clone(),
            image: field.generator(),
        }
    }

    fn eval_modulus(&self) -> FFElement {
        self.src
            .modulus()
            .iter()
            .rev()
            .fold(self.dst.zero(), |acc, &c| &(&acc * &self.image) + &self.dst.int(c as i64))
    }

    pub fn src(&self) -> &FieldSpec {
        &self.src
    }

    pub fn dst(&self) -> &FieldSpec {
        &self.dst
    }

    /// Image of the residue of x.
    pub fn image(&self) -> &FFElement {
        &self.image
    }

    pub fn apply(&self, a: &FFElement) -> FFElement {
        debug_assert_eq!(a.spec(), &self.src);
        a.coeffs()
            .iter()
            .rev()
            .fold(self.dst.zero(), |acc, &c| &(&acc * &self.image) + &self.dst.int(c as i64))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FieldEmbedding) -> Result<FieldEmbedding> {
        if next.src != self.dst {
            return Err(Error::SpecMismatch(format!(
                "cannot compose into {} after {}",
                next.src, self.dst
            )));
        }
        Ok(FieldEmbedding {
            src: self.src.clone(),
            dst: next.dst.clone(),
            image: next.apply(&self.image),
        })
    }

    /// Post-composition with the k-th power of Frobenius on the target.
    pub fn twist(&self, k: usize) -> FieldEmbedding {
        let mut image = self.image.clone();
        for _ in 0..k {
            image = image.frobenius();
        }
        FieldEmbedding {
            src: self.src.clone(),
            dst: self.dst.clone(),
            image,
        }
    }
}

impl fmt::Debug for FieldEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (x ↦ {})", self.src, self.dst, self.image)
    }
}

/// All ring embeddings `src → dst`, found by exhaustive root search of the
/// source modulus in the target, in element order of the root.
pub fn enumerate_embeddings(src: &FieldSpec, dst: &FieldSpec) -> Result<Vec<FieldEmbedding>> {
    if src.characteristic() != dst.characteristic() {
        return Err(Error::CharMismatch {
            src: src.characteristic(),
            dst: dst.characteristic(),
        });
    }
    Ok(dst
        .elements()
        .map(|image| FieldEmbedding {
            src: src.clone(),
            dst: dst.clone(),
            image,
        })
        .filter(|e| e.eval_modulus().is_zero())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn counts() {
        let f = |p, n| make_field(p, n).unwrap();
        assert_eq!(enumerate_embeddings(&f(2, 1), &f(2, 3)).unwrap().len(), 1);
        assert_eq!(enumerate_embeddings(&f(2, 2), &f(2, 4)).unwrap().len(), 2);
        assert_eq!(enumerate_embeddings(&f(2, 2), &f(2, 3)).unwrap().len(), 0);
        assert_eq!(
            enumerate_embeddings(&f(2, 1), &f(3, 1)).unwrap_err(),
            Error::CharMismatch { src: 2, dst: 3 }
        );
    }

    #[test]
    fn identity_is_listed() {
        let f = make_field(3, 2).unwrap();
        let all = enumerate_embeddings(&f, &f).unwrap();
        assert!(all.contains(&FieldEmbedding::identity(&f)));
        for a in f.elements() {
            assert_eq!(FieldEmbedding::identity(&f).apply(&a), a);
        }
    }

    #[test]
    fn rejects_non_root() {
        let f = make_field(2, 2).unwrap();
        assert!(FieldEmbedding::new(&f, f.one()).is_err());
        assert!(FieldEmbedding::new(&f, f.generator()).is_ok());
    }
}

use std::fmt;

use serde_json::{json, Value};

use super::{FFElement, FieldSpec};
use crate::error::{Error, Result};

/// A polynomial whose coefficients lie in the subfield GF(p^d) of an ambient
/// field GF(p^n). Coefficients are stored as ambient elements, constant term
/// first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    base_degree: usize,
    coeffs: Vec<FFElement>,
}

impl Polynomial {
    pub fn new(field: &FieldSpec, base_degree: usize, coeffs: Vec<FFElement>) -> Result<Self> {
        let q = field.characteristic().pow(base_degree as u32) as u128;
        for c in &coeffs {
            if c.spec() != field {
                return Err(Error::SpecMismatch(format!("coefficient {c} not in {field}")));
            }
            if c.pow(q) != *c {
                return Err(Error::BadSubfield {
                    d: base_degree,
                    n: field.degree(),
                });
            }
        }
        let mut poly = Polynomial {
            field: field.clone(),
            base_degree,
            coeffs,
        };
        poly.trim();
        Ok(poly)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FFElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Degree d of the coefficient subfield GF(p^d).
    pub fn base_degree(&self) -> usize {
        self.base_degree
    }

    pub fn coeffs(&self) -> &[FFElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.field.one())
    }

    pub fn eval(&self, x: &FFElement) -> FFElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial {
                coeffs: vec![],
                ..self.clone()
            };
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let mut poly = Polynomial {
            coeffs: out,
            ..self.clone()
        };
        poly.trim();
        poly
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, divisor: &Self) -> Self {
        let dd = divisor.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let lead = r.last().unwrap().clone();
            let shift = r.len() - 1 - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&lead * c);
            }
            r.pop();
        }
        let mut poly = Polynomial {
            coeffs: r,
            ..self.clone()
        };
        poly.trim();
        poly
    }

    /// Irreducibility over the coefficient subfield, by trial division with
    /// every monic polynomial over that subfield of degree at most half.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        let base = self
            .field
            .subfield_elements(self.base_degree)
            .expect("base degree divides the field degree");
        let q = base.len() as u64;
        for d in 1..=n / 2 {
            for mut index in 0..q.pow(d as u32) {
                let mut coeffs = vec![self.field.one(); d + 1];
                for slot in coeffs[..d].iter_mut() {
                    *slot = base[(index % q) as usize].clone();
                    index /= q;
                }
                let divisor = Polynomial {
                    coeffs,
                    ..self.clone()
                };
                if self.rem_monic(&divisor).coeffs.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Integer lists when the base is the prime field, lists of coefficient
    /// lists otherwise.
    pub fn to_json(&self) -> Value {
        if self.base_degree == 1 {
            json!(self.coeffs.iter().map(|c| c.coeffs()[0]).collect::<Vec<_>>())
        } else {
            json!(self.coeffs.iter().map(|c| c.coeffs().to_vec()).collect::<Vec<_>>())
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// The monic irreducible polynomial of least degree over GF(p^d) that
/// vanishes at `a`.
///
/// Computed as the product of `X - a^(q^i)` over the orbit of `a` under the
/// q-power map, q = p^d.
pub fn minimal_polynomial(a: &FFElement, d: usize) -> Result<Polynomial> {
    let field = a.spec();
    let n = field.degree();
    if d == 0 || n % d != 0 {
        return Err(Error::BadSubfield { d, n });
    }
    let q = field.characteristic().pow(d as u32) as u128;
    let mut poly = Polynomial {
        field: field.clone(),
        base_degree: d,
        coeffs: vec![field.one()],
    };
    let mut conj = a.clone();
    loop {
        let linear = Polynomial {
            coeffs: vec![-&conj, field.one()],
            ..poly.clone()
        };
        poly = poly.mul(&linear);
        conj = conj.pow(q);
        if conj == *a {
            break;
        }
    }
    Ok(poly)
}

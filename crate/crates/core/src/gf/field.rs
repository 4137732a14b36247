use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use super::fp_poly;
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite field GF(p^n), presented as GF(p)[x] modulo a monic irreducible
/// polynomial of degree n.
///
/// The modulus is always the smallest monic irreducible of degree n when
/// coefficient lists are compared lexicographically, constant term first.
/// Two specs with the same `(p, n)` are therefore the same presentation.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

struct Inner {
    p: u64,
    n: usize,
    order: u64,
    modulus: Vec<u64>,
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize), FieldSpec>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), FieldSpec>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Builds the deterministic presentation of GF(p^n).
pub fn make_field(p: u64, n: usize) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n < 1 {
        return Err(Error::BadDegree(n));
    }
    // element products are computed in u128, so p^n has to fit in a u64
    let order = u32::try_from(n)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .ok_or(Error::BadDegree(n))?;
    if let Some(spec) = field_cache().lock().unwrap().get(&(p, n)) {
        return Ok(spec.clone());
    }
    let modulus = (0..order)
        .map(|i| fp_poly::nth_monic(p, n, i))
        .find(|f| fp_poly::is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists");
    let spec = FieldSpec(Arc::new(Inner {
        p,
        n,
        order,
        modulus,
    }));
    field_cache()
        .lock()
        .unwrap()
        .entry((p, n))
        .or_insert(spec.clone());
    Ok(spec)
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// Number of elements, p^n.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Modulus coefficients, constant term first; monic of degree n.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FFElement {
        FFElement {
            spec: self.clone(),
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FFElement {
        self.int(1)
    }

    /// The image k·1 of an integer in the prime subfield.
    pub fn int(&self, k: i64) -> FFElement {
        let mut e = self.zero();
        e.coeffs[0] = k.rem_euclid(self.0.p as i64) as u64;
        e
    }

    /// Residue class of x. For prime fields the modulus is x itself, so this is 0.
    pub fn generator(&self) -> FFElement {
        let mut e = self.zero();
        if self.degree() == 1 {
            e.coeffs[0] = (self.0.p - self.0.modulus[0]) % self.0.p;
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FFElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::SpecMismatch(format!(
                "expected {} coefficients for {self}, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::SpecMismatch(format!(
                "coefficient {c} out of range for {self}"
            )));
        }
        Ok(FFElement {
            spec: self.clone(),
            coeffs: coeffs.to_vec(),
        })
    }

    /// The element at `index` in lexicographic order of coefficient vectors.
    pub fn element_at(&self, mut index: u64) -> FFElement {
        let n = self.degree();
        let mut coeffs = vec![0; n];
        for k in (0..n).rev() {
            coeffs[k] = index % self.0.p;
            index /= self.0.p;
        }
        FFElement {
            spec: self.clone(),
            coeffs,
        }
    }

    /// All elements in lexicographic order of coefficient vectors.
    pub fn elements(&self) -> impl Iterator<Item = FFElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Elements of the unique subfield GF(p^d), i.e. the fixed points of the
    /// d-th Frobenius power.
    pub fn subfield_elements(&self, d: usize) -> Result<Vec<FFElement>> {
        if d == 0 || self.degree() % d != 0 {
            return Err(Error::BadSubfield {
                d,
                n: self.degree(),
            });
        }
        let q = self.0.p.pow(d as u32);
        Ok(self.elements().filter(|a| a.pow(q as u128) == *a).collect())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.n == other.0.n)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.n.hash(state);
    }
}

impl PartialOrd for FieldSpec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldSpec {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.p, self.0.n).cmp(&(other.0.p, other.0.n))
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.n)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.n)
        }
    }
}

/// An element of a finite field, as a residue polynomial with exactly n
/// coefficients in `[0, p)`, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFElement {
    spec: FieldSpec,
    coeffs: Vec<u64>,
}

impl FFElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Position of this element in [`FieldSpec::elements`].
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(0, |acc, &c| acc * self.spec.characteristic() + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("{} vs {}", self.spec, other.spec)))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.spec.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Ok(FFElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.spec.characteristic();
        let n = self.spec.degree();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + fp_poly::mul_mod(a, b, p)) % p;
            }
        }
        let mut coeffs = fp_poly::rem_monic(&prod, self.spec.modulus(), p);
        coeffs.resize(n, 0);
        Ok(FFElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// a⁻¹ for a ≠ 0 and 0 for a = 0.
    pub fn weak_inverse(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        // a^(q-2) = a^-1 in the multiplicative group of order q-1
        self.pow(self.spec.order() as u128 - 2)
    }

    /// a ↦ a^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.spec.characteristic() as u128)
    }

    /// The weak q-root: the unique q-th root when q is the characteristic,
    /// zero otherwise.
    pub fn weak_root(&self, q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let p = self.spec.characteristic();
        if q != p {
            return Ok(self.spec.zero());
        }
        // Frobenius has order n, so its inverse is its (n-1)-th power.
        Ok(self.pow(p.pow(self.spec.degree() as u32 - 1) as u128))
    }
}

impl PartialOrd for FFElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FFElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.spec
            .cmp(&other.spec)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

// Operator impls panic on mismatched carriers; use the `checked_*` methods
// when operands come from untrusted input.
impl Add for &FFElement {
    type Output = FFElement;
    fn add(self, rhs: Self) -> FFElement {
        self.checked_add(rhs).expect("field mismatch in +")
    }
}

impl Sub for &FFElement {
    type Output = FFElement;
    fn sub(self, rhs: Self) -> FFElement {
        self.checked_sub(rhs).expect("field mismatch in -")
    }
}

impl Mul for &FFElement {
    type Output = FFElement;
    fn mul(self, rhs: Self) -> FFElement {
        self.checked_mul(rhs).expect("field mismatch in *")
    }
}

impl Neg for &FFElement {
    type Output = FFElement;
    fn neg(self) -> FFElement {
        let p = self.spec.characteristic();
        FFElement {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}

use crate::error::Result;

/// Interpretation of the signature {+, ·, −, 0, 1, *, r_p}.
///
/// Roots for primes outside an algebra's signature prime set are the
/// constant-zero map.
pub trait Operations {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn star(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn root(&self, p: u64, a: &Self::Elem) -> Result<Self::Elem>;

    /// k·1, by double-and-add over `add`.
    fn numeral(&self, mut k: u64) -> Result<Self::Elem> {
        let mut acc = self.zero();
        let mut base = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            base = self.add(&base, &base)?;
            k >>= 1;
        }
        Ok(acc)
    }
}

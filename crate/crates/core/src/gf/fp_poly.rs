//! Dense polynomials over the prime field GF(p), stored constant term first.
//!
//! These helpers exist so that a field modulus can be found and checked
//! before any [`FieldSpec`](super::FieldSpec) exists.

pub(crate) fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Remainder of `f` modulo the monic polynomial `g`.
pub(crate) fn rem_monic(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &c) in g.iter().enumerate() {
                let sub = mul_mod(lead, c, p);
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

/// The `index`-th monic polynomial of degree `n` in lexicographic order of
/// its coefficient list, constant term compared first.
pub(crate) fn nth_monic(p: u64, n: usize, mut index: u64) -> Vec<u64> {
    let mut coeffs = vec![0; n + 1];
    coeffs[n] = 1;
    for k in (0..n).rev() {
        coeffs[k] = index % p;
        index /= p;
    }
    coeffs
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most half the degree of `f`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for i in 0..count {
            let g = nth_monic(p, d, i);
            if rem_monic(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_enumeration_order() {
        // constant term is the most significant digit
        assert_eq!(nth_monic(2, 2, 0), vec![0, 0, 1]);
        assert_eq!(nth_monic(2, 2, 1), vec![0, 1, 1]);
        assert_eq!(nth_monic(2, 2, 2), vec![1, 0, 1]);
        assert_eq!(nth_monic(2, 2, 3), vec![1, 1, 1]);
    }

    #[test]
    fn quadratics_over_gf2() {
        let irreducible: Vec<_> = (0..4)
            .map(|i| nth_monic(2, 2, i))
            .filter(|f| is_irreducible(f, 2))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn remainder() {
        // x^3 + 1 = (x + 1)(x^2 + x + 1) over GF(2)
        assert!(rem_monic(&[1, 0, 0, 1], &[1, 1], 2).is_empty());
        assert_eq!(rem_monic(&[0, 0, 1], &[1, 1, 1], 2), vec![1, 1]);
    }
}

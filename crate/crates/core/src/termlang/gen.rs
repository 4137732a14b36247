use rand::seq::SliceRandom;
use rand::Rng;

use super::ast::Term;

/// A random term of depth at most `depth` over `vars`, using roots only for
/// primes in `primes`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, depth: usize, vars: &[&str], primes: &[u64]) -> Term {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..6) {
            0 => Term::Zero,
            1 => Term::One,
            2 => Term::Numeral(rng.gen_range(0..8)),
            _ => match vars.choose(rng) {
                Some(v) => Term::var(v),
                None => Term::One,
            },
        };
    }
    let sub = |rng: &mut R| random_term(rng, depth - 1, vars, primes);
    match rng.gen_range(0..5) {
        0 => Term::add(sub(rng), sub(rng)),
        1 => Term::mul(sub(rng), sub(rng)),
        2 => Term::neg(sub(rng)),
        3 => Term::star(sub(rng)),
        _ => match primes.choose(rng) {
            Some(&p) => Term::Root(p, Box::new(sub(rng))),
            None => Term::star(sub(rng)),
        },
    }
}

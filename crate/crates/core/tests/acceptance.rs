//! Acceptance criteria, each printed as one pass/fail line.
//!
//! Run with `cargo test -p meadowlab --test acceptance -- --nocapture`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use meadowlab::crosscheck::{self, SuiteSummary};
use meadowlab::gf::{is_prime, make_field};
use meadowlab::laws::{check_meadow, check_reduced};
use meadowlab::structure::{Algebra, Finite, Operations, PrimeSet, Product, TableRing};

const K: usize = 64;

struct Criterion {
    number: usize,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn suite_ok(s: &SuiteSummary) -> bool {
    s.checked > 0 && s.passed()
}

/// Prime powers up to `k`, as (p, n), found by trial division.
fn prime_powers(k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in 2..=k {
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut n = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            n += 1;
        }
        if r == 1 {
            out.push((p, n));
        }
    }
    out
}

/// Number of multisets of field orders ≤ `max_component` whose product is ≤ `k`.
fn count_products(k: u64, max_component: u64) -> usize {
    fn go(orders: &[u64], start: usize, budget: u64) -> usize {
        1 + (start..orders.len())
            .filter(|&i| orders[i] <= budget)
            .map(|i| go(orders, i, budget / orders[i]))
            .sum::<usize>()
    }
    let orders: Vec<u64> = prime_powers(max_component)
        .into_iter()
        .map(|(p, n)| p.pow(n))
        .collect();
    go(&orders, 0, k)
}

fn divisors(n: u32) -> usize {
    (1..=n).filter(|d| n % d == 0).count()
}

fn icm_axiom_soundness() -> Criterion {
    let s = crosscheck::icm_soundness(K).unwrap();
    // each product is checked with two prime sets
    let expected = 2 * count_products(K as u64, 16);
    Criterion {
        number: 1,
        name: "icm axiom soundness",
        passed: suite_ok(&s) && s.checked == expected,
        detail: format!("{} products (expected {expected}), failures {:?}", s.checked, s.failures),
    }
}

/// For each field: r_p(a) is the unique y with y^p = a, and a* is the
/// unique y with a·y·a = a and y·a·y = y.
fn graph_oracle() -> (usize, bool) {
    let mut checked = 0;
    let mut ok = true;
    for (p, n) in prime_powers(K as u64) {
        let f = make_field(p, n as usize).unwrap();
        let elems: Vec<_> = f.elements().collect();
        for a in &elems {
            let roots: Vec<_> = elems.iter().filter(|y| y.pow(p as u128) == *a).collect();
            let invs: Vec<_> = elems
                .iter()
                .filter(|y| &(&(a * *y) * a) == a && &(&(*y * a) * *y) == *y)
                .collect();
            ok &= roots.len() == 1 && *roots[0] == a.weak_root(p).unwrap();
            ok &= invs.len() == 1 && *invs[0] == a.weak_inverse();
            checked += 1;
        }
    }
    (checked, ok)
}

fn graph_equivalences() -> Criterion {
    let s = crosscheck::graph_equivalences(K).unwrap();
    let (elements, oracle) = graph_oracle();
    Criterion {
        number: 2,
        name: "graph and extendability equivalences",
        passed: suite_ok(&s) && oracle,
        detail: format!("{} pairs, {elements} elements by power search", s.checked),
    }
}

fn dominion_agreement() -> Criterion {
    let s = crosscheck::dominion_towers(K).unwrap();
    let expected: usize = prime_powers(K as u64).iter().map(|&(_, n)| divisors(n)).sum();
    Criterion {
        number: 3,
        name: "dominion oracle agreement",
        passed: suite_ok(&s) && s.checked == expected,
        detail: format!("{} towers (expected {expected}), failures {:?}", s.checked, s.failures),
    }
}

fn icm_dominion_triviality() -> Criterion {
    let s = crosscheck::icm_dominion_triviality(K).unwrap();
    // one subalgebra-equals-subfields check per field, one dominion per subfield
    let expected: usize = prime_powers(K as u64).iter().map(|&(_, n)| 1 + divisors(n)).sum();
    Criterion {
        number: 4,
        name: "icm dominion triviality",
        passed: suite_ok(&s) && s.checked == expected,
        detail: format!("{} checks (expected {expected}), failures {:?}", s.checked, s.failures),
    }
}

fn discriminator() -> Criterion {
    let s = crosscheck::discriminator(49).unwrap();
    let expected = prime_powers(49).len();
    Criterion {
        number: 5,
        name: "discriminator behavior",
        passed: suite_ok(&s) && s.checked == expected,
        detail: format!("{} fields (expected {expected})", s.checked),
    }
}

fn regularity() -> Criterion {
    let s = crosscheck::regularity(K).unwrap();
    // products plus Z/4, Z/8, Z/9 and Z/4, Z/9, Z/25, Z/49
    let expected = count_products(K as u64, 16) + 3 + 4;
    Criterion {
        number: 6,
        name: "regularity of reducts",
        passed: suite_ok(&s) && s.checked == expected,
        detail: format!("{} checks (expected {expected}), failures {:?}", s.checked, s.failures),
    }
}

fn amalgamation() -> Criterion {
    let s = crosscheck::amalgamation(16, 200, 0).unwrap();
    Criterion {
        number: 7,
        name: "amalgamation",
        passed: s.passed() && s.checked == 200,
        detail: format!("{} spans, failures {:?}", s.checked, s.failures),
    }
}

fn hom_compatibility() -> Criterion {
    let s = crosscheck::hom_compatibility(16, 500, 0).unwrap();
    Criterion {
        number: 8,
        name: "hom compatibility of evaluation",
        passed: suite_ok(&s) && s.checked % 500 == 0,
        detail: format!("{} hom-term pairs ({} homs)", s.checked, s.checked / 500),
    }
}

fn negative_controls() -> Criterion {
    let s = crosscheck::negative_controls(K).unwrap();
    let z4 = TableRing::zn(4, Some(vec![0, 1, 2, 3]), BTreeMap::new()).unwrap();
    let z4 = Finite::new(&Algebra::Table(z4), 4).unwrap();
    let reduced = [check_reduced(&z4).unwrap(), check_reduced(&z4).unwrap()];
    let meadow = [check_meadow(&z4).unwrap(), check_meadow(&z4).unwrap()];
    let direct = [reduced, meadow].iter().all(|[a, b]| {
        !a.passed && a.counterexample.is_some() && a.counterexample == b.counterexample
    });
    Criterion {
        number: 9,
        name: "negative controls",
        passed: suite_ok(&s) && direct,
        detail: format!("{} controls, failures {:?}", s.checked, s.failures),
    }
}

/// Confirms an index map from `ring` into `b` through the product's own
/// operations rather than its tables.
fn embeds_via_operations(ring: &TableRing, b: &Product, primes: &PrimeSet) -> bool {
    let fin = Finite::new(&Algebra::Product(b.clone()), K).unwrap();
    let Some(map) = crosscheck::find_table_embedding(ring, fin.tables()) else {
        return false;
    };
    let image: Vec<_> = map
        .iter()
        .map(|&i| fin.elements()[i].as_tuple().unwrap().clone())
        .collect();
    let n = ring.size();
    let star = ring.star_table().unwrap();
    let distinct: BTreeSet<_> = image.iter().collect();
    distinct.len() == n
        && image[ring.zero_index()] == b.zero()
        && image[ring.one_index()] == b.one()
        && (0..n).all(|x| {
            image[ring.neg_at(x)] == b.neg(&image[x]).unwrap()
                && image[star[x]] == b.star(&image[x]).unwrap()
                && primes.iter().all(|&p| {
                    let r = ring.root_table(p).map_or(ring.zero_index(), |t| t[x]);
                    image[r] == b.root(p, &image[x]).unwrap()
                })
                && (0..n).all(|y| {
                    image[ring.add_at(x, y)] == b.add(&image[x], &image[y]).unwrap()
                        && image[ring.mul_at(x, y)] == b.mul(&image[x], &image[y]).unwrap()
                })
        })
}

fn completeness_shadow() -> Criterion {
    let found = crosscheck::completeness_search(12).unwrap();
    let mut missing = Vec::new();
    for e in &found {
        let primes: PrimeSet = (2..=e.ring.size().max(2) as u64).filter(|&q| is_prime(q)).collect();
        let ok = e
            .codomain
            .as_ref()
            .is_some_and(|b| embeds_via_operations(&e.ring, b, &primes));
        if !ok {
            missing.push(e.name.clone());
        }
    }
    Criterion {
        number: 10,
        name: "finite completeness shadow",
        passed: !found.is_empty() && missing.is_empty(),
        detail: format!("{} icm table rings, without embedding: {missing:?}", found.len()),
    }
}

#[test]
fn acceptance() {
    let runs: [fn() -> Criterion; 10] = [
        icm_axiom_soundness,
        graph_equivalences,
        dominion_agreement,
        icm_dominion_triviality,
        discriminator,
        regularity,
        amalgamation,
        hom_compatibility,
        negative_controls,
        completeness_shadow,
    ];
    let mut results = Vec::new();
    for run in runs {
        let start = Instant::now();
        let c = run();
        println!(
            "criterion {}: {} {} ({:.2?}; {})",
            c.number,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            start.elapsed(),
            c.detail
        );
        results.push((c.number, c.passed));
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    assert_eq!(failed, Vec::<usize>::new(), "failed criteria");
}

#[test]
fn frozen_counts() {
    assert_eq!(count_products(64, 16), 90);
    assert_eq!(prime_powers(64).len(), 27);
    assert_eq!(prime_powers(49).len(), 23);
}

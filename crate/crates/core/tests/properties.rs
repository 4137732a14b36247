use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use meadowlab::dominion::{dominion_oracle, dominion_sg};
use meadowlab::gf::{enumerate_embeddings, make_field, minimal_polynomial, FFElement, FieldSpec};
use meadowlab::structure::{sg_closure, Algebra, Element, Operations, Product, Tuple};
use meadowlab::termlang::{eval, eval_in, parse, random_term, Parsed, Term};

const SMALL: [(u64, usize); 18] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 1),
    (3, 2),
    (3, 3),
    (5, 1),
    (5, 2),
    (7, 1),
    (7, 2),
    (11, 1),
    (13, 1),
    (17, 1),
    (31, 1),
    (61, 1),
];

fn field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(SMALL.to_vec()).prop_map(|(p, n)| make_field(p, n).unwrap())
}

fn field_with_elements(k: usize) -> impl Strategy<Value = (FieldSpec, Vec<FFElement>)> {
    field().prop_flat_map(move |f| {
        let order = f.order();
        prop::collection::vec(0..order, k)
            .prop_map(move |idx| (f.clone(), idx.into_iter().map(|i| f.element_at(i)).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn field_axioms((f, v) in field_with_elements(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a + &f.zero(), a.clone());
        prop_assert_eq!(a * &f.one(), a.clone());
        prop_assert!((a + &(-a)).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a * &a.weak_inverse(), f.one());
        }
    }

    #[test]
    fn meadow_laws((_f, v) in field_with_elements(1)) {
        let a = &v[0];
        prop_assert_eq!(&(a * a) * &a.weak_inverse(), a.clone());
        prop_assert_eq!(a.weak_inverse().weak_inverse(), a.clone());
    }

    #[test]
    fn frobenius_and_weak_root_are_inverse((f, v) in field_with_elements(1)) {
        let a = &v[0];
        let p = f.characteristic();
        prop_assert_eq!(a.frobenius(), a.pow(p as u128));
        let r = a.weak_root(p).unwrap();
        prop_assert_eq!(r.frobenius(), a.clone());
        prop_assert_eq!(a.frobenius().weak_root(p).unwrap(), a.clone());
        for q in [2u64, 3, 5, 7] {
            if q != p {
                prop_assert!(a.weak_root(q).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn minimal_polynomial_vanishes((f, v) in field_with_elements(1)) {
        let a = &v[0];
        for d in (1..=f.degree()).filter(|d| f.degree() % d == 0) {
            let m = minimal_polynomial(a, d).unwrap();
            prop_assert!(m.is_monic());
            prop_assert!(m.eval(a).is_zero());
            prop_assert!(m.is_irreducible());
        }
    }
}

fn towers() -> Vec<(FieldSpec, FieldSpec)> {
    let mut out = Vec::new();
    for &(p, n) in &SMALL {
        for &(q, m) in &SMALL {
            if p == q && m % n == 0 && p.pow(m as u32) <= 64 {
                out.push((make_field(p, n).unwrap(), make_field(q, m).unwrap()));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn embeddings_are_injective_homs(
        (src, dst) in prop::sample::select(towers()),
        seeds in prop::collection::vec(any::<u64>(), 2),
    ) {
        let embs = enumerate_embeddings(&src, &dst).unwrap();
        prop_assert_eq!(embs.len(), src.degree());
        let a = src.element_at(seeds[0] % src.order());
        let b = src.element_at(seeds[1] % src.order());
        for e in &embs {
            prop_assert_eq!(e.apply(&(&a + &b)), &e.apply(&a) + &e.apply(&b));
            prop_assert_eq!(e.apply(&(&a * &b)), &e.apply(&a) * &e.apply(&b));
            prop_assert_eq!(e.apply(&a.weak_inverse()), e.apply(&a).weak_inverse());
            prop_assert_eq!(e.apply(&a.frobenius()), e.apply(&a).frobenius());
            prop_assert_eq!(e.apply(&src.one()), dst.one());
            if a != b {
                prop_assert_ne!(e.apply(&a), e.apply(&b));
            }
            let twisted: BTreeSet<_> = (0..dst.degree()).map(|k| e.twist(k).image().clone()).collect();
            let all: BTreeSet<_> = embs.iter().map(|x| x.image().clone()).collect();
            prop_assert_eq!(twisted, all);
        }
    }

    #[test]
    fn structural_and_compiled_evaluation_agree(seed in any::<u64>(), which in 0usize..6) {
        let algebras = [
            Algebra::field(&make_field(2, 3).unwrap()),
            Algebra::field(&make_field(5, 1).unwrap()),
            Algebra::product(vec![make_field(2, 1).unwrap(), make_field(3, 1).unwrap()], [2, 3, 5].into()).unwrap(),
            Algebra::product(vec![make_field(3, 2).unwrap()], [2, 3].into()).unwrap(),
            Algebra::Rationals,
            Algebra::product(vec![], [2].into()).unwrap(),
        ];
        let alg = &algebras[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, 5, &["x", "y"], &[2, 3, 5]);
        let env: BTreeMap<String, Element> = match alg {
            Algebra::Rationals => [
                ("x".to_string(), Element::Rational("3/4".parse().unwrap())),
                ("y".to_string(), Element::Rational("-2".parse().unwrap())),
            ].into(),
            _ => {
                let elems = alg.elements(64).unwrap();
                [
                    ("x".to_string(), elems[seed as usize % elems.len()].clone()),
                    ("y".to_string(), elems[(seed >> 8) as usize % elems.len()].clone()),
                ].into()
            }
        };
        let direct = eval(&t, alg, &env).unwrap();
        let generic = eval_in(&t, alg, &|v| env.get(v).cloned()).unwrap();
        prop_assert_eq!(&direct, &generic);
        prop_assert!(alg.contains(&direct));
    }
}

#[test]
fn parser_round_trips_random_terms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let t = random_term(&mut rng, 8, &["x", "y", "z", "w'"], &[2, 3, 5, 7]);
        assert!(t.depth() <= 8);
        match parse(&t.to_string()).unwrap() {
            Parsed::Term(back) => assert_eq!(back, t),
            other => panic!("{t} parsed as {other}"),
        }
    }
}

fn product_strategy() -> impl Strategy<Value = Product> {
    prop::sample::select(vec![
        vec![(2, 1), (2, 1)],
        vec![(2, 1), (3, 1)],
        vec![(2, 2), (2, 1)],
        vec![(2, 1), (2, 1), (2, 1)],
        vec![(3, 1), (3, 1)],
        vec![(2, 2), (3, 1)],
        vec![(2, 3)],
        vec![(2, 1), (5, 1)],
    ])
    .prop_map(|c| Product::of(c.into_iter().map(|(p, n)| make_field(p, n).unwrap()).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominions_are_monotone_and_contain_the_subalgebra(
        b in product_strategy(),
        picks in prop::collection::vec(any::<u64>(), 0..3),
        extra in any::<u64>(),
    ) {
        let elems = b.elements(64).unwrap();
        let small: Vec<Tuple> = picks.iter().map(|&i| elems[i as usize % elems.len()].clone()).collect();
        let mut large = small.clone();
        large.push(elems[extra as usize % elems.len()].clone());
        let d_small = dominion_sg(&b, &small, 64).unwrap();
        let d_large = dominion_sg(&b, &large, 64).unwrap();
        let a: BTreeSet<Tuple> = sg_closure(&b, &small, 64).unwrap().carrier().iter().cloned().collect();
        let small_set: BTreeSet<Tuple> = d_small.members.iter().cloned().collect();
        let large_set: BTreeSet<Tuple> = d_large.members.iter().cloned().collect();
        prop_assert!(a.is_subset(&small_set));
        prop_assert!(small_set.is_subset(&large_set));
        prop_assert!(d_small.verify_certificates(64).unwrap());
        let oracle = dominion_oracle(&b, &small, 64, None, 64).unwrap();
        prop_assert_eq!(&oracle.members, &d_small.members);
        prop_assert!(oracle.verify_certificates(64).unwrap());
    }

    #[test]
    fn closures_are_closed(b in product_strategy(), picks in prop::collection::vec(any::<u64>(), 0..3)) {
        let elems = b.elements(64).unwrap();
        let gens: Vec<Tuple> = picks.iter().map(|&i| elems[i as usize % elems.len()].clone()).collect();
        let s = sg_closure(&b, &gens, 64).unwrap();
        for x in s.carrier() {
            prop_assert!(s.contains(&b.star(x).unwrap()));
            prop_assert!(s.contains(&b.neg(x).unwrap()));
            for &p in b.primes() {
                prop_assert!(s.contains(&b.root(p, x).unwrap()));
            }
            for y in s.carrier() {
                prop_assert!(s.contains(&b.add(x, y).unwrap()));
                prop_assert!(s.contains(&b.mul(x, y).unwrap()));
            }
            let witness: &Term = s.witness(x).unwrap();
            let lookup = |v: &str| {
                v.strip_prefix('g').and_then(|i| i.parse::<usize>().ok()).map(|i| gens[i].clone())
            };
            prop_assert_eq!(&eval_in(witness, &b, &lookup).unwrap(), x);
        }
    }
}

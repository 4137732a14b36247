//! Amalgamation of spans of finite products of finite fields.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{enumerate_embeddings, make_field, FieldEmbedding, FieldSpec};
use crate::structure::{Hom, PrimeSet, Product};

/// Two embeddings out of a common source: `h1: A → B` and `h2: A → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    h1: Hom,
    h2: Hom,
}

impl Span {
    /// All three products must carry the same prime set, and both maps must
    /// be injective.
    pub fn new(h1: Hom, h2: Hom) -> Result<Self> {
        if h1.src() != h2.src() {
            return Err(Error::NotEmbedding("the two maps have different sources".into()));
        }
        let primes = h1.src().primes();
        if h1.dst().primes() != primes || h2.dst().primes() != primes {
            return Err(Error::NotEmbedding("the three algebras carry different prime sets".into()));
        }
        for (name, h) in [("h1", &h1), ("h2", &h2)] {
            if !tau_onto(h) {
                return Err(Error::NotEmbedding(format!("{name} is not injective")));
            }
        }
        Ok(Span { h1, h2 })
    }

    pub fn a(&self) -> &Product {
        self.h1.src()
    }

    pub fn b(&self) -> &Product {
        self.h1.dst()
    }

    pub fn c(&self) -> &Product {
        self.h2.dst()
    }

    pub fn h1(&self) -> &Hom {
        &self.h1
    }

    pub fn h2(&self) -> &Hom {
        &self.h2
    }
}

/// A hom between products of fields is injective exactly when every source
/// component is read by some target component.
fn tau_onto(h: &Hom) -> bool {
    (0..h.src().len()).all(|i| h.tau().contains(&i))
}

/// `g1: B → D` and `g2: C → D` with `g1 ∘ h1 = g2 ∘ h2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgam {
    pub d: Product,
    pub g1: Hom,
    pub g2: Hom,
}

/// Builds one component of `D` for every pair `(j, k)` of components of `B`
/// and `C` lying over the same component of `A`, namely the compositum
/// GF(p^lcm(b, c)). The embedding of the `B` component is the first one in
/// element order; the embedding of the `C` component is the first
/// Frobenius twist that agrees with it on the image of `A`.
pub fn amalgamate(span: &Span) -> Result<Amalgam> {
    let (h1, h2) = (&span.h1, &span.h2);
    let mut comps = Vec::new();
    let (mut tau1, mut emb1) = (Vec::new(), Vec::new());
    let (mut tau2, mut emb2) = (Vec::new(), Vec::new());
    for (j, &i1) in h1.tau().iter().enumerate() {
        for (k, &i2) in h2.tau().iter().enumerate() {
            if i1 != i2 {
                continue;
            }
            let base = &span.a().components()[i1];
            let (fb, fc) = (&span.b().components()[j], &span.c().components()[k]);
            let deg = num_integer::lcm(fb.degree(), fc.degree());
            let target = make_field(fb.characteristic(), deg)?;
            let e_b = first_embedding(fb, &target)?;
            let e_c = first_embedding(fc, &target)?;
            let want = e_b.apply(&h1.embeddings()[j].apply(&base.generator()));
            let from_c = h2.embeddings()[k].apply(&base.generator());
            let e_c = (0..deg)
                .map(|t| e_c.twist(t))
                .find(|e| e.apply(&from_c) == want)
                .ok_or(Error::NoCompatibleTwist)?;
            comps.push(target);
            tau1.push(j);
            emb1.push(e_b);
            tau2.push(k);
            emb2.push(e_c);
        }
    }
    let d = Product::new(comps, span.a().primes().clone())?;
    let g1 = Hom::new(span.b(), &d, tau1, emb1)?;
    let g2 = Hom::new(span.c(), &d, tau2, emb2)?;
    Ok(Amalgam { d, g1, g2 })
}

fn first_embedding(src: &FieldSpec, dst: &FieldSpec) -> Result<FieldEmbedding> {
    enumerate_embeddings(src, dst)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotEmbedding(format!("{src} does not embed in {dst}")))
}

/// Exhaustive check of the amalgam conditions: both maps are injective ring
/// homs preserving `*` and every `r_p`, and the square commutes on all of
/// `A`. Any error while checking counts as failure.
pub fn verify_amalgam(span: &Span, am: &Amalgam, cap: usize) -> bool {
    let check = || -> Result<bool> {
        if am.g1.src() != span.b() || am.g2.src() != span.c() {
            return Ok(false);
        }
        if am.g1.dst() != &am.d || am.g2.dst() != &am.d {
            return Ok(false);
        }
        for g in [&am.g1, &am.g2] {
            g.verify_ring_hom(cap)?;
            if !g.preserves_expansions(cap)? || !g.is_embedding(cap)? {
                return Ok(false);
            }
        }
        for x in span.a().elements(cap)? {
            let left = am.g1.apply(&span.h1.apply(&x)?)?;
            let right = am.g2.apply(&span.h2.apply(&x)?)?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    };
    check().unwrap_or(false)
}

const SMALL_FIELDS: [(u64, usize); 10] = [
    (2, 1),
    (3, 1),
    (2, 2),
    (5, 1),
    (7, 1),
    (2, 3),
    (3, 2),
    (11, 1),
    (13, 1),
    (2, 4),
];

/// A random span whose three algebras have at most `max_size` elements and
/// share a prime set containing every characteristic plus possibly one
/// extra prime.
pub fn random_span<R: Rng + ?Sized>(rng: &mut R, max_size: u64) -> Result<Span> {
    let mut a_comps: Vec<FieldSpec> = Vec::new();
    let mut size = 1u64;
    let target_len = rng.gen_range(0..=3);
    for _ in 0..8 {
        if a_comps.len() >= target_len {
            break;
        }
        let &(p, n) = SMALL_FIELDS.choose(rng).expect("nonempty");
        let f = make_field(p, n)?;
        if size * f.order() <= max_size {
            size *= f.order();
            a_comps.push(f);
        }
    }
    let mut primes: PrimeSet = a_comps.iter().map(FieldSpec::characteristic).collect();
    if rng.gen_bool(0.3) {
        primes.insert(*[2, 3, 5, 7].choose(rng).expect("nonempty"));
    }
    let a = Product::new(a_comps, primes)?;
    let h1 = random_extension(rng, &a, max_size)?;
    let h2 = random_extension(rng, &a, max_size)?;
    Span::new(h1, h2)
}

/// An injective hom out of `a`: every component of `a` is read at least
/// once, components may be extended or repeated, and the order is shuffled.
fn random_extension<R: Rng + ?Sized>(rng: &mut R, a: &Product, max_size: u64) -> Result<Hom> {
    let mut parts: Vec<(usize, FieldSpec)> = a.components().iter().cloned().enumerate().collect();
    let mut size: u64 = parts.iter().map(|(_, f)| f.order()).product();
    for _ in 0..rng.gen_range(0..4) {
        if parts.is_empty() {
            break;
        }
        let k = rng.gen_range(0..parts.len());
        let (i, f) = parts[k].clone();
        let base = &a.components()[i];
        let grown = make_field(f.characteristic(), f.degree() * rng.gen_range(1..=3))?;
        if rng.gen_bool(0.5) {
            // replace by an extension
            let new_size = size / f.order() * grown.order();
            if new_size <= max_size {
                size = new_size;
                parts[k] = (i, grown);
            }
        } else {
            let copy = make_field(base.characteristic(), base.degree() * rng.gen_range(1..=2))?;
            if size * copy.order() <= max_size {
                size *= copy.order();
                parts.push((i, copy));
            }
        }
    }
    parts.shuffle(rng);
    let mut tau = Vec::with_capacity(parts.len());
    let mut embs = Vec::with_capacity(parts.len());
    for (i, f) in &parts {
        let options = enumerate_embeddings(&a.components()[*i], f)?;
        tau.push(*i);
        embs.push(options.choose(rng).expect("subfield embeds").clone());
    }
    let dst = Product::new(parts.into_iter().map(|(_, f)| f).collect(), a.primes().clone())?;
    Hom::new(a, &dst, tau, embs)
}

//! Dominions of subalgebras of finite products of finite fields.
//!
//! Four routes compute the same set: the pairwise closure formula over
//! prime ideals, the single-field closure, a brute-force equalizer oracle
//! over homomorphisms into small codomains, and the trivial answer for
//! signature-closed subalgebras of an implicitly closed field, backed by
//! separating homomorphism pairs.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::{enumerate_embeddings, is_prime, make_field, FieldSpec};
use crate::structure::{
    enumerate_homs, generator_var, sg_closure, Hom, Operations, Product, Subalgebra, Tuple,
};
use crate::termlang::{eval_in, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    SgFormula,
    FieldCase,
    Oracle,
    Icm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::SgFormula => "sg_formula",
            Method::FieldCase => "field_case",
            Method::Oracle => "oracle",
            Method::Icm => "icm",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sg" | "sg_formula" => Ok(Method::SgFormula),
            "field" | "field_case" => Ok(Method::FieldCase),
            "oracle" => Ok(Method::Oracle),
            "icm" => Ok(Method::Icm),
            other => Err(Error::Malformed(format!("unknown dominion method `{other}`"))),
        }
    }
}

/// The class of codomains searched for separating homomorphism pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodomainClass {
    FiniteFields,
    FiniteProducts,
}

impl fmt::Display for CodomainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodomainClass::FiniteFields => "finite_fields",
            CodomainClass::FiniteProducts => "finite_products",
        })
    }
}

/// Which codomains the oracle enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleMode {
    /// Only GF(p^n) for a single-field B = GF(p^n).
    Galois,
    /// Every GF(q^m) up to the bound.
    Fields,
    /// Every finite product of finite fields up to the bound.
    Products,
}

impl OracleMode {
    fn class(self) -> CodomainClass {
        match self {
            OracleMode::Products => CodomainClass::FiniteProducts,
            _ => CodomainClass::FiniteFields,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A term over the generator variables evaluating to the element in B.
    InSubalgebra(Term),
    /// One term per ordered pair of components `(i, j)`, evaluating to
    /// `(b_i, b_j)` at the projected generators.
    PairWitnesses(Vec<(usize, usize, Term)>),
    /// A pair of homomorphisms agreeing on the generators and differing at
    /// the element. `ideals` names the failing component pair, if any.
    Separated {
        ideals: Option<(usize, usize)>,
        g: Hom,
        h: Hom,
    },
    /// No separating pair exists among the codomains searched.
    Unseparated { pairs_checked: usize },
}

#[derive(Clone, Debug)]
pub struct DominionResult {
    pub ambient: Product,
    pub generators: Vec<Tuple>,
    pub method: Method,
    pub class: CodomainClass,
    /// Sorted.
    pub members: Vec<Tuple>,
    /// One entry per element of the ambient, in element order.
    pub certificates: Vec<(Tuple, Certificate)>,
}

impl DominionResult {
    pub fn contains(&self, x: &Tuple) -> bool {
        self.members.binary_search(x).is_ok()
    }

    /// Re-checks every certificate by term evaluation and hom application.
    pub fn verify_certificates(&self, cap: usize) -> Result<bool> {
        let mut verified: HashSet<Hom> = HashSet::new();
        for (b, cert) in &self.certificates {
            let member = self.contains(b);
            let ok = match cert {
                Certificate::InSubalgebra(t) => {
                    member && eval_at_generators(t, &self.ambient, &self.generators)? == *b
                }
                Certificate::PairWitnesses(list) => {
                    let n = self.ambient.len();
                    member
                        && list.len() == n * n
                        && list.iter().try_fold(true, |acc, (i, j, t)| {
                            Ok::<_, Error>(acc && pair_witness_holds(&self.ambient, &self.generators, b, *i, *j, t)?)
                        })?
                }
                Certificate::Separated { g, h, .. } => {
                    for hom in [g, h] {
                        if verified.insert(hom.clone()) {
                            hom.verify_ring_hom(cap)?;
                            if self.method == Method::Icm && !hom.preserves_expansions(cap)? {
                                return Ok(false);
                            }
                        }
                    }
                    let agree = self
                        .generators
                        .iter()
                        .try_fold(true, |acc, a| Ok::<_, Error>(acc && g.apply(a)? == h.apply(a)?))?;
                    !member && agree && g.apply(b)? != h.apply(b)?
                }
                Certificate::Unseparated { .. } => member,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn eval_at_generators(t: &Term, ambient: &Product, gens: &[Tuple]) -> Result<Tuple> {
    let lookup = |v: &str| {
        (0..gens.len())
            .find(|&i| generator_var(i) == v)
            .map(|i| gens[i].clone())
    };
    eval_in(t, ambient, &lookup)
}

fn pair_product(b: &Product, i: usize, j: usize) -> Result<Product> {
    Product::new(
        vec![b.components()[i].clone(), b.components()[j].clone()],
        b.primes().clone(),
    )
}

fn project(x: &Tuple, i: usize, j: usize) -> Tuple {
    vec![x[i].clone(), x[j].clone()]
}

fn pair_witness_holds(
    b: &Product,
    gens: &[Tuple],
    x: &Tuple,
    i: usize,
    j: usize,
    t: &Term,
) -> Result<bool> {
    let pair = pair_product(b, i, j)?;
    let projected: Vec<Tuple> = gens.iter().map(|g| project(g, i, j)).collect();
    Ok(eval_at_generators(t, &pair, &projected)? == project(x, i, j))
}

fn check_generators(b: &Product, gens: &[Tuple]) -> Result<()> {
    gens.iter().try_for_each(|g| b.check(g))
}

/// Searches for homomorphisms `g = e₁ ∘ π_i` and `h = e₂ ∘ π_j` into a single
/// field GF(p^lcm(deg_i, deg_j)) that agree on `agree_on` and differ at `x`.
/// The hinted component pair is tried first.
fn separating_pair(
    b: &Product,
    agree_on: &[Tuple],
    x: &Tuple,
    hint: Option<(usize, usize)>,
) -> Result<Option<((usize, usize), Hom, Hom)>> {
    let n = b.len();
    let mut order: Vec<(usize, usize)> = hint.into_iter().collect();
    order.extend((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&ij| Some(ij) != hint));
    for (i, j) in order {
        let (fi, fj) = (&b.components()[i], &b.components()[j]);
        if fi.characteristic() != fj.characteristic() {
            continue;
        }
        let deg = num_integer::lcm(fi.degree(), fj.degree());
        let target = make_field(fi.characteristic(), deg)?;
        let c = Product::new(vec![target.clone()], b.primes().clone())?;
        let left = enumerate_embeddings(fi, &target)?;
        let right = enumerate_embeddings(fj, &target)?;
        for e1 in &left {
            let g = Hom::from_parts(b, &c, vec![i], vec![e1.clone()]);
            for e2 in &right {
                let h = Hom::from_parts(b, &c, vec![j], vec![e2.clone()]);
                if g.apply(x)? == h.apply(x)? {
                    continue;
                }
                let agree = agree_on
                    .iter()
                    .try_fold(true, |acc, a| Ok::<_, Error>(acc && g.apply(a)? == h.apply(a)?))?;
                if agree {
                    return Ok(Some(((i, j), g, h)));
                }
            }
        }
    }
    Ok(None)
}

fn non_member(b: &Product, agree_on: &[Tuple], x: &Tuple, hint: Option<(usize, usize)>) -> Result<Certificate> {
    Ok(match separating_pair(b, agree_on, x, hint)? {
        Some((ij, g, h)) => Certificate::Separated {
            ideals: hint.or(Some(ij)),
            g,
            h,
        },
        None => Certificate::Unseparated { pairs_checked: 0 },
    })
}

/// `b` lies in the dominion of `A = Sg(gens)` in `B` iff for every ordered
/// pair of prime ideals `(I, J)` of `B` (with `I = J` allowed), the pair
/// `(b + I, b + J)` lies in the subalgebra of `(B/I)⁺ × (B/J)⁺` generated by
/// `{(a + I, a + J) : a ∈ gens}`.
pub fn dominion_sg(b: &Product, gens: &[Tuple], cap: usize) -> Result<DominionResult> {
    check_generators(b, gens)?;
    let elements = b.elements(cap)?;
    let n = b.len();
    // Each pair closure is computed inside (B/I)⁺ × (B/J)⁺ instead of inside
    // the implicitly closed expansions of the algebraic closures of the
    // fraction fields of B/I and B/J. For finite B the quotient B/I is a
    // finite field, so it is its own fraction field, and its ⁺-expansion is
    // already implicitly closed and contains every generator image a + I.
    // The closure only applies signature operations, which never leave a
    // signature-closed subalgebra, so both closures have the same carrier.
    let mut closures: Vec<((usize, usize), Subalgebra)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let pair = pair_product(b, i, j)?;
            let projected: Vec<Tuple> = gens.iter().map(|g| project(g, i, j)).collect();
            closures.push(((i, j), sg_closure(&pair, &projected, cap)?));
        }
    }
    let mut members = Vec::new();
    let mut certificates = Vec::with_capacity(elements.len());
    for x in elements {
        let failing = closures
            .iter()
            .find(|((i, j), s)| !s.contains(&project(&x, *i, *j)))
            .map(|(ij, _)| *ij);
        let cert = match failing {
            None => {
                members.push(x.clone());
                Certificate::PairWitnesses(
                    closures
                        .iter()
                        .map(|((i, j), s)| {
                            let t = s.witness(&project(&x, *i, *j)).expect("member").clone();
                            (*i, *j, t)
                        })
                        .collect(),
                )
            }
            Some(ij) => non_member(b, gens, &x, Some(ij))?,
        };
        certificates.push((x, cert));
    }
    Ok(DominionResult {
        ambient: b.clone(),
        generators: gens.to_vec(),
        method: Method::SgFormula,
        class: CodomainClass::FiniteFields,
        members,
        certificates,
    })
}

/// For a single field `B`, the dominion is the subalgebra of `B⁺` generated
/// by `gens`, intersected with `B`.
pub fn dominion_field_case(b: &Product, gens: &[Tuple], cap: usize) -> Result<DominionResult> {
    if b.len() != 1 {
        return Err(Error::NotAField);
    }
    check_generators(b, gens)?;
    let closure = sg_closure(b, gens, cap)?;
    let mut members = Vec::new();
    let mut certificates = Vec::new();
    for x in b.elements(cap)? {
        let cert = match closure.witness(&x) {
            Some(t) => {
                members.push(x.clone());
                Certificate::InSubalgebra(t.clone())
            }
            None => non_member(b, gens, &x, None)?,
        };
        certificates.push((x, cert));
    }
    Ok(DominionResult {
        ambient: b.clone(),
        generators: gens.to_vec(),
        method: Method::FieldCase,
        class: CodomainClass::FiniteFields,
        members,
        certificates,
    })
}

/// Every finite field of order at most `bound`, smallest first.
pub(crate) fn fields_up_to(bound: usize) -> Vec<FieldSpec> {
    let mut out = Vec::new();
    for q in 2..=bound as u64 {
        if !is_prime(q) {
            continue;
        }
        let mut order = q;
        let mut n = 1;
        while order <= bound as u64 {
            out.push(make_field(q, n).expect("small field"));
            n += 1;
            order = order.saturating_mul(q);
        }
    }
    out.sort_by_key(|f| (f.order(), f.characteristic()));
    out
}

/// Every multiset of finite fields whose product has at most `bound`
/// elements, including the empty product, smallest carrier first.
pub(crate) fn products_up_to(bound: usize) -> Vec<Vec<FieldSpec>> {
    fn extend(
        fields: &[FieldSpec],
        from: usize,
        size: u64,
        bound: u64,
        current: &mut Vec<FieldSpec>,
        out: &mut Vec<(u64, Vec<FieldSpec>)>,
    ) {
        out.push((size, current.clone()));
        for (k, f) in fields.iter().enumerate().skip(from) {
            if size * f.order() <= bound {
                current.push(f.clone());
                extend(fields, k, size * f.order(), bound, current, out);
                current.pop();
            }
        }
    }
    let fields = fields_up_to(bound);
    let mut out = Vec::new();
    extend(&fields, 0, 1, bound as u64, &mut Vec::new(), &mut out);
    out.sort_by_key(|(size, _)| *size);
    out.into_iter().map(|(_, c)| c).collect()
}

/// The intersection of the equalizers `{b : g(b) = h(b)}` over all pairs of
/// homomorphisms `g, h : B → C` agreeing on `gens`, for every codomain `C`
/// selected by `mode` with at most `bound` elements. `None` picks
/// [`OracleMode::Galois`] for single-field `B` and
/// [`OracleMode::Products`] otherwise.
pub fn dominion_oracle(
    b: &Product,
    gens: &[Tuple],
    bound: usize,
    mode: Option<OracleMode>,
    cap: usize,
) -> Result<DominionResult> {
    check_generators(b, gens)?;
    if bound > cap {
        return Err(Error::CapExceeded { size: bound, cap });
    }
    let elements = b.elements(cap)?;
    let mode = mode.unwrap_or(if b.len() == 1 {
        OracleMode::Galois
    } else {
        OracleMode::Products
    });
    let codomains: Vec<Vec<FieldSpec>> = match mode {
        OracleMode::Galois => {
            if b.len() != 1 {
                return Err(Error::NotAField);
            }
            if (b.components()[0].order() as usize) <= bound {
                vec![vec![b.components()[0].clone()]]
            } else {
                vec![]
            }
        }
        OracleMode::Fields => fields_up_to(bound).into_iter().map(|f| vec![f]).collect(),
        OracleMode::Products => products_up_to(bound),
    };
    // The equalizer of any agreeing pair contains Sg(gens), so once the
    // running intersection reaches that size it cannot shrink further.
    let floor = sg_closure(b, gens, cap)?;

    let mut alive = vec![true; elements.len()];
    let mut separated: Vec<Option<(Hom, Hom)>> = vec![None; elements.len()];
    let mut pairs_checked = 0;
    'codomains: for comps in codomains {
        let mut primes = b.primes().clone();
        primes.extend(comps.iter().map(FieldSpec::characteristic));
        let c = Product::new(comps, primes)?;
        let homs = enumerate_homs(b, &c, cap)?;
        let images: Vec<Vec<Tuple>> = homs
            .iter()
            .map(|h| elements.iter().map(|x| h.apply(x)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let mut groups: HashMap<Vec<Tuple>, Vec<usize>> = HashMap::new();
        for (k, h) in homs.iter().enumerate() {
            let key = gens.iter().map(|a| h.apply(a)).collect::<Result<Vec<_>>>()?;
            groups.entry(key).or_default().push(k);
        }
        let mut keys: Vec<_> = groups.keys().cloned().collect();
        keys.sort();
        for key in keys {
            let group = &groups[&key];
            let reference = group[0];
            for &other in &group[1..] {
                pairs_checked += 1;
                for (e, live) in alive.iter_mut().enumerate() {
                    if *live && images[reference][e] != images[other][e] {
                        *live = false;
                        separated[e] = Some((homs[reference].clone(), homs[other].clone()));
                    }
                }
            }
            if alive.iter().filter(|&&l| l).count() == floor.len() {
                break 'codomains;
            }
        }
    }

    let mut members = Vec::new();
    let mut certificates = Vec::with_capacity(elements.len());
    for ((x, live), pair) in elements.into_iter().zip(alive).zip(separated) {
        let cert = if live {
            members.push(x.clone());
            match floor.witness(&x) {
                Some(t) => Certificate::InSubalgebra(t.clone()),
                None => Certificate::Unseparated { pairs_checked },
            }
        } else {
            let (g, h) = pair.expect("separated elements record their pair");
            Certificate::Separated { ideals: None, g, h }
        };
        certificates.push((x, cert));
    }
    Ok(DominionResult {
        ambient: b.clone(),
        generators: gens.to_vec(),
        method: Method::Oracle,
        class: mode.class(),
        members,
        certificates,
    })
}

/// The dominion of a signature-closed subalgebra `A` of an implicitly
/// closed field `B` is `A` itself. Every `b ∉ A` is certified by a pair of
/// automorphisms of `B` that agree on `A`, differ at `b` and preserve `*`
/// and every `r_p`; an element without such a pair is reported as a member.
pub fn dominion_icm(b: &Product, a: &[Tuple], cap: usize) -> Result<DominionResult> {
    if b.len() != 1 {
        return Err(Error::NotIcf);
    }
    check_generators(b, a)?;
    let carrier: BTreeSet<Tuple> = a.iter().cloned().collect();
    check_signature_closed(b, &carrier)?;
    let generators: Vec<Tuple> = carrier.iter().cloned().collect();
    let mut checked: HashMap<Hom, bool> = HashMap::new();
    let mut preserves = |h: &Hom| -> Result<bool> {
        if let Some(&ok) = checked.get(h) {
            return Ok(ok);
        }
        let ok = h.preserves_expansions(cap)?;
        checked.insert(h.clone(), ok);
        Ok(ok)
    };
    let mut members = Vec::new();
    let mut certificates = Vec::new();
    for x in b.elements(cap)? {
        let cert = if carrier.contains(&x) {
            let k = generators.binary_search(&x).expect("present");
            Certificate::InSubalgebra(Term::var(&generator_var(k)))
        } else {
            match separating_pair(b, &generators, &x, None)? {
                Some((ij, g, h)) if preserves(&g)? && preserves(&h)? => {
                    Certificate::Separated {
                        ideals: Some(ij),
                        g,
                        h,
                    }
                }
                _ => Certificate::Unseparated { pairs_checked: 0 },
            }
        };
        if !matches!(cert, Certificate::Separated { .. }) {
            members.push(x.clone());
        }
        certificates.push((x, cert));
    }
    Ok(DominionResult {
        ambient: b.clone(),
        generators,
        method: Method::Icm,
        class: CodomainClass::FiniteFields,
        members,
        certificates,
    })
}

fn check_signature_closed(b: &Product, a: &BTreeSet<Tuple>) -> Result<()> {
    let ring = |what: &str| Err(Error::NotSubalgebra(format!("not closed under {what}")));
    if !a.contains(&b.zero()) {
        return ring("0");
    }
    if !a.contains(&b.one()) {
        return ring("1");
    }
    for x in a {
        if !a.contains(&b.neg(x)?) {
            return ring("-");
        }
        for y in a {
            if !a.contains(&b.add(x, y)?) {
                return ring("+");
            }
            if !a.contains(&b.mul(x, y)?) {
                return ring("*");
            }
        }
    }
    for x in a {
        if !a.contains(&b.star(x)?) {
            return Err(Error::NotIcfSubalgebra("not closed under star".into()));
        }
        for &p in b.primes() {
            if !a.contains(&b.root(p, x)?) {
                return Err(Error::NotIcfSubalgebra(format!("not closed under root {p}")));
            }
        }
    }
    Ok(())
}

//! The full verification matrix, parameterized by the largest carrier
//! size. Each suite reports how many instances it checked and the first
//! few failures.

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::amalgam::{amalgamate, random_span, verify_amalgam};
use crate::dominion::{
    dominion_field_case, dominion_icm, dominion_oracle, dominion_sg, fields_up_to, products_up_to,
};
use crate::error::{Error, Result};
use crate::gf::{is_prime, FieldSpec};
use crate::laws::{
    check_commutative_ring, check_discriminator, check_icm, check_meadow, check_reduced,
    check_regular, recheck,
};
use crate::structure::{
    enumerate_homs, sg_closure, Algebra, Element, Finite, PrimeSet, Product, TableRing, Tuple,
};
use crate::termlang::{catalog, pp_check_indices, random_term, PPFormula, Program, Term};

const MAX_FAILURES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSummary {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteSummary {
    fn new(name: &'static str) -> Self {
        SuiteSummary {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(what());
        }
    }
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub max_carrier: usize,
    pub suites: Vec<SuiteSummary>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteSummary::passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "max_carrier": self.max_carrier,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "suites": self.suites.iter().map(|s| serde_json::json!({
                "name": s.name,
                "verdict": if s.passed() { "pass" } else { "fail" },
                "checked": s.checked,
                "failures": s.failures,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs every suite with carriers of at most `k` elements.
pub fn run(k: usize, cap: usize, seed: u64) -> Result<Summary> {
    if k > cap {
        return Err(Error::CapExceeded { size: k, cap });
    }
    let suites = vec![
        icm_soundness(k)?,
        graph_equivalences(k)?,
        dominion_towers(k)?,
        icm_dominion_triviality(k)?,
        discriminator(k.min(49))?,
        regularity(k)?,
        amalgamation(k.min(16), 200, seed)?,
        hom_compatibility(k.min(16), 500, seed)?,
        negative_controls(k)?,
        completeness_shadow(k.min(12))?,
    ];
    Ok(Summary { max_carrier: k, suites })
}

/// Every finite field with at most `k` elements, smallest first.
pub fn fields(k: usize) -> Vec<FieldSpec> {
    fields_up_to(k)
}

/// Every product of fields with at most `k` elements in total and at most
/// `max_component` elements per component, including the empty product.
pub fn products(k: usize, max_component: u64) -> Vec<Vec<FieldSpec>> {
    products_up_to(k)
        .into_iter()
        .filter(|c| c.iter().all(|f| f.order() <= max_component))
        .collect()
}

fn with_primes(comps: Vec<FieldSpec>, extra: &[u64]) -> Result<Product> {
    let mut primes: PrimeSet = comps.iter().map(FieldSpec::characteristic).collect();
    primes.extend(extra);
    Product::new(comps, primes)
}

fn describe(b: &Product) -> String {
    format!("{b} P={:?}", b.primes())
}

pub fn icm_soundness(k: usize) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("icm_soundness");
    for comps in products(k, 16) {
        for extra in [&[][..], &[2, 3, 5, 7][..]] {
            let b = with_primes(comps.clone(), extra)?;
            let fin = Finite::new(&Algebra::Product(b.clone()), k.max(1))?;
            let report = check_icm(&fin, b.primes())?;
            s.record(report.passed, || format!("{}: {:?}", describe(&b), report.counterexample));
        }
    }
    Ok(s)
}

/// root_p(a, b) holds iff b = r_p(a); inv(a, b) iff b = a*; ∃root_p(a, b)
/// iff b = r_p(a). The right-hand sides come from field arithmetic, the
/// left-hand sides from exhaustive model checking.
pub fn graph_equivalences(k: usize) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("graph_equivalences");
    for f in fields(k) {
        let mut primes: BTreeSet<u64> = [2, 3, 5].into();
        primes.insert(f.characteristic());
        let alg = Algebra::field_with_primes(&f, primes.clone())?;
        let fin = Finite::new(&alg, k)?;
        let elems: Vec<_> = f.elements().collect();
        let inv = catalog::inv();
        for &p in &primes {
            let graph = PPFormula {
                bound: vec![],
                conjuncts: vec![catalog::root_eq(p, "x", "y")],
            };
            let exists = catalog::exists_root(p);
            for (i, a) in elems.iter().enumerate() {
                let root = a.weak_root(p)?;
                for (j, b) in elems.iter().enumerate() {
                    let expected = *b == root;
                    let g = pp_check_indices(&fin, &graph, &[i, j])?;
                    let e = pp_check_indices(&fin, &exists, &[i, j])?;
                    s.record(g == expected && e == expected, || {
                        format!("{f} p={p} a={a} b={b}: graph {g}, exists {e}, expected {expected}")
                    });
                }
            }
        }
        for (i, a) in elems.iter().enumerate() {
            let star = a.weak_inverse();
            for (j, b) in elems.iter().enumerate() {
                let holds = pp_check_indices(&fin, &inv, &[i, j])?;
                s.record(holds == (*b == star), || format!("{f} inv({a}, {b}) = {holds}"));
            }
        }
    }
    Ok(s)
}

fn singleton_tuples(elems: impl IntoIterator<Item = crate::gf::FFElement>) -> Vec<Tuple> {
    elems.into_iter().map(|e| vec![e]).collect()
}

/// Elements fixed by the a-th power of Frobenius, computed by powering.
fn fixed_by_frobenius(f: &FieldSpec, a: usize) -> BTreeSet<Tuple> {
    let q = (f.characteristic() as u128).pow(a as u32);
    f.elements().filter(|x| x.pow(q) == *x).map(|x| vec![x]).collect()
}

pub fn dominion_towers(k: usize) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("dominion_towers");
    for f in fields(k) {
        let b = Product::of(vec![f.clone()]);
        for a in (1..=f.degree()).filter(|a| f.degree() % a == 0) {
            let gens = singleton_tuples(f.subfield_elements(a)?);
            let expected = fixed_by_frobenius(&f, a);
            let routes = [
                dominion_sg(&b, &gens, k)?,
                dominion_field_case(&b, &gens, k)?,
                dominion_oracle(&b, &gens, k, None, k)?,
            ];
            let mut ok = true;
            for r in &routes {
                let members: BTreeSet<Tuple> = r.members.iter().cloned().collect();
                ok &= members == expected && r.verify_certificates(k)?;
            }
            s.record(ok, || format!("GF({}^{a}) <= {f}", f.characteristic()));
        }
    }
    Ok(s)
}

/// The distinct subalgebras generated by single elements of `b`.
pub fn singly_generated_subalgebras(b: &Product, cap: usize) -> Result<Vec<BTreeSet<Tuple>>> {
    let mut out: BTreeSet<Vec<Tuple>> = BTreeSet::new();
    for x in b.elements(cap)? {
        out.insert(sg_closure(b, &[x], cap)?.carrier().to_vec());
    }
    Ok(out.into_iter().map(|c| c.into_iter().collect()).collect())
}

pub fn icm_dominion_triviality(k: usize) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("icm_dominion_triviality");
    for f in fields(k) {
        let b = Product::of(vec![f.clone()]);
        let subs = singly_generated_subalgebras(&b, k)?;
        let subfields: BTreeSet<BTreeSet<Tuple>> = (1..=f.degree())
            .filter(|d| f.degree() % d == 0)
            .map(|d| fixed_by_frobenius(&f, d))
            .collect();
        let found: BTreeSet<BTreeSet<Tuple>> = subs.iter().cloned().collect();
        s.record(found == subfields, || format!("{f}: subalgebras differ from subfields"));
        for a in subs {
            let carrier: Vec<Tuple> = a.iter().cloned().collect();
            let r = dominion_icm(&b, &carrier, k)?;
            let members: BTreeSet<Tuple> = r.members.iter().cloned().collect();
            let ok = members == a && r.verify_certificates(k)?;
            s.record(ok, || format!("{f}: A of size {}", a.len()));
        }
    }
    Ok(s)
}

pub fn discriminator(k: usize) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("discriminator");
    for f in fields(k) {
        let report = check_discriminator(&Finite::new(&Algebra::field(&f), k)?)?;
        s.record(report.passed, || format!("{f}: {:?}", report.counterexample));
    }
    Ok(s)
}

fn zn(n: usize) -> Result<Finite> {
    Finite::new(&Algebra::Table(TableRing::zn(n, None, BTreeMap::new())?), n)
}

pub fn regularity(k: usize) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("regularity");
    for comps in products(k, 16) {
        let b = Product::of(comps);
        let fin = Finite::new(&Algebra::Product(b.clone()), k.max(1))?;
        let regular = check_regular(&fin)?;
        let reduced = check_reduced(&fin)?;
        s.record(regular.passed && reduced.passed, || describe(&b));
    }
    for n in [4, 8, 9].into_iter().filter(|&n| n <= k) {
        let report = check_regular(&zn(n)?)?;
        s.record(!report.passed, || format!("Z/{n} passed regularity"));
    }
    for p in [2, 3, 5, 7].into_iter().filter(|p| p * p <= k) {
        let report = check_reduced(&zn(p * p)?)?;
        s.record(!report.passed, || format!("Z/{} passed reducedness", p * p));
    }
    Ok(s)
}

pub fn amalgamation(k: usize, count: usize, seed: u64) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("amalgamation");
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..count {
        let span = random_span(&mut rng, k.max(1) as u64)?;
        let ok = match amalgamate(&span) {
            Ok(am) => verify_amalgam(&span, &am, 64),
            Err(_) => false,
        };
        s.record(ok, || format!("{span:?}"));
    }
    Ok(s)
}

/// For every hom between products of at most `k` elements and each of
/// `terms` random terms: h(t(a)) = t(h(a)) at a random assignment.
pub fn hom_compatibility(k: usize, terms: usize, seed: u64) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("hom_compatibility");
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    let primes = [2, 3, 5, 7, 11, 13];
    let vars = ["x", "y", "z"];
    let slots: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let pool: Vec<Term> = (0..terms).map(|_| random_term(&mut rng, 6, &vars, &primes[..3])).collect();
    let algebras: Vec<(Product, Finite)> = products(k.max(1), 16)
        .into_iter()
        .map(|c| {
            let b = Product::new(c, primes.into())?;
            let fin = Finite::new(&Algebra::Product(b.clone()), k.max(1))?;
            Ok((b, fin))
        })
        .collect::<Result<_>>()?;
    let programs: Vec<Vec<Program>> = algebras
        .iter()
        .map(|(_, fin)| {
            pool.iter()
                .map(|t| Program::compile(t, fin.tables(), &slots))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let mut stack = Vec::new();
    for (bi, (b, bfin)) in algebras.iter().enumerate() {
        for (ci, (c, cfin)) in algebras.iter().enumerate() {
            for h in enumerate_homs(b, c, k.max(1))? {
                let map: Vec<usize> = bfin
                    .elements()
                    .iter()
                    .map(|e| {
                        let x = e.as_tuple().expect("product element");
                        cfin.index_of(&Element::Tuple(h.apply(x)?))
                    })
                    .collect::<Result<_>>()?;
                for (ti, term) in pool.iter().enumerate() {
                    let args: Vec<usize> = (0..3).map(|_| rng.gen_range(0..bfin.size())).collect();
                    let mapped: Vec<usize> = args.iter().map(|&a| map[a]).collect();
                    let left = map[programs[bi][ti].run(&args, &mut stack)];
                    let right = programs[ci][ti].run(&mapped, &mut stack);
                    s.record(left == right, || format!("{h:?} on {term}"));
                }
            }
        }
    }
    Ok(s)
}

/// The ring, meadow and icm suites on a table ring; true when all pass.
fn all_suites_pass(t: &TableRing) -> Result<bool> {
    let fin = Finite::new(&Algebra::Table(t.clone()), t.size())?;
    Ok(check_commutative_ring(&fin)?.passed
        && check_meadow(&fin)?.passed
        && check_icm(&fin, &t.primes())?.passed)
}

/// Every table ring obtained from `t` by changing one entry of one table.
pub fn single_entry_mutations(t: &TableRing) -> Result<Vec<TableRing>> {
    let n = t.size();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for v in (0..n).filter(|&v| v != t.add_at(a, b)) {
                out.push(t.clone().with_add_entry(a, b, v)?);
            }
            for v in (0..n).filter(|&v| v != t.mul_at(a, b)) {
                out.push(t.clone().with_mul_entry(a, b, v)?);
            }
        }
        let mut unary: Vec<(Option<u64>, Vec<usize>)> = vec![(None, t.neg_table().to_vec())];
        if let Some(star) = t.star_table() {
            unary.push((Some(0), star.to_vec()));
        }
        for p in t.primes() {
            unary.push((Some(p), t.root_table(p).expect("listed").to_vec()));
        }
        for (which, table) in unary {
            for v in (0..n).filter(|&v| v != table[a]) {
                let mut changed = table.clone();
                changed[a] = v;
                out.push(match which {
                    None => t.clone().with_neg(changed)?,
                    Some(0) => t.clone().with_star(Some(changed))?,
                    Some(p) => t.clone().with_root(p, Some(changed))?,
                });
            }
        }
    }
    Ok(out)
}

pub fn negative_controls(k: usize) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("negative_controls");
    if k >= 4 {
        let z4 = Finite::new(
            &Algebra::Table(TableRing::zn(4, Some(vec![0, 1, 2, 3]), BTreeMap::new())?),
            4,
        )?;
        for run in [check_reduced, check_meadow] {
            let first = run(&z4)?;
            let second = run(&z4)?;
            let ok = !first.passed
                && first.counterexample == second.counterexample
                && first.counterexample.as_ref().map(|c| c.0[0].1.clone()) == Some(Element::Table(2))
                && recheck(&z4, &first)?;
            s.record(ok, || format!("Z/4 {}: {:?}", first.law, first.counterexample));
        }
    }
    let bases: Vec<Vec<FieldSpec>> = products(k.min(6), 16)
        .into_iter()
        .filter(|c| !c.is_empty())
        .collect();
    for comps in bases {
        let b = Product::of(comps);
        let fin = Finite::new(&Algebra::Product(b.clone()), k)?;
        let t = fin.tables();
        s.record(all_suites_pass(t)?, || format!("{b} fails before mutation"));
        for m in single_entry_mutations(t)? {
            s.record(!all_suites_pass(&m)?, || format!("{b}: a mutation survived"));
        }
    }
    Ok(s)
}

/// Z/p^k style truncated polynomial rings GF(p)[x]/(x^d), as tables.
fn truncated_polynomials(p: usize, d: usize) -> Result<TableRing> {
    let n = p.pow(d as u32);
    let digits = |mut i: usize| -> Vec<usize> {
        (0..d)
            .map(|_| {
                let c = i % p;
                i /= p;
                c
            })
            .collect()
    };
    let index = |c: &[usize]| c.iter().rev().fold(0, |acc, &x| acc * p + x);
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (da, db) = (digits(a), digits(b));
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add.push(index(&sum));
            let mut prod = vec![0; d];
            for i in 0..d {
                for j in 0..d - i {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                }
            }
            mul.push(index(&prod));
        }
    }
    let neg = (0..n)
        .map(|a| index(&digits(a).iter().map(|x| (p - x) % p).collect::<Vec<_>>()))
        .collect();
    TableRing::new(n, 0, 1, add, mul, neg, None, BTreeMap::new())
}

/// Commutative rings with at most `k` elements used as reducts: every
/// Z/n, every product of finite fields (ring structure only) and a few
/// truncated polynomial rings.
pub fn base_rings(k: usize) -> Result<Vec<(String, TableRing)>> {
    let mut out = Vec::new();
    for n in 1..=k {
        out.push((format!("Z/{n}"), TableRing::zn(n, None, BTreeMap::new())?));
    }
    for comps in products(k, k as u64) {
        if comps.len() == 1 && comps[0].degree() == 1 {
            continue;
        }
        let b = Product::of(comps);
        let t = Finite::new(&Algebra::Product(b.clone()), k)?.tables().clone();
        let mut stripped = t.with_star(None)?;
        for p in b.primes().clone() {
            stripped = stripped.with_root(p, None)?;
        }
        out.push((format!("{b}"), stripped));
    }
    for (p, d) in [(2usize, 2usize), (3, 2), (2, 3)] {
        if p.pow(d as u32) <= k {
            out.push((format!("GF({p})[x]/(x^{d})"), truncated_polynomials(p, d)?));
        }
    }
    Ok(out)
}

/// All `*` tables on `t` satisfying x = x²x* and x** = x.
pub fn star_candidates(t: &TableRing) -> Vec<Vec<usize>> {
    let n = t.size();
    let options: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let sq = t.mul_at(x, x);
            (0..n).filter(|&s| t.mul_at(sq, s) == x).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut star = vec![usize::MAX; n];
    fn extend(x: usize, options: &[Vec<usize>], star: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if x == star.len() {
            out.push(star.clone());
            return;
        }
        if star[x] != usize::MAX {
            extend(x + 1, options, star, out);
            return;
        }
        for &s in &options[x] {
            if s != x && (star[s] != usize::MAX || !options[s].contains(&x)) {
                continue;
            }
            star[x] = s;
            star[s] = x;
            extend(x + 1, options, star, out);
            star[s] = usize::MAX;
            star[x] = usize::MAX;
        }
    }
    extend(0, &options, &mut star, &mut out);
    out
}

fn numeral(t: &TableRing, k: u64) -> usize {
    (0..k).fold(t.zero_index(), |acc, _| t.add_at(acc, t.one_index()))
}

fn power(t: &TableRing, x: usize, e: u64) -> usize {
    (0..e).fold(t.one_index(), |acc, _| t.mul_at(acc, x))
}

/// All expansions of `t` by `*` and `r_p` (p in `primes`) satisfying the
/// equations of implicitly closed meadows pointwise.
pub fn icm_expansions(t: &TableRing, primes: &PrimeSet) -> Result<Vec<TableRing>> {
    let n = t.size();
    let mut out = Vec::new();
    for star in star_candidates(t) {
        let mut choices: Vec<(u64, usize, Vec<usize>)> = Vec::new();
        let mut dead = false;
        for &p in primes {
            let pn = numeral(t, p);
            let indicator = t.add_at(t.one_index(), t.neg_at(t.mul_at(star[pn], pn)));
            for x in 0..n {
                let rhs = t.mul_at(indicator, x);
                let ys: Vec<usize> = (0..n).filter(|&y| power(t, y, p) == rhs).collect();
                dead |= ys.is_empty();
                choices.push((p, x, ys));
            }
        }
        if dead {
            continue;
        }
        let mut pick = vec![0usize; choices.len()];
        loop {
            let mut roots: BTreeMap<u64, Vec<usize>> =
                primes.iter().map(|&p| (p, vec![0; n])).collect();
            for ((p, x, ys), &i) in choices.iter().zip(&pick) {
                roots.get_mut(p).expect("prime listed")[*x] = ys[i];
            }
            let mut r = t.clone().with_star(Some(star.clone()))?;
            for (p, table) in roots {
                r = r.with_root(p, Some(table))?;
            }
            out.push(r);
            let mut carried = true;
            for slot in (0..pick.len()).rev() {
                pick[slot] += 1;
                if pick[slot] < choices[slot].2.len() {
                    carried = false;
                    break;
                }
                pick[slot] = 0;
            }
            if carried {
                break;
            }
        }
    }
    Ok(out)
}

/// An injective map `r → c` of table indices preserving every operation
/// of `r`, found by backtracking with forward propagation.
pub fn find_table_embedding(r: &TableRing, c: &TableRing) -> Option<Vec<usize>> {
    if c.size() < r.size() {
        return None;
    }
    let primes: Vec<u64> = r.primes().union(&c.primes()).copied().collect();
    let mut map = vec![None; r.size()];
    let mut used = vec![None; c.size()];
    if !assign(r, c, &primes, &mut map, &mut used, r.zero_index(), c.zero_index())
        || !assign(r, c, &primes, &mut map, &mut used, r.one_index(), c.one_index())
    {
        return None;
    }
    search(r, c, &primes, map, used)
}

fn root_or_zero(t: &TableRing, p: u64, x: usize) -> usize {
    t.root_table(p).map_or(t.zero_index(), |table| table[x])
}

fn star_or_self(t: &TableRing, x: usize) -> usize {
    t.star_table().map_or(x, |table| table[x])
}

/// Records `x ↦ v` and everything it forces; false on a conflict.
fn assign(
    r: &TableRing,
    c: &TableRing,
    primes: &[u64],
    map: &mut [Option<usize>],
    used: &mut [Option<usize>],
    x: usize,
    v: usize,
) -> bool {
    let mut work = vec![(x, v)];
    while let Some((x, v)) = work.pop() {
        match (map[x], used[v]) {
            (Some(w), _) if w != v => return false,
            (Some(_), _) => continue,
            (None, Some(_)) => return false,
            (None, None) => {}
        }
        map[x] = Some(v);
        used[v] = Some(x);
        work.push((r.neg_at(x), c.neg_at(v)));
        work.push((star_or_self(r, x), star_or_self(c, v)));
        for &p in primes {
            work.push((root_or_zero(r, p, x), root_or_zero(c, p, v)));
        }
        for y in 0..r.size() {
            if let Some(w) = map[y] {
                work.push((r.add_at(x, y), c.add_at(v, w)));
                work.push((r.mul_at(x, y), c.mul_at(v, w)));
            }
        }
    }
    true
}

fn search(
    r: &TableRing,
    c: &TableRing,
    primes: &[u64],
    map: Vec<Option<usize>>,
    used: Vec<Option<usize>>,
) -> Option<Vec<usize>> {
    let Some(x) = map.iter().position(Option::is_none) else {
        return Some(map.into_iter().map(|v| v.expect("complete")).collect());
    };
    for v in (0..c.size()).filter(|&v| used[v].is_none()) {
        let (mut m, mut u) = (map.clone(), used.clone());
        if assign(r, c, primes, &mut m, &mut u, x, v) {
            if let Some(found) = search(r, c, primes, m, u) {
                return Some(found);
            }
        }
    }
    None
}

/// Exhaustive check that `map` is an injective hom `r → c` for the full
/// signature over `primes`.
pub fn verify_table_embedding(r: &TableRing, c: &TableRing, map: &[usize], primes: &PrimeSet) -> bool {
    let n = r.size();
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if map.len() != n || distinct.len() != n {
        return false;
    }
    if map[r.zero_index()] != c.zero_index() || map[r.one_index()] != c.one_index() {
        return false;
    }
    (0..n).all(|x| {
        map[r.neg_at(x)] == c.neg_at(map[x])
            && r.star_table().is_some()
            && map[star_or_self(r, x)] == star_or_self(c, map[x])
            && primes
                .iter()
                .all(|&p| map[root_or_zero(r, p, x)] == root_or_zero(c, p, map[x]))
            && (0..n).all(|y| {
                map[r.add_at(x, y)] == c.add_at(map[x], map[y])
                    && map[r.mul_at(x, y)] == c.mul_at(map[x], map[y])
            })
    })
}

/// Outcome of the completeness search for one table ring.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub name: String,
    pub ring: TableRing,
    pub codomain: Option<Product>,
}

/// Every expansion of a base ring of at most `k` elements that passes the
/// icm suite, with the smallest product of fields it embeds into.
pub fn completeness_search(k: usize) -> Result<Vec<Embedded>> {
    let mut out = Vec::new();
    for (name, base) in base_rings(k)? {
        let primes: PrimeSet = (2..=base.size().max(2) as u64).filter(|&q| is_prime(q)).collect();
        for ring in icm_expansions(&base, &primes)? {
            let fin = Finite::new(&Algebra::Table(ring.clone()), k)?;
            if !check_icm(&fin, &primes)?.passed {
                continue;
            }
            let mut codomain = None;
            for comps in products(64, 64) {
                if comps.iter().any(|f| !primes.contains(&f.characteristic())) {
                    continue;
                }
                let prod = Product::new(comps, primes.clone())?;
                if prod.size().is_some_and(|s| s < ring.size()) {
                    continue;
                }
                let tables = Finite::new(&Algebra::Product(prod.clone()), 64)?.tables().clone();
                if let Some(map) = find_table_embedding(&ring, &tables) {
                    if verify_table_embedding(&ring, &tables, &map, &primes) {
                        codomain = Some(prod);
                        break;
                    }
                }
            }
            out.push(Embedded {
                name: name.clone(),
                ring,
                codomain,
            });
        }
    }
    Ok(out)
}

pub fn completeness_shadow(k: usize) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("completeness_shadow");
    for e in completeness_search(k)? {
        s.record(e.codomain.is_some(), || format!("{} has no embedding", e.name));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuous_at_one() {
        let summary = run(1, 64, 0).unwrap();
        assert!(summary.passed(), "{:?}", summary);
        let towers = summary.suites.iter().find(|s| s.name == "dominion_towers").unwrap();
        assert_eq!(towers.checked, 0);
    }

    #[test]
    fn refuses_oversized_runs() {
        assert_eq!(
            run(1_000_000, 64, 0).unwrap_err(),
            Error::CapExceeded { size: 1_000_000, cap: 64 }
        );
    }

    #[test]
    fn star_candidates_on_small_rings() {
        let z6 = TableRing::zn(6, None, BTreeMap::new()).unwrap();
        // 0↔0, 1↔1, 2↔2, 3↔3, 4↔4, 5↔5 is the only involutive weak inverse
        assert_eq!(star_candidates(&z6), vec![vec![0, 1, 2, 3, 4, 5]]);
        let z4 = TableRing::zn(4, None, BTreeMap::new()).unwrap();
        assert!(star_candidates(&z4).is_empty());
        let z5 = TableRing::zn(5, None, BTreeMap::new()).unwrap();
        assert_eq!(star_candidates(&z5), vec![vec![0, 1, 3, 2, 4]]);
    }

    #[test]
    fn z6_embeds_in_gf2_times_gf3() {
        let found = completeness_search(6).unwrap();
        let z6 = found.iter().find(|e| e.name == "Z/6").unwrap();
        let c = z6.codomain.as_ref().unwrap();
        assert_eq!(c.size(), Some(6));
    }

    #[test]
    fn truncated_polynomial_tables() {
        let t = truncated_polynomials(2, 2).unwrap();
        let fin = Finite::new(&Algebra::Table(t.clone()), 4).unwrap();
        assert!(check_commutative_ring(&fin).unwrap().passed);
        assert!(!check_reduced(&fin).unwrap().passed);
        assert!(star_candidates(&t).is_empty());
    }
}

//! One-call verdicts for the axiom suites: commutative rings, meadows,
//! implicitly closed meadows, reducedness, von Neumann regularity, weak
//! rootedness and the discriminator term.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::structure::{Algebra, Element, Finite, PrimeSet};
use crate::termlang::{
    catalog, pp_check_indices, satisfies, Assignment, Equation, Formula, Odometer, PPFormula,
    Program, Term,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub passed: bool,
    /// The sentence that failed, rendered as an s-expression.
    pub axiom: Option<String>,
    pub counterexample: Option<Assignment>,
    pub elapsed: Duration,
}

impl LawReport {
    fn pass(law: &str, started: Instant) -> Self {
        LawReport {
            law: law.to_string(),
            passed: true,
            axiom: None,
            counterexample: None,
            elapsed: started.elapsed(),
        }
    }

    fn fail(law: &str, axiom: String, counterexample: Assignment, started: Instant) -> Self {
        LawReport {
            law: law.to_string(),
            passed: false,
            axiom: Some(axiom),
            counterexample: Some(counterexample),
            elapsed: started.elapsed(),
        }
    }
}

fn check_sentences(fin: &Finite, law: &str, sentences: Vec<Formula>) -> Result<LawReport> {
    let started = Instant::now();
    for s in sentences {
        let verdict = satisfies(fin, &s)?;
        if !verdict.holds {
            let cex = verdict.counterexample.expect("failures carry a counterexample");
            return Ok(LawReport::fail(law, s.to_string(), cex, started));
        }
    }
    Ok(LawReport::pass(law, started))
}

fn ring_sentences() -> Vec<Formula> {
    catalog::ring_axioms().into_iter().map(|(_, e)| e.into()).collect()
}

fn meadow_sentences() -> Vec<Formula> {
    let mut s = ring_sentences();
    s.extend(catalog::meadow_axioms().into_iter().map(|(_, e)| Formula::from(e)));
    s
}

pub fn check_commutative_ring(fin: &Finite) -> Result<LawReport> {
    check_sentences(fin, "ring", ring_sentences())
}

/// Ring axioms plus x ≈ x²x* and x ≈ x**.
pub fn check_meadow(fin: &Finite) -> Result<LawReport> {
    check_sentences(fin, "meadow", meadow_sentences())
}

/// Meadow axioms plus root_p(x, r_p(x)) for every p in `primes`.
pub fn check_icm(fin: &Finite, primes: &PrimeSet) -> Result<LawReport> {
    let mut s = meadow_sentences();
    s.extend(primes.iter().map(|&p| Formula::from(catalog::icm_root_axiom(p))));
    check_sentences(fin, "icm", s)
}

/// x² ≈ 0 → x ≈ 0.
pub fn check_reduced(fin: &Finite) -> Result<LawReport> {
    check_sentences(fin, "reduced", vec![catalog::reduced().into()])
}

/// For every a, some b with a = a²b.
pub fn check_regular(fin: &Finite) -> Result<LawReport> {
    let started = Instant::now();
    let pp = catalog::regular_witness();
    for a in 0..fin.size() {
        if !pp_check_indices(fin, &pp, &[a])? {
            return Ok(LawReport::fail(
                "regular",
                pp.to_string(),
                Assignment(vec![("x".into(), fin.element(a).clone())]),
                started,
            ));
        }
    }
    Ok(LawReport::pass("regular", started))
}

/// Characteristic 0 passes outright; characteristic p passes iff the
/// Frobenius map is onto, checked by enumerating its image.
pub fn check_weakly_rooted(algebra: &Algebra, cap: usize) -> Result<LawReport> {
    let started = Instant::now();
    let law = "weakly-rooted";
    match algebra {
        Algebra::Rationals => return Ok(LawReport::pass(law, started)),
        Algebra::Field { .. } => {}
        Algebra::Product(b) if b.len() == 1 => {}
        Algebra::Table(t) if t.is_field() => {}
        _ => return Err(Error::NotAField),
    }
    let fin = Finite::new(algebra, cap)?;
    let p = fin.tables().characteristic();
    let frob = Program::compile(&Term::pow(Term::var("x"), p), fin.tables(), &["x".to_string()])?;
    let mut stack = Vec::new();
    let mut hit = vec![false; fin.size()];
    for a in 0..fin.size() {
        hit[frob.run(&[a], &mut stack)] = true;
    }
    match hit.iter().position(|h| !h) {
        None => Ok(LawReport::pass(law, started)),
        Some(missing) => Ok(LawReport::fail(
            law,
            PPFormula {
                bound: vec!["y".into()],
                conjuncts: vec![Equation::new(Term::pow(Term::var("y"), p), Term::var("x"))],
            }
            .to_string(),
            Assignment(vec![("x".into(), fin.element(missing).clone())]),
            started,
        )),
    }
}

/// Exhaustively checks t(a, a, c) = c and t(a, b, c) = a for a ≠ b, where t
/// is x(x−y)(x−y)* + z(1 − (x−y)(x−y)*). Only single-field handles are
/// accepted: on products t acts coordinatewise and is not a discriminator.
pub fn check_discriminator(fin: &Finite) -> Result<LawReport> {
    if !fin.algebra().is_icf() {
        return Err(Error::NotIcf);
    }
    let started = Instant::now();
    let term = catalog::discriminator();
    let slots: Vec<String> = ["x", "y", "z"].map(String::from).to_vec();
    let prog = Program::compile(&term, fin.tables(), &slots)?;
    let mut stack = Vec::new();
    let mut odo = Odometer::new(3, fin.size());
    while let Some(v) = odo.advance() {
        let expected = if v[0] == v[1] { v[2] } else { v[0] };
        if prog.run(v, &mut stack) != expected {
            let cex = Assignment(
                slots
                    .iter()
                    .zip(v)
                    .map(|(s, &i)| (s.clone(), fin.element(i).clone()))
                    .collect(),
            );
            return Ok(LawReport::fail("discriminator", term.to_string(), cex, started));
        }
    }
    Ok(LawReport::pass("discriminator", started))
}

/// Evaluates the discriminator term at one triple.
pub fn discriminator_at(algebra: &Algebra, a: &Element, b: &Element, c: &Element) -> Result<Element> {
    let env = [("x", a), ("y", b), ("z", c)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    crate::termlang::eval(&catalog::discriminator(), algebra, &env)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ring,
    Meadow,
    Icm,
    Reduced,
    Regular,
    WeaklyRooted,
    Discriminator,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ring" => Suite::Ring,
            "meadow" => Suite::Meadow,
            "icm" => Suite::Icm,
            "reduced" => Suite::Reduced,
            "regular" => Suite::Regular,
            "weakly-rooted" => Suite::WeaklyRooted,
            "discriminator" => Suite::Discriminator,
            "all" => Suite::All,
            other => return Err(Error::Malformed(format!("unknown suite `{other}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Ring => "ring",
            Suite::Meadow => "meadow",
            Suite::Icm => "icm",
            Suite::Reduced => "reduced",
            Suite::Regular => "regular",
            Suite::WeaklyRooted => "weakly-rooted",
            Suite::Discriminator => "discriminator",
            Suite::All => "all",
        };
        write!(f, "{name}")
    }
}

/// Runs one suite, or with [`Suite::All`] every suite that applies to the
/// algebra (the field-only suites are skipped for non-fields, and the
/// expansion suites for table rings without a `*` table).
pub fn run_suite(algebra: &Algebra, suite: Suite, cap: usize) -> Result<Vec<LawReport>> {
    if suite == Suite::WeaklyRooted {
        return Ok(vec![check_weakly_rooted(algebra, cap)?]);
    }
    let fin = Finite::new(algebra, cap)?;
    let primes = algebra.primes();
    Ok(match suite {
        Suite::Ring => vec![check_commutative_ring(&fin)?],
        Suite::Meadow => vec![check_meadow(&fin)?],
        Suite::Icm => vec![check_icm(&fin, &primes)?],
        Suite::Reduced => vec![check_reduced(&fin)?],
        Suite::Regular => vec![check_regular(&fin)?],
        Suite::Discriminator => vec![check_discriminator(&fin)?],
        Suite::WeaklyRooted => unreachable!(),
        Suite::All => {
            let mut out = vec![check_commutative_ring(&fin)?];
            if fin.tables().star_table().is_some() {
                out.push(check_meadow(&fin)?);
                out.push(check_icm(&fin, &primes)?);
            }
            out.push(check_reduced(&fin)?);
            out.push(check_regular(&fin)?);
            let is_field = match algebra {
                Algebra::Table(t) => t.is_field(),
                other => other.is_icf(),
            };
            if is_field {
                out.push(check_weakly_rooted(algebra, cap)?);
            }
            if algebra.is_icf() {
                out.push(check_discriminator(&fin)?);
            }
            out
        }
    })
}

/// Re-checks a failing report's counterexample with the term language.
pub fn recheck(fin: &Finite, report: &LawReport) -> Result<bool> {
    let (Some(axiom), Some(cex)) = (&report.axiom, &report.counterexample) else {
        return Ok(false);
    };
    let values: Vec<usize> = cex.0.iter().map(|(_, e)| fin.index_of(e)).collect::<Result<_>>()?;
    let slots: Vec<String> = cex.0.iter().map(|(v, _)| v.clone()).collect();
    match crate::termlang::parse(axiom)? {
        crate::termlang::Parsed::Equation(e) => Ok(!equation_holds(fin, &e, &slots, &values)?),
        crate::termlang::Parsed::Quasi(q) => {
            let premises = q
                .premises
                .iter()
                .map(|p| equation_holds(fin, p, &slots, &values))
                .collect::<Result<Vec<_>>>()?;
            Ok(premises.iter().all(|&b| b) && !equation_holds(fin, &q.conclusion, &slots, &values)?)
        }
        crate::termlang::Parsed::PP(pp) => Ok(!pp_check_indices(fin, &pp, &values)?),
        crate::termlang::Parsed::Term(t) => {
            // discriminator: the value differs from the prescribed one
            let prog = Program::compile(&t, fin.tables(), &slots)?;
            let got = prog.run(&values, &mut Vec::new());
            let expected = if values[0] == values[1] { values[2] } else { values[0] };
            Ok(got != expected)
        }
    }
}

fn equation_holds(fin: &Finite, e: &Equation, slots: &[String], values: &[usize]) -> Result<bool> {
    let mut stack = Vec::new();
    let l = Program::compile(&e.lhs, fin.tables(), slots)?.run(values, &mut stack);
    let r = Program::compile(&e.rhs, fin.tables(), slots)?.run(values, &mut stack);
    Ok(l == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{make_field, FieldSpec};
    use crate::structure::{Product, TableRing};
    use std::collections::BTreeMap;

    fn gf(p: u64, n: usize) -> FieldSpec {
        make_field(p, n).unwrap()
    }

    fn field(p: u64, n: usize) -> Finite {
        Finite::of(&Algebra::field(&gf(p, n))).unwrap()
    }

    fn zn(n: usize, star: Option<Vec<usize>>) -> Finite {
        Finite::of(&Algebra::Table(TableRing::zn(n, star, BTreeMap::new()).unwrap())).unwrap()
    }

    fn product(specs: Vec<FieldSpec>) -> Finite {
        Finite::of(&Algebra::Product(Product::of(specs))).unwrap()
    }

    fn cex_x(report: &LawReport) -> Element {
        report.counterexample.as_ref().unwrap().0[0].1.clone()
    }

    #[test]
    fn ring_suite() {
        assert!(check_commutative_ring(&field(2, 3)).unwrap().passed);
        assert!(check_commutative_ring(&zn(6, None)).unwrap().passed);
        let broken = TableRing::zn(6, None, BTreeMap::new())
            .unwrap()
            .with_mul_entry(2, 3, 1)
            .unwrap();
        let fin = Finite::of(&Algebra::Table(broken)).unwrap();
        let report = check_commutative_ring(&fin).unwrap();
        assert!(!report.passed);
        assert!(recheck(&fin, &report).unwrap());
    }

    #[test]
    fn meadow_suite() {
        assert!(check_meadow(&field(3, 2)).unwrap().passed);
        let z4 = zn(4, Some(vec![0, 1, 2, 3]));
        let report = check_meadow(&z4).unwrap();
        assert!(!report.passed);
        assert_eq!(cex_x(&report), Element::Table(2));
        assert!(recheck(&z4, &report).unwrap());
        assert!(check_meadow(&product(vec![])).unwrap().passed);
        assert!(check_meadow(&zn(2, Some(vec![0, 1]))).unwrap().passed);
    }

    #[test]
    fn icm_suite() {
        let b = product(vec![gf(2, 1), gf(3, 1)]);
        assert!(check_icm(&b, &[2, 3].into()).unwrap().passed);
        assert!(check_icm(&field(7, 1), &[2].into()).unwrap().passed);

        let f4 = Algebra::field(&gf(2, 2));
        let tables = Finite::of(&f4).unwrap().tables().clone();
        let zeroed = tables.with_root(2, Some(vec![0; 4])).unwrap();
        let fin = Finite::of(&Algebra::Table(zeroed)).unwrap();
        let report = check_icm(&fin, &[2].into()).unwrap();
        assert!(!report.passed);
        assert!(recheck(&fin, &report).unwrap());
        // first element with a nonzero square is 1, listed before α
        assert_eq!(cex_x(&report), Element::Table(1));
    }

    #[test]
    fn reduced_suite() {
        assert!(check_reduced(&field(2, 2)).unwrap().passed);
        let r = check_reduced(&zn(4, None)).unwrap();
        assert!(!r.passed);
        assert_eq!(cex_x(&r), Element::Table(2));
        assert!(check_reduced(&zn(6, None)).unwrap().passed);
    }

    #[test]
    fn regular_suite() {
        assert!(check_regular(&product(vec![gf(2, 1), gf(5, 1)])).unwrap().passed);
        let r = check_regular(&zn(4, None)).unwrap();
        assert!(!r.passed);
        assert_eq!(cex_x(&r), Element::Table(2));
        assert!(check_regular(&product(vec![])).unwrap().passed);
    }

    #[test]
    fn weakly_rooted_suite() {
        assert!(check_weakly_rooted(&Algebra::Rationals, 64).unwrap().passed);
        assert!(check_weakly_rooted(&Algebra::field(&gf(2, 4)), 64).unwrap().passed);
        let z4 = Algebra::Table(TableRing::zn(4, None, BTreeMap::new()).unwrap());
        assert_eq!(check_weakly_rooted(&z4, 64).unwrap_err(), Error::NotAField);
        // a field whose p-power table is broken: make 1·1 = 0 in GF(2)
        let z2 = TableRing::zn(2, None, BTreeMap::new()).unwrap();
        let squashed = z2.with_mul_entry(1, 1, 0).unwrap();
        assert_eq!(check_weakly_rooted(&Algebra::Table(squashed), 64).unwrap_err(), Error::NotAField);
    }

    #[test]
    fn discriminator_suite() {
        let f3 = Algebra::field(&gf(3, 1));
        let e = |k| Element::Field(gf(3, 1).int(k));
        assert_eq!(discriminator_at(&f3, &e(1), &e(1), &e(2)).unwrap(), e(2));
        assert_eq!(discriminator_at(&f3, &e(1), &e(2), &e(0)).unwrap(), e(1));
        assert!(check_discriminator(&field(3, 1)).unwrap().passed);
        let b = product(vec![gf(2, 1), gf(2, 1)]);
        assert_eq!(check_discriminator(&b).unwrap_err(), Error::NotIcf);
    }

    #[test]
    fn all_on_trivial_ring() {
        let reports = run_suite(&Algebra::Product(Product::of(vec![])), Suite::All, 64).unwrap();
        assert!(reports.iter().all(|r| r.passed));
        assert_eq!(reports.len(), 5);
    }
}

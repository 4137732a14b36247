use std::fmt;

use super::ast::{Equation, Formula, PPFormula};
use super::eval::Program;
use crate::error::{Error, Result};
use crate::structure::{Element, Finite};

/// Values for variables, in lexicographic order of variable names.
#[derive(Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<(String, Element)>);

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, e)| format!("{v}={e:?}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// The first falsifying assignment in enumeration order.
    pub counterexample: Option<Assignment>,
}

/// Steps through `size^len` assignments, last slot fastest.
pub(crate) struct Odometer {
    digits: Vec<usize>,
    size: usize,
    started: bool,
}

impl Odometer {
    pub(crate) fn new(len: usize, size: usize) -> Self {
        Odometer {
            digits: vec![0; len],
            size,
            started: false,
        }
    }

    pub(crate) fn advance(&mut self) -> Option<&[usize]> {
        if !self.started {
            self.started = true;
            return (self.size > 0 || self.digits.is_empty()).then_some(&self.digits[..]);
        }
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.size {
                return Some(&self.digits);
            }
            *d = 0;
        }
        None
    }
}

struct CompiledEq<'a> {
    lhs: Program<'a>,
    rhs: Program<'a>,
}

impl<'a> CompiledEq<'a> {
    fn new(eq: &Equation, fin: &'a Finite, slots: &[String]) -> Result<Self> {
        Ok(CompiledEq {
            lhs: Program::compile(&eq.lhs, fin.tables(), slots)?,
            rhs: Program::compile(&eq.rhs, fin.tables(), slots)?,
        })
    }

    fn holds(&self, assignment: &[usize], stack: &mut Vec<usize>) -> bool {
        self.lhs.run(assignment, stack) == self.rhs.run(assignment, stack)
    }
}

fn assignment(fin: &Finite, slots: &[String], values: &[usize]) -> Assignment {
    Assignment(
        slots
            .iter()
            .zip(values)
            .map(|(v, &i)| (v.clone(), fin.element(i).clone()))
            .collect(),
    )
}

/// Decides an equation or quasiequation by checking every assignment of
/// its variables (lexicographic order, first variable slowest).
pub fn satisfies(fin: &Finite, formula: &Formula) -> Result<Verdict> {
    let slots: Vec<String> = formula.vars().into_iter().collect();
    let (premises, conclusion) = match formula {
        Formula::Equation(e) => (vec![], CompiledEq::new(e, fin, &slots)?),
        Formula::Quasi(q) => (
            q.premises
                .iter()
                .map(|p| CompiledEq::new(p, fin, &slots))
                .collect::<Result<Vec<_>>>()?,
            CompiledEq::new(&q.conclusion, fin, &slots)?,
        ),
    };
    let mut stack = Vec::new();
    let mut odo = Odometer::new(slots.len(), fin.size());
    while let Some(values) = odo.advance() {
        if premises.iter().all(|p| p.holds(values, &mut stack)) && !conclusion.holds(values, &mut stack) {
            return Ok(Verdict {
                holds: false,
                counterexample: Some(assignment(fin, &slots, values)),
            });
        }
    }
    Ok(Verdict {
        holds: true,
        counterexample: None,
    })
}

/// Whether the pp-formula holds of `args` (bound to the free variables in
/// name order), by exhaustive search for witnesses.
pub fn pp_check(fin: &Finite, pp: &PPFormula, args: &[Element]) -> Result<bool> {
    let free = pp.free_vars();
    if free.len() != args.len() {
        return Err(Error::Malformed(format!(
            "formula has {} free variables, got {} arguments",
            free.len(),
            args.len()
        )));
    }
    let indices = args.iter().map(|a| fin.index_of(a)).collect::<Result<Vec<_>>>()?;
    pp_check_indices(fin, pp, &indices)
}

pub(crate) fn pp_check_indices(fin: &Finite, pp: &PPFormula, args: &[usize]) -> Result<bool> {
    let free = pp.free_vars();
    let slots: Vec<String> = free.iter().chain(&pp.bound).cloned().collect();
    let conjuncts = pp
        .conjuncts
        .iter()
        .map(|c| CompiledEq::new(c, fin, &slots))
        .collect::<Result<Vec<_>>>()?;
    let mut values = args.to_vec();
    values.resize(slots.len(), 0);
    let mut stack = Vec::new();
    let mut odo = Odometer::new(pp.bound.len(), fin.size());
    while let Some(witness) = odo.advance() {
        values[free.len()..].copy_from_slice(witness);
        if conjuncts.iter().all(|c| c.holds(&values, &mut stack)) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::structure::{Algebra, Product, TableRing};
    use crate::termlang::{catalog, parse, Parsed};
    use std::collections::BTreeMap;

    fn formula(s: &str) -> Formula {
        match parse(s).unwrap() {
            Parsed::Equation(e) => e.into(),
            Parsed::Quasi(q) => q.into(),
            other => panic!("not a sentence: {other}"),
        }
    }

    #[test]
    fn odometer_order() {
        let mut odo = Odometer::new(2, 2);
        let mut seen = vec![];
        while let Some(v) = odo.advance() {
            seen.push(v.to_vec());
        }
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut empty = Odometer::new(0, 5);
        assert_eq!(empty.advance(), Some(&[][..]));
        assert_eq!(empty.advance(), None);
    }

    #[test]
    fn meadow_axiom_in_gf4() {
        let fin = Finite::of(&Algebra::field(&make_field(2, 2).unwrap())).unwrap();
        let v = satisfies(&fin, &formula("(= x (* (* x x) (star x)))")).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn reducedness_fails_in_z4() {
        let z4 = Algebra::Table(TableRing::zn(4, None, BTreeMap::new()).unwrap());
        let fin = Finite::of(&z4).unwrap();
        let v = satisfies(&fin, &formula("(=> (and (= (* x x) 0)) (= x 0))")).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.counterexample.unwrap(),
            Assignment(vec![("x".into(), Element::Table(2))])
        );
    }

    #[test]
    fn root_axiom_in_gf2_x_gf3() {
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let b = Algebra::Product(Product::new(vec![f2, f3], [2, 3].into()).unwrap());
        let fin = Finite::of(&b).unwrap();
        let v = satisfies(&fin, &formula(&catalog::icm_root_axiom(2).to_string())).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn inv_examples() {
        let gf5 = make_field(5, 1).unwrap();
        let fin = Finite::of(&Algebra::field(&gf5)).unwrap();
        let inv = catalog::inv();
        let e = |k| Element::Field(gf5.int(k));
        assert!(pp_check(&fin, &inv, &[e(3), e(2)]).unwrap());
        assert!(pp_check(&fin, &inv, &[e(0), e(0)]).unwrap());
        assert!(!pp_check(&fin, &inv, &[e(3), e(3)]).unwrap());
        assert!(matches!(pp_check(&fin, &inv, &[e(3)]), Err(Error::Malformed(_))));
    }

    #[test]
    fn exists_root_in_gf4() {
        let gf4 = make_field(2, 2).unwrap();
        let fin = Finite::of(&Algebra::field(&gf4)).unwrap();
        let args = [
            Element::Field(gf4.generator()),
            Element::Field(gf4.element(&[1, 1]).unwrap()),
        ];
        assert!(pp_check(&fin, &catalog::exists_root(2), &args).unwrap());
    }
}

use std::collections::BTreeMap;

use super::ast::Term;
use crate::error::{Error, Result};
use crate::structure::{Algebra, Element, Operations, TableRing};

pub type Env = BTreeMap<String, Element>;

/// Structural evaluation in any interpretation of the signature.
pub fn eval_in<O: Operations>(
    t: &Term,
    ops: &O,
    lookup: &dyn Fn(&str) -> Option<O::Elem>,
) -> Result<O::Elem> {
    Ok(match t {
        Term::Var(v) => lookup(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Term::Zero => ops.zero(),
        Term::One => ops.one(),
        Term::Add(a, b) => ops.add(&eval_in(a, ops, lookup)?, &eval_in(b, ops, lookup)?)?,
        Term::Mul(a, b) => ops.mul(&eval_in(a, ops, lookup)?, &eval_in(b, ops, lookup)?)?,
        Term::Neg(a) => ops.neg(&eval_in(a, ops, lookup)?)?,
        Term::Star(a) => ops.star(&eval_in(a, ops, lookup)?)?,
        Term::Root(p, a) => ops.root(*p, &eval_in(a, ops, lookup)?)?,
        Term::Numeral(k) => ops.numeral(*k)?,
    })
}

/// Evaluates `t` in `algebra` under `env`; every bound value must belong to
/// the algebra.
pub fn eval(t: &Term, algebra: &Algebra, env: &Env) -> Result<Element> {
    for v in t.vars() {
        match env.get(&v) {
            None => return Err(Error::UnboundVariable(v)),
            Some(e) if !algebra.contains(e) => {
                return Err(Error::SpecMismatch(format!(
                    "{v} = {e:?} is not an element of {algebra}"
                )))
            }
            Some(_) => {}
        }
    }
    eval_in(t, algebra, &|v| env.get(v).cloned())
}

enum Instr<'a> {
    Const(usize),
    Var(usize),
    Add,
    Mul,
    Unary(&'a [usize]),
    ToZero(usize),
}

/// A term compiled against a table ring, with variables resolved to slots.
/// Evaluation is a postfix stack walk over table lookups.
pub(crate) struct Program<'a> {
    tables: &'a TableRing,
    code: Vec<Instr<'a>>,
}

impl<'a> Program<'a> {
    pub(crate) fn compile(t: &Term, tables: &'a TableRing, slots: &[String]) -> Result<Self> {
        let mut code = Vec::new();
        emit(t, tables, slots, &mut code)?;
        Ok(Program { tables, code })
    }

    pub(crate) fn run(&self, assignment: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for instr in &self.code {
            match instr {
                Instr::Const(c) => stack.push(*c),
                Instr::Var(s) => stack.push(assignment[*s]),
                Instr::Add | Instr::Mul => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(if matches!(instr, Instr::Add) {
                        self.tables.add_at(a, b)
                    } else {
                        self.tables.mul_at(a, b)
                    });
                }
                Instr::Unary(table) => {
                    let a = stack.pop().unwrap();
                    stack.push(table[a]);
                }
                Instr::ToZero(z) => {
                    stack.pop();
                    stack.push(*z);
                }
            }
        }
        stack.pop().unwrap()
    }
}

fn emit<'a>(t: &Term, tables: &'a TableRing, slots: &[String], code: &mut Vec<Instr<'a>>) -> Result<()> {
    match t {
        Term::Var(v) => {
            let slot = slots
                .iter()
                .position(|s| s == v)
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            code.push(Instr::Var(slot));
        }
        Term::Zero => code.push(Instr::Const(tables.zero_index())),
        Term::One => code.push(Instr::Const(tables.one_index())),
        Term::Numeral(k) => code.push(Instr::Const(tables.numeral(*k)?)),
        Term::Add(a, b) | Term::Mul(a, b) => {
            emit(a, tables, slots, code)?;
            emit(b, tables, slots, code)?;
            code.push(if matches!(t, Term::Add(..)) { Instr::Add } else { Instr::Mul });
        }
        Term::Neg(a) => {
            emit(a, tables, slots, code)?;
            code.push(Instr::Unary(tables.neg_table()));
        }
        Term::Star(a) => {
            emit(a, tables, slots, code)?;
            let star = tables
                .star_table()
                .ok_or_else(|| Error::MissingOperation("star".into()))?;
            code.push(Instr::Unary(star));
        }
        Term::Root(p, a) => {
            emit(a, tables, slots, code)?;
            code.push(match tables.root_table(*p) {
                Some(table) => Instr::Unary(table),
                None => Instr::ToZero(tables.zero_index()),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{make_field, Rational};
    use crate::structure::Finite;
    use crate::termlang::parse_term;

    fn f(p: u64, n: usize) -> Algebra {
        Algebra::field(&make_field(p, n).unwrap())
    }

    #[test]
    fn meadow_term_in_gf5() {
        let t = parse_term("(* (* x x) (star x))").unwrap();
        let gf5 = make_field(5, 1).unwrap();
        let env = Env::from([("x".into(), Element::Field(gf5.int(2)))]);
        assert_eq!(eval(&t, &f(5, 1), &env).unwrap(), Element::Field(gf5.int(2)));
    }

    #[test]
    fn numeral_in_gf3() {
        let t = parse_term("(int 3)").unwrap();
        assert_eq!(eval(&t, &f(3, 1), &Env::new()).unwrap(), Element::Field(make_field(3, 1).unwrap().zero()));
    }

    #[test]
    fn root_in_gf4() {
        let gf4 = make_field(2, 2).unwrap();
        let t = parse_term("(root 2 x)").unwrap();
        let env = Env::from([("x".into(), Element::Field(gf4.generator()))]);
        assert_eq!(
            eval(&t, &f(2, 2), &env).unwrap(),
            Element::Field(gf4.element(&[1, 1]).unwrap())
        );
    }

    #[test]
    fn rationals() {
        let q = Algebra::Rationals;
        let t = parse_term("(root 2 (int 9))").unwrap();
        assert_eq!(eval(&t, &q, &Env::new()).unwrap(), Element::Rational(Rational::zero()));
        let t = parse_term("(star (- (int 4)))").unwrap();
        assert_eq!(eval(&t, &q, &Env::new()).unwrap(), Element::Rational(Rational::new(-1, 4)));
    }

    #[test]
    fn errors() {
        let t = parse_term("(+ x y)").unwrap();
        let gf4 = make_field(2, 2).unwrap();
        let env = Env::from([("x".into(), Element::Field(gf4.one()))]);
        assert_eq!(eval(&t, &f(2, 2), &env).unwrap_err(), Error::UnboundVariable("y".into()));
        let env = Env::from([
            ("x".into(), Element::Field(gf4.one())),
            ("y".into(), Element::Field(make_field(2, 3).unwrap().one())),
        ]);
        assert!(matches!(eval(&t, &f(2, 2), &env), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn compiled_matches_structural() {
        let alg = f(3, 2);
        let fin = Finite::of(&alg).unwrap();
        let t = parse_term("(+ (root 3 (* x (star y))) (- (root 2 (+ x (int 5)))))").unwrap();
        let slots = vec!["x".to_string(), "y".to_string()];
        let prog = Program::compile(&t, fin.tables(), &slots).unwrap();
        let mut stack = Vec::new();
        for i in 0..fin.size() {
            for j in 0..fin.size() {
                let env = Env::from([
                    ("x".into(), fin.element(i).clone()),
                    ("y".into(), fin.element(j).clone()),
                ]);
                let direct = eval(&t, &alg, &env).unwrap();
                assert_eq!(fin.element(prog.run(&[i, j], &mut stack)), &direct);
            }
        }
    }
}

//! S-expression reader for terms and formulas.
//!
//! ```text
//! term         := var | "0" | "1" | "(int k)" | "(+ t t)" | "(* t t)"
//!               | "(- t)" | "(star t)" | "(root p t)"
//! equation     := "(= t t)"
//! quasiequation:= "(=> (and eq*) eq)"
//! pp           := "(exists (v*) (and eq*))"
//! ```

use super::ast::{Equation, PPFormula, Parsed, Quasiequation, Term};
use crate::error::{Error, Result};
use crate::gf::is_prime;

const RESERVED: &[&str] = &["+", "*", "-", "star", "root", "int", "=", "=>", "and", "exists"];

#[derive(Debug)]
enum Sexp<'a> {
    Atom(&'a str, usize),
    List(Vec<Sexp<'a>>, usize),
}

impl Sexp<'_> {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        pos,
        msg: msg.into(),
    })
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn read(&mut self) -> Result<Sexp<'a>> {
        self.skip_ws();
        let start = self.pos;
        match self.src[self.pos..].chars().next() {
            None => syntax(start, "unexpected end of input"),
            Some(')') => syntax(start, "unexpected `)`"),
            Some('(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.src[self.pos..].chars().next() {
                        None => return syntax(start, "unclosed `(`"),
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let rest = &self.src[self.pos..];
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                    .unwrap_or(rest.len());
                self.pos += len;
                Ok(Sexp::Atom(&rest[..len], start))
            }
        }
    }
}

fn read_one(text: &str) -> Result<Sexp<'_>> {
    if let Some(pos) = text.find(|c: char| !c.is_ascii()) {
        return syntax(pos, "non-ASCII input");
    }
    let mut reader = Reader { src: text, pos: 0 };
    let sexp = reader.read()?;
    reader.skip_ws();
    if reader.pos != text.len() {
        return syntax(reader.pos, "trailing input");
    }
    Ok(sexp)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !RESERVED.contains(&s)
}

fn head<'s, 'a>(items: &'s [Sexp<'a>]) -> Option<&'a str> {
    match items.first() {
        Some(Sexp::Atom(h, _)) => Some(h),
        _ => None,
    }
}

fn number(s: &Sexp<'_>) -> Result<u64> {
    match s {
        Sexp::Atom(a, pos) => a
            .parse::<u64>()
            .or_else(|_| syntax(*pos, format!("expected a natural number, found `{a}`"))),
        Sexp::List(_, pos) => syntax(*pos, "expected a natural number"),
    }
}

fn arity(items: &[Sexp<'_>], n: usize, pos: usize, name: &str) -> Result<()> {
    if items.len() != n + 1 {
        return syntax(pos, format!("`{name}` takes {n} argument(s), got {}", items.len() - 1));
    }
    Ok(())
}

fn term(s: &Sexp<'_>) -> Result<Term> {
    match s {
        Sexp::Atom("0", _) => Ok(Term::Zero),
        Sexp::Atom("1", _) => Ok(Term::One),
        Sexp::Atom(a, pos) => {
            if is_identifier(a) {
                Ok(Term::var(a))
            } else if a.chars().all(|c| c.is_ascii_digit()) {
                syntax(*pos, format!("write integers other than 0 and 1 as (int {a})"))
            } else {
                syntax(*pos, format!("`{a}` is not a variable name"))
            }
        }
        Sexp::List(items, pos) => {
            let Some(h) = head(items) else {
                return syntax(*pos, "expected an operator");
            };
            match h {
                "+" | "*" => {
                    arity(items, 2, *pos, h)?;
                    let (a, b) = (term(&items[1])?, term(&items[2])?);
                    Ok(if h == "+" { Term::add(a, b) } else { Term::mul(a, b) })
                }
                "-" => {
                    arity(items, 1, *pos, h)?;
                    Ok(Term::neg(term(&items[1])?))
                }
                "star" => {
                    arity(items, 1, *pos, h)?;
                    Ok(Term::star(term(&items[1])?))
                }
                "root" => {
                    arity(items, 2, *pos, h)?;
                    let p = number(&items[1])?;
                    if !is_prime(p) {
                        return Err(Error::NotPrime(p));
                    }
                    Ok(Term::Root(p, Box::new(term(&items[2])?)))
                }
                "int" => {
                    arity(items, 1, *pos, h)?;
                    Ok(Term::Numeral(number(&items[1])?))
                }
                other => syntax(*pos, format!("unknown operator `{other}`")),
            }
        }
    }
}

fn equation(s: &Sexp<'_>) -> Result<Equation> {
    match s {
        Sexp::List(items, pos) if head(items) == Some("=") => {
            arity(items, 2, *pos, "=")?;
            Ok(Equation::new(term(&items[1])?, term(&items[2])?))
        }
        other => syntax(other.pos(), "expected an equation `(= t t)`"),
    }
}

fn conjunction(s: &Sexp<'_>) -> Result<Vec<Equation>> {
    match s {
        Sexp::List(items, _) if head(items) == Some("and") => {
            items[1..].iter().map(equation).collect()
        }
        other => syntax(other.pos(), "expected `(and eq*)`"),
    }
}

fn quasi(items: &[Sexp<'_>], pos: usize) -> Result<Quasiequation> {
    arity(items, 2, pos, "=>")?;
    Ok(Quasiequation {
        premises: conjunction(&items[1])?,
        conclusion: equation(&items[2])?,
    })
}

fn pp(items: &[Sexp<'_>], pos: usize) -> Result<PPFormula> {
    arity(items, 2, pos, "exists")?;
    let bound = match &items[1] {
        Sexp::List(vars, _) => vars
            .iter()
            .map(|v| match v {
                Sexp::Atom(a, _) if is_identifier(a) => Ok(a.to_string()),
                other => syntax(other.pos(), "expected a variable name"),
            })
            .collect::<Result<Vec<_>>>()?,
        other => return syntax(other.pos(), "expected a variable list"),
    };
    Ok(PPFormula {
        bound,
        conjuncts: conjunction(&items[2])?,
    })
}

/// Parses a term, equation, quasiequation or pp-formula.
pub fn parse(text: &str) -> Result<Parsed> {
    let s = read_one(text)?;
    if let Sexp::List(items, pos) = &s {
        match head(items) {
            Some("=") => return equation(&s).map(Parsed::Equation),
            Some("=>") => return quasi(items, *pos).map(Parsed::Quasi),
            Some("exists") => return pp(items, *pos).map(Parsed::PP),
            _ => {}
        }
    }
    term(&s).map(Parsed::Term)
}

pub fn parse_term(text: &str) -> Result<Term> {
    term(&read_one(text)?)
}

pub fn parse_equation(text: &str) -> Result<Equation> {
    equation(&read_one(text)?)
}

pub fn parse_pp(text: &str) -> Result<PPFormula> {
    match parse(text)? {
        Parsed::PP(p) => Ok(p),
        _ => syntax(0, "expected `(exists (v*) (and eq*))`"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_exercise() {
        let t = parse_term("(+ x (* y (star x)))").unwrap();
        assert_eq!(
            t,
            Term::add(Term::var("x"), Term::mul(Term::var("y"), Term::star(Term::var("x"))))
        );
    }

    #[test]
    fn meadow_axiom() {
        let parsed = parse("(= x (* (* x x) (star x)))").unwrap();
        let expected = Equation::new(
            Term::var("x"),
            Term::mul(Term::mul(Term::var("x"), Term::var("x")), Term::star(Term::var("x"))),
        );
        assert_eq!(parsed, Parsed::Equation(expected));
    }

    #[test]
    fn composite_root() {
        assert_eq!(parse("(root 4 x)").unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = |s: &str| match parse(s).unwrap_err() {
            Error::Syntax { pos, .. } => pos,
            e => panic!("unexpected {e:?}"),
        };
        assert_eq!(err("(+ x"), 0);
        assert_eq!(err("(+ x y) z"), 8);
        assert_eq!(err("(+ x 7)"), 5);
        assert_eq!(err("(foo x)"), 0);
        assert_eq!(err("(+ x y z)"), 0);
        assert_eq!(err("  )"), 2);
        assert_eq!(err("(* x é)"), 5);
        assert!(matches!(parse("(int -3)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("star"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse("(=>(and(= (* x x) 0))(= x 0))").unwrap();
        let b = parse("  (=> (and (= (* x x) 0))\n\t(= x 0))  ").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(=> (and (= (* x x) 0)) (= x 0))");
    }

    #[test]
    fn pp_formula() {
        let p = parse_pp("(exists (z) (and (= (* (int 2) z) y) (= x x)))").unwrap();
        assert_eq!(p.bound, vec!["z".to_string()]);
        assert_eq!(p.free_vars(), vec!["x".to_string(), "y".to_string()]);
        let empty = parse_pp("(exists () (and))").unwrap();
        assert!(empty.conjuncts.is_empty());
    }
}

use std::collections::BTreeSet;
use std::fmt;

/// A term over {+, ·, −, 0, 1, *, r_p}. `Numeral(k)` abbreviates k·1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Star(Box<Term>),
    Root(u64, Box<Term>),
    Numeral(u64),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn add(lhs: Term, rhs: Term) -> Term {
        Term::Add(Box::new(lhs), Box::new(rhs))
    }

    pub fn mul(lhs: Term, rhs: Term) -> Term {
        Term::Mul(Box::new(lhs), Box::new(rhs))
    }

    pub fn sub(lhs: Term, rhs: Term) -> Term {
        Term::add(lhs, Term::neg(rhs))
    }

    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn star(t: Term) -> Term {
        Term::Star(Box::new(t))
    }

    /// `t · t · … · t` (k ≥ 1 factors, left-nested).
    pub fn pow(t: Term, k: u64) -> Term {
        assert!(k >= 1, "empty power");
        (1..k).fold(t.clone(), |acc, _| Term::mul(acc, t.clone()))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One | Term::Numeral(_) => {}
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a) | Term::Star(a) | Term::Root(_, a) => a.collect_vars(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One | Term::Numeral(_) => 0,
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.depth().max(b.depth()),
            Term::Neg(a) | Term::Star(a) | Term::Root(_, a) => 1 + a.depth(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Add(a, b) => write!(f, "(+ {a} {b})"),
            Term::Mul(a, b) => write!(f, "(* {a} {b})"),
            Term::Neg(a) => write!(f, "(- {a})"),
            Term::Star(a) => write!(f, "(star {a})"),
            Term::Root(p, a) => write!(f, "(root {p} {a})"),
            Term::Numeral(k) => write!(f, "(int {k})"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut v = self.lhs.vars();
        v.extend(self.rhs.vars());
        v
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(= {} {})", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `premises₁ ∧ … ∧ premisesₖ → conclusion`, universally closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quasiequation {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl Quasiequation {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut v = self.conclusion.vars();
        for p in &self.premises {
            v.extend(p.vars());
        }
        v
    }
}

impl fmt::Display for Quasiequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(=> (and")?;
        for p in &self.premises {
            write!(f, " {p}")?;
        }
        write!(f, ") {})", self.conclusion)
    }
}

impl fmt::Debug for Quasiequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `∃ bound (conjunct₁ ∧ … ∧ conjunctₖ)`.
///
/// Free variables are taken in lexicographic order of their names; that is
/// the order in which arguments are passed to `pp_check`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PPFormula {
    pub bound: Vec<String>,
    pub conjuncts: Vec<Equation>,
}

impl PPFormula {
    pub fn free_vars(&self) -> Vec<String> {
        let mut v = BTreeSet::new();
        for c in &self.conjuncts {
            v.extend(c.vars());
        }
        v.into_iter().filter(|x| !self.bound.contains(x)).collect()
    }
}

impl fmt::Display for PPFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(exists ({}) (and", self.bound.join(" "))?;
        for c in &self.conjuncts {
            write!(f, " {c}")?;
        }
        write!(f, "))")
    }
}

impl fmt::Debug for PPFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A universally closed sentence that `satisfies` can decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Equation(Equation),
    Quasi(Quasiequation),
}

impl Formula {
    pub fn vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Equation(e) => e.vars(),
            Formula::Quasi(q) => q.vars(),
        }
    }
}

impl From<Equation> for Formula {
    fn from(e: Equation) -> Self {
        Formula::Equation(e)
    }
}

impl From<Quasiequation> for Formula {
    fn from(q: Quasiequation) -> Self {
        Formula::Quasi(q)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Equation(e) => write!(f, "{e}"),
            Formula::Quasi(q) => write!(f, "{q}"),
        }
    }
}

/// Anything the parser can produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Term(Term),
    Equation(Equation),
    Quasi(Quasiequation),
    PP(PPFormula),
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Term(t) => write!(f, "{t}"),
            Parsed::Equation(e) => write!(f, "{e}"),
            Parsed::Quasi(q) => write!(f, "{q}"),
            Parsed::PP(p) => write!(f, "{p}"),
        }
    }
}

//! Named terms and formulas used by the law suites.

use super::ast::{Equation, PPFormula, Quasiequation, Term};
use super::parse::{parse_equation, parse_term};

fn eq(text: &str) -> Equation {
    parse_equation(text).expect("catalog entries are well formed")
}

fn x() -> Term {
    Term::var("x")
}

/// The commutative ring base: both monoids commutative, additive inverses,
/// two-sided distributivity.
pub fn ring_axioms() -> Vec<(&'static str, Equation)> {
    vec![
        ("add-assoc", eq("(= (+ (+ x y) z) (+ x (+ y z)))")),
        ("add-comm", eq("(= (+ x y) (+ y x))")),
        ("add-zero", eq("(= (+ x 0) x)")),
        ("add-inverse-right", eq("(= (+ x (- x)) 0)")),
        ("add-inverse-left", eq("(= (+ (- x) x) 0)")),
        ("mul-assoc", eq("(= (* (* x y) z) (* x (* y z)))")),
        ("mul-comm", eq("(= (* x y) (* y x))")),
        ("mul-one", eq("(= (* x 1) x)")),
        ("distrib-left", eq("(= (* x (+ y z)) (+ (* x y) (* x z)))")),
        ("distrib-right", eq("(= (* (+ x y) z) (+ (* x z) (* y z)))")),
    ]
}

/// x ≈ x²x* and x ≈ x**.
pub fn meadow_axioms() -> Vec<(&'static str, Equation)> {
    vec![
        ("meadow-regular", eq("(= x (* (* x x) (star x)))")),
        ("meadow-involution", eq("(= x (star (star x)))")),
    ]
}

/// `1 − p*·p`: equal to 1 in characteristic p and to 0 in any other
/// zero-totalized field.
pub fn char_indicator(p: u64) -> Term {
    Term::sub(Term::One, Term::mul(Term::star(Term::Numeral(p)), Term::Numeral(p)))
}

/// root_p(x, y): y^p ≈ (1 − p*·p)·x.
pub fn root_eq(p: u64, lhs_var: &str, rhs_var: &str) -> Equation {
    Equation::new(
        Term::pow(Term::var(rhs_var), p),
        Term::mul(char_indicator(p), Term::var(lhs_var)),
    )
}

/// root_p(x, r_p(x)): (r_p(x))^p ≈ (1 − p*·p)·x.
pub fn icm_root_axiom(p: u64) -> Equation {
    Equation::new(
        Term::pow(Term::Root(p, Box::new(x())), p),
        Term::mul(char_indicator(p), x()),
    )
}

/// x² ≈ 0 → x ≈ 0.
pub fn reduced() -> Quasiequation {
    Quasiequation {
        premises: vec![eq("(= (* x x) 0)")],
        conclusion: eq("(= x 0)"),
    }
}

fn inv_conjuncts(a: Term, b: Term) -> Vec<Equation> {
    vec![
        Equation::new(Term::mul(Term::mul(a.clone(), a.clone()), b.clone()), a.clone()),
        Equation::new(Term::mul(a, Term::mul(b.clone(), b.clone())), b),
    ]
}

/// inv(x, y) = (x²y ≈ x) ⊓ (xy² ≈ y).
pub fn inv() -> PPFormula {
    PPFormula {
        bound: vec![],
        conjuncts: inv_conjuncts(x(), Term::var("y")),
    }
}

/// ∃root_p(x, y) = ∃z (inv(p, z) ⊓ (y^p ≈ (1 − z·p)·x)).
pub fn exists_root(p: u64) -> PPFormula {
    let z = Term::var("z");
    let mut conjuncts = inv_conjuncts(Term::Numeral(p), z.clone());
    conjuncts.push(Equation::new(
        Term::pow(Term::var("y"), p),
        Term::mul(Term::sub(Term::One, Term::mul(z, Term::Numeral(p))), x()),
    ));
    PPFormula {
        bound: vec!["z".into()],
        conjuncts,
    }
}

/// ∃y (x ≈ x²y).
pub fn regular_witness() -> PPFormula {
    PPFormula {
        bound: vec!["y".into()],
        conjuncts: vec![eq("(= x (* (* x x) y))")],
    }
}

/// x(x−y)(x−y)* + z(1 − (x−y)(x−y)*).
pub fn discriminator() -> Term {
    parse_term(
        "(+ (* (* x (+ x (- y))) (star (+ x (- y)))) \
            (* z (+ 1 (- (* (+ x (- y)) (star (+ x (- y))))))))",
    )
    .expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::termlang::parse;

    #[test]
    fn entries_round_trip_through_the_parser() {
        for (_, e) in ring_axioms().into_iter().chain(meadow_axioms()) {
            assert_eq!(parse(&e.to_string()).unwrap().to_string(), e.to_string());
        }
        for p in [2, 3, 5] {
            let e = icm_root_axiom(p);
            assert_eq!(parse(&e.to_string()).unwrap().to_string(), e.to_string());
            let pp = exists_root(p);
            assert_eq!(parse(&pp.to_string()).unwrap().to_string(), pp.to_string());
        }
    }

    #[test]
    fn free_variables() {
        assert_eq!(inv().free_vars(), vec!["x", "y"]);
        assert_eq!(exists_root(3).free_vars(), vec!["x", "y"]);
        assert_eq!(discriminator().vars().len(), 3);
    }
}

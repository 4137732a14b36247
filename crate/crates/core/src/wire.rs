//! JSON encodings for algebras, elements, homs, spans and reports.
//!
//! Element encodings depend on the algebra: prime-field elements are
//! integers, elements of GF(p^n) with n > 1 are coefficient lists (constant
//! term first), tuples are lists of component encodings, table elements are
//! indices and rationals are integers or `"n/d"` strings.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::amalgam::{Amalgam, Span};
use crate::dominion::{Certificate, DominionResult};
use crate::error::{Error, Result};
use crate::gf::{make_field, FFElement, FieldEmbedding, FieldSpec, Rational};
use crate::laws::LawReport;
use crate::structure::{sg_closure, Algebra, Element, Hom, PrimeSet, Product, TableRing, Tuple};
use crate::termlang::Assignment;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(format!("missing `{key}`")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| malformed(format!("`{what}` must be a non-negative integer")))
}

fn as_usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("`{what}` must be a list")))?
        .iter()
        .map(|x| as_u64(x, what).map(|n| n as usize))
        .collect()
}

fn primes_of(v: &Value) -> Result<Option<PrimeSet>> {
    match v.get("primes") {
        None | Some(Value::Null) => Ok(None),
        Some(list) => Ok(Some(
            list.as_array()
                .ok_or_else(|| malformed("`primes` must be a list"))?
                .iter()
                .map(|p| as_u64(p, "primes"))
                .collect::<Result<_>>()?,
        )),
    }
}

fn spec_of(v: &Value) -> Result<FieldSpec> {
    let p = as_u64(field_of(v, "p")?, "p")?;
    let n = as_u64(field_of(v, "n")?, "n")? as usize;
    make_field(p, n)
}

/// Builds an algebra from its descriptor. Subalgebras are closed with
/// carriers of at most `cap` elements.
pub fn algebra_from_json(v: &Value, cap: usize) -> Result<Algebra> {
    let kind = field_of(v, "kind")?
        .as_str()
        .ok_or_else(|| malformed("`kind` must be a string"))?;
    match kind {
        "field" => {
            let spec = spec_of(v)?;
            match primes_of(v)? {
                Some(primes) => Algebra::field_with_primes(&spec, primes),
                None => Ok(Algebra::field(&spec)),
            }
        }
        "product" => {
            let comps = field_of(v, "components")?
                .as_array()
                .ok_or_else(|| malformed("`components` must be a list"))?
                .iter()
                .map(spec_of)
                .collect::<Result<Vec<_>>>()?;
            match primes_of(v)? {
                Some(primes) => Ok(Algebra::Product(Product::new(comps, primes)?)),
                None => Ok(Algebra::Product(Product::of(comps))),
            }
        }
        "subalgebra" => {
            let ambient = algebra_from_json(field_of(v, "ambient")?, cap)?;
            let product = ambient.as_product().ok_or(Error::NotProduct)?;
            let gens = generators_from_json(&ambient, field_of(v, "generators")?)?;
            Ok(Algebra::Subalgebra(sg_closure(&product, &gens, cap)?))
        }
        "znring" => {
            let n = as_u64(field_of(v, "n")?, "n")? as usize;
            let star = match v.get("star") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) if s == "identity" => Some((0..n).collect()),
                Some(t) => Some(as_usize_list(t, "star")?),
            };
            Ok(Algebra::Table(TableRing::zn(n, star, roots_of(v)?)?))
        }
        "table" => {
            let size = as_u64(field_of(v, "size")?, "size")? as usize;
            let star = match v.get("star") {
                None | Some(Value::Null) => None,
                Some(t) => Some(as_usize_list(t, "star")?),
            };
            Ok(Algebra::Table(TableRing::new(
                size,
                as_u64(field_of(v, "zero")?, "zero")? as usize,
                as_u64(field_of(v, "one")?, "one")? as usize,
                as_usize_list(field_of(v, "add")?, "add")?,
                as_usize_list(field_of(v, "mul")?, "mul")?,
                as_usize_list(field_of(v, "neg")?, "neg")?,
                star,
                roots_of(v)?,
            )?))
        }
        "rationals" => Ok(Algebra::Rationals),
        other => Err(malformed(format!("unknown algebra kind `{other}`"))),
    }
}

fn roots_of(v: &Value) -> Result<BTreeMap<u64, Vec<usize>>> {
    match v.get("roots") {
        None | Some(Value::Null) => Ok(BTreeMap::new()),
        Some(Value::Object(m)) => m
            .iter()
            .map(|(k, t)| {
                let p = k.parse().map_err(|_| malformed(format!("bad prime key `{k}`")))?;
                Ok((p, as_usize_list(t, "roots")?))
            })
            .collect(),
        Some(_) => Err(malformed("`roots` must map primes to tables")),
    }
}

fn spec_json(f: &FieldSpec) -> Value {
    json!({"p": f.characteristic(), "n": f.degree()})
}

pub fn algebra_to_json(a: &Algebra) -> Value {
    match a {
        Algebra::Field { spec, primes } => {
            json!({"kind": "field", "p": spec.characteristic(), "n": spec.degree(), "primes": primes})
        }
        Algebra::Product(b) => product_to_json(b),
        Algebra::Subalgebra(s) => json!({
            "kind": "subalgebra",
            "ambient": product_to_json(s.ambient()),
            "generators": s.generators().iter().map(|g| tuple_to_json(g)).collect::<Vec<_>>(),
        }),
        Algebra::Table(t) => {
            let mut m = Map::new();
            m.insert("kind".into(), json!("table"));
            m.insert("size".into(), json!(t.size()));
            m.insert("zero".into(), json!(t.zero_index()));
            m.insert("one".into(), json!(t.one_index()));
            let n = t.size();
            let binary = |f: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
                (0..n * n).map(|i| f(i / n, i % n)).collect()
            };
            m.insert("add".into(), json!(binary(&|a, b| t.add_at(a, b))));
            m.insert("mul".into(), json!(binary(&|a, b| t.mul_at(a, b))));
            m.insert("neg".into(), json!(t.neg_table()));
            m.insert("star".into(), json!(t.star_table()));
            let roots: Map<String, Value> = t
                .primes()
                .iter()
                .map(|&p| (p.to_string(), json!(t.root_table(p))))
                .collect();
            m.insert("roots".into(), Value::Object(roots));
            Value::Object(m)
        }
        Algebra::Rationals => json!({"kind": "rationals"}),
    }
}

pub fn product_to_json(b: &Product) -> Value {
    json!({
        "kind": "product",
        "components": b.components().iter().map(spec_json).collect::<Vec<_>>(),
        "primes": b.primes(),
    })
}

/// The algebra as a product of fields, when it is one.
pub fn product_from_json(v: &Value, cap: usize) -> Result<Product> {
    algebra_from_json(v, cap)?.as_product().ok_or(Error::NotProduct)
}

pub fn ff_to_json(a: &FFElement) -> Value {
    if a.spec().degree() == 1 {
        json!(a.coeffs()[0])
    } else {
        json!(a.coeffs())
    }
}

/// Accepts an integer (reduced into the prime field) or a coefficient list
/// of length at most the degree with entries below the characteristic.
pub fn ff_from_json(spec: &FieldSpec, v: &Value) -> Result<FFElement> {
    match v {
        Value::Number(n) => {
            let k = n.as_i64().ok_or_else(|| malformed(format!("{n} is not an integer")))?;
            Ok(spec.int(k))
        }
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|c| as_u64(c, "coefficient"))
                .collect::<Result<Vec<_>>>()?;
            spec.element(&coeffs)
        }
        other => Err(malformed(format!("{other} is not an element of {spec}"))),
    }
}

pub fn tuple_to_json(x: &[FFElement]) -> Value {
    Value::Array(x.iter().map(ff_to_json).collect())
}

pub fn tuple_from_json(b: &Product, v: &Value) -> Result<Tuple> {
    let items = v
        .as_array()
        .ok_or_else(|| malformed(format!("{v} is not a tuple")))?;
    if items.len() != b.len() {
        return Err(malformed(format!("{v} has {} entries, {b} needs {}", items.len(), b.len())));
    }
    b.components()
        .iter()
        .zip(items)
        .map(|(f, x)| ff_from_json(f, x))
        .collect()
}

pub fn element_to_json(e: &Element) -> Value {
    match e {
        Element::Field(a) => ff_to_json(a),
        Element::Tuple(t) => tuple_to_json(t),
        Element::Table(i) => json!(i),
        Element::Rational(r) => {
            if r.denominator() == &1.into() {
                r.numerator()
                    .to_string()
                    .parse::<i64>()
                    .map(|k| json!(k))
                    .unwrap_or_else(|_| json!(r.to_string()))
            } else {
                json!(r.to_string())
            }
        }
    }
}

pub fn element_from_json(a: &Algebra, v: &Value) -> Result<Element> {
    let e = match a {
        Algebra::Field { spec, .. } => Element::Field(ff_from_json(spec, v)?),
        Algebra::Product(b) => Element::Tuple(tuple_from_json(b, v)?),
        Algebra::Subalgebra(s) => Element::Tuple(tuple_from_json(s.ambient(), v)?),
        Algebra::Table(_) => Element::Table(as_u64(v, "element")? as usize),
        Algebra::Rationals => Element::Rational(match v {
            Value::Number(n) => Rational::from_int(
                n.as_i64().ok_or_else(|| malformed(format!("{n} is not an integer")))?,
            ),
            Value::String(s) => s.parse()?,
            other => return Err(malformed(format!("{other} is not a rational"))),
        }),
    };
    if !a.contains(&e) {
        return Err(Error::SpecMismatch(format!("{v} is not an element of {a}")));
    }
    Ok(e)
}

/// Generators of a product (or single field) given as a JSON list, or as an
/// object with a `generators` list.
pub fn generators_from_json(b: &Algebra, v: &Value) -> Result<Vec<Tuple>> {
    let list = match v {
        Value::Array(items) => items,
        Value::Object(_) => field_of(v, "generators")?
            .as_array()
            .ok_or_else(|| malformed("`generators` must be a list"))?,
        _ => return Err(malformed("generators must be a list")),
    };
    list.iter()
        .map(|g| match element_from_json(b, g)? {
            Element::Field(a) => Ok(vec![a]),
            Element::Tuple(t) => Ok(t),
            _ => Err(Error::NotProduct),
        })
        .collect()
}

/// `{tau, images, table?}` where `images[j]` is the image of the residue of
/// x of the source component `tau[j]`, and `table` lists `[x, h(x)]` pairs
/// when the source has at most `table_cap` elements.
pub fn hom_to_json(h: &Hom, table_cap: usize) -> Value {
    let mut m = Map::new();
    m.insert("tau".into(), json!(h.tau()));
    m.insert(
        "images".into(),
        Value::Array(h.embeddings().iter().map(|e| ff_to_json(e.image())).collect()),
    );
    if let Ok(elems) = h.src().elements(table_cap) {
        let table: Vec<Value> = elems
            .iter()
            .map(|x| json!([tuple_to_json(x), tuple_to_json(&h.apply(x).expect("in source"))]))
            .collect();
        m.insert("table".into(), Value::Array(table));
    }
    Value::Object(m)
}

/// Missing `images` default to the first embedding in element order.
pub fn hom_from_json(src: &Product, dst: &Product, v: &Value) -> Result<Hom> {
    let tau = as_usize_list(field_of(v, "tau")?, "tau")?;
    if tau.len() != dst.len() {
        return Err(malformed(format!("`tau` needs {} entries", dst.len())));
    }
    let images = v.get("images").and_then(Value::as_array);
    let mut embeddings = Vec::with_capacity(tau.len());
    for (j, &i) in tau.iter().enumerate() {
        let from = src
            .components()
            .get(i)
            .ok_or_else(|| malformed(format!("`tau` entry {i} out of range")))?;
        let to = &dst.components()[j];
        let e = match images.and_then(|imgs| imgs.get(j)) {
            Some(img) => FieldEmbedding::new(from, ff_from_json(to, img)?)?,
            None => crate::gf::enumerate_embeddings(from, to)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::NotEmbedding(format!("{from} does not embed in {to}")))?,
        };
        embeddings.push(e);
    }
    Hom::new(src, dst, tau, embeddings)
}

pub fn span_from_json(v: &Value, cap: usize) -> Result<Span> {
    let a = product_from_json(field_of(v, "a")?, cap)?;
    let b = product_from_json(field_of(v, "b")?, cap)?;
    let c = product_from_json(field_of(v, "c")?, cap)?;
    let h1 = hom_from_json(&a, &b, field_of(v, "h1")?)?;
    let h2 = hom_from_json(&a, &c, field_of(v, "h2")?)?;
    Span::new(h1, h2)
}

pub fn span_to_json(s: &Span, table_cap: usize) -> Value {
    json!({
        "a": product_to_json(s.a()),
        "b": product_to_json(s.b()),
        "c": product_to_json(s.c()),
        "h1": hom_to_json(s.h1(), table_cap),
        "h2": hom_to_json(s.h2(), table_cap),
    })
}

pub fn amalgam_to_json(am: &Amalgam, verified: bool, table_cap: usize) -> Value {
    json!({
        "d": product_to_json(&am.d),
        "g1": hom_to_json(&am.g1, table_cap),
        "g2": hom_to_json(&am.g2, table_cap),
        "verified": verified,
    })
}

fn assignment_json(a: &Assignment) -> Value {
    Value::Object(
        a.0.iter()
            .map(|(k, v)| (k.clone(), element_to_json(v)))
            .collect(),
    )
}

pub fn law_report_to_json(r: &LawReport) -> Value {
    let mut m = Map::new();
    m.insert("law".into(), json!(r.law));
    m.insert("verdict".into(), json!(if r.passed { "pass" } else { "fail" }));
    if let Some(c) = &r.counterexample {
        m.insert("counterexample".into(), assignment_json(c));
    }
    if let Some(ax) = &r.axiom {
        m.insert("axiom".into(), json!(ax));
    }
    m.insert("elapsed_ms".into(), json!(r.elapsed.as_secs_f64() * 1000.0));
    Value::Object(m)
}

pub fn dominion_to_json(r: &DominionResult, table_cap: usize) -> Value {
    let certs: Vec<Value> = r
        .certificates
        .iter()
        .map(|(x, c)| {
            let mut m = Map::new();
            m.insert("element".into(), tuple_to_json(x));
            m.insert("member".into(), json!(r.contains(x)));
            match c {
                Certificate::InSubalgebra(t) => {
                    m.insert("witness".into(), json!(t.to_string()));
                }
                Certificate::PairWitnesses(list) => {
                    let ws: Vec<Value> = list
                        .iter()
                        .map(|(i, j, t)| json!({"ideals": [i, j], "witness": t.to_string()}))
                        .collect();
                    m.insert("pair_witnesses".into(), Value::Array(ws));
                }
                Certificate::Separated { ideals, g, h } => {
                    if let Some((i, j)) = ideals {
                        m.insert("ideals".into(), json!([i, j]));
                    }
                    m.insert("codomain".into(), product_to_json(g.dst()));
                    m.insert("g".into(), hom_to_json(g, table_cap));
                    m.insert("h".into(), hom_to_json(h, table_cap));
                }
                Certificate::Unseparated { pairs_checked } => {
                    m.insert("unseparated".into(), json!({"pairs_checked": pairs_checked}));
                }
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "ambient": product_to_json(&r.ambient),
        "generators": r.generators.iter().map(|g| tuple_to_json(g)).collect::<Vec<_>>(),
        "method": r.method.to_string(),
        "class": r.class.to_string(),
        "members": r.members.iter().map(|x| tuple_to_json(x)).collect::<Vec<_>>(),
        "certificates": certs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for text in [
            r#"{"kind":"field","p":2,"n":3}"#,
            r#"{"kind":"product","components":[{"p":2,"n":1},{"p":3,"n":1}],"primes":[2,3,5]}"#,
            r#"{"kind":"znring","n":4,"star":"identity"}"#,
            r#"{"kind":"rationals"}"#,
        ] {
            let a = algebra_from_json(&serde_json::from_str(text).unwrap(), 64).unwrap();
            let again = algebra_from_json(&algebra_to_json(&a), 64).unwrap();
            assert_eq!(a, again, "{text}");
        }
    }

    #[test]
    fn subalgebra_descriptor() {
        let v: Value = serde_json::from_str(
            r#"{"kind":"subalgebra","ambient":{"kind":"product","components":[{"p":2,"n":1},{"p":2,"n":1}]},"generators":[]}"#,
        )
        .unwrap();
        let a = algebra_from_json(&v, 64).unwrap();
        assert_eq!(a.size(), Some(2));
    }

    #[test]
    fn elements_by_context() {
        let gf4 = Algebra::field(&make_field(2, 2).unwrap());
        let alpha = element_from_json(&gf4, &json!([0, 1])).unwrap();
        assert_eq!(element_to_json(&alpha), json!([0, 1]));
        let gf5 = Algebra::field(&make_field(5, 1).unwrap());
        assert_eq!(element_to_json(&element_from_json(&gf5, &json!(7)).unwrap()), json!(2));
        let q = element_from_json(&Algebra::Rationals, &json!("6/4")).unwrap();
        assert_eq!(element_to_json(&q), json!("3/2"));
        assert!(element_from_json(&gf4, &json!([0, 2])).is_err());
        let z4 = algebra_from_json(&json!({"kind":"znring","n":4}), 64).unwrap();
        assert!(element_from_json(&z4, &json!(4)).is_err());
    }

    #[test]
    fn hom_round_trip() {
        let a = Product::of(vec![make_field(2, 1).unwrap()]);
        let b = Product::of(vec![make_field(2, 1).unwrap(), make_field(2, 2).unwrap()]);
        let h = hom_from_json(&a, &b, &json!({"tau": [0, 0]})).unwrap();
        let again = hom_from_json(&a, &b, &hom_to_json(&h, 64)).unwrap();
        assert_eq!(h, again);
        assert!(hom_from_json(&a, &b, &json!({"tau": [0, 1]})).is_err());
    }
}

//! Deterministic JSON reports.
//!
//! Keys appear in insertion order: `command`, `input`, `verdict`, `result`
//! and, on failure, `witness`. Integers whose magnitude exceeds 2^53 are
//! written as decimal strings. Nothing in a report depends on time or on
//! hash iteration order.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use ultraprime_core::algebra::{MPoly, Poly, Poly2, RingElem};
use ultraprime_core::funcring::FnValue;
use ultraprime_core::setfilters::{PointSet, SetFamily};
use ultraprime_core::spectrum::{FiniteIdeal, FiniteRing};

const SAFE_INT: u64 = 1 << 53;

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub pass: bool,
    pub result: Map<String, Value>,
    pub witness: Option<Value>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Self { command: command.to_string(), input, pass: true, result: Map::new(), witness: None }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.result.insert(key.to_string(), value.into());
        self
    }

    /// Marks the report failed; the first witness recorded is kept.
    pub fn fail(&mut self, witness: Value) -> &mut Self {
        self.pass = false;
        self.witness.get_or_insert(witness);
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass { 0 } else { 1 }
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        out.insert("input".into(), self.input.clone());
        out.insert("verdict".into(), verdict(self.pass));
        out.insert("result".into(), Value::Object(self.result.clone()));
        if let Some(w) = &self.witness {
            out.insert("witness".into(), w.clone());
        }
        Value::Object(out)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn verdict(pass: bool) -> Value {
    Value::String(if pass { "pass" } else { "fail" }.into())
}

pub fn int(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) if v.unsigned_abs() <= SAFE_INT => json!(v),
        _ => Value::String(n.to_string()),
    }
}

pub fn uint(n: u64) -> Value {
    if n <= SAFE_INT { json!(n) } else { Value::String(n.to_string()) }
}

pub fn elem(e: &RingElem) -> Value {
    match e {
        RingElem::Integer(n) => int(n),
        RingElem::Residue(v) => uint(*v),
        RingElem::Ext(cs) => Value::Array(cs.iter().map(|&c| uint(c)).collect()),
    }
}

pub fn values(f: &FnValue) -> Value {
    Value::Array(f.values().iter().map(elem).collect())
}

pub fn point_set(s: PointSet) -> Value {
    Value::Array(s.iter().map(|i| json!(i)).collect())
}

pub fn family(f: &SetFamily) -> Value {
    Value::Array(f.members().iter().map(|&s| point_set(s)).collect())
}

/// A tuple of coordinate codes.
pub fn tuple(t: &[u32]) -> Value {
    Value::Array(t.iter().map(|&c| json!(c)).collect())
}

/// The members of an ideal as coordinate tuples, in sorted order.
pub fn ideal(ring: &FiniteRing, q: &FiniteIdeal) -> Value {
    Value::Array(q.members().map(|i| tuple(ring.element(i))).collect())
}

fn sorted_terms(f: &MPoly) -> Vec<(&[u32], u64)> {
    let mut terms: Vec<(&[u32], u64)> = f.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    terms
}

/// Sparse terms `[exponents..., coefficient]`, exponent vectors descending.
pub fn mpoly(f: &MPoly) -> Value {
    Value::Array(
        sorted_terms(f)
            .into_iter()
            .map(|(exp, c)| {
                let mut row: Vec<Value> = exp.iter().map(|&e| json!(e)).collect();
                row.push(uint(c));
                Value::Array(row)
            })
            .collect(),
    )
}

/// Sparse terms `[i, j, coefficient]` of a binary polynomial.
pub fn poly2(f: &Poly2) -> Value {
    Value::Array(f.terms().map(|(&(i, j), c)| json!([i, j, elem(c)])).collect())
}

/// Coefficients, low degree first.
pub fn poly(f: &Poly) -> Value {
    Value::Array(f.coeffs().iter().map(elem).collect())
}

/// `x0^2 + x0*x1 + x1^2`, exponent vectors descending.
pub fn mpoly_text(f: &MPoly) -> String {
    let mut parts = Vec::new();
    for (exp, c) in sorted_terms(f) {
        let mut factors = Vec::new();
        if c != 1 || exp.iter().all(|&e| e == 0) {
            factors.push(c.to_string());
        }
        for (i, &e) in exp.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{i}")),
                _ => factors.push(format!("x{i}^{e}")),
            }
        }
        parts.push(factors.join("*"));
    }
    if parts.is_empty() { "0".into() } else { parts.join(" + ") }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(int(&BigInt::from(1u64 << 53)), json!(9007199254740992u64));
        assert_eq!(int(&(BigInt::from(1u64 << 53) + 1)), json!("9007199254740993"));
        assert_eq!(int(&BigInt::from(-(1i64 << 60))), json!("-1152921504606846976"));
        assert_eq!(uint(u64::MAX), json!("18446744073709551615"));
    }

    #[test]
    fn key_order_is_fixed() {
        let mut r = Report::new("demo", json!({"b": 1, "a": 0}));
        r.set("z", 1).set("a", 2);
        r.fail(json!("first"));
        r.fail(json!("second"));
        let text = r.render();
        let keys: Vec<usize> = ["\"command\"", "\"input\"", "\"verdict\"", "\"result\"", "\"witness\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("\"z\"").unwrap() < text.find("\"a\": 2").unwrap());
        assert!(text.contains("first") && !text.contains("second"));
        assert_eq!(r.exit_code(), 1);
    }
}

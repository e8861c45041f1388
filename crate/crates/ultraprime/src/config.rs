//! JSON configuration files.
//!
//! ```json
//! {
//!   "ring": "Z",
//!   "points": [0, 1, 2],
//!   "modulus": 2,
//!   "generators": [{ "name": "x", "expr": "x" }]
//! }
//! ```
//!
//! `ring` is one of `Z`, `Z/m`, `F_p` or `F_p^k`. Elements of `Z` are JSON
//! integers or decimal strings, elements of `Z/m` and `F_p` integers in
//! `[0, m)`, and elements of `F_p^k` either coefficient lists (low degree
//! first) or integer codes `sum c_i p^i`.

use std::path::Path;

use anyhow::{anyhow, bail, ensure, Context, Result};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use ultraprime_core::algebra::{BaseRing, MDescriptor, Residue, RingElem};
use ultraprime_core::expr::parse_expression;
use ultraprime_core::funcring::{FnValue, FuncRing};
use ultraprime_core::intpoly::{IVPoly, PadicApprox};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub ring: Option<String>,
    pub points: Option<Vec<Value>>,
    pub modulus: Option<Value>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,

    pub p: Option<u64>,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub cap: Option<usize>,

    /// Functions on `E` for `combine` and `unitlift`.
    pub f: Option<FnSpec>,
    pub g: Option<FnSpec>,
    /// Ideal generators for `zerolocus` and `filters`.
    pub ideal: Option<Vec<FnSpec>>,
    /// An explicit family of index sets for `filters`.
    pub family: Option<Vec<Vec<usize>>>,
    /// Degree of the extension behind the norm-form combiner.
    pub combiner_degree: Option<usize>,

    /// Factors for `ultraproduct`, each a finite ring descriptor.
    pub factors: Option<Vec<String>>,
    pub point: Option<usize>,

    pub poly: Option<PolySpec>,
    pub alpha: Option<AlphaSpec>,
    pub divisor: Option<Value>,
    pub q: Option<u64>,
    pub window: Option<(i64, i64)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub expr: Option<String>,
    pub values: Option<Vec<Value>>,
}

/// An expression in `x` and the generators, or an explicit value list.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FnSpec {
    Expr(String),
    Values(Vec<Value>),
}

/// Monomial-form text (`"x^2 + x"`, `"x*(x-1)/2"`) or binomial coefficients.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PolySpec {
    Text(String),
    Binomial(Vec<Value>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaSpec {
    pub p: u64,
    pub n: u32,
    pub r: Value,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn base_ring(&self) -> Result<BaseRing> {
        parse_ring(self.ring.as_deref().ok_or_else(|| anyhow!("missing `ring`"))?)
    }

    /// `M` as given by `modulus`; absent or 0 is the zero ideal.
    pub fn residue(&self, base: &BaseRing) -> Result<Residue> {
        let m = match &self.modulus {
            None => MDescriptor::Zero,
            Some(v) => {
                let n = integer(v).context("modulus")?;
                if n == BigInt::from(0) { MDescriptor::Zero } else { MDescriptor::Principal(n) }
            }
        };
        Ok(Residue::new(base.clone(), m)?)
    }

    /// The ring of functions on `points`, with generators added in order.
    pub fn func_ring(&self) -> Result<FuncRing> {
        let base = self.base_ring()?;
        let points = self.points.as_ref().ok_or_else(|| anyhow!("missing `points`"))?;
        let points = points.iter().map(|v| element(&base, v)).collect::<Result<Vec<_>>>().context("points")?;
        let mut ring = FuncRing::new(base, points)?;
        for spec in &self.generators {
            ring = match (&spec.expr, &spec.values) {
                (Some(text), None) => ring.with_generator_expr(&spec.name, text),
                (None, Some(values)) => {
                    let f = function(&ring, &FnSpec::Values(values.clone()))?;
                    ring.with_generator(&spec.name, f)
                }
                _ => bail!("generator `{}` needs exactly one of `expr` and `values`", spec.name),
            }
            .with_context(|| format!("generator `{}`", spec.name))?;
        }
        Ok(ring)
    }

    pub fn poly(&self) -> Result<IVPoly> {
        match self.poly.as_ref().ok_or_else(|| anyhow!("missing `poly`"))? {
            PolySpec::Text(text) => Ok(IVPoly::parse(text)?),
            PolySpec::Binomial(coeffs) => Ok(IVPoly::new(coeffs.iter().map(integer).collect::<Result<_>>()?)),
        }
    }

    pub fn alpha(&self) -> Result<PadicApprox> {
        let a = self.alpha.as_ref().ok_or_else(|| anyhow!("missing `alpha`"))?;
        Ok(PadicApprox::new(a.p, a.n, &integer(&a.r)?)?)
    }
}

/// `Z`, `Z/m`, `F_p` or `F_p^k`.
pub fn parse_ring(text: &str) -> Result<BaseRing> {
    let t = text.trim();
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| anyhow!("bad ring descriptor `{text}`"));
    if t == "Z" {
        return Ok(BaseRing::Integers);
    }
    if let Some(m) = t.strip_prefix("Z/") {
        return Ok(BaseRing::integers_mod(num(m)?)?);
    }
    if let Some(rest) = t.strip_prefix("F_") {
        return Ok(match rest.split_once('^') {
            None => BaseRing::prime_field(num(rest)?)?,
            Some((p, k)) => {
                let k = num(k)? as usize;
                if k == 1 { BaseRing::prime_field(num(p)?)? } else { BaseRing::galois_field(num(p)?, k)? }
            }
        });
    }
    bail!("bad ring descriptor `{text}`")
}

/// A JSON integer or decimal string.
pub fn integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| anyhow!("`{n}` is not an integer")),
        Value::String(s) => s.trim().parse().map_err(|_| anyhow!("`{s}` is not an integer")),
        _ => bail!("expected an integer, got {v}"),
    }
}

/// An element of `base`, rejecting out-of-range values instead of reducing.
pub fn element(base: &BaseRing, v: &Value) -> Result<RingElem> {
    match (base, v) {
        (BaseRing::Integers, _) => Ok(RingElem::Integer(integer(v)?)),
        (BaseRing::ExtField(field), Value::Array(cs)) => {
            ensure!(cs.len() == field.degree(), "expected {} coefficients, got {v}", field.degree());
            let cs = cs.iter().map(|c| small(c, field.p())).collect::<Result<Vec<_>>>()?;
            let e = RingElem::Ext(cs);
            base.check(&e)?;
            Ok(e)
        }
        _ => {
            let order = base.order().expect("finite");
            let c = small(v, order)?;
            Ok(base.from_code(c as u32))
        }
    }
}

fn small(v: &Value, bound: u64) -> Result<u64> {
    let n = integer(v)?;
    u64::try_from(&n).ok().filter(|&c| c < bound).ok_or_else(|| anyhow!("{n} is out of range [0, {bound})"))
}

pub fn function(ring: &FuncRing, spec: &FnSpec) -> Result<FnValue> {
    match spec {
        FnSpec::Expr(text) => Ok(ring.eval_in_x(&parse_expression(text)?)?),
        FnSpec::Values(vs) => {
            let values = vs.iter().map(|v| element(ring.base(), v)).collect::<Result<Vec<_>>>()?;
            Ok(ring.function(values)?)
        }
    }
}

//! Poly JSON encoding:
//! `{"vars": ["x0", ..., "xN", "x"], "terms": [{"coeff": "p/q", "exps": {"x1": 2}}]}`.
//!
//! `vars` lists `x0..xN` up to the highest generator present, then `x` if it
//! occurs. Terms and exponent keys follow the canonical order, so encoding a
//! decoded canonical document reproduces it byte for byte.

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Poly, Var};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: IndexMap<String, u32>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        let mut vars: Vec<String> = match p.max_generator() {
            Some(n) => (0..=n).map(|i| Var::Gen(i).to_string()).collect(),
            None => Vec::new(),
        };
        if p.contains_var(Var::X) {
            vars.push(Var::X.to_string());
        }
        let terms = p
            .terms()
            .map(|(m, c)| TermJson {
                coeff: format_rational(c),
                exps: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect();
        Self { vars, terms }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;

    fn try_from(doc: PolyJson) -> Result<Self> {
        let mut declared = Vec::with_capacity(doc.vars.len());
        for name in &doc.vars {
            declared.push(name.parse::<Var>()?);
        }
        let mut p = Poly::zero();
        for term in doc.terms {
            let c = parse_rational(&term.coeff)
                .ok_or_else(|| Error::Json(format!("bad coefficient {:?}", term.coeff)))?;
            let mut pairs = Vec::with_capacity(term.exps.len());
            for (name, e) in term.exps {
                let v: Var = name.parse()?;
                if !declared.contains(&v) {
                    return Err(Error::Json(format!("variable {name} missing from vars")));
                }
                pairs.push((v, e));
            }
            p.add_term(c, Monomial::from_pairs(pairs));
        }
        Ok(p)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = PolyJson::deserialize(deserializer)?;
        Poly::try_from(doc).map_err(serde::de::Error::custom)
    }
}

impl Poly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial JSON encoding cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PolyJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Poly::try_from(doc)
    }
}

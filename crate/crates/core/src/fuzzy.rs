//! Triangular fuzzy numbers and the linguistic scales built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A triangular fuzzy number `(a, b, c)`: support `[a, c]`, peak at `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tfn {
    a: f64,
    b: f64,
    c: f64,
}

impl Tfn {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        // NaN fails both comparisons and is rejected here too.
        if !(a <= b && b <= c) {
            return Err(Error::OrderViolation { a, b, c });
        }
        Ok(Tfn { a, b, c })
    }

    /// Degenerate number `(x, x, x)`; how crisp values sit among fuzzy ones.
    pub fn crisp(x: f64) -> Self {
        Tfn { a: x, b: x, c: x }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Centroid defuzzification, `(a + b + c) / 3`.
    pub fn centroid(&self) -> f64 {
        defuzzify_centroid(self)
    }

    fn within_unit_interval(&self) -> bool {
        self.a >= 0.0 && self.c <= 1.0
    }
}

impl<'de> Deserialize<'de> for Tfn {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            a: f64,
            b: f64,
            c: f64,
        }
        let raw = Raw::deserialize(de)?;
        Tfn::new(raw.a, raw.b, raw.c).map_err(serde::de::Error::custom)
    }
}

pub fn make_tfn(a: f64, b: f64, c: f64) -> Result<Tfn> {
    Tfn::new(a, b, c)
}

pub fn defuzzify_centroid(t: &Tfn) -> f64 {
    if t.a == t.b && t.b == t.c {
        // (x + x + x) / 3 is not always exactly x in floating point.
        return t.b;
    }
    (t.a + t.b + t.c) / 3.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticTerm {
    pub code: String,
    pub label: String,
    pub tfn: Tfn,
}

impl LinguisticTerm {
    pub fn new(code: impl Into<String>, label: impl Into<String>, tfn: Tfn) -> Self {
        LinguisticTerm {
            code: code.into(),
            label: label.into(),
            tfn,
        }
    }

    pub fn value(&self) -> f64 {
        self.tfn.centroid()
    }
}

/// Ordered set of linguistic terms. Construction checks that codes are
/// unique, every TFN lies within `[0, 1]`, and centroids strictly increase
/// in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticScale {
    name: String,
    terms: Vec<LinguisticTerm>,
}

impl LinguisticScale {
    pub fn new(name: impl Into<String>, terms: Vec<LinguisticTerm>) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidScale {
            scale: name.clone(),
            reason,
        };
        if terms.len() < 2 {
            return Err(invalid(format!("needs at least 2 terms, has {}", terms.len())));
        }
        for (i, term) in terms.iter().enumerate() {
            if terms[..i].iter().any(|t| t.code == term.code) {
                return Err(invalid(format!("duplicate term code {:?}", term.code)));
            }
            if !term.tfn.within_unit_interval() {
                return Err(invalid(format!("term {:?} leaves the [0, 1] interval", term.code)));
            }
        }
        if let Some(w) = terms.windows(2).find(|w| w[0].value() >= w[1].value()) {
            return Err(invalid(format!(
                "terms must increase strictly: {:?} ({}) is not below {:?} ({})",
                w[0].code,
                w[0].value(),
                w[1].code,
                w[1].value()
            )));
        }
        Ok(LinguisticScale { name, terms })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[LinguisticTerm] {
        &self.terms
    }

    pub fn get(&self, code: &str) -> Option<&LinguisticTerm> {
        self.terms.iter().find(|t| t.code == code)
    }

    pub fn lookup(&self, code: &str) -> Result<&LinguisticTerm> {
        lookup_term(self, code)
    }
}

/// Exact, case-sensitive lookup.
pub fn lookup_term<'s>(scale: &'s LinguisticScale, code: &str) -> Result<&'s LinguisticTerm> {
    scale.get(code).ok_or_else(|| Error::UnknownTerm {
        code: code.to_string(),
        scale: scale.name.clone(),
    })
}

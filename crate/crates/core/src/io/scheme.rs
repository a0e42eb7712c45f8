use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::json_error;
use crate::error::{Error, Result};
use crate::fuzzy::{LinguisticScale, LinguisticTerm, Tfn};
use crate::model::{Criterion, DataKind, EligibilityRule, Orientation, Scheme};

/// On-disk form of a [`Scheme`]. Field names here are the file contract.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub name: String,
    /// Scale that `weight_term` codes are looked up in.
    pub weight_scale: String,
    pub scales: Vec<ScaleFile>,
    pub criteria: Vec<CriterionFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eligibility: Vec<EligibilityRule>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleFile {
    pub name: String,
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub code: String,
    pub label: String,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindTag {
    Crisp,
    Linguistic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionFile {
    pub id: String,
    pub description: String,
    pub kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    pub orientation: Orientation,
    pub weight_term: String,
}

impl TryFrom<SchemeFile> for Scheme {
    type Error = Error;

    fn try_from(file: SchemeFile) -> Result<Scheme> {
        if file.name.trim().is_empty() {
            return Err(Error::schema("/name", "scheme name is empty"));
        }

        let mut scales: Vec<LinguisticScale> = Vec::with_capacity(file.scales.len());
        for (i, sf) in file.scales.into_iter().enumerate() {
            if scales.iter().any(|s| s.name() == sf.name) {
                return Err(Error::schema(
                    format!("/scales/{i}/name"),
                    format!("duplicate scale {:?}", sf.name),
                ));
            }
            let mut terms = Vec::with_capacity(sf.terms.len());
            for (k, t) in sf.terms.into_iter().enumerate() {
                let tfn = Tfn::new(t.a, t.b, t.c)
                    .map_err(|e| Error::schema(format!("/scales/{i}/terms/{k}"), e.to_string()))?;
                terms.push(LinguisticTerm::new(t.code, t.label, tfn));
            }
            let scale = LinguisticScale::new(sf.name, terms)
                .map_err(|e| Error::schema(format!("/scales/{i}"), e.to_string()))?;
            scales.push(scale);
        }

        let Some(weight_scale) = scales.iter().find(|s| s.name() == file.weight_scale) else {
            return Err(Error::schema(
                "/weight_scale",
                format!("unknown scale {:?}", file.weight_scale),
            ));
        };

        if file.criteria.is_empty() {
            return Err(Error::schema("/criteria", "at least one criterion is required"));
        }
        let mut seen = HashSet::new();
        let mut criteria = Vec::with_capacity(file.criteria.len());
        for (i, cf) in file.criteria.into_iter().enumerate() {
            let at = |field: &str| format!("/criteria/{i}/{field}");
            if cf.id.trim().is_empty() {
                return Err(Error::schema(at("id"), "criterion id is empty"));
            }
            if cf.id == "id" {
                return Err(Error::schema(at("id"), "\"id\" is reserved for the alternative column"));
            }
            if !seen.insert(cf.id.clone()) {
                return Err(Error::schema(at("id"), format!("duplicate criterion {:?}", cf.id)));
            }
            let kind = match (cf.kind, cf.scale) {
                (KindTag::Crisp, None) => DataKind::Crisp,
                (KindTag::Crisp, Some(_)) => {
                    return Err(Error::schema(at("scale"), "crisp criteria take no scale"));
                }
                (KindTag::Linguistic, None) => {
                    return Err(Error::schema(at("scale"), "linguistic criteria need a scale"));
                }
                (KindTag::Linguistic, Some(scale)) => {
                    if !scales.iter().any(|s| s.name() == scale) {
                        return Err(Error::UnknownScaleReference {
                            criterion: cf.id,
                            scale,
                            pointer: at("scale"),
                        });
                    }
                    DataKind::Linguistic { scale }
                }
            };
            let weight_term = weight_scale
                .lookup(&cf.weight_term)
                .map_err(|e| Error::schema(at("weight_term"), e.to_string()))?
                .clone();
            criteria.push(Criterion {
                id: cf.id,
                description: cf.description,
                kind,
                orientation: cf.orientation,
                weight_term,
            });
        }

        for (cid, map) in &file.aliases {
            let pointer = format!("/aliases/{cid}");
            let Some(criterion) = criteria.iter().find(|c| &c.id == cid) else {
                return Err(Error::schema(pointer, format!("unknown criterion {cid:?}")));
            };
            let DataKind::Linguistic { scale } = &criterion.kind else {
                return Err(Error::schema(pointer, "aliases apply to linguistic criteria only"));
            };
            let scale = scales.iter().find(|s| s.name() == scale).expect("checked above");
            for (from, to) in map {
                if scale.get(to).is_none() {
                    return Err(Error::schema(
                        format!("{pointer}/{from}"),
                        format!("alias target {to:?} is not a term of scale {:?}", scale.name()),
                    ));
                }
            }
        }

        for (i, rule) in file.eligibility.iter().enumerate() {
            if !criteria.iter().any(|c| c.id == rule.criterion) {
                return Err(Error::schema(
                    format!("/eligibility/{i}/criterion"),
                    format!("unknown criterion {:?}", rule.criterion),
                ));
            }
            if !rule.value.is_finite() {
                return Err(Error::schema(format!("/eligibility/{i}/value"), "value must be finite"));
            }
        }

        Ok(Scheme {
            name: file.name,
            weight_scale: file.weight_scale,
            scales,
            criteria,
            aliases: file.aliases,
            eligibility: file.eligibility,
        })
    }
}

impl From<&Scheme> for SchemeFile {
    fn from(scheme: &Scheme) -> SchemeFile {
        SchemeFile {
            name: scheme.name.clone(),
            weight_scale: scheme.weight_scale.clone(),
            scales: scheme
                .scales
                .iter()
                .map(|s| ScaleFile {
                    name: s.name().to_string(),
                    terms: s
                        .terms()
                        .iter()
                        .map(|t| TermFile {
                            code: t.code.clone(),
                            label: t.label.clone(),
                            a: t.tfn.a(),
                            b: t.tfn.b(),
                            c: t.tfn.c(),
                        })
                        .collect(),
                })
                .collect(),
            criteria: scheme
                .criteria
                .iter()
                .map(|c| {
                    let (kind, scale) = match &c.kind {
                        DataKind::Crisp => (KindTag::Crisp, None),
                        DataKind::Linguistic { scale } => (KindTag::Linguistic, Some(scale.clone())),
                    };
                    CriterionFile {
                        id: c.id.clone(),
                        description: c.description.clone(),
                        kind,
                        scale,
                        orientation: c.orientation,
                        weight_term: c.weight_term.code.clone(),
                    }
                })
                .collect(),
            aliases: scheme.aliases.clone(),
            eligibility: scheme.eligibility.clone(),
        }
    }
}

pub fn parse_scheme(text: &str) -> Result<Scheme> {
    let file: SchemeFile = serde_json::from_str(text).map_err(json_error)?;
    Scheme::try_from(file)
}

pub fn load_scheme(path: impl AsRef<Path>) -> Result<Scheme> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scheme(&text)
}

/// Canonical pretty-printed JSON, newline terminated.
pub fn scheme_to_json(scheme: &Scheme) -> String {
    let mut out = serde_json::to_string_pretty(&SchemeFile::from(scheme)).expect("scheme serializes");
    out.push('\n');
    out
}

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::json_error;
use crate::error::{Error, Result};
use crate::evaluate::Method;
use crate::model::Orientation;

/// Serialized ranking for one method over one scheme and dataset.
/// Alternatives appear in dataset order; `rank` carries the ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub method: Method,
    pub scheme: String,
    pub criteria: Vec<CriterionSetting>,
    pub alternatives: Vec<RankedAlternative>,
    /// Ids removed by eligibility rules before ranking.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

/// Weight and orientation a criterion was actually ranked with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionSetting {
    pub id: String,
    pub weight: f64,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankedAlternative {
    pub id: String,
    pub preference: f64,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist_pos: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist_neg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub engine: String,
    pub version: String,
    pub generated_at: String,
}

impl Meta {
    pub fn now() -> Self {
        Meta {
            engine: "fmadm".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

impl ResultDocument {
    /// Structural checks that serde cannot express.
    pub fn check(&self) -> Result<()> {
        let m = self.alternatives.len();
        let mut seen_ranks = vec![false; m];
        let mut seen_ids = HashSet::new();
        for (i, alt) in self.alternatives.iter().enumerate() {
            let at = |field: &str| format!("/alternatives/{i}/{field}");
            if !seen_ids.insert(alt.id.as_str()) {
                return Err(Error::schema(at("id"), format!("duplicate id {:?}", alt.id)));
            }
            if alt.rank == 0 || alt.rank > m || std::mem::replace(&mut seen_ranks[alt.rank - 1], true) {
                return Err(Error::schema(
                    at("rank"),
                    format!("ranks must be a permutation of 1..={m}"),
                ));
            }
            let fields_ok = match self.method {
                Method::Topsis => alt.dist_pos.is_some() && alt.dist_neg.is_some() && alt.score.is_none(),
                Method::Wp => alt.score.is_some() && alt.dist_pos.is_none() && alt.dist_neg.is_none(),
            };
            if !fields_ok {
                return Err(Error::schema(
                    at(""),
                    format!("fields do not match method {}", self.method),
                ));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("result serializes");
        out.push('\n');
        out
    }
}

/// One document renders as an object, several as an array.
pub fn render_documents(docs: &[ResultDocument]) -> String {
    let mut out = match docs {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("result serializes");
    out.push('\n');
    out
}

pub fn parse_result(text: &str) -> Result<ResultDocument> {
    let doc: ResultDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.check()?;
    Ok(doc)
}

pub fn store_result(doc: &ResultDocument, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, doc.to_json()).map_err(|e| Error::io(path, e))
}

pub fn load_result(path: impl AsRef<Path>) -> Result<ResultDocument> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_result(&text)
}

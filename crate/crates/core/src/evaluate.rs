//! Glue between a scheme, a dataset and the two engines: lowering,
//! eligibility screening, weight overrides, result documents and
//! per-alternative explanations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{CriterionSetting, RankedAlternative, ResultDocument};
use crate::model::{apply_eligibility, lower_to_crisp, weight_vector, Alternative, CrispMatrix, Orientation, Scheme};
use crate::topsis::{rank_topsis, TopsisTrace};
use crate::wp::{rank_wp, WpTrace, EPSILON};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Topsis,
    Wp,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Topsis, Method::Wp];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Topsis => "topsis",
            Method::Wp => "wp",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "topsis" => Ok(Method::Topsis),
            "wp" => Ok(Method::Wp),
            other => Err(format!("unknown method {other:?} (expected topsis or wp)")),
        }
    }
}

/// One method or both, as accepted by the CLI and the service.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodSelection {
    Topsis,
    Wp,
    Both,
}

impl MethodSelection {
    pub fn methods(self) -> &'static [Method] {
        match self {
            MethodSelection::Topsis => &[Method::Topsis],
            MethodSelection::Wp => &[Method::Wp],
            MethodSelection::Both => &Method::ALL,
        }
    }
}

impl FromStr for MethodSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "both" => Ok(MethodSelection::Both),
            other => other.parse::<Method>().map(|m| match m {
                Method::Topsis => MethodSelection::Topsis,
                Method::Wp => MethodSelection::Wp,
            }),
        }
    }
}

/// Replacement weight for one criterion: a term code of the scheme's weight
/// scale, or a raw positive number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightOverride {
    Value(f64),
    Term(String),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightOverride>,
    /// Swap benefit and cost for this criterion.
    #[serde(default)]
    pub flip: bool,
}

pub type Overrides = BTreeMap<String, CriterionOverride>;

/// A dataset lowered against its scheme and screened, ready for ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct Prepared {
    pub scheme: String,
    pub criteria: Vec<String>,
    pub matrix: CrispMatrix,
    pub weights: Vec<f64>,
    pub orientations: Vec<Orientation>,
    pub excluded: Vec<String>,
}

pub fn prepare(scheme: &Scheme, alts: &[Alternative]) -> Result<Prepared> {
    let lowered = lower_to_crisp(scheme, alts)?;
    let (matrix, excluded) = apply_eligibility(scheme, lowered);
    Ok(Prepared {
        scheme: scheme.name().to_string(),
        criteria: scheme.criterion_ids(),
        matrix,
        weights: weight_vector(scheme),
        orientations: scheme.orientations(),
        excluded,
    })
}

impl Prepared {
    pub fn apply_overrides(&mut self, scheme: &Scheme, overrides: &Overrides) -> Result<()> {
        for (id, over) in overrides {
            let j = scheme
                .criterion_index(id)
                .ok_or_else(|| Error::UnknownCriterion(id.clone()))?;
            match &over.weight {
                None => {}
                Some(WeightOverride::Term(code)) => {
                    self.weights[j] = scheme.weight_scale().lookup(code)?.value();
                }
                Some(WeightOverride::Value(value)) => {
                    if !(value.is_finite() && *value > 0.0) {
                        return Err(Error::NonPositiveWeight {
                            index: j,
                            value: *value,
                        });
                    }
                    self.weights[j] = *value;
                }
            }
            if over.flip {
                self.orientations[j] = self.orientations[j].flipped();
            }
        }
        Ok(())
    }

    fn settings(&self) -> Vec<CriterionSetting> {
        self.criteria
            .iter()
            .zip(&self.weights)
            .zip(&self.orientations)
            .map(|((id, &weight), &orientation)| CriterionSetting {
                id: id.clone(),
                weight,
                orientation,
            })
            .collect()
    }
}

pub fn run(prepared: &Prepared, method: Method) -> Result<ResultDocument> {
    let ids = &prepared.matrix.ids;
    let mut notes = Vec::new();
    let alternatives = match method {
        Method::Topsis => {
            let t = rank_topsis(&prepared.matrix, &prepared.weights, &prepared.orientations)?;
            for &i in &t.degenerate {
                notes.push(format!(
                    "{}: zero distance to both ideal solutions, closeness set to 0.5",
                    ids[i]
                ));
            }
            (0..ids.len())
                .map(|i| RankedAlternative {
                    id: ids[i].clone(),
                    preference: t.closeness[i],
                    rank: t.ranks[i],
                    dist_pos: Some(t.dist_pos[i]),
                    dist_neg: Some(t.dist_neg[i]),
                    score: None,
                })
                .collect()
        }
        Method::Wp => {
            let t = rank_wp(&prepared.matrix, &prepared.weights, &prepared.orientations)?;
            for &(i, j) in &t.clamped {
                notes.push(format!(
                    "{}: value on {} raised to {EPSILON:e} before scoring",
                    ids[i], prepared.criteria[j]
                ));
            }
            (0..ids.len())
                .map(|i| RankedAlternative {
                    id: ids[i].clone(),
                    preference: t.preferences[i],
                    rank: t.ranks[i],
                    dist_pos: None,
                    dist_neg: None,
                    score: Some(t.scores[i]),
                })
                .collect()
        }
    };
    Ok(ResultDocument {
        method,
        scheme: prepared.scheme.clone(),
        criteria: prepared.settings(),
        alternatives,
        excluded: prepared.excluded.clone(),
        notes,
        meta: None,
    })
}

/// Convenience for the common path: prepare, apply overrides, rank.
pub fn evaluate(
    scheme: &Scheme,
    alts: &[Alternative],
    method: Method,
    overrides: &Overrides,
) -> Result<ResultDocument> {
    let mut prepared = prepare(scheme, alts)?;
    prepared.apply_overrides(scheme, overrides)?;
    run(&prepared, method)
}

/// One document per selected method, in the order topsis, wp.
pub fn evaluate_all(
    scheme: &Scheme,
    alts: &[Alternative],
    selection: MethodSelection,
    overrides: &Overrides,
) -> Result<Vec<ResultDocument>> {
    let mut prepared = prepare(scheme, alts)?;
    prepared.apply_overrides(scheme, overrides)?;
    selection.methods().iter().map(|&m| run(&prepared, m)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Steps {
    Topsis {
        normalized: Vec<f64>,
        weighted: Vec<f64>,
        ideal_pos: Vec<f64>,
        ideal_neg: Vec<f64>,
        dist_pos: f64,
        dist_neg: f64,
    },
    Wp {
        signed_weights: Vec<f64>,
        factors: Vec<f64>,
        score: f64,
    },
}

/// Every intermediate quantity behind one alternative's score.
#[derive(Debug, Clone, PartialEq)]
pub struct Explanation {
    pub scheme: String,
    pub method: Method,
    pub id: String,
    pub criteria: Vec<String>,
    pub raw: Vec<String>,
    pub crisp: Vec<f64>,
    pub weights: Vec<f64>,
    pub orientations: Vec<Orientation>,
    pub steps: Steps,
    pub preference: f64,
    pub rank: usize,
    pub of: usize,
}

pub fn explain(scheme: &Scheme, alts: &[Alternative], method: Method, id: &str) -> Result<Explanation> {
    let prepared = prepare(scheme, alts)?;
    let alt = alts.iter().find(|a| a.id == id);
    let (Some(alt), Some(i)) = (alt, prepared.matrix.row_of(id)) else {
        return Err(Error::UnknownAlternative(id.to_string()));
    };
    let m = &prepared.matrix;
    let (steps, preference, rank) = match method {
        Method::Topsis => {
            let TopsisTrace {
                normalized,
                weighted,
                ideal_pos,
                ideal_neg,
                dist_pos,
                dist_neg,
                closeness,
                ranks,
                ..
            } = rank_topsis(m, &prepared.weights, &prepared.orientations)?;
            let steps = Steps::Topsis {
                normalized: normalized[i].clone(),
                weighted: weighted[i].clone(),
                ideal_pos,
                ideal_neg,
                dist_pos: dist_pos[i],
                dist_neg: dist_neg[i],
            };
            (steps, closeness[i], ranks[i])
        }
        Method::Wp => {
            let WpTrace {
                norm_weights,
                scores,
                preferences,
                ranks,
                ..
            } = rank_wp(m, &prepared.weights, &prepared.orientations)?;
            let factors = m.rows[i]
                .iter()
                .zip(&norm_weights)
                .map(|(&x, &w)| if w >= 0.0 { x.max(EPSILON) } else { x }.powf(w))
                .collect();
            let steps = Steps::Wp {
                signed_weights: norm_weights,
                factors,
                score: scores[i],
            };
            (steps, preferences[i], ranks[i])
        }
    };
    Ok(Explanation {
        scheme: prepared.scheme.clone(),
        method,
        id: id.to_string(),
        criteria: prepared.criteria.clone(),
        raw: alt.cells.iter().map(ToString::to_string).collect(),
        crisp: m.rows[i].clone(),
        weights: prepared.weights.clone(),
        orientations: prepared.orientations.clone(),
        steps,
        preference,
        rank,
        of: m.n_alternatives(),
    })
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alternative {} ({}, scheme {})", self.id, self.method, self.scheme)?;
        match &self.steps {
            Steps::Topsis {
                normalized,
                weighted,
                ideal_pos,
                ideal_neg,
                dist_pos,
                dist_neg,
            } => {
                writeln!(
                    f,
                    "{:<10} {:>8} {:>10} {:>8} {:>10} {:>10} {:>10} {:>10}",
                    "criterion", "raw", "crisp", "weight", "normalized", "weighted", "ideal+", "ideal-"
                )?;
                for j in 0..self.criteria.len() {
                    writeln!(
                        f,
                        "{:<10} {:>8} {:>10.6} {:>8.4} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
                        format!("{} ({})", self.criteria[j], short(self.orientations[j])),
                        self.raw[j],
                        self.crisp[j],
                        self.weights[j],
                        normalized[j],
                        weighted[j],
                        ideal_pos[j],
                        ideal_neg[j],
                    )?;
                }
                writeln!(f, "D+ = {dist_pos:.6}")?;
                writeln!(f, "D- = {dist_neg:.6}")?;
            }
            Steps::Wp {
                signed_weights,
                factors,
                score,
            } => {
                writeln!(
                    f,
                    "{:<10} {:>8} {:>10} {:>10} {:>12}",
                    "criterion", "raw", "crisp", "exponent", "factor"
                )?;
                for j in 0..self.criteria.len() {
                    writeln!(
                        f,
                        "{:<10} {:>8} {:>10.6} {:>10.6} {:>12.6}",
                        format!("{} ({})", self.criteria[j], short(self.orientations[j])),
                        self.raw[j],
                        self.crisp[j],
                        signed_weights[j],
                        factors[j],
                    )?;
                }
                writeln!(f, "S = {score:.6e}")?;
            }
        }
        write!(f, "V = {:.6}, rank {} of {}", self.preference, self.rank, self.of)
    }
}

fn short(o: Orientation) -> &'static str {
    match o {
        Orientation::Benefit => "+",
        Orientation::Cost => "-",
    }
}

//! Schemes, alternatives and the decision matrix, plus the lowering of
//! linguistic cells to crisp values that both ranking engines consume.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{LinguisticScale, LinguisticTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// More is better.
    Benefit,
    /// Less is better.
    Cost,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Benefit => Orientation::Cost,
            Orientation::Cost => Orientation::Benefit,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Benefit => "benefit",
            Orientation::Cost => "cost",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataKind {
    Crisp,
    Linguistic { scale: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: String,
    pub description: String,
    pub kind: DataKind,
    pub orientation: Orientation,
    pub weight_term: LinguisticTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = ">=", alias = "≥")]
    AtLeast,
    #[serde(rename = "<=", alias = "≤")]
    AtMost,
    #[serde(rename = "=")]
    Equal,
}

/// Declarative screening rule applied to the lowered value of one criterion
/// before ranking, e.g. "C1 >= 3.0".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EligibilityRule {
    pub criterion: String,
    pub op: Comparison,
    pub value: f64,
}

impl EligibilityRule {
    pub fn admits(&self, x: f64) -> bool {
        match self.op {
            Comparison::AtLeast => x >= self.value,
            Comparison::AtMost => x <= self.value,
            Comparison::Equal => x == self.value,
        }
    }
}

/// A configured decision problem: ordered criteria, the scales they draw
/// terms from, and optional per-criterion term aliases and eligibility rules.
///
/// Built through [`crate::io::parse_scheme`], which resolves every reference.
#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    pub(crate) name: String,
    pub(crate) weight_scale: String,
    pub(crate) scales: Vec<LinguisticScale>,
    pub(crate) criteria: Vec<Criterion>,
    pub(crate) aliases: BTreeMap<String, BTreeMap<String, String>>,
    pub(crate) eligibility: Vec<EligibilityRule>,
}

impl Scheme {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight_scale(&self) -> &LinguisticScale {
        self.scale(&self.weight_scale)
            .expect("weight scale resolved at construction")
    }

    pub fn scales(&self) -> &[LinguisticScale] {
        &self.scales
    }

    pub fn scale(&self, name: &str) -> Option<&LinguisticScale> {
        self.scales.iter().find(|s| s.name() == name)
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn criterion_index(&self, id: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c.id == id)
    }

    pub fn criterion_ids(&self) -> Vec<String> {
        self.criteria.iter().map(|c| c.id.clone()).collect()
    }

    pub fn aliases(&self) -> &BTreeMap<String, BTreeMap<String, String>> {
        &self.aliases
    }

    pub fn eligibility(&self) -> &[EligibilityRule] {
        &self.eligibility
    }

    pub fn orientations(&self) -> Vec<Orientation> {
        self.criteria.iter().map(|c| c.orientation).collect()
    }

    /// Resolves a linguistic cell of criterion `index`, applying the
    /// criterion's alias map first. Returns the term and the code it was
    /// reached through.
    pub fn resolve_term(&self, index: usize, code: &str) -> Result<&LinguisticTerm> {
        let criterion = &self.criteria[index];
        let DataKind::Linguistic { scale } = &criterion.kind else {
            return Err(Error::UnknownTerm {
                code: code.to_string(),
                scale: format!("<crisp criterion {}>", criterion.id),
            });
        };
        let scale = self.scale(scale).expect("scale resolved at construction");
        let code = self
            .aliases
            .get(&criterion.id)
            .and_then(|m| m.get(code))
            .map_or(code, String::as_str);
        scale.lookup(code)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Crisp(f64),
    Term(String),
}

impl Cell {
    /// Numbers become crisp cells; anything else is kept as a term code.
    pub fn parse(raw: &str) -> Cell {
        match raw.trim().parse::<f64>() {
            Ok(x) => Cell::Crisp(x),
            Err(_) => Cell::Term(raw.trim().to_string()),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Crisp(x) => write!(f, "{x}"),
            Cell::Term(code) => f.write_str(code),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alternative {
    pub id: String,
    pub cells: Vec<Cell>,
    /// 1-based source line, when the alternative came from a file.
    pub line: Option<u64>,
}

impl Alternative {
    pub fn new(id: impl Into<String>, cells: Vec<Cell>) -> Self {
        Alternative {
            id: id.into(),
            cells,
            line: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrispMatrix {
    pub ids: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CrispMatrix {
    pub fn new(ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if ids.len() != rows.len() {
            return Err(Error::DimensionMismatch {
                expected: ids.len(),
                got: rows.len(),
            });
        }
        let width = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    got: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFiniteValue { row: i, col: j });
            }
        }
        Ok(CrispMatrix { ids, rows })
    }

    pub fn n_alternatives(&self) -> usize {
        self.rows.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn row_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueKind {
    ArityMismatch,
    KindMismatch,
    UnknownTerm,
    DuplicateId,
    EmptyId,
    NonFiniteValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationIssue {
    pub kind: IssueKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<u64>,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        let kind = serde_json::to_value(self.kind).expect("plain enum");
        write!(f, "{}", kind.as_str().unwrap_or_default())?;
        match (&self.alternative, &self.criterion) {
            (Some(a), Some(c)) => write!(f, " [{a}/{c}]")?,
            (Some(a), None) => write!(f, " [{a}]")?,
            _ => {}
        }
        write!(f, ": {}", self.message)
    }
}

/// Collects every problem in the dataset instead of stopping at the first.
pub fn validate_dataset(scheme: &Scheme, alts: &[Alternative]) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    let mut seen = HashSet::new();
    let n = scheme.criteria.len();
    for alt in alts {
        let issue = |kind, criterion: Option<&str>, message: String| ValidationIssue {
            kind,
            alternative: Some(alt.id.clone()),
            criterion: criterion.map(str::to_string),
            line: alt.line,
            message,
        };
        if alt.id.is_empty() {
            issues.push(issue(IssueKind::EmptyId, None, "alternative id is empty".into()));
        } else if !seen.insert(alt.id.as_str()) {
            issues.push(issue(
                IssueKind::DuplicateId,
                None,
                format!("duplicate alternative id {:?}", alt.id),
            ));
        }
        if alt.cells.len() != n {
            issues.push(issue(
                IssueKind::ArityMismatch,
                None,
                format!("expected {n} cells, found {}", alt.cells.len()),
            ));
        }
        for (j, (criterion, cell)) in scheme.criteria.iter().zip(&alt.cells).enumerate() {
            let cid = Some(criterion.id.as_str());
            match (&criterion.kind, cell) {
                (DataKind::Crisp, Cell::Crisp(x)) if !x.is_finite() => {
                    issues.push(issue(
                        IssueKind::NonFiniteValue,
                        cid,
                        format!("value {x} is not finite"),
                    ));
                }
                (DataKind::Crisp, Cell::Crisp(_)) => {}
                (DataKind::Crisp, Cell::Term(code)) => issues.push(issue(
                    IssueKind::KindMismatch,
                    cid,
                    format!("expected a number, found {code:?}"),
                )),
                (DataKind::Linguistic { scale }, Cell::Crisp(x)) => issues.push(issue(
                    IssueKind::KindMismatch,
                    cid,
                    format!("expected a term of scale {scale:?}, found number {x}"),
                )),
                (DataKind::Linguistic { .. }, Cell::Term(code)) => {
                    if let Err(err) = scheme.resolve_term(j, code) {
                        issues.push(issue(IssueKind::UnknownTerm, cid, err.to_string()));
                    }
                }
            }
        }
    }
    issues
}

pub fn lower_to_crisp(scheme: &Scheme, alts: &[Alternative]) -> Result<CrispMatrix> {
    let issues = validate_dataset(scheme, alts);
    if !issues.is_empty() {
        return Err(Error::InvalidDataset(issues));
    }
    let rows = alts
        .iter()
        .map(|alt| {
            alt.cells
                .iter()
                .enumerate()
                .map(|(j, cell)| match cell {
                    Cell::Crisp(x) => Ok(*x),
                    Cell::Term(code) => Ok(scheme.resolve_term(j, code)?.value()),
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CrispMatrix::new(alts.iter().map(|a| a.id.clone()).collect(), rows)
}

/// Defuzzified criterion weights in criterion order, not normalized.
pub fn weight_vector(scheme: &Scheme) -> Vec<f64> {
    scheme.criteria.iter().map(|c| c.weight_term.value()).collect()
}

/// Drops rows failing any of the scheme's eligibility rules. Returns the
/// screened matrix and the ids that were removed, in input order.
pub fn apply_eligibility(scheme: &Scheme, matrix: CrispMatrix) -> (CrispMatrix, Vec<String>) {
    if scheme.eligibility.is_empty() {
        return (matrix, Vec::new());
    }
    let rules: Vec<(usize, &EligibilityRule)> = scheme
        .eligibility
        .iter()
        .map(|r| {
            (
                scheme
                    .criterion_index(&r.criterion)
                    .expect("rule resolved at construction"),
                r,
            )
        })
        .collect();
    let mut kept = CrispMatrix {
        ids: Vec::new(),
        rows: Vec::new(),
    };
    let mut excluded = Vec::new();
    for (id, row) in matrix.ids.into_iter().zip(matrix.rows) {
        if rules.iter().all(|(j, rule)| rule.admits(row[*j])) {
            kept.ids.push(id);
            kept.rows.push(row);
        } else {
            excluded.push(id);
        }
    }
    (kept, excluded)
}

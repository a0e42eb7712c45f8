//! Weighted Product: each alternative scores `S_i = prod_j x_ij^w_j` with
//! weights normalized to unit total magnitude and negated on cost criteria;
//! the relative preference is `V_i = S_i / sum_k S_k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CrispMatrix, Orientation};
use crate::rank::assign_ranks;

/// Floor applied to values in `[0, EPSILON)` on benefit criteria. A zero
/// there would zero the whole product.
pub const EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WpTrace {
    pub norm_weights: Vec<f64>,
    pub scores: Vec<f64>,
    pub preferences: Vec<f64>,
    pub ranks: Vec<usize>,
    /// `(row, column)` cells raised to `EPSILON` before scoring.
    pub clamped: Vec<(usize, usize)>,
}

/// Divides by the total so magnitudes sum to 1, then negates cost weights.
pub fn normalize_weights(raw: &[f64], orientations: &[Orientation]) -> Result<Vec<f64>> {
    if raw.len() != orientations.len() {
        return Err(Error::DimensionMismatch {
            expected: orientations.len(),
            got: raw.len(),
        });
    }
    if let Some((index, &value)) = raw.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::NonPositiveWeight { index, value });
    }
    let total: f64 = raw.iter().sum();
    Ok(raw
        .iter()
        .zip(orientations)
        .map(|(w, o)| match o {
            Orientation::Benefit => w / total,
            Orientation::Cost => -(w / total),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scores {
    pub values: Vec<f64>,
    pub clamped: Vec<(usize, usize)>,
}

/// Products are accumulated as sums of logarithms so that many small
/// factors do not underflow before the final exponentiation.
pub fn wp_scores(rows: &[Vec<f64>], signed_weights: &[f64]) -> Result<Scores> {
    let mut clamped = Vec::new();
    let mut values = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != signed_weights.len() {
            return Err(Error::DimensionMismatch {
                expected: signed_weights.len(),
                got: row.len(),
            });
        }
        let mut log_score = 0.0;
        for (j, (&x, &w)) in row.iter().zip(signed_weights).enumerate() {
            if w < 0.0 && x == 0.0 {
                return Err(Error::ZeroOnCostCriterion {
                    alternative: i,
                    criterion: j,
                });
            }
            if x.is_nan() || x < 0.0 {
                return Err(Error::NonFiniteScore { alternative: i });
            }
            let x = if w >= 0.0 && x < EPSILON {
                clamped.push((i, j));
                EPSILON
            } else {
                x
            };
            log_score += w * x.ln();
        }
        let score = log_score.exp();
        if !(score.is_finite() && score > 0.0) {
            return Err(Error::NonFiniteScore { alternative: i });
        }
        values.push(score);
    }
    Ok(Scores { values, clamped })
}

pub fn wp_preferences(scores: &[f64]) -> Vec<f64> {
    let total: f64 = scores.iter().sum();
    scores.iter().map(|s| s / total).collect()
}

pub fn rank_wp(matrix: &CrispMatrix, weights: &[f64], orientations: &[Orientation]) -> Result<WpTrace> {
    if matrix.n_alternatives() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let n = matrix.n_criteria();
    if orientations.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: orientations.len(),
        });
    }
    let norm_weights = normalize_weights(weights, orientations)?;
    let Scores {
        values: scores,
        clamped,
    } = wp_scores(&matrix.rows, &norm_weights)?;
    let total: f64 = scores.iter().sum();
    if !total.is_finite() {
        return Err(Error::NonFiniteScore {
            alternative: scores.len() - 1,
        });
    }
    let preferences = wp_preferences(&scores);
    let ranks = assign_ranks(&preferences, &matrix.ids);
    Ok(WpTrace {
        norm_weights,
        scores,
        preferences,
        ranks,
        clamped,
    })
}

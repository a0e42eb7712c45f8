//! TOPSIS: vector-normalize each criterion column, weight it, locate the
//! positive and negative ideal points and score each alternative by its
//! relative closeness to them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CrispMatrix, Orientation};
use crate::rank::assign_ranks;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopsisTrace {
    pub normalized: Vec<Vec<f64>>,
    pub weighted: Vec<Vec<f64>>,
    pub ideal_pos: Vec<f64>,
    pub ideal_neg: Vec<f64>,
    pub dist_pos: Vec<f64>,
    pub dist_neg: Vec<f64>,
    pub closeness: Vec<f64>,
    pub ranks: Vec<usize>,
    /// Rows at distance zero from both ideal points; their closeness is 0.5.
    pub degenerate: Vec<usize>,
}

/// `r_ij = x_ij / sqrt(sum_i x_ij^2)`. All-zero columns stay zero.
pub fn normalize(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = rows.first().map_or(0, Vec::len);
    let norms: Vec<f64> = (0..n)
        .map(|j| rows.iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt())
        .collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(&norms)
                .map(|(&x, &norm)| if norm == 0.0 { 0.0 } else { x / norm })
                .collect()
        })
        .collect()
}

/// `y_ij = w_j * r_ij`.
pub fn weigh(normalized: &[Vec<f64>], weights: &[f64]) -> Result<Vec<Vec<f64>>> {
    normalized
        .iter()
        .map(|row| {
            if row.len() != weights.len() {
                return Err(Error::DimensionMismatch {
                    expected: weights.len(),
                    got: row.len(),
                });
            }
            Ok(row.iter().zip(weights).map(|(r, w)| r * w).collect())
        })
        .collect()
}

/// Column-wise best and worst weighted values: max/min for benefit
/// criteria, min/max for cost criteria.
pub fn ideal_solutions(weighted: &[Vec<f64>], orientations: &[Orientation]) -> (Vec<f64>, Vec<f64>) {
    orientations
        .iter()
        .enumerate()
        .map(|(j, orientation)| {
            let column = weighted.iter().map(|r| r[j]);
            let hi = column.clone().fold(f64::NEG_INFINITY, f64::max);
            let lo = column.fold(f64::INFINITY, f64::min);
            match orientation {
                Orientation::Benefit => (hi, lo),
                Orientation::Cost => (lo, hi),
            }
        })
        .unzip()
}

/// Euclidean distances of every row from the two ideal points.
pub fn separations(weighted: &[Vec<f64>], ideal_pos: &[f64], ideal_neg: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let dist =
        |row: &[f64], point: &[f64]| -> f64 { row.iter().zip(point).map(|(y, p)| (p - y).powi(2)).sum::<f64>().sqrt() };
    weighted
        .iter()
        .map(|row| (dist(row, ideal_pos), dist(row, ideal_neg)))
        .unzip()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Closeness {
    pub values: Vec<f64>,
    pub degenerate: Vec<usize>,
}

/// `V_i = D_i- / (D_i- + D_i+)`, with `V_i = 0.5` reported as degenerate
/// when both distances are zero.
pub fn closeness(dist_pos: &[f64], dist_neg: &[f64]) -> Closeness {
    let mut degenerate = Vec::new();
    let values = dist_pos
        .iter()
        .zip(dist_neg)
        .enumerate()
        .map(|(i, (&dp, &dn))| {
            let total = dp + dn;
            if total == 0.0 {
                degenerate.push(i);
                0.5
            } else {
                dn / total
            }
        })
        .collect();
    Closeness { values, degenerate }
}

pub fn rank_topsis(matrix: &CrispMatrix, weights: &[f64], orientations: &[Orientation]) -> Result<TopsisTrace> {
    if matrix.n_alternatives() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let n = matrix.n_criteria();
    for len in [weights.len(), orientations.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, got: len });
        }
    }
    if let Some((index, &value)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::InvalidWeight { index, value });
    }

    let normalized = normalize(&matrix.rows);
    let weighted = weigh(&normalized, weights)?;
    let (ideal_pos, ideal_neg) = ideal_solutions(&weighted, orientations);
    let (dist_pos, dist_neg) = separations(&weighted, &ideal_pos, &ideal_neg);
    let Closeness { values, degenerate } = closeness(&dist_pos, &dist_neg);
    let ranks = assign_ranks(&values, &matrix.ids);
    Ok(TopsisTrace {
        normalized,
        weighted,
        ideal_pos,
        ideal_neg,
        dist_pos,
        dist_neg,
        closeness: values,
        ranks,
        degenerate,
    })
}

use std::cmp::Ordering;

/// 1-based ranks by descending value; equal values are ordered by ascending
/// id so the result is a permutation of `1..=n` independent of input order.
pub fn assign_ranks(values: &[f64], ids: &[String]) -> Vec<usize> {
    debug_assert_eq!(values.len(), ids.len());
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&p, &q| compare(values[q], values[p]).then_with(|| ids[p].cmp(&ids[q])));
    let mut ranks = vec![0; values.len()];
    for (position, &i) in order.iter().enumerate() {
        ranks[i] = position + 1;
    }
    ranks
}

fn compare(x: f64, y: f64) -> Ordering {
    // total_cmp would separate -0.0 from 0.0
    x.partial_cmp(&y).unwrap_or_else(|| x.total_cmp(&y))
}

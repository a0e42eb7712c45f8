//! Straight-loop reference versions of both ranking pipelines. Nothing here
//! touches the library, so agreement between the two is meaningful.

#![allow(clippy::needless_range_loop)]

pub fn topsis(x: &[Vec<f64>], w: &[f64], benefit: &[bool]) -> Vec<f64> {
    let m = x.len();
    let n = w.len();
    let mut y = vec![vec![0.0; n]; m];
    for j in 0..n {
        let mut sum_sq = 0.0;
        for i in 0..m {
            sum_sq += x[i][j] * x[i][j];
        }
        let norm = sum_sq.sqrt();
        for i in 0..m {
            y[i][j] = if norm > 0.0 { w[j] * x[i][j] / norm } else { 0.0 };
        }
    }
    let mut best = vec![0.0; n];
    let mut worst = vec![0.0; n];
    for j in 0..n {
        let mut hi = y[0][j];
        let mut lo = y[0][j];
        for i in 1..m {
            if y[i][j] > hi {
                hi = y[i][j];
            }
            if y[i][j] < lo {
                lo = y[i][j];
            }
        }
        if benefit[j] {
            best[j] = hi;
            worst[j] = lo;
        } else {
            best[j] = lo;
            worst[j] = hi;
        }
    }
    let mut v = vec![0.0; m];
    for i in 0..m {
        let mut dp = 0.0;
        let mut dn = 0.0;
        for j in 0..n {
            dp += (best[j] - y[i][j]) * (best[j] - y[i][j]);
            dn += (y[i][j] - worst[j]) * (y[i][j] - worst[j]);
        }
        let (dp, dn) = (dp.sqrt(), dn.sqrt());
        v[i] = if dp + dn == 0.0 { 0.5 } else { dn / (dp + dn) };
    }
    v
}

pub fn wp(x: &[Vec<f64>], w: &[f64], benefit: &[bool]) -> Vec<f64> {
    let m = x.len();
    let n = w.len();
    let mut total_w = 0.0;
    for j in 0..n {
        total_w += w[j];
    }
    let mut s = vec![1.0; m];
    for i in 0..m {
        for j in 0..n {
            let exponent = if benefit[j] { w[j] / total_w } else { -w[j] / total_w };
            s[i] *= x[i][j].powf(exponent);
        }
    }
    let mut total_s = 0.0;
    for i in 0..m {
        total_s += s[i];
    }
    let mut v = vec![0.0; m];
    for i in 0..m {
        v[i] = s[i] / total_s;
    }
    v
}

/// Rank = 1 + number of alternatives strictly ahead (higher value, or equal
/// value with a smaller id).
pub fn ranks(v: &[f64], ids: &[String]) -> Vec<usize> {
    let mut r = vec![1; v.len()];
    for i in 0..v.len() {
        for k in 0..v.len() {
            if v[k] > v[i] || (v[k] == v[i] && ids[k] < ids[i]) {
                r[i] += 1;
            }
        }
    }
    r
}

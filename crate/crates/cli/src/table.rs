//! Fixed-width text rendering of result documents, 3 decimals throughout.

use std::fmt::Write;

use fmadm_core::evaluate::Method;
use fmadm_core::io::{RankedAlternative, ResultDocument};

fn by_rank(doc: &ResultDocument) -> Vec<&RankedAlternative> {
    let mut rows: Vec<_> = doc.alternatives.iter().collect();
    rows.sort_by_key(|a| a.rank);
    rows
}

fn fmt_score(s: f64) -> String {
    if s >= 1e-3 {
        format!("{s:.3}")
    } else {
        format!("{s:.3e}")
    }
}

fn header(method: Method) -> String {
    match method {
        Method::Topsis => format!("{:<8} {:>7} {:>7} {:>7}", "id", "D+", "D-", "V"),
        Method::Wp => format!("{:<8} {:>10} {:>7}", "id", "S", "V"),
    }
}

fn cells(method: Method, alt: &RankedAlternative) -> String {
    match method {
        Method::Topsis => format!(
            "{:<8} {:>7.3} {:>7.3} {:>7.3}",
            alt.id,
            alt.dist_pos.unwrap_or(f64::NAN),
            alt.dist_neg.unwrap_or(f64::NAN),
            alt.preference
        ),
        Method::Wp => format!(
            "{:<8} {:>10} {:>7.3}",
            alt.id,
            fmt_score(alt.score.unwrap_or(f64::NAN)),
            alt.preference
        ),
    }
}

/// One column block per document, rows aligned by rank.
pub fn render(docs: &[ResultDocument]) -> String {
    let mut out = String::new();
    let Some(first) = docs.first() else {
        return out;
    };
    let titles: Vec<String> = docs.iter().map(|d| d.method.to_string().to_uppercase()).collect();
    let _ = writeln!(out, "scheme: {}  method: {}", first.scheme, titles.join(" + "));
    let _ = write!(out, "{:>4}", "rank");
    for doc in docs {
        let _ = write!(out, "  | {}", header(doc.method));
    }
    out.push('\n');
    let columns: Vec<Vec<&RankedAlternative>> = docs.iter().map(by_rank).collect();
    for r in 0..columns[0].len() {
        let _ = write!(out, "{:>4}", r + 1);
        for (doc, col) in docs.iter().zip(&columns) {
            let _ = write!(out, "  | {}", cells(doc.method, col[r]));
        }
        out.push('\n');
    }
    if docs.len() > 1 {
        let tops: Vec<&str> = columns.iter().map(|c| c[0].id.as_str()).collect();
        if tops.iter().all(|t| *t == tops[0]) {
            let _ = writeln!(out, "rank 1 agrees across methods: {}", tops[0]);
        } else {
            let _ = writeln!(out, "rank 1 differs: {}", tops.join(" vs "));
        }
    }
    if !first.excluded.is_empty() {
        let _ = writeln!(out, "excluded by eligibility: {}", first.excluded.join(", "));
    }
    for doc in docs {
        for note in &doc.notes {
            let _ = writeln!(out, "note ({}): {note}", doc.method);
        }
    }
    out
}

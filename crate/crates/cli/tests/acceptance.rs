//! Exit criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p fmadm-cli --test acceptance -- --nocapture --test-threads=1`.

mod oracle;

use std::path::PathBuf;
use std::process::Command;

use fmadm_core::bundled;
use fmadm_core::evaluate::{evaluate, Method, Overrides};
use fmadm_core::model::{CrispMatrix, Orientation, Scheme};
use fmadm_core::topsis::{closeness, normalize, rank_topsis};
use fmadm_core::wp::{rank_wp, wp_preferences};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

fn report(id: &str, name: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    eprintln!("[{status}] {id} {name}");
    for f in failures {
        eprintln!("       {f}");
    }
}

fn finish(id: &str, name: &str, failures: Vec<String>) {
    report(id, name, &failures);
    assert!(failures.is_empty(), "{id} failed with {} problem(s)", failures.len());
}

// (D+, D-, printed V) per alternative MH1..MH15: academic then non-academic.
const PUBLISHED_CLOSENESS: [[(f64, f64, f64); 2]; 15] = [
    [(0.395, 0.016, 0.039), (0.668, 0.593, 0.472)],
    [(0.182, 0.219, 0.547), (0.664, 0.599, 0.474)],
    [(0.179, 0.222, 0.552), (0.541, 0.639, 0.542)],
    [(0.049, 0.373, 0.883), (0.581, 0.464, 0.444)],
    [(0.331, 0.162, 0.328), (0.699, 0.374, 0.348)],
    [(0.074, 0.359, 0.829), (0.613, 0.521, 0.459)],
    [(0.198, 0.119, 0.501), (0.502, 0.555, 0.525)],
    [(0.229, 0.177, 0.436), (0.385, 0.753, 0.661)],
    [(0.346, 0.111, 0.243), (0.450, 0.646, 0.589)],
    [(0.039, 0.376, 0.907), (0.567, 0.632, 0.572)],
    [(0.045, 0.374, 0.893), (0.348, 0.661, 0.632)],
    [(0.039, 0.375, 0.904), (0.482, 0.652, 0.575)],
    [(0.059, 0.391, 0.868), (0.658, 0.616, 0.484)],
    [(0.338, 0.147, 0.304), (0.567, 0.499, 0.468)],
    [(0.196, 0.207, 0.514), (0.619, 0.495, 0.444)],
];

#[test]
fn ac1_closeness_reproduces_printed_topsis_values() {
    let mut failures = Vec::new();
    for (kind, col) in [("academic", 0), ("non-academic", 1)] {
        let dp: Vec<f64> = PUBLISHED_CLOSENESS.iter().map(|r| r[col].0).collect();
        let dn: Vec<f64> = PUBLISHED_CLOSENESS.iter().map(|r| r[col].1).collect();
        let v = closeness(&dp, &dn).values;
        for (i, row) in PUBLISHED_CLOSENESS.iter().enumerate() {
            let printed = row[col].2;
            if (v[i] - printed).abs() > 0.002 {
                failures.push(format!(
                    "{kind} MH{}: {:.3}/({:.3}+{:.3}) = {:.4}, printed {printed}",
                    i + 1,
                    dn[i],
                    dn[i],
                    dp[i],
                    v[i]
                ));
            }
        }
    }
    finish(
        "AC1",
        "closeness vs printed (D+, D-, V) triples, 30 rows, tol 0.002",
        failures,
    );
}

#[test]
fn ac2_wp_preferences_reproduce_printed_values() {
    let s = [
        0.15, 0.07, 0.08, 0.06, 0.07, 0.05, 0.06, 0.04, 0.26, 0.43, 0.07, 0.07, 0.11, 0.33, 0.06,
    ];
    let printed = [
        0.07, 0.03, 0.04, 0.03, 0.03, 0.02, 0.03, 0.02, 0.13, 0.22, 0.03, 0.03, 0.05, 0.17, 0.03,
    ];
    let v = wp_preferences(&s);
    let failures = v
        .iter()
        .zip(printed)
        .enumerate()
        .filter(|(_, (got, want))| (*got - want).abs() > 0.01)
        .map(|(i, (got, want))| format!("MH{}: {got:.4} vs printed {want}", i + 1))
        .collect();
    finish("AC2", "S/sum(S) vs printed academic WP column, tol 0.01", failures);
}

fn ranking(scheme: &Scheme, method: Method) -> Vec<String> {
    let doc = evaluate(scheme, &bundled::table3(scheme), method, &Overrides::new()).unwrap();
    let mut alts = doc.alternatives;
    alts.sort_by_key(|a| a.rank);
    alts.into_iter().map(|a| a.id).collect()
}

fn ids(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[test]
fn ac3_headline_rank_one() {
    let academic = bundled::academic();
    let non_academic = bundled::non_academic();
    let runs = [
        ("academic", "topsis", ranking(&academic, Method::Topsis), "MH10"),
        ("academic", "wp", ranking(&academic, Method::Wp), "MH10"),
        ("non-academic", "topsis", ranking(&non_academic, Method::Topsis), "MH8"),
        ("non-academic", "wp", ranking(&non_academic, Method::Wp), "MH8"),
    ];
    let mut failures = Vec::new();
    for (scheme, method, order, expected) in &runs {
        eprintln!("       {scheme:<12} {method:<6} {}", order.join(" "));
        if order[0] != *expected {
            failures.push(format!(
                "{scheme}/{method}: rank 1 is {}, expected {expected}",
                order[0]
            ));
        }
    }
    let mut top3 = runs[3].2[..3].to_vec();
    top3.sort();
    if top3 != ids(&["MH14", "MH4", "MH8"]) {
        failures.push(format!(
            "non-academic/wp top 3 is {top3:?}, expected {{MH8, MH4, MH14}}"
        ));
    }
    finish(
        "AC3",
        "rank 1 MH10 (academic) / MH8 (non-academic) for both methods",
        failures,
    );
}

/// Full orders frozen from an independent script run over the same inputs
/// (centroid defuzzification, bundled orientations, C9 alias B -> G).
#[test]
fn ac3_golden_full_orders() {
    let golden = [
        (
            bundled::academic(),
            Method::Topsis,
            "MH1 MH9 MH8 MH10 MH14 MH15 MH7 MH3 MH2 MH6 MH5 MH12 MH11 MH4 MH13",
        ),
        (
            bundled::academic(),
            Method::Wp,
            "MH1 MH10 MH9 MH14 MH15 MH7 MH8 MH3 MH2 MH6 MH5 MH12 MH11 MH4 MH13",
        ),
        (
            bundled::non_academic(),
            Method::Topsis,
            "MH8 MH11 MH9 MH12 MH3 MH10 MH7 MH1 MH2 MH13 MH6 MH14 MH15 MH4 MH5",
        ),
        (
            bundled::non_academic(),
            Method::Wp,
            "MH11 MH8 MH9 MH3 MH7 MH14 MH10 MH4 MH1 MH12 MH2 MH15 MH6 MH13 MH5",
        ),
    ];
    let failures = golden
        .iter()
        .filter_map(|(scheme, method, expected)| {
            let got = ranking(scheme, *method).join(" ");
            (got != *expected).then(|| format!("{}/{method}: {got}", scheme.name()))
        })
        .collect();
    finish(
        "AC3g",
        "full orders match the independently computed golden record",
        failures,
    );
}

// ---------------------------------------------------------------------------

const B: Orientation = Orientation::Benefit;
const C: Orientation = Orientation::Cost;

type Problem = (Vec<Vec<f64>>, Vec<f64>, Vec<Orientation>);

fn problem(rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> impl Strategy<Value = Problem> + Clone {
    (rows, cols).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(0.01..100.0f64, n), m),
            prop::collection::vec(0.05..1.0f64, n),
            prop::collection::vec(prop_oneof![Just(B), Just(C)], n),
        )
    })
}

fn matrix(rows: Vec<Vec<f64>>) -> CrispMatrix {
    let ids = (0..rows.len()).map(|i| format!("A{i:02}")).collect();
    CrispMatrix::new(ids, rows).unwrap()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn property<S: Strategy>(
    failures: &mut Vec<String>,
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    const CASES: u32 = 256;
    match runner(CASES).run(&strategy, test) {
        Ok(()) => eprintln!("       ok   {name} ({CASES} cases)"),
        Err(e) => {
            eprintln!("       FAIL {name}: {e}");
            failures.push(format!("{name}: {e}"));
        }
    }
}

/// Seeded shuffle of `0..n`.
fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut state = seed;
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        perm.swap(i, (state >> 33) as usize % (i + 1));
    }
    perm
}

#[test]
fn ac4_property_suites() {
    let mut failures = Vec::new();

    let with_zero_columns = problem(1..10, 1..6).prop_flat_map(|(rows, _, _)| {
        let n = rows[0].len();
        (Just(rows), prop::collection::vec(any::<bool>(), n))
    });
    property(
        &mut failures,
        "column norm = 1 +/- 1e-9",
        with_zero_columns,
        |(mut rows, zero)| {
            for row in rows.iter_mut() {
                for (x, z) in row.iter_mut().zip(&zero) {
                    if *z {
                        *x = 0.0;
                    }
                }
            }
            let r = normalize(&rows);
            for j in 0..zero.len() {
                let sum: f64 = r.iter().map(|row| row[j] * row[j]).sum();
                let expected = if zero[j] { 0.0 } else { 1.0 };
                prop_assert!((sum - expected).abs() <= 1e-9, "column {j}: {sum}");
            }
            Ok(())
        },
    );

    property(
        &mut failures,
        "TOPSIS V in [0, 1]",
        problem(1..10, 1..6),
        |(rows, w, o)| {
            let t = rank_topsis(&matrix(rows), &w, &o).unwrap();
            prop_assert!(t.closeness.iter().all(|v| (0.0..=1.0).contains(v)));
            Ok(())
        },
    );

    let scaled = (problem(2..10, 1..6), any::<prop::sample::Index>(), 1e-3..1e3f64);
    property(
        &mut failures,
        "TOPSIS ranks invariant under column scaling",
        scaled.clone(),
        |((rows, w, o), col, k)| {
            let j = col.index(w.len());
            let mut scaled = rows.clone();
            scaled.iter_mut().for_each(|r| r[j] *= k);
            let a = rank_topsis(&matrix(rows), &w, &o).unwrap();
            let b = rank_topsis(&matrix(scaled), &w, &o).unwrap();
            prop_assert_eq!(a.ranks, b.ranks);
            Ok(())
        },
    );

    property(
        &mut failures,
        "WP sum V = 1 +/- 1e-9",
        problem(1..10, 1..6),
        |(rows, w, o)| {
            let t = rank_wp(&matrix(rows), &w, &o).unwrap();
            prop_assert!((t.preferences.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
            Ok(())
        },
    );

    property(
        &mut failures,
        "WP V invariant under column scaling (1e-9)",
        scaled,
        |((rows, w, o), col, k)| {
            let j = col.index(w.len());
            let mut scaled = rows.clone();
            scaled.iter_mut().for_each(|r| r[j] *= k);
            let a = rank_wp(&matrix(rows), &w, &o).unwrap();
            let b = rank_wp(&matrix(scaled), &w, &o).unwrap();
            for (x, y) in a.preferences.iter().zip(&b.preferences) {
                prop_assert!((x - y).abs() <= 1e-9);
            }
            prop_assert_eq!(a.ranks, b.ranks);
            Ok(())
        },
    );

    property(
        &mut failures,
        "permutation equivariance (TOPSIS and WP)",
        (problem(1..10, 1..6), any::<u64>()),
        |((rows, w, o), seed)| {
            let m = matrix(rows);
            let perm = permutation(m.n_alternatives(), seed);
            let permuted = CrispMatrix::new(
                perm.iter().map(|&i| m.ids[i].clone()).collect(),
                perm.iter().map(|&i| m.rows[i].clone()).collect(),
            )
            .unwrap();
            let (t, tp) = (
                rank_topsis(&m, &w, &o).unwrap(),
                rank_topsis(&permuted, &w, &o).unwrap(),
            );
            let (p, pp) = (rank_wp(&m, &w, &o).unwrap(), rank_wp(&permuted, &w, &o).unwrap());
            for (k, &i) in perm.iter().enumerate() {
                prop_assert!((tp.closeness[k] - t.closeness[i]).abs() <= 1e-12);
                prop_assert!((pp.preferences[k] - p.preferences[i]).abs() <= 1e-12);
                prop_assert_eq!(tp.ranks[k], t.ranks[i]);
                prop_assert_eq!(pp.ranks[k], p.ranks[i]);
            }
            Ok(())
        },
    );

    let bump = (
        problem(2..10, 1..6),
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
        0.0..50.0f64,
    );
    property(
        &mut failures,
        "WP benefit-column monotonicity",
        bump,
        |((rows, w, mut o), row, col, delta)| {
            let (p, j) = (row.index(rows.len()), col.index(w.len()));
            o[j] = B;
            let mut raised = rows.clone();
            raised[p][j] += delta;
            let before = rank_wp(&matrix(rows), &w, &o).unwrap();
            let after = rank_wp(&matrix(raised), &w, &o).unwrap();
            prop_assert!(after.preferences[p] >= before.preferences[p] * (1.0 - 1e-12));
            Ok(())
        },
    );

    finish("AC4", "property suites, 256 randomized cases each", failures);
}

#[test]
fn ac5_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut cases = 0;
    let result = runner(100).run(&problem(5..6, 4..5), |(rows, w, o)| {
        let benefit: Vec<bool> = o.iter().map(|x| *x == B).collect();
        let m = matrix(rows.clone());
        let checks = [
            (
                "topsis",
                rank_topsis(&m, &w, &o).unwrap().closeness,
                rank_topsis(&m, &w, &o).unwrap().ranks,
                oracle::topsis(&rows, &w, &benefit),
            ),
            (
                "wp",
                rank_wp(&m, &w, &o).unwrap().preferences,
                rank_wp(&m, &w, &o).unwrap().ranks,
                oracle::wp(&rows, &w, &benefit),
            ),
        ];
        for (name, v, ranks, expected) in checks {
            for (got, want) in v.iter().zip(&expected) {
                prop_assert!((got - want).abs() <= 1e-9, "{name}: {got} vs {want}");
            }
            prop_assert_eq!(ranks, oracle::ranks(&expected, &m.ids), "{} ranks", name);
        }
        Ok(())
    });
    cases += 100;
    if let Err(e) = result {
        failures.push(e.to_string());
    }
    // The bundled data as well.
    for scheme in [bundled::academic(), bundled::non_academic()] {
        let prepared = fmadm_core::prepare(&scheme, &bundled::table3(&scheme)).unwrap();
        let benefit: Vec<bool> = prepared.orientations.iter().map(|x| *x == B).collect();
        let rows = &prepared.matrix.rows;
        let t = rank_topsis(&prepared.matrix, &prepared.weights, &prepared.orientations).unwrap();
        let p = rank_wp(&prepared.matrix, &prepared.weights, &prepared.orientations).unwrap();
        let ot = oracle::topsis(rows, &prepared.weights, &benefit);
        let ow = oracle::wp(rows, &prepared.weights, &benefit);
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9);
        if !close(&t.closeness, &ot) || t.ranks != oracle::ranks(&ot, &prepared.matrix.ids) {
            failures.push(format!("{} topsis differs from oracle", scheme.name()));
        }
        if !close(&p.preferences, &ow) || p.ranks != oracle::ranks(&ow, &prepared.matrix.ids) {
            failures.push(format!("{} wp differs from oracle", scheme.name()));
        }
        cases += 1;
    }
    eprintln!("       {cases} instances checked");
    finish(
        "AC5",
        "engines match naive-loop oracle (1e-9, exact ranks) on 100 random 5x4",
        failures,
    );
}

// ---------------------------------------------------------------------------

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn fmadm(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fmadm")).args(args).output().unwrap()
}

#[tokio::test]
async fn ac6_cli_determinism_and_parity() {
    use axum::body::Body;
    use axum::http::Request;
    use http_body_util::BodyExt;
    use tower::ServiceExt;

    let mut failures = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let store = fmadm_core::store::FileStore::open(dir.path().join("store")).unwrap();
    let app = fmadm_service::router(store);
    let table3 = data("table3.csv");
    let table3 = table3.to_str().unwrap();

    for (name, file, text) in [
        ("academic", "academic.json", bundled::ACADEMIC),
        ("non-academic", "non_academic.json", bundled::NON_ACADEMIC),
    ] {
        for (uri, body) in [
            (format!("/schemes/{name}"), text.to_string()),
            (format!("/schemes/{name}/datasets/table3"), bundled::TABLE3.to_string()),
        ] {
            let req = Request::put(uri).body(Body::from(body)).unwrap();
            assert!(app.clone().oneshot(req).await.unwrap().status().is_success());
        }
        let scheme = data(file);
        let scheme = scheme.to_str().unwrap();
        for method in ["topsis", "wp", "both"] {
            let args = [
                "rank",
                "--scheme",
                scheme,
                "--data",
                table3,
                "--method",
                method,
                "--format",
                "json",
                "--no-meta",
            ];
            let first = fmadm(&args);
            let second = fmadm(&args);
            if !first.status.success() || first.stdout != second.stdout {
                failures.push(format!("{name}/{method}: repeated runs differ or failed"));
            }
            let body = serde_json::json!({ "scheme": name, "dataset": "table3", "method": method }).to_string();
            let req = Request::post("/rank").body(Body::from(body)).unwrap();
            let resp = app.clone().oneshot(req).await.unwrap();
            let bytes = resp.into_body().collect().await.unwrap().to_bytes();
            if bytes.as_ref() != first.stdout.as_slice() {
                failures.push(format!("{name}/{method}: CLI output differs from POST /rank"));
            }
        }
    }

    let bad_term = dir.path().join("bad.csv");
    std::fs::write(&bad_term, "id,C1,C2,C3\nMH1,3.22,XX,7\n").unwrap();
    let bad_scheme = dir.path().join("bad.json");
    std::fs::write(&bad_scheme, "{ \"name\": ").unwrap();
    let academic = data("academic.json");
    let (academic, bad_term, bad_scheme) = (
        academic.to_str().unwrap(),
        bad_term.to_str().unwrap(),
        bad_scheme.to_str().unwrap(),
    );
    let cases: [(&str, Vec<&str>, i32); 8] = [
        (
            "valid data",
            vec!["validate", "--scheme", academic, "--data", table3],
            0,
        ),
        (
            "unknown term",
            vec!["validate", "--scheme", academic, "--data", bad_term],
            1,
        ),
        (
            "missing dataset",
            vec!["validate", "--scheme", academic, "--data", "/nonexistent.csv"],
            2,
        ),
        (
            "missing scheme",
            vec!["rank", "--scheme", "/nonexistent.json", "--data", table3],
            2,
        ),
        (
            "malformed scheme",
            vec!["rank", "--scheme", bad_scheme, "--data", table3],
            1,
        ),
        (
            "invalid dataset",
            vec!["rank", "--scheme", academic, "--data", bad_term],
            1,
        ),
        (
            "unknown alternative",
            vec!["explain", "--scheme", academic, "--data", table3, "--id", "MH99"],
            1,
        ),
        (
            "unwritable output",
            vec![
                "rank",
                "--scheme",
                academic,
                "--data",
                table3,
                "--out",
                "/nonexistent/dir/x.json",
            ],
            2,
        ),
    ];
    for (label, args, expected) in cases {
        let code = fmadm(&args).status.code();
        if code != Some(expected) {
            failures.push(format!("{label}: exit {code:?}, expected {expected}"));
        }
    }
    finish(
        "AC6",
        "CLI byte-determinism, CLI/service parity, exit-code contract",
        failures,
    );
}

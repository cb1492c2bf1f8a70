//! Acceptance suite: one test per criterion, in criterion order, each
//! printing a `criterion N ...: PASS/FAIL` line (visible with
//! `cargo test -p ari-cli --test acceptance -- --nocapture`).
//!
//! Criteria 4 and 8 are implemented exactly as specified and fail today:
//! exhaustive enumeration proves that the closed-form minimum is not the
//! true minimum for strongly unequal cluster counts (for example the 2 x 3
//! table [[0,1,1],[1,1,1]] on five objects reaches -4/11, below the closed
//! form -1/3; confirmed by direct pair enumeration and by independent
//! implementations). The other criteria pass.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use ari_core::bounds::{self, SumSquaresInstance};
use ari_core::oracle::{self, EnumerationSpec, OracleConfig};
use ari_core::{Clustering, ContingencyTable, ExactRatio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ratio(n: i64, d: i64) -> ExactRatio {
    ExactRatio::new(n, d).unwrap()
}

fn golden_rows() -> Vec<Vec<u64>> {
    vec![
        vec![1, 0, 1, 1, 0],
        vec![0, 1, 0, 0, 1],
        vec![1, 0, 1, 0, 1],
        vec![0, 1, 0, 1, 0],
        vec![1, 0, 1, 0, 1],
    ]
}

#[test]
fn criterion_1_golden_five_by_five_exact() {
    let rows = golden_rows();
    // Warm-up run so the timed run measures computation, not first-touch
    // allocator behaviour.
    for _ in 0..3 {
        let table = ContingencyTable::from_rows(&rows).unwrap();
        let _ = table.pair_counts().unwrap().adjusted_rand_index().unwrap();
    }
    let start = Instant::now();
    let table = ContingencyTable::from_rows(&rows).unwrap();
    let counts = table.pair_counts().unwrap();
    let ari = counts.adjusted_rand_index().unwrap();
    let elapsed = start.elapsed();

    assert_eq!((counts.a, counts.b, counts.c, counts.d), (0, 11, 11, 56));
    assert_eq!(ari, ratio(-242, 1474));
    assert!(
        elapsed < Duration::from_millis(1),
        "golden example took {elapsed:?}, budget 1 ms"
    );
    println!("criterion 1 (golden 5x5 example, exact pair counts and index): PASS [{elapsed:?}]");
}

#[test]
fn criterion_2_closed_form_fixtures() {
    assert_eq!(bounds::min_ari(5, 5).unwrap(), ratio(-5, 13));
    assert_eq!(bounds::min_ari(2, 2).unwrap(), ratio(-1, 2));
    for s in 2..=10 {
        assert_eq!(bounds::min_ari(1, s).unwrap(), ExactRatio::zero());
    }
    for r in 2..=50 {
        let expected = ExactRatio::new(-(r as i64), 3 * r as i64 - 2).unwrap();
        assert_eq!(bounds::min_ari(r, r).unwrap(), expected, "r = {r}");
        assert_eq!(bounds::min_ari_equal_sizes(r).unwrap(), expected, "r = {r}");
    }
    println!("criterion 2 (closed-form fixtures, all exact): PASS");
}

#[test]
fn criterion_3_witness_attainment() {
    let choose2 = |m: u128| m * (m - 1) / 2;
    for r in 2..=30u64 {
        for s in 2..=30u64 {
            let report = bounds::extremal_table(r, s).unwrap();
            let counts = report.witness_pair_counts;
            assert_eq!(
                counts.adjusted_rand_index().unwrap(),
                bounds::min_ari(r, s).unwrap(),
                "({r},{s})"
            );
            assert_eq!(
                (counts.a, counts.b, counts.c, counts.d),
                (
                    0,
                    choose2(s as u128),
                    choose2(r as u128),
                    (r as u128 - 1) * (s as u128 - 1)
                ),
                "({r},{s})"
            );
        }
    }
    println!("criterion 3 (witness attains the closed form for 2..=30, exact): PASS");
}

#[test]
fn criterion_4_oracle_equivalence() {
    let config = OracleConfig::default();
    let mut failures: Vec<String> = Vec::new();

    let full_start = Instant::now();
    for (r, s) in [(2usize, 2usize), (2, 3), (3, 3), (2, 4), (3, 4), (4, 4)] {
        let spec = EnumerationSpec::new(r, s, (r + s + 3) as u64, false).unwrap();
        let result = oracle::brute_force_min_ari(&spec, &config).unwrap();
        let closed = bounds::min_ari(r as u64, s as u64).unwrap();
        if result.best_ari != closed {
            failures.push(format!(
                "full ({r},{s}): enumerated minimum {} != closed form {}",
                result.best_ari, closed
            ));
        }
        if !result.n_at_optimum.contains(&((r + s - 1) as u64)) {
            failures.push(format!(
                "full ({r},{s}): optimum not located at n = {} (found at {:?})",
                r + s - 1,
                result.n_at_optimum
            ));
        }
    }
    let full_elapsed = full_start.elapsed();
    assert!(
        full_elapsed < Duration::from_secs(60),
        "full enumeration took {full_elapsed:?}, budget 60 s"
    );

    let zero_one_start = Instant::now();
    for r in 2..=5usize {
        for s in 2..=5usize {
            let spec = EnumerationSpec::new(r, s, (r * s) as u64, true).unwrap();
            let result = oracle::brute_force_min_ari(&spec, &config).unwrap();
            let closed = bounds::min_ari(r as u64, s as u64).unwrap();
            if result.best_ari != closed {
                failures.push(format!(
                    "zero-one ({r},{s}): enumerated minimum {} != closed form {}",
                    result.best_ari, closed
                ));
            }
        }
    }
    let zero_one_elapsed = zero_one_start.elapsed();
    assert!(
        zero_one_elapsed < Duration::from_secs(10),
        "zero-one enumeration took {zero_one_elapsed:?}, budget 10 s"
    );

    if failures.is_empty() {
        println!("criterion 4 (oracle reproduces the closed form): PASS [full {full_elapsed:?}, zero-one {zero_one_elapsed:?}]");
    } else {
        println!("criterion 4 (oracle reproduces the closed form): FAIL");
        for failure in &failures {
            println!("  {failure}");
        }
        panic!(
            "enumeration contradicts the closed form in {} case(s) (the closed form is not the true minimum for strongly unequal sizes):\n{}",
            failures.len(),
            failures.join("\n")
        );
    }
}

#[test]
fn criterion_5_normalization_fixtures() {
    let sal = bounds::normalized_ard_from_ari(&ratio(81, 100), 2, 2).unwrap();
    assert_eq!(sal.value, ratio(19, 150));
    assert_eq!(sal.value.decimal_places(2), "0.13");

    let gmm = bounds::normalized_ard_from_ari(&ratio(56, 100), 3, 2).unwrap();
    assert_eq!(gmm.value, ratio(33, 100));
    assert_eq!(gmm.value.decimal_places(2), "0.33");

    println!("criterion 5 (normalized distance fixtures 19/150 -> 0.13, 33/100 -> 0.33): PASS");
}

#[test]
fn criterion_6_asymptotic_accuracy() {
    for _ in 0..3 {
        let _ = bounds::approx_min_ari(100, 200).unwrap();
        let _ = bounds::min_ari(100, 200).unwrap();
    }
    let tolerance = ratio(2, 100);
    let start = Instant::now();
    for (r, s) in [(100u64, 100u64), (100, 200)] {
        let exact = bounds::min_ari(r, s).unwrap();
        let approx = bounds::approx_min_ari(r, s).unwrap();
        let relative_gap = (&approx / &exact - ExactRatio::one()).abs();
        assert!(
            relative_gap <= tolerance,
            "({r},{s}): relative gap {} exceeds 2%",
            relative_gap.decimal(6)
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_millis(1),
        "asymptotic check took {elapsed:?}, budget 1 ms"
    );
    println!("criterion 6 (asymptotic approximation within 2%, exact comparison): PASS [{elapsed:?}]");
}

#[test]
fn criterion_7_sum_squares_suite() {
    let config = OracleConfig::default();
    for p in 1..=5usize {
        for t in (p as i64)..=14 {
            let verdict = oracle::verify_sum_squares_bound(p, t, 1, &config).unwrap();
            assert!(
                verdict.passed,
                "p = {p}, t = {t}: {:?}",
                verdict.diagnostics
            );
        }
    }

    // Randomized rational dominance: no feasible point beats the closed form.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5157);
    for _ in 0..10_000 {
        let p = rng.gen_range(1..=5usize);
        let mut floors: Vec<ExactRatio> = (0..p)
            .map(|_| ratio(rng.gen_range(-30..30), rng.gen_range(1..7)))
            .collect();
        floors.sort_by(|a, b| b.cmp(a));
        let slack = ratio(rng.gen_range(0..60), rng.gen_range(1..5));
        let total = floors.iter().fold(ExactRatio::zero(), |acc, f| acc + f) + &slack;
        let instance = SumSquaresInstance::new(floors.clone(), total).unwrap();
        let (_, best) = bounds::max_sum_squares(&instance);

        let weights: Vec<ExactRatio> = (0..p)
            .map(|_| ratio(rng.gen_range(0..20), rng.gen_range(1..5)))
            .collect();
        let weight_sum = weights.iter().fold(ExactRatio::zero(), |acc, w| acc + w);
        // Feasible point: spread the slack over the coordinates in the drawn
        // proportions (all of it onto the first coordinate if every weight
        // came out zero).
        let point: Vec<ExactRatio> = if weight_sum.is_zero() {
            let mut point = floors.clone();
            point[0] = &point[0] + &slack;
            point
        } else {
            floors
                .iter()
                .zip(&weights)
                .map(|(f, w)| f + &(&slack * w) / &weight_sum)
                .collect()
        };
        let value = point
            .iter()
            .fold(ExactRatio::zero(), |acc, x| acc + &(x * x));
        assert!(
            value <= best,
            "feasible point value {value} exceeds closed form {best}"
        );
    }
    println!("criterion 7 (sum-of-squares maximizer: exhaustive p<=5 t<=14 and 10^4 random dominance checks): PASS");
}

#[test]
fn criterion_8_random_table_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA51);
    let mut violations: Vec<String> = Vec::new();
    let mut checked = 0u32;
    while checked < 10_000 {
        let n = rng.gen_range(2..=40usize);
        let r_hint = rng.gen_range(1..=6usize);
        let s_hint = rng.gen_range(1..=6usize);
        let x: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r_hint)).collect();
        let y: Vec<usize> = (0..n).map(|_| rng.gen_range(0..s_hint)).collect();
        let table = ContingencyTable::from_labels(
            &Clustering::from_labels(&x).unwrap(),
            &Clustering::from_labels(&y).unwrap(),
        )
        .unwrap();
        let counts = table.pair_counts().unwrap();
        // Degenerate comparisons (undefined chance correction) are resampled.
        let Ok(ari) = counts.adjusted_rand_index() else {
            continue;
        };
        checked += 1;

        let n_pairs = (n as u128) * (n as u128 - 1) / 2;
        assert_eq!(counts.total_pairs, n_pairs);
        assert_eq!(counts.a + counts.b + counts.c + counts.d, n_pairs);

        let ard = counts.adjusted_rand_distance().unwrap();
        assert_eq!(&ari + &ard, ExactRatio::one());

        let ri = counts.rand_index().unwrap();
        let expected_ri = counts.expected_rand_index().unwrap();
        let via_expectation = (&ri - &expected_ri) / (ExactRatio::one() - &expected_ri);
        assert_eq!(ari, via_expectation);

        let transposed = table.transpose().pair_counts().unwrap();
        assert_eq!(transposed.adjusted_rand_index().unwrap(), ari);

        // Row/column permutation invariance.
        let mut rows = table.to_rows();
        rows.reverse();
        for row in &mut rows {
            row.reverse();
        }
        let permuted = ContingencyTable::from_rows(&rows).unwrap().pair_counts().unwrap();
        assert_eq!(permuted.adjusted_rand_index().unwrap(), ari);

        let r = table.row_count() as u64;
        let s = table.col_count() as u64;
        let bound = bounds::min_ari(r, s).unwrap();
        let normalized = bounds::normalized_ard(&counts, r, s).unwrap();
        if ari < bound || normalized.value > ExactRatio::one() {
            violations.push(format!(
                "{r} x {s} table on {n} objects: index {} below closed form {} (normalized {})\n{table}",
                ari,
                bound,
                normalized.value
            ));
        }
        assert!(normalized.value >= ExactRatio::zero());
    }

    if violations.is_empty() {
        println!("criterion 8 (identity/invariant suite over 10^4 random tables): PASS");
    } else {
        println!("criterion 8 (identity/invariant suite over 10^4 random tables): FAIL");
        println!(
            "  {} of 10000 tables fall below the closed-form minimum; first case:",
            violations.len()
        );
        for line in violations[0].lines() {
            println!("  {line}");
        }
        panic!(
            "{} random tables have an index below the closed form (it is not the true minimum for strongly unequal sizes); first case:\n{}",
            violations.len(),
            violations[0]
        );
    }
}

struct RunResult {
    code: i32,
    stdout: String,
}

fn run_ari(args: &[&str], stdin: Option<&str>) -> RunResult {
    let mut command = Command::new(env!("CARGO_BIN_EXE_ari"));
    command.args(args).stdout(Stdio::piped()).stderr(Stdio::null());
    command.stdin(if stdin.is_some() {
        Stdio::piped()
    } else {
        Stdio::null()
    });
    let mut child = command.spawn().expect("spawn ari");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .expect("stdin piped")
            .write_all(text.as_bytes())
            .expect("write stdin");
    }
    let output = child.wait_with_output().expect("wait for ari");
    RunResult {
        code: output.status.code().expect("exit code"),
        stdout: String::from_utf8(output.stdout).expect("utf-8 stdout"),
    }
}

#[test]
fn criterion_9_cli_round_trip() {
    for r in 2..=10u64 {
        for s in 2..=10u64 {
            let extremal = run_ari(&["extremal", &r.to_string(), &s.to_string()], None);
            assert_eq!(extremal.code, 0, "extremal {r} {s}");
            let compared = run_ari(
                &["compare", "--table", "-", "--format", "json"],
                Some(&extremal.stdout),
            );
            assert_eq!(compared.code, 0, "compare for ({r},{s})");
            let report: serde_json::Value =
                serde_json::from_str(&compared.stdout).expect("valid JSON report");

            let closed = bounds::min_ari(r, s).unwrap();
            let reported: ExactRatio = report["adjusted_rand_index"]["exact"]
                .as_str()
                .expect("exact string")
                .parse()
                .expect("parsable fraction");
            assert_eq!(reported, closed, "({r},{s})");

            // Lossless machine output: every exact fraction re-parses, and
            // the decimal renderings match re-deriving them at the default
            // precision.
            for field in [
                "rand_index",
                "expected_rand_index",
                "adjusted_rand_index",
                "adjusted_rand_distance",
                "min_ari",
                "normalized_ard",
            ] {
                let exact: ExactRatio = report[field]["exact"]
                    .as_str()
                    .expect("exact present")
                    .parse()
                    .expect("exact reparses");
                let decimal = report[field]["decimal"].as_str().expect("decimal present");
                assert_eq!(decimal, exact.decimal(6), "({r},{s}) {field}");
            }
            let normalized: ExactRatio = report["normalized_ard"]["exact"]
                .as_str()
                .unwrap()
                .parse()
                .unwrap();
            assert_eq!(normalized, ExactRatio::one(), "({r},{s})");
            assert_eq!(report["n"].as_u64().unwrap(), r + s - 1);
        }
    }
    println!("criterion 9 (extremal | compare round trip for 2..=10, lossless JSON): PASS");
}

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonic-cert")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} line in:\n{text}"))
}

fn csv(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn verify_epsilon_passes() {
    let o = run(&["verify", "--suite", "epsilon", "--max-n", "1000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(field(&text, "status"), "PASS");
    assert_eq!(field(&text, "failures"), "0");
}

#[test]
fn verify_oresme_reports_equality_boundary() {
    let o = run(&["verify", "--suite", "oresme", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("k = 0") && text.contains("k = 1"), "{text}");
    assert!(text.contains("H_2 = 3/2"), "{text}");
}

#[test]
fn verify_identities_passes() {
    let o = run(&["verify", "--suite", "identities", "--max-n", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_rejects_max_n_one() {
    let o = run(&["verify", "--suite", "theta", "--max-n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_with_starved_gamma_is_precision_failure() {
    let o = run(&["verify", "--suite", "epsilon", "--max-n", "200", "--gamma-n", "50"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn table_quadratic_errors_are_inside_bound() {
    let o = run(&["table", "--from", "1", "--to", "10", "--methods", "quadratic"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "n,method,value,abs_error,certified_bound,within_bound");
    let rows = csv(&text);
    assert_eq!(rows.len(), 10);
    for r in rows {
        let n = num(&r[0]);
        let err = num(&r[3]);
        assert!(err > 0.0 && err < 1.0 / (4.0 * n * n * n), "{r:?}");
        assert_eq!(r[5], "true");
    }
}

#[test]
fn table_naive_at_one_has_zero_error() {
    let o = run(&["table", "--from", "1", "--to", "1", "--methods", "naive"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert_eq!(num(&rows[0][3]), 0.0);
}

#[test]
fn table_quadratic_beats_young() {
    let o = run(&["table", "--from", "10", "--to", "100", "--step", "10", "--methods", "young,quadratic,em:quartic"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv(&stdout(&o));
    assert_eq!(rows.len(), 30);
    for chunk in rows.chunks(3) {
        assert_eq!(chunk[0][1], "young");
        assert_eq!(chunk[1][1], "quadratic");
        assert_eq!(chunk[2][1], "em:quartic");
        assert!(num(&chunk[1][3]) < num(&chunk[0][3]), "{chunk:?}");
    }
}

#[test]
fn table_tsv() {
    let o = run(&["table", "--to", "2", "--methods", "naive", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n\tmethod\tvalue\t"));
}

#[test]
fn table_unknown_method_is_usage_error() {
    let o = run(&["table", "--from", "1", "--to", "3", "--methods", "quadratic,bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn table_bad_range_is_usage_error() {
    let o = run(&["table", "--from", "5", "--to", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_output_is_deterministic() {
    let args =
        ["table", "--from", "1", "--to", "40", "--step", "3", "--methods", "naive,young,quadratic,em:half,em:sextic"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gamma_at_ten_thousand() {
    let o = run(&["gamma", "--n", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(field(&text, "agreed prefix").starts_with("0.57721566"), "{text}");
    assert!(num(field(&text, "width")) < 1.0 / (4.0 * 1e12) * 1.001);
}

#[test]
fn gamma_at_one() {
    let o = run(&["gamma", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(field(&text, "lo").starts_with("0.3333333333"));
    assert!(field(&text, "hi").starts_with("0.5833333333"));
    assert!(num(field(&text, "width")) <= 0.25);
}

#[test]
fn gamma_brackets_at_100_and_200_intersect() {
    let a = stdout(&run(&["gamma", "--n", "100"]));
    let b = stdout(&run(&["gamma", "--n", "200"]));
    let (alo, ahi) = (num(field(&a, "lo")), num(field(&a, "hi")));
    let (blo, bhi) = (num(field(&b, "lo")), num(field(&b, "hi")));
    assert!(alo.max(blo) <= ahi.min(bhi));
}

#[test]
fn gamma_unreachable_digits_suggest_larger_n() {
    let o = run(&["gamma", "--n", "100", "--digits", "12"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("--n 13573"), "{err}");
}

#[test]
fn gamma_rejects_zero() {
    assert_eq!(run(&["gamma", "--n", "0"]).status.code(), Some(2));
}

fn bench_rows(text: &str) -> Vec<Vec<String>> {
    csv(text)
}

#[test]
fn bench_closed_form_is_much_faster() {
    let o = run(&["bench", "--n", "1000000", "--reps", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = bench_rows(&stdout(&o));
    let naive = num(&rows[0][2]);
    let quad = num(&rows[1][2]).max(1.0);
    assert_eq!(rows[1][1], "quadratic");
    assert!(naive / quad >= 100.0, "{rows:?}");
    assert!(rows.iter().all(|r| r[5] == "true"));
}

#[test]
fn bench_small_n_completes() {
    let o = run(&["bench", "--n", "10", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(bench_rows(&stdout(&o)).iter().all(|r| r[5] == "true"));
}

#[test]
fn bench_values_are_deterministic() {
    let values = |o: &Output| {
        bench_rows(&stdout(o)).into_iter().map(|r| (r[1].clone(), r[3].clone(), r[4].clone())).collect::<Vec<_>>()
    };
    let a = run(&["bench", "--n", "100", "--reps", "3"]);
    let b = run(&["bench", "--n", "100", "--reps", "3"]);
    assert_eq!(values(&a), values(&b));
    assert!(bench_rows(&stdout(&a)).iter().all(|r| r[5] == "true"));
}

#[test]
fn bench_rejects_zero_reps() {
    assert_eq!(run(&["bench", "--n", "10", "--reps", "0"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = run(&["--out", path.to_str().unwrap(), "verify", "--suite", "theta", "--max-n", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
}

#[test]
fn budget_flag_is_validated() {
    assert_eq!(run(&["--budget", "0", "gamma", "--n", "10"]).status.code(), Some(2));
    assert_eq!(run(&["--budget", "200", "gamma", "--n", "10"]).status.code(), Some(0));
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn chbox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chbox"))
        .args(args)
        .env_remove("CHBOX_PRECISION_BITS")
        .output()
        .expect("chbox runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Rows of a CSV with a single header line, as (header, rows).
fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn cell<'a>(header: &[String], row: &'a [String], name: &str) -> &'a str {
    &row[header.iter().position(|h| h == name).unwrap()]
}

/// Agreement to half a unit in the ninth significant digit of `reference`.
fn close9(got: &str, reference: f64) -> bool {
    let got: f64 = got.parse().unwrap();
    let unit = 10f64.powi(reference.abs().log10().floor() as i32 - 8);
    (got - reference).abs() <= 0.5 * unit
}

fn significant_digits(field: &str) -> usize {
    let mantissa = field.split(['e', 'E']).next().unwrap();
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    digits.trim_start_matches('0').len()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("chbox-test-{}-{name}", std::process::id()))
}

#[test]
fn table1_rows() {
    let text = stdout(&chbox(&["table1", "--nu", "10,25"]));
    let (header, rows) = csv(&text);
    assert_eq!(text.lines().next().unwrap(), "nu,n0,n1,n2,n3");
    assert!(close9(cell(&header, &rows[0], "n1"), 6.196784392));
    assert!(close9(cell(&header, &rows[1], "n2"), 12.97594386));
}

#[test]
fn table2_cells() {
    let (header, rows) = csv(&stdout(&chbox(&["table2"])));
    let find = |n: &str, l: &str| {
        rows.iter().find(|r| cell(&header, r, "n") == n && cell(&header, r, "l") == l).unwrap()
    };
    assert!(close9(cell(&header, find("2", "0"), "E"), 44.41321980));
    assert!(close9(cell(&header, find("0", "6"), "E"), 55.25985415));
    let half_pi2 = std::f64::consts::PI.powi(2) / 2.0;
    assert_eq!(cell(&header, find("0", "0"), "E"), format!("{half_pi2:.9}"));
    // shells n + l ascending
    let shells: Vec<u32> =
        rows.iter().map(|r| r[0].parse::<u32>().unwrap() + r[1].parse::<u32>().unwrap()).collect();
    assert!(shells.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn table3_blocks() {
    let (header, rows) = csv(&stdout(&chbox(&["table3"])));
    assert_eq!(header, ["beta", "l", "n0", "n1", "n2", "n3"]);
    assert_eq!(rows.len(), 6);
    let row = |beta: f64, l: &str| {
        rows.iter()
            .find(|r| r[0].parse::<f64>().unwrap() == beta && r[1] == l)
            .unwrap()
            .clone()
    };
    assert_eq!(cell(&header, &row(12.0, "2"), "n0"), "-4.500000000");
    assert_eq!(cell(&header, &row(6.0, "1"), "n0"), "-2.000000000");
    assert_eq!(cell(&header, &row(2.0, "0"), "n3"), cell(&header, &row(2.0, "2"), "n2"));
    assert!(close9(cell(&header, &row(2.0, "0"), "n3"), 71.26437398));
}

#[test]
fn table4_matches_oracle() {
    let args = ["table4", "--l-max", "1", "--n-max", "2"];
    let (header, rows) = csv(&stdout(&chbox(&args)));
    let (_, oracle) = csv(&stdout(&chbox(&[&args[..], &["--method", "bessel"]].concat())));
    assert!(close9(cell(&header, &rows[1], "n2"), 21.17443122));
    for (a, b) in rows.iter().zip(&oracle) {
        for (x, y) in a.iter().zip(b).skip(1) {
            let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }
    let (header, rows) = csv(&stdout(&chbox(&["table4", "--method", "bessel"])));
    assert!(close9(cell(&header, &rows[3], "n0"), 15.36345002));
}

#[test]
fn fig1_consistent_with_table2_and_markers() {
    let (header, rows) =
        csv(&stdout(&chbox(&["fig1", "--beta-max", "2", "--step", "1", "--l", "0,1", "--n-max", "1"])));
    assert_eq!(
        header,
        ["beta", "E_n0_l0", "E_n1_l0", "E_n0_l1", "E_n1_l1", "marker_l", "marker_nu", "marker_E"]
    );
    let (h2, t2) = csv(&stdout(&chbox(&["table2", "--l-max", "1", "--shell-max", "2"])));
    let zero = &rows[0];
    assert_eq!(zero[0], "0.000000000");
    for r in &t2 {
        let (n, l) = (cell(&h2, r, "n"), cell(&h2, r, "l"));
        if let Some(i) = header.iter().position(|h| *h == format!("E_n{n}_l{l}")) {
            assert_eq!(zero[i], cell(&h2, r, "E"));
        }
    }
    let marker = rows
        .iter()
        .find(|r| cell(&header, r, "marker_l") == "0" && cell(&header, r, "marker_nu") == "0")
        .unwrap();
    assert_eq!(cell(&header, marker, "beta"), "2.000000000");
    assert_eq!(cell(&header, marker, "marker_E"), "-0.5000000000");
    let betas: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(betas.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn fig2_log_gap() {
    let (header, rows) = csv(&stdout(&chbox(&["fig2", "--n-max", "0", "--nu", "29,30"])));
    let last = rows.last().unwrap();
    assert_eq!(cell(&header, last, "nu"), "30");
    let ln_gap: f64 = cell(&header, last, "ln_gap").parse().unwrap();
    assert!((ln_gap - 5.485e-4f64.ln()).abs() < 2e-4, "{ln_gap}");
}

#[test]
fn output_is_deterministic_and_json_mirrors_csv() {
    let (a, b, j) = (temp_path("a.csv"), temp_path("b.csv"), temp_path("c.json"));
    for path in [&a, &b] {
        stdout(&chbox(&["table3", "--l", "0", "--digits", "7", "--out", path.to_str().unwrap()]));
    }
    let (first, second) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(first, second);
    let args = ["table3", "--l", "0", "--digits", "7", "--format", "json", "--out", j.to_str().unwrap()];
    stdout(&chbox(&args));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&j).unwrap()).unwrap();
    let (header, rows) = csv(std::str::from_utf8(&first).unwrap());
    let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
    assert_eq!(keys, header.iter().collect::<Vec<_>>());
    for (i, name) in header.iter().enumerate() {
        let column = json[name].as_array().unwrap();
        assert_eq!(column.len(), rows.len());
        for (v, r) in column.iter().zip(&rows) {
            assert_eq!(v.to_string(), r[i]);
        }
    }
    for r in &rows {
        for field in &r[2..] {
            assert_eq!(significant_digits(field), 7, "{field}");
        }
        assert_eq!(significant_digits(&r[0]), 7);
    }
    for p in [a, b, j] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn invalid_arguments_exit_2() {
    for args in [
        &["table1", "--digits", "0"][..],
        &["table2", "--basis-size", "4"],
        &["table2", "--precision-bits", "32"],
        &["table1", "--nu", "7..3"],
        &["fig1", "--step", "0"],
        &["fig2", "--n-max", "3", "--nu", "2,5"],
        &["frobnicate"],
    ] {
        assert_eq!(chbox(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn precision_from_environment_and_flag_precedence() {
    let run = |env: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_chbox"))
            .args([&["table1", "--nu", "3"], extra].concat())
            .env("CHBOX_PRECISION_BITS", env)
            .output()
            .unwrap()
    };
    assert_eq!(run("32", &[]).status.code(), Some(2));
    assert_eq!(run("32", &["--precision-bits", "128"]).status.code(), Some(0));
    assert_eq!(run("512", &[]).status.code(), Some(0));
}

#[test]
fn verify_fault_injection_fails_definiteness() {
    let out = chbox(&["verify", "--suite", "rrm", "--basis-size", "8", "--tamper-s"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let s_checks: Vec<&str> = text.lines().filter(|l| l.contains("S positive definite")).collect();
    assert_eq!(s_checks.len(), 4);
    assert!(s_checks.iter().all(|l| l.contains(",FAIL,")));

    let clean = chbox(&["verify", "--suite", "exact,model", "--basis-size", "8"]);
    let text = String::from_utf8(clean.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.contains(",pass,")), "{text}");
}

#[test]
fn verify_with_tiny_basis_fails_golden_but_keeps_bounds() {
    let out = chbox(&["verify", "--suite", "rrm,golden", "--basis-size", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let (header, rows) = csv(&text);
    let status = |name: &str| {
        rows.iter().find(|r| cell(&header, r, "check") == name).map(|r| cell(&header, r, "status").to_string())
    };
    assert_eq!(status("table2 n=0 l=0").as_deref(), Some("FAIL"));
    assert_eq!(status("free box vs Bessel n=0 l=0 upper bound").as_deref(), Some("pass"));
    assert_eq!(status("S positive definite l=0").as_deref(), Some("pass"));
    let delta = rows.iter().find(|r| cell(&header, r, "check") == "table2 n=1 l=1").unwrap();
    assert!(!cell(&header, delta, "residual").is_empty());
}

#[test]
fn verify_clean_run_passes() {
    let out = chbox(&["verify"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{}", text.lines().filter(|l| l.contains("FAIL")).collect::<Vec<_>>().join("\n"));
}

#[test]
fn exhausted_basis_escalation_exits_3() {
    // Starting at the basis cap leaves no larger basis to confirm convergence.
    let out = chbox(&["table4", "--l-max", "0", "--n-max", "0", "--digits", "3", "--basis-size", "96"]);
    assert_eq!(out.status.code(), Some(3));
}

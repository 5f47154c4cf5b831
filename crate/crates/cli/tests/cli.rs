use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genairy"))
        .args(args)
        .output()
        .expect("spawn genairy")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_series_at_origin() {
    let o = run(&["eval", "--n", "2", "--x", "0", "--method", "series"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,x,method,value,error_estimate"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[2], "series");
    let v: f64 = row[3].parse().unwrap();
    assert!((v - 0.355_028_053_887_817_2).abs() < 1e-15);
}

#[test]
fn eval_quad_agrees_with_series() {
    let o = run(&[
        "eval",
        "--n",
        "2",
        "--x",
        "0",
        "--method",
        "quad",
        "--compare",
        "series",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rec = &v[0];
    assert_eq!(rec["method"], "quadrature");
    assert_eq!(rec["n"], 2);
    assert!(rec["rel_dev"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn odd_order_is_a_domain_error() {
    let o = run(&["eval", "--n", "3", "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(
        stderr(&o).trim(),
        r#"error kind=domain reason="odd order unsupported""#
    );
    assert_eq!(run(&["verify", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["eval", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["eval", "--n", "2", "--x", "0", "--method", "simpson"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["fn-poly", "--n", "21"]).status.code(), Some(2));
    assert_eq!(
        run(&["asympt-compare", "--m", "0", "--side", "pos"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["asympt-compare", "--m", "1", "--side", "pos", "--x", "-3"])
            .status
            .code(),
        Some(2)
    );
    for sub in ["eval", "table", "fn-poly", "verify", "asympt-compare"] {
        let o = run(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains("Usage: genairy"));
    }
}

#[test]
fn series_out_of_range_is_non_convergence() {
    let o = run(&["eval", "--n", "2", "--x", "30", "--method", "series"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error kind=range reason="));
}

#[test]
fn auto_falls_back_to_asymptotics_with_note() {
    let o = run(&["eval", "--n", "2", "--x", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(",asymptotic,"));
    assert!(stderr(&o).contains("heuristic"));
}

#[test]
fn table_shape() {
    let o = run(&[
        "table", "--n", "2", "--x-min", "-10", "--x-max", "2", "--steps", "120", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let xs: Vec<f64> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(xs.len(), 121);
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
    assert_eq!((xs[0], xs[120]), (-10.0, 2.0));
}

#[test]
fn table_row_matches_eval() {
    for method in ["series", "quad", "auto"] {
        let t = run(&[
            "table", "--n", "4", "--x-min", "-2", "--x-max", "2", "--steps", "4", "--method",
            method,
        ]);
        let e = run(&["eval", "--n", "4", "--x", "0", "--method", method]);
        let row_t = stdout(&t).lines().nth(3).unwrap().to_string();
        let row_e = stdout(&e).lines().nth(1).unwrap().to_string();
        assert_eq!(row_t, row_e, "{method}");
    }
}

#[test]
fn table_degenerate_grids() {
    let o = run(&[
        "table", "--n", "2", "--x-min", "1", "--x-max", "1", "--steps", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = run(&[
        "table", "--n", "2", "--x-min", "1", "--x-max", "1", "--steps", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "table", "--n", "2", "--x-min", "2", "--x-max", "1", "--steps", "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_flushes_rows_before_failure() {
    let o = run(&[
        "table", "--n", "2", "--x-min", "0", "--x-max", "40", "--steps", "4", "--method", "series",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    let rows = out.lines().count() - 1;
    assert!((1..5).contains(&rows), "{out}");
    assert!(stderr(&o).starts_with("error kind="));
}

#[test]
fn fn_poly_golden() {
    let cases = [
        ("1", "y"),
        ("2", "y' + y^2"),
        ("3", "y'' + 3*y*y' + y^3"),
        ("4", "y''' + 4*y*y'' + 3*y'^2 + 6*y^2*y' + y^4"),
    ];
    for (n, want) in cases {
        let o = run(&["fn-poly", "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), format!("{want}\n"));
    }
    let o = run(&["fn-poly", "--n", "5"]);
    assert!(stdout(&o).starts_with("y^{(4)} + 5*y*y''' + 10*y'*y''"));
}

#[test]
fn fn_poly_json_matches_bell_numbers() {
    let o = run(&["fn-poly", "--n", "6", "--format", "json"]);
    let terms: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    // p(6) = 11 terms, coefficients sum to the Bell number B(6) = 203
    assert_eq!(terms.len(), 11);
    let sum: i64 = terms.iter().map(|t| t["coeff"].as_i64().unwrap()).sum();
    assert_eq!(sum, 203);
    for t in &terms {
        let e = t["exponents"].as_array().unwrap();
        assert_eq!(e.len(), 6);
        let weight: u64 = e
            .iter()
            .enumerate()
            .map(|(i, k)| (i as u64 + 1) * k.as_u64().unwrap())
            .sum();
        assert_eq!(weight, 6);
    }
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for cat in [
        "cole-hopf",
        "ode-residual",
        "series-vs-quad",
        "riccati-closure",
    ] {
        let line = out.lines().find(|l| l.starts_with(cat)).unwrap();
        assert!(line.ends_with("PASS"), "{line}");
    }
    assert!(out.ends_with("overall PASS\n"));

    let o = run(&["verify", "--n", "4", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("overall FAIL\n"));

    let o = run(&["verify", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("SKIP").count(), 3);
}

#[test]
fn verify_riccati_point() {
    let o = run(&[
        "verify", "--n", "4", "--x-min", "0.5", "--x-max", "0.5", "--steps", "0", "--tol", "1e-7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn asympt_compare_m1_and_report_only() {
    let o = run(&["asympt-compare", "--m", "1", "--side", "pos"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rel_dev"));
    assert!(out.ends_with("PASS\n"));

    let o = run(&["asympt-compare", "--m", "1", "--side", "neg", "--x", "-4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("amplitude_dev"));

    let o = run(&["asympt-compare", "--m", "3", "--side", "neg"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("REPORT-ONLY:"));
    assert!(out.ends_with("REPORT-ONLY\n"));
}

#[test]
fn parallel_and_sequential_agree() {
    let args = [
        "table", "--n", "6", "--x-min", "-8", "--x-max", "8", "--steps", "64", "--format", "json",
    ];
    let p = run(&args);
    let s = run(&[&["--sequential"], &args[..]].concat());
    assert_eq!(p.stdout, s.stdout);
}

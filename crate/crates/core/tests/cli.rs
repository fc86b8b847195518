use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_discgrowth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("discgrowth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Data rows of a CSV output, header comment and column line removed.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn header_is_versioned() {
    let out = run(&["gen", "--family", "geometric", "--c", "0.5", "--count", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with(&format!(
        "# discgrowth {} schema 1",
        env!("CARGO_PKG_VERSION")
    )));
    let moduli: Vec<f64> = rows(&text).iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(moduli, vec![0.5, 0.75, 0.875]);
}

#[test]
fn gen_log2_first_modulus() {
    let out = run(&["gen", "--family", "log2", "--count", "1000"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let r = rows(&text);
    assert_eq!(r.len(), 1000);
    let l = 3f64.ln();
    let want = 1.0 - 1.0 / (3.0 * l * l);
    let got: f64 = r[0][0].parse().unwrap();
    assert!((got - want).abs() < 1e-15);
}

#[test]
fn gen_lattice_count() {
    let out = run(&[
        "gen",
        "--family",
        "gamma-lattice",
        "--gamma",
        "0.5",
        "--levels",
        "16",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let want: usize = (1..=16)
        .map(|j| (f64::from(j) / 2.0).exp2().ceil() as usize)
        .sum();
    assert_eq!(rows(&text).len(), want);
}

#[test]
fn json_sequence_reads_back() {
    let path = scratch("seq.json");
    let p = path.to_str().unwrap();
    assert!(run(&[
        "gen",
        "--family",
        "radial-power",
        "--beta",
        "0.7",
        "--count",
        "50",
        "--out",
        p
    ])
    .status
    .success());
    let out = run(&[
        "eval", "--input", p, "--j-min", "2", "--j-max", "6", "--theta", "1.0",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(rows(&String::from_utf8(out.stdout).unwrap()).len(), 5);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = [
        "means",
        "--family",
        "gamma-lattice",
        "--gamma",
        "0.5",
        "--levels",
        "14",
        "--j-min",
        "4",
        "--j-max",
        "10",
        "--p-list",
        "1,2,4",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut one = args.to_vec();
    one.extend(["--workers", "1"]);
    assert_eq!(run(&one).stdout, a.stdout);
}

#[test]
fn constant_function_means() {
    let out = run(&[
        "means",
        "--function",
        "constant",
        "--value",
        "0.25",
        "--j-min",
        "2",
        "--j-max",
        "5",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let want = 4f64.ln();
    for row in rows(&text) {
        // j, r, signed, T, m_1 .. m_16
        for v in &row[4..] {
            assert!((v.parse::<f64>().unwrap() - want).abs() < 1e-12);
        }
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn single_factor_jensen_value() {
    // one Blaschke factor with zero a = 1/2: the mean of ln|b_a| on |z| = r is ln max(a, r)
    let path = scratch("one.csv");
    std::fs::write(&path, "re,im\n0.5,0.0\n").unwrap();
    let out = run(&[
        "means",
        "--input",
        path.to_str().unwrap(),
        "--j-min",
        "1",
        "--j-max",
        "6",
        "--p-list",
        "1,2",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    for row in rows(&text) {
        let r: f64 = row[1].parse().unwrap();
        let signed: f64 = row[2].parse().unwrap();
        let want = r.max(0.5).ln();
        assert!((signed - want).abs() < 1e-8, "r = {r}: {signed}");
    }
}

#[test]
fn verify_single_check() {
    let out = run(&[
        "verify",
        "--only",
        "kernel",
        "--kernel-samples",
        "2000",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let data = v["data"].as_array().unwrap();
    assert_eq!(data.len(), 1);
    assert_eq!(data[0]["name"], "kernel");
    assert_eq!(data[0]["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["verify", "--only", "no-such-check"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["gen", "--family", "log2", "--count", "3", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["gen", "--family", "unknown", "--count", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn range_errors_exit_three() {
    // circles deeper than the realized zeros of an infinite family
    let out = run(&[
        "carleson", "--family", "log2", "--count", "1", "--j-min", "1", "--j-max", "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn help_lists_flags() {
    let out = run(&["verify", "--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for flag in [
        "--only",
        "--seed",
        "--j-min",
        "--j-max",
        "--p-list",
        "--tol",
        "--workers",
        "--out",
        "--format",
    ] {
        assert!(text.contains(flag), "{flag}");
    }
}

//! One line per acceptance criterion; exits nonzero when any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use discgrowth::disc_zeros::{counting_n, DiscPoint, Family, ZeroSequence};
use discgrowth::function::ExpPower;
use discgrowth::means::{order_fit, signed_circle_mean, MeansProfile};
use discgrowth::products::{
    kernel_K, kernel_boundary, kernel_lower_bound, ProductEvaluator, ProductKind,
};
use discgrowth::verify::{check_jensen, SuiteConfig, Verdict, Workbench};
use discgrowth::Result;
use num_complex::Complex64;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_verdict(v: &Verdict, keys: &[&str]) -> Outcome {
    let mut detail: Vec<String> = Vec::new();
    for k in keys {
        for (name, value) in &v.observed {
            if name.contains(k) {
                detail.push(format!("{name}={value:.4}"));
            }
        }
    }
    Outcome {
        passed: v.passed,
        detail: detail.join(" "),
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome {
        passed: a.passed && b.passed,
        detail: [a.detail, b.detail].join("; "),
    }
}

fn ok(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

/// Least-squares slope of `ln y` against `ln(1/(1-r))`.
fn slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| -(1.0 - s.0).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn last_half(p: &MeansProfile) -> Vec<(f64, f64)> {
    let n = p.samples.len();
    let take = n.div_ceil(2).max(4).min(n);
    p.samples[n - take..]
        .iter()
        .map(|s| (s.r, s.value))
        .collect()
}

/// Number of `k ≥ 3` with `k ln²k ≤ x`, by Newton on the real equation.
fn log2_count(x: f64) -> u64 {
    let g = |k: f64| k * k.ln().powi(2);
    let mut k = x / x.ln().powi(2);
    for _ in 0..100 {
        let l = k.ln();
        let next = k - (g(k) - x) / (l * l + 2.0 * l);
        if (next - k).abs() < 1e-9 * k {
            k = next;
            break;
        }
        k = next;
    }
    let mut m = k.floor() as u64;
    while m >= 3 && g(m as f64) > x {
        m -= 1;
    }
    while g((m + 1) as f64) <= x {
        m += 1;
    }
    m.saturating_sub(2)
}

fn ac1(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("kernel")?;
    // K(0, 3/4) = ln(1 + 1·(7/16)/(9/16)) / (2/4)
    let k = kernel_K(DiscPoint::ORIGIN, Complex64::new(0.75, 0.0))?;
    let want = (1.0f64 + 7.0 / 9.0).ln() / 0.5;
    let lb = kernel_lower_bound(DiscPoint::ORIGIN, Complex64::new(0.75, 0.0));
    let spot = (k - want).abs() < 1e-14 && (lb - 1.0 / 6.75).abs() < 1e-15;
    Ok(both(
        from_verdict(&v, &["violations", "samples"]),
        ok(spot, format!("K(0,3/4)={k:.6}")),
    ))
}

fn ac2(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("kernel_positivity")?;
    let mut worst: f64 = 0.0;
    for (m, a) in [(0.3, 0.1), (0.9, 2.0), (0.999, 4.0)] {
        let z = DiscPoint::from_polar(m, a)?;
        for t in [0.0, 1.0, 3.0, 4.0] {
            let exact = (1.0 - m * m) / (Complex64::from_polar(1.0, t) - z.to_complex()).norm_sqr();
            worst = worst.max((kernel_boundary(z, t) - exact).abs() / exact);
        }
    }
    Ok(both(
        from_verdict(&v, &["negative", "poisson_rel_error"]),
        ok(worst <= 1e-12, format!("poisson spot error {worst:.1e}")),
    ))
}

fn ac4(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("jensen")?;
    // three zeros away from the circle; the periodic integrand converges
    // geometrically under the trapezoid rule
    let pts = [(0.3, 0.4), (0.8, 2.0), (0.95, 5.0)];
    let zs = ZeroSequence::explicit(
        pts.iter()
            .map(|&(m, a)| DiscPoint::from_polar(m, a).unwrap())
            .collect(),
    );
    let f = ProductEvaluator::new(&zs, ProductKind::Blaschke)?;
    let r = 0.6;
    let n = 4096;
    let mut trap = 0.0;
    for i in 0..n {
        let z = Complex64::from_polar(r, std::f64::consts::TAU * i as f64 / n as f64);
        for &(m, a) in &pts {
            let w = Complex64::from_polar(m, a);
            trap += ((z - w) / (Complex64::new(1.0, 0.0) - w.conj() * z))
                .norm()
                .ln();
        }
    }
    trap /= n as f64;
    let got = signed_circle_mean(&f, r, 1e-12)?;
    let err = (got - trap).abs();
    Ok(both(
        from_verdict(&v, &["max_error"]),
        ok(err < 1e-8, format!("trapezoid oracle error {err:.1e}")),
    ))
}

fn ac5(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("theorem1_forward")?;
    let table = bench.lattice_table()?;
    let mut slopes = Vec::new();
    let mut agree = true;
    for prof in table.mp.iter().filter(|m| m.p.is_some_and(|p| p <= 8.0)) {
        let s = slope(&last_half(prof));
        agree &= (s - order_fit(prof, None)?.slope).abs() < 1e-9;
        slopes.push(s);
    }
    let max = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let detail = format!(
        "levels {} slopes {:?}",
        bench.config().j_max + discgrowth::verify::LATTICE_MARGIN,
        slopes
            .iter()
            .map(|s| (s * 1000.0).round() / 1000.0)
            .collect::<Vec<_>>()
    );
    Ok(ok(
        v.passed && agree && slopes.len() == 4 && max <= 0.65,
        detail,
    ))
}

fn ac6(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("theorem1_boundary")?;
    Ok(from_verdict(&v, &["normalized_slope"]))
}

fn ac7(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("theorem1_converse")?;
    let get = |k: &str| v.observed.get(k).copied().unwrap_or(f64::NAN);
    let (g, t) = (get("gamma_fit"), get("t_estimate"));
    let rho = get("rho_infty");
    let own =
        (0.35..=0.65).contains(&g) && (0.35..=0.65).contains(&t) && ((1.0 - rho) - t).abs() <= 0.15;
    Ok(ok(
        v.passed && own,
        format!("gamma_fit={g:.3} t={t:.3} rho_infty={rho:.3}"),
    ))
}

fn ac8(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("example_section3")?;
    let zs = ZeroSequence::from_family(Family::Log2Example, discgrowth::verify::LOG2_COUNTING)?;
    let mut mismatches = 0;
    let mut ratios = Vec::new();
    for j in 1..=26 {
        let depth = (-f64::from(j)).exp2();
        let n = counting_n(&zs, 1.0 - depth)? as u64;
        if n != log2_count(1.0 / depth) {
            mismatches += 1;
        }
        if j >= 10 {
            ratios.push(n as f64 * depth * depth.ln().powi(2));
        }
    }
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let mut out = from_verdict(&v, &["rho_infty", "rho_T", "last_ratio"]);
    out.passed &= mismatches == 0 && decreasing;
    out.detail += &format!(" oracle_mismatches={mismatches}");
    Ok(out)
}

fn ac9(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("order_relations")?;
    // log M(r) = (1-r)^{-β} in closed form
    let f = ExpPower { beta: 1.0 };
    let m = discgrowth::means::max_modulus(&f, 0.99, 0.01, 1e-9)?;
    let spot = (m - 100.0).abs() < 1e-6;
    Ok(both(
        from_verdict(&v, &["rho_M_error"]),
        ok(spot, format!("log M(0.99) = {m:.6}")),
    ))
}

fn ac10(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("order_relations")?;
    let get = |k: &str| v.observed.get(k).copied().unwrap_or(f64::NAN);
    let rho_t = get("rings_2.rho_T");
    let nu = get("rings_2.nu");
    let rho_inf = get("rings_2.rho_infty");
    let passed = (0.85..=1.15).contains(&rho_t) && (rho_inf - nu).abs() <= 0.2;
    Ok(ok(
        passed,
        format!("rho_T={rho_t:.4} nu={nu:.4} rho_infty={rho_inf:.4}"),
    ))
}

fn ac12(bench: &Workbench) -> Result<Outcome> {
    let v = bench.run("means_monotone")?;
    let args = [
        "means",
        "--family",
        "gamma-lattice",
        "--gamma",
        "0.5",
        "--levels",
        "16",
        "--j-min",
        "6",
        "--j-max",
        "12",
        "--format",
        "json",
    ];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_discgrowth"))
            .args(args)
            .output()
            .map(|o| o.stdout)
    };
    let (a, b) = (run()?, run()?);
    let seeded = |s| check_jensen(5, s).map(|v| serde_json::to_string(&v).unwrap());
    let same = !a.is_empty() && a == b && seeded(7)? == seeded(7)?;
    Ok(both(
        from_verdict(&v, &["max_excess"]),
        ok(same, format!("byte-identical reruns: {same}")),
    ))
}

fn main() -> ExitCode {
    let quiet = |_: &str| {};
    let bench = match Workbench::new(SuiteConfig::default(), &quiet) {
        Ok(b) => b,
        Err(e) => {
            println!("setup failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let simple = |name: &'static str, keys: &'static [&'static str]| {
        move |b: &Workbench| -> Result<Outcome> { Ok(from_verdict(&b.run(name)?, keys)) }
    };
    type Check<'a> = Box<dyn Fn(&Workbench) -> Result<Outcome> + 'a>;
    let criteria: Vec<(u32, &str, u64, Check)> = vec![
        (1, "kernel inequality", 10, Box::new(ac1)),
        (
            2,
            "kernel nonnegativity and Poisson limit",
            10,
            Box::new(ac2),
        ),
        (
            3,
            "representation identity",
            30,
            Box::new(simple("representation", &["max_excess"])),
        ),
        (4, "Jensen oracle", 60, Box::new(ac4)),
        (5, "forward bound on the gamma lattice", 600, Box::new(ac5)),
        (6, "boundary case on the dyadic ray", 300, Box::new(ac6)),
        (7, "converse and rho_infty = 1 - t", 600, Box::new(ac7)),
        (8, "log2 example", 600, Box::new(ac8)),
        (9, "order chain and exp-power orders", 300, Box::new(ac9)),
        (10, "rings: rho_T and rho_infty vs nu", 600, Box::new(ac10)),
        (
            11,
            "truncation honesty",
            30,
            Box::new(simple("truncation", &["refused", "instances"])),
        ),
        (
            12,
            "means monotone in p and determinism",
            600,
            Box::new(ac12),
        ),
    ];
    let mut failures = 0;
    for (n, title, limit, check) in &criteria {
        let start = Instant::now();
        let result = check(&bench);
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed < Duration::from_secs(*limit), o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "AC{n:<2} {} {title} ({:.1}s, limit {limit}s) {detail}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

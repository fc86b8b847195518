//! Command-line front end: `gen`, `eval`, `means`, `orders`, `carleson` and
//! `verify`.
//!
//! Every output starts with a versioned header that embeds the full
//! [`RunConfig`]; data go to `--out` or stdout, progress to stderr.
//! Exit status: 0 ok, 1 a verification check failed, 2 usage error,
//! 3 numerical, range or I/O error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::disc_zeros::{carleson_exponent, io, Family, ZeroSequence};
use crate::error::{Error, Result};
use crate::function::{Constant, DiscFunction, ExpPower};
use crate::means::{
    ladder_from_table, max_modulus_profile, means_table, order_fit, rho_infty_extrapolate,
    MeansTable, RadialGrid,
};
use crate::products::{ProductEvaluator, ProductKind, RingProduct};
use crate::verify::{run_suite, SuiteConfig};

/// Version of the output layout.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "discgrowth",
    version,
    about = "Zeros, products and growth orders in the unit disc"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a zero sequence from a family.
    Gen {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate log|f| along a ray over a radial grid.
    Eval {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Angle of the ray.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Circle means: signed mean, T(r) and m_p(r) for every p.
    Means {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Growth orders: the rho_p ladder, rho_T, rho_M and rho_infinity.
    Orders {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Carleson-box exponent of a zero sequence.
    Carleson {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Target exponent whose constant is reported.
        #[arg(long)]
        target_gamma: Option<f64>,
        /// Extra uniformly spaced box positions scanned per delta.
        #[arg(long, default_value_t = 256)]
        phi_resolution: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification checks.
    Verify {
        /// Comma-separated check names (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        /// Random pairs for each kernel check.
        #[arg(long, default_value_t = SuiteConfig::default().kernel_samples)]
        kernel_samples: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        numerics: NumericArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct SourceArgs {
    /// Read the zero sequence from a file (.csv or .json).
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// radial-power, geometric, log2, gamma-lattice or rings.
    #[arg(long)]
    family: Option<String>,
    /// Number of points to realize.
    #[arg(long, conflicts_with = "levels")]
    count: Option<usize>,
    /// Number of whole levels to realize (gamma-lattice, rings).
    #[arg(long)]
    levels: Option<u32>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    /// Scale of the geometric family, depth q·c^k.
    #[arg(long)]
    q: Option<f64>,
    /// Genus: the lattice parameter s, the canonical-product genus and the
    /// Carleson exponent s. Without it products are Blaschke products.
    #[arg(long)]
    genus: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum FunctionKind {
    /// Product over the zero sequence.
    Product,
    /// exp((1-z)^{-beta}).
    ExpPower,
    /// A constant function.
    Constant,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct FunctionArgs {
    #[arg(long, value_enum, default_value_t = FunctionKind::Product)]
    function: FunctionKind,
    /// Value of the constant function.
    #[arg(long)]
    value: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct GridArgs {
    #[arg(long, default_value_t = 8)]
    j_min: u32,
    #[arg(long, default_value_t = 20)]
    j_max: u32,
    /// Radii are 1 - scale·2^{-j}.
    #[arg(long, default_value_t = 0.75)]
    grid_scale: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct NumericArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16")]
    p_list: Vec<f64>,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Default: from the extension of --out, else csv.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Worker threads (default: available cores). Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

/// Everything that determines the output of a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerics: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<Value>,
    pub format: String,
}

struct Output {
    config: RunConfig,
    csv: String,
    json: Value,
    /// Verification outcome, when the command has one.
    passed: Option<bool>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn progress(msg: &str) {
    eprintln!("[discgrowth] {msg}");
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl SourceArgs {
    fn family(&self) -> Result<Option<Family>> {
        self.family
            .as_deref()
            .map(|name| {
                Family::from_descriptor(name, self.gamma, self.beta, self.c, self.q, self.genus)
            })
            .transpose()
    }

    fn sequence(&self) -> Result<ZeroSequence> {
        if let Some(path) = &self.input {
            return io::read_sequence(path);
        }
        let family = self
            .family()?
            .ok_or_else(|| usage("give --family or --input"))?;
        match (self.count, self.levels) {
            (Some(n), _) => ZeroSequence::from_family(family, n),
            (None, Some(l)) => ZeroSequence::through_level(family, l),
            (None, None) => Err(usage("give --count or --levels")),
        }
    }

    fn kind(&self) -> ProductKind {
        self.genus
            .map_or(ProductKind::Blaschke, ProductKind::Canonical)
    }
}

fn build_function(
    source: &SourceArgs,
    args: &FunctionArgs,
    grid: &RadialGrid,
) -> Result<Box<dyn DiscFunction>> {
    match args.function {
        FunctionKind::Constant => {
            let v = args
                .value
                .ok_or_else(|| usage("--function constant requires --value"))?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(usage(format!("constant value {v} must be positive")));
            }
            Ok(Box::new(Constant(v)))
        }
        FunctionKind::ExpPower => {
            let beta = source
                .beta
                .ok_or_else(|| usage("--function exp-power requires --beta"))?;
            if !(beta > 0.0) {
                return Err(usage(format!("beta = {beta} must be positive")));
            }
            Ok(Box::new(ExpPower { beta }))
        }
        FunctionKind::Product => {
            let family = if source.input.is_none() {
                source.family()?
            } else {
                None
            };
            match family {
                // rings without an explicit realization: the infinite product
                Some(Family::Rings { beta })
                    if source.count.is_none() && source.levels.is_none() =>
                {
                    let q = source
                        .genus
                        .ok_or_else(|| usage("the infinite rings product needs --genus"))?;
                    let deepest = grid.points()[grid.len() - 1].depth();
                    Ok(Box::new(RingProduct::infinite(beta, q, deepest, 1e-8)?))
                }
                Some(Family::Rings { beta }) if source.count.is_none() => {
                    let levels = source.levels.unwrap_or(0);
                    Ok(Box::new(RingProduct::with_levels(
                        beta,
                        source.kind(),
                        levels,
                    )?))
                }
                Some(Family::Log2Example) if source.genus.is_none() => {
                    let zs = source.sequence()?;
                    let f = ProductEvaluator::log2_example(&zs)?;
                    let deepest = grid.points()[grid.len() - 1].depth();
                    if f.min_depth() > deepest {
                        return Err(Error::Range {
                            what: "log2 tail rule",
                            requested: 1.0 - deepest,
                            realized: 1.0 - f.min_depth(),
                        });
                    }
                    Ok(Box::new(f))
                }
                _ => Ok(Box::new(ProductEvaluator::new(
                    &source.sequence()?,
                    source.kind(),
                )?)),
            }
        }
    }
}

fn header(config: &RunConfig) -> String {
    format!(
        "# discgrowth {} schema {SCHEMA} config {}\n",
        env!("CARGO_PKG_VERSION"),
        serde_json::to_string(config).unwrap_or_default()
    )
}

fn envelope(config: &RunConfig, data: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "data": data,
    })
}

fn means_csv(table: &MeansTable) -> String {
    let mut out = String::from("j,r,signed_mean,T");
    for prof in &table.mp {
        let _ = write!(out, ",m_{}", prof.p.unwrap_or(1.0));
    }
    out.push('\n');
    for (i, s) in table.signed.samples.iter().enumerate() {
        let _ = write!(
            out,
            "{},{:?},{:?},{:?}",
            s.j, s.r, s.value, table.t.samples[i].value
        );
        for prof in &table.mp {
            let _ = write!(out, ",{:?}", prof.samples[i].value);
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct OrderRow {
    quantity: String,
    p: Option<f64>,
    slope: f64,
    residual: f64,
    j_lo: u32,
    j_hi: u32,
}

fn run_command(command: Command) -> Result<(Output, OutputArgs)> {
    let mut config = RunConfig {
        command: String::new(),
        source: None,
        function: None,
        grid: None,
        numerics: None,
        extra: None,
        format: String::new(),
    };
    let (csv, json, passed, output) = match command {
        Command::Gen { source, output } => {
            config.command = "gen".into();
            config.source = Some(to_value(&source));
            let zs = source.sequence()?;
            progress(&format!("generated {} points", zs.len()));
            let data: Value = serde_json::from_str(&io::to_json(&zs)?)?;
            (io::to_csv(&zs), data, None, output)
        }
        Command::Eval {
            source,
            function,
            grid,
            theta,
            output,
        } => {
            config.command = "eval".into();
            config.source = Some(to_value(&source));
            config.function = Some(to_value(&function));
            config.grid = Some(to_value(&grid));
            config.extra = Some(json!({ "theta": theta }));
            let g = RadialGrid::scaled(grid.j_min, grid.j_max, grid.grid_scale)?;
            let f = build_function(&source, &function, &g)?;
            let mut csv = String::from("j,r,theta,log_modulus\n");
            let mut rows = Vec::new();
            for p in g.points() {
                let v = f.log_modulus(crate::function::CirclePoint {
                    r: p.r,
                    depth: p.depth(),
                    theta: crate::angle::normalize(theta),
                });
                let _ = writeln!(csv, "{},{:?},{:?},{:?}", p.j, p.r, theta, v);
                rows.push(json!({ "j": p.j, "r": p.r, "theta": theta, "log_modulus": v }));
            }
            (csv, Value::Array(rows), None, output)
        }
        Command::Means {
            source,
            function,
            grid,
            numerics,
            output,
        } => {
            config.command = "means".into();
            config.source = Some(to_value(&source));
            config.function = Some(to_value(&function));
            config.grid = Some(to_value(&grid));
            config.numerics = Some(to_value(&numerics));
            let g = RadialGrid::scaled(grid.j_min, grid.j_max, grid.grid_scale)?;
            let f = build_function(&source, &function, &g)?;
            progress(&format!("circle means on {} radii", g.len()));
            let table = means_table(f.as_ref(), &g, &numerics.p_list, numerics.tol)?;
            (means_csv(&table), to_value(&table), None, output)
        }
        Command::Orders {
            source,
            function,
            grid,
            numerics,
            output,
        } => {
            config.command = "orders".into();
            config.source = Some(to_value(&source));
            config.function = Some(to_value(&function));
            config.grid = Some(to_value(&grid));
            config.numerics = Some(to_value(&numerics));
            let g = RadialGrid::scaled(grid.j_min, grid.j_max, grid.grid_scale)?;
            let f = build_function(&source, &function, &g)?;
            progress(&format!("circle means on {} radii", g.len()));
            let table = means_table(f.as_ref(), &g, &numerics.p_list, numerics.tol)?;
            progress("maximum modulus");
            let max = max_modulus_profile(f.as_ref(), &g, numerics.tol)?;
            let ladder = ladder_from_table(&table, None)?;
            let mut rows: Vec<OrderRow> = ladder
                .iter()
                .map(|e| OrderRow {
                    quantity: "m_p".into(),
                    p: Some(e.p),
                    slope: e.estimate.slope,
                    residual: e.estimate.max_residual,
                    j_lo: e.estimate.window.0,
                    j_hi: e.estimate.window.1,
                })
                .collect();
            for (name, prof) in [("T", &table.t), ("log_max_modulus", &max)] {
                let est = order_fit(prof, None)?;
                rows.push(OrderRow {
                    quantity: name.into(),
                    p: None,
                    slope: est.slope,
                    residual: est.max_residual,
                    j_lo: est.window.0,
                    j_hi: est.window.1,
                });
            }
            let rho_inf = rho_infty_extrapolate(&ladder).ok();
            let mut csv = String::from("quantity,p,slope,residual,j_lo,j_hi\n");
            for r in &rows {
                let p = r.p.map(|p| format!("{p:?}")).unwrap_or_default();
                let _ = writeln!(
                    csv,
                    "{},{p},{:?},{:?},{},{}",
                    r.quantity, r.slope, r.residual, r.j_lo, r.j_hi
                );
            }
            if let Some(inf) = rho_inf {
                let _ = writeln!(csv, "rho_infinity,,{:?},,,", inf.extrapolant);
            }
            let data = json!({ "orders": rows, "rho_infinity": rho_inf });
            (csv, data, None, output)
        }
        Command::Carleson {
            source,
            grid,
            target_gamma,
            phi_resolution,
            output,
        } => {
            config.command = "carleson".into();
            config.source = Some(to_value(&source));
            config.grid = Some(to_value(&grid));
            config.extra =
                Some(json!({ "target_gamma": target_gamma, "phi_resolution": phi_resolution }));
            if !(grid.grid_scale > 0.0 && grid.grid_scale <= 1.0) || grid.j_max < grid.j_min {
                return Err(usage("carleson needs 0 < grid-scale ≤ 1 and j-min ≤ j-max"));
            }
            let zs = source.sequence()?;
            let deltas: Vec<f64> = (grid.j_min..=grid.j_max)
                .map(|j| grid.grid_scale * (-f64::from(j)).exp2())
                .collect();
            let s = source.genus.unwrap_or(0);
            let report = carleson_exponent(&zs, s, &deltas, phi_resolution, target_gamma)?;
            let mut csv = format!(
                "# gamma_fit {:?} raw_slope {:?} c1 {:?} fit_samples {}\ndelta,phi,sum\n",
                report.gamma_fit, report.raw_slope, report.c1_fit, report.fit_samples
            );
            for c in &report.samples {
                let _ = writeln!(csv, "{:?},{:?},{:?}", c.delta, c.phi, c.sum);
            }
            (csv, to_value(&report), None, output)
        }
        Command::Verify {
            only,
            seed,
            kernel_samples,
            grid,
            numerics,
            output,
        } => {
            config.command = "verify".into();
            config.grid = Some(to_value(&grid));
            config.numerics = Some(to_value(&numerics));
            config.extra =
                Some(json!({ "only": only, "seed": seed, "kernel_samples": kernel_samples }));
            let suite = SuiteConfig {
                seed,
                kernel_samples,
                j_min: grid.j_min,
                j_max: grid.j_max,
                grid_scale: grid.grid_scale,
                p_list: numerics.p_list.clone(),
                tol: numerics.tol,
            };
            let verdicts = run_suite(suite, &only, &progress)?;
            let mut csv = String::from("name,passed\n");
            for v in &verdicts {
                let _ = writeln!(csv, "{},{}", v.name, v.passed);
                progress(&format!(
                    "{}: {}",
                    v.name,
                    if v.passed { "pass" } else { "FAIL" }
                ));
            }
            let passed = verdicts.iter().all(|v| v.passed);
            (csv, to_value(&verdicts), Some(passed), output)
        }
    };
    Ok((
        Output {
            config,
            csv,
            json,
            passed,
        },
        output,
    ))
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::UnknownFamily(_) => 2,
        _ => 3,
    }
}

fn emit(mut out: Output, args: &OutputArgs) -> Result<()> {
    let format = args.format.unwrap_or_else(|| match &args.out {
        Some(p)
            if p.extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("json")) =>
        {
            OutputFormat::Json
        }
        _ => OutputFormat::Csv,
    });
    out.config.format = match format {
        OutputFormat::Csv => "csv".into(),
        OutputFormat::Json => "json".into(),
    };
    let text = match format {
        OutputFormat::Csv => header(&out.config) + &out.csv,
        OutputFormat::Json => {
            let data = std::mem::take(&mut out.json);
            let mut s = serde_json::to_string_pretty(&envelope(&out.config, data))?;
            s.push('\n');
            s
        }
    };
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn workers_of(command: &Command) -> Option<usize> {
    match command {
        Command::Gen { output, .. }
        | Command::Eval { output, .. }
        | Command::Means { output, .. }
        | Command::Orders { output, .. }
        | Command::Carleson { output, .. }
        | Command::Verify { output, .. } => output.workers,
    }
}

/// Parses `args` (program name first), runs the command and maps the outcome
/// to an exit status.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    let workers = workers_of(&cli.command);
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start workers: {e}");
            return ExitCode::from(3);
        }
    };
    let result = pool.install(|| {
        let (out, args) = run_command(cli.command)?;
        let passed = out.passed;
        emit(out, &args)?;
        Ok::<_, Error>(passed)
    });
    match result {
        Ok(Some(false)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn unknown_flag_is_rejected() {
        let err =
            Cli::try_parse_from(["discgrowth", "gen", "--family", "log2", "--bogus"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn help_lists_every_flag() {
        let mut cmd = Cli::command();
        let help = cmd
            .find_subcommand_mut("means")
            .unwrap()
            .render_long_help()
            .to_string();
        for flag in [
            "--family",
            "--count",
            "--levels",
            "--gamma",
            "--beta",
            "--c",
            "--genus",
            "--p-list",
            "--j-min",
            "--j-max",
            "--tol",
            "--workers",
            "--out",
            "--format",
        ] {
            assert!(help.contains(flag), "{flag} missing from help");
        }
    }

    #[test]
    fn gen_geometric_moduli() {
        let src = SourceArgs {
            input: None,
            family: Some("geometric".into()),
            count: Some(3),
            levels: None,
            gamma: None,
            beta: None,
            c: Some(0.5),
            q: None,
            genus: None,
        };
        let zs = src.sequence().unwrap();
        let m: Vec<f64> = zs.points().iter().map(|p| p.modulus()).collect();
        assert_eq!(m, vec![0.5, 0.75, 0.875]);
    }
}

//! Command-line front end
//!
//! One binary exposes every pipeline: exact coefficients, the four
//! exponent methods, path simulation, the Slepian reduction, the radius
//! condition, and a cross-method validation report. Output is pretty text,
//! JSON, or RFC 4180 CSV; exit codes are 0 on success, 1 when a
//! computation fails or a validation gate trips, 2 on usage errors.

use crate::coeffs::{compute_table, eval_lambda_series};
use crate::kappa::{lambda_fixed_point, radius_condition, radius_threshold};
use crate::mc::{check_args, estimate_exponent, fit_counts, survival_counts, ExponentFit};
use crate::slepian::{slepian_params, solve_a_hat};
use crate::spectral::{leading_eigen, GridSpec};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Parsed invocation: one command plus the global knobs.
#[derive(Debug, Parser)]
#[command(
    name = "ma1-persistence",
    version,
    about = "Persistence exponent of the Gaussian MA(1) process by series, spectral, fixed-point, and Monte Carlo methods"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Pretty)]
    pub output: OutputFormat,
    /// Accuracy target passed to the solvers.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Random generator key for the sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on worker threads for parallel sections.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Spectral,
    Fixedpoint,
    Mc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact series coefficients K_0..K_n in the ring Q[1/sqrt(2pi)]
    Coeffs(CoeffsArgs),
    /// Persistence exponent lambda by the chosen method
    Exponent(ExponentArgs),
    /// Monte Carlo survival frequencies, optionally with a slope fit
    Simulate(SimulateArgs),
    /// Slepian-process reduction to the (rho, b) family
    Slepian(SlepianArgs),
    /// Numeric sufficient condition for the series radius
    Radius(RadiusArgs),
    /// Cross-method agreement report over a grid of rho values
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffFormat {
    /// Full table with exact rational coefficients.
    ExactJson,
    /// One display equation per coefficient.
    Latex,
    /// Correctly rounded doubles, 17 significant digits.
    Float,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// Highest coefficient order.
    #[arg(long, default_value_t = 8)]
    pub order: usize,
    /// Coefficient rendering (independent of --output).
    #[arg(long, value_enum, default_value_t = CoeffFormat::Float)]
    pub format: CoeffFormat,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[arg(long, value_enum, default_value_t = Method::Series)]
    pub method: Method,
    /// Moving-average weight.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: f64,
    /// Barrier offset b; paths must stay at or above -b.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub threshold: f64,
    /// Series truncation order.
    #[arg(long, default_value_t = 12)]
    pub order: usize,
    /// Collocation nodes (spectral).
    #[arg(long, default_value_t = 128)]
    pub nodes: usize,
    /// Domain half-width (spectral).
    #[arg(long, default_value_t = 8.0)]
    pub domain: f64,
    /// Sample size (mc).
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    /// Horizon range for the slope fit (mc), e.g. 2..10, both ends used.
    #[arg(long, value_parser = parse_fit_range, default_value = "2..10")]
    pub fit: (u32, u32),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Moving-average weight.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: f64,
    /// Barrier offset b; paths must stay at or above -b.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub threshold: f64,
    /// Horizon N for a single estimate.
    #[arg(long, default_value_t = 10)]
    pub n: u32,
    /// Sample size.
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    /// Fit a decay rate over this horizon range (rows cover the range).
    #[arg(long, value_parser = parse_fit_range)]
    pub fit: Option<(u32, u32)>,
}

#[derive(Debug, Args)]
pub struct SlepianArgs {
    /// Barrier level a for the Slepian process; defaults to the median
    /// barrier, which reduces to threshold b = 0.
    #[arg(long, allow_negative_numbers = true)]
    pub barrier: Option<f64>,
    /// Exponent method reported when the reduction lands on b = 0.
    #[arg(long, value_enum, default_value_t = Method::Series)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    /// Truncation order of the condition's series.
    #[arg(long, default_value_t = 40)]
    pub kmax: u32,
    /// Weights to evaluate the condition at.
    #[arg(long, allow_negative_numbers = true, default_values_t = vec![0.25, 0.3, 0.32, 0.332])]
    pub rho: Vec<f64>,
    /// Also bisect for the largest certified weight.
    #[arg(long)]
    pub bisect: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Weights to check; every method must agree at each one.
    #[arg(long, value_parser = parse_rho_for_validate, allow_negative_numbers = true,
          default_values_t = vec![0.0, 0.1, -0.1, 0.2, -0.2, 0.3, 0.3186])]
    pub rho: Vec<f64>,
    /// Monte Carlo sample size per weight.
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    /// Monte Carlo fit range.
    #[arg(long, value_parser = parse_fit_range, default_value = "2..9")]
    pub fit: (u32, u32),
}

fn parse_fit_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected Nmin..Nmax")?;
    let lo: u32 = lo.trim().parse().map_err(|e| format!("bad Nmin: {e}"))?;
    let hi: u32 = hi.trim().parse().map_err(|e| format!("bad Nmax: {e}"))?;
    if lo >= hi {
        return Err(format!("fit range needs Nmin < Nmax, got {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_rho_for_validate(s: &str) -> std::result::Result<f64, String> {
    let rho: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(rho.is_finite() && rho.abs() < 0.9) {
        return Err(format!("validate needs |rho| < 0.9, got {rho}"));
    }
    Ok(rho)
}

/// Parse `argv`, execute, print, and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            // help and version ride the error path with exit code 0
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if let Some(threads) = cfg.threads {
        // only the first configuration in a process can win; later calls
        // keep the existing pool, which is the documented cap semantics
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match execute(&cfg) {
        Ok(rendered) => {
            // a closed pipe (head, less quitting early) is not a failure
            use std::io::Write;
            if writeln!(std::io::stdout(), "{}", rendered.text).is_err() {
                return 0;
            }
            i32::from(!rendered.ok)
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

struct Rendered {
    text: String,
    ok: bool,
}

impl Rendered {
    fn good(text: String) -> Self {
        Rendered { text, ok: true }
    }
}

fn execute(cfg: &RunConfig) -> Result<Rendered> {
    match &cfg.command {
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Exponent(args) => cmd_exponent(args, cfg),
        Command::Simulate(args) => cmd_simulate(args, cfg),
        Command::Slepian(args) => cmd_slepian(args, cfg),
        Command::Radius(args) => cmd_radius(args, cfg),
        Command::Validate(args) => cmd_validate(args, cfg),
    }
}

/// Scalar JSON value as plain text (strings unquoted, numbers shortest
/// round-trip form).
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// RFC 4180: quote a field when it holds a comma, quote, or line break.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

/// Render one record of (key, value) pairs in the requested format.
fn render_record(pairs: &[(&str, Value)], output: OutputFormat) -> String {
    match output {
        OutputFormat::Json => {
            let map: serde_json::Map<String, Value> =
                pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            serde_json::to_string_pretty(&Value::Object(map)).expect("serializable record")
        }
        OutputFormat::Csv => {
            let header: Vec<String> = pairs.iter().map(|(k, _)| k.to_string()).collect();
            let row: Vec<String> = pairs.iter().map(|(_, v)| plain(v)).collect();
            format!("{}\n{}", csv_line(&header), csv_line(&row))
        }
        OutputFormat::Pretty => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            pairs
                .iter()
                .map(|(k, v)| format!("{k:width$} = {}", plain(v)))
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

fn render_table(header: &[&str], rows: &[Vec<Value>], output: OutputFormat) -> String {
    match output {
        OutputFormat::Json => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let map: serde_json::Map<String, Value> = header
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), v.clone()))
                        .collect();
                    Value::Object(map)
                })
                .collect();
            serde_json::to_string_pretty(&Value::Array(objs)).expect("serializable rows")
        }
        OutputFormat::Csv => {
            let mut out = csv_line(&header.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            for row in rows {
                out.push('\n');
                out.push_str(&csv_line(&row.iter().map(plain).collect::<Vec<_>>()));
            }
            out
        }
        OutputFormat::Pretty => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            let cells: Vec<Vec<String>> =
                rows.iter().map(|row| row.iter().map(plain).collect()).collect();
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let mut out = header
                .iter()
                .zip(&widths)
                .map(|(h, w)| format!("{h:>w$}"))
                .collect::<Vec<_>>()
                .join("  ");
            for row in &cells {
                out.push('\n');
                out.push_str(
                    &row.iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  "),
                );
            }
            out
        }
    }
}

fn cmd_coeffs(args: &CoeffsArgs) -> Result<Rendered> {
    let table = compute_table(args.order);
    let text = match args.format {
        CoeffFormat::ExactJson => {
            serde_json::to_string_pretty(&table).expect("serializable table")
        }
        CoeffFormat::Latex => (0..=args.order)
            .map(|n| format!("K_{{{n}}} = {}", table.k(n).to_latex()))
            .collect::<Vec<_>>()
            .join("\n"),
        CoeffFormat::Float => (0..=args.order)
            .map(|n| format!("K_{n} = {:.16e}", table.k_float(n)))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Rendered::good(text))
}

fn require_zero_threshold(method: &str, threshold: f64) -> Result<()> {
    if threshold != 0.0 {
        return Err(Error::InvalidArgument(format!(
            "the {method} method only covers threshold 0, got {threshold}"
        )));
    }
    Ok(())
}

fn cmd_exponent(args: &ExponentArgs, cfg: &RunConfig) -> Result<Rendered> {
    let pairs: Vec<(&str, Value)> = match args.method {
        Method::Series => {
            require_zero_threshold("series", args.threshold)?;
            let (lambda, tail) = eval_lambda_series(args.rho, args.order);
            vec![
                ("method", json!("series")),
                ("rho", json!(args.rho)),
                ("threshold", json!(0.0)),
                ("lambda", json!(lambda)),
                ("order", json!(args.order)),
                ("tail_bound", json!(tail)),
            ]
        }
        Method::Spectral => {
            let grid =
                GridSpec { domain: args.domain, n_nodes: args.nodes, ..GridSpec::default() };
            let r = leading_eigen(args.rho, args.threshold, cfg.tol, grid)?;
            vec![
                ("method", json!("spectral")),
                ("rho", json!(args.rho)),
                ("threshold", json!(args.threshold)),
                ("lambda", json!(r.lambda)),
                ("residual", json!(r.residual)),
                ("iterations", json!(r.iterations)),
            ]
        }
        Method::Fixedpoint => {
            require_zero_threshold("fixedpoint", args.threshold)?;
            let (lambda, order) = lambda_fixed_point(args.rho, cfg.tol)?;
            vec![
                ("method", json!("fixedpoint")),
                ("rho", json!(args.rho)),
                ("threshold", json!(0.0)),
                ("lambda", json!(lambda)),
                ("truncation_order", json!(order)),
            ]
        }
        Method::Mc => {
            let (n_min, n_max) = args.fit;
            let fit =
                estimate_exponent(args.rho, args.threshold, n_min, n_max, args.trials, cfg.seed)?;
            vec![
                ("method", json!("mc")),
                ("rho", json!(args.rho)),
                ("threshold", json!(args.threshold)),
                ("lambda", json!(fit.lambda_hat)),
                ("ci_low", json!(fit.ci_low)),
                ("ci_high", json!(fit.ci_high)),
                ("n_min", json!(n_min)),
                ("n_max", json!(n_max)),
                ("trials", json!(args.trials)),
                ("seed", json!(cfg.seed)),
            ]
        }
    };
    Ok(Rendered::good(render_record(&pairs, cfg.output)))
}

fn cmd_simulate(args: &SimulateArgs, cfg: &RunConfig) -> Result<Rendered> {
    check_args(args.rho, args.threshold, args.trials)?;
    let (rows, fit): (Vec<(u32, u64)>, Option<ExponentFit>) = match args.fit {
        Some((n_min, n_max)) => {
            let counts = survival_counts(args.rho, args.threshold, n_max, args.trials, cfg.seed);
            let fit = fit_counts(&counts, n_min, n_max, args.trials)?;
            ((n_min..=n_max).map(|n| (n, counts[n as usize])).collect(), Some(fit))
        }
        None => {
            let counts = survival_counts(args.rho, args.threshold, args.n, args.trials, cfg.seed);
            (vec![(args.n, counts[args.n as usize])], None)
        }
    };
    let t = args.trials as f64;
    let table_rows: Vec<Vec<Value>> = rows
        .iter()
        .map(|&(n, count)| {
            let p = count as f64 / t;
            vec![json!(n), json!(p), json!((p * (1.0 - p) / t).sqrt())]
        })
        .collect();
    let header = ["n", "p_hat", "stderr"];

    let text = match cfg.output {
        OutputFormat::Json => {
            let rows_json: Vec<Value> = table_rows
                .iter()
                .map(|r| json!({"n": r[0], "p_hat": r[1], "stderr": r[2]}))
                .collect();
            let mut obj = json!({
                "rho": args.rho,
                "threshold": args.threshold,
                "trials": args.trials,
                "seed": cfg.seed,
                "rows": rows_json,
            });
            if let Some(f) = &fit {
                obj["fit"] = json!({
                    "lambda_hat": f.lambda_hat,
                    "ci_low": f.ci_low,
                    "ci_high": f.ci_high,
                    "n_range": [f.n_range.0, f.n_range.1],
                });
            }
            serde_json::to_string_pretty(&obj).expect("serializable simulate report")
        }
        OutputFormat::Csv => {
            // CSV stays a single clean table; the fit goes to stderr
            if let Some(f) = &fit {
                eprintln!(
                    "fit: lambda_hat = {} in [{}, {}] over N in [{}, {}]",
                    f.lambda_hat, f.ci_low, f.ci_high, f.n_range.0, f.n_range.1
                );
            }
            render_table(&header, &table_rows, OutputFormat::Csv)
        }
        OutputFormat::Pretty => {
            let mut out = render_table(&header, &table_rows, OutputFormat::Pretty);
            if let Some(f) = &fit {
                out.push_str(&format!(
                    "\nfit: lambda_hat = {} in [{}, {}] over N in [{}, {}]",
                    f.lambda_hat, f.ci_low, f.ci_high, f.n_range.0, f.n_range.1
                ));
            }
            out
        }
    };
    Ok(Rendered::good(text))
}

fn cmd_slepian(args: &SlepianArgs, cfg: &RunConfig) -> Result<Rendered> {
    let barrier = match args.barrier {
        Some(a) => a,
        None => solve_a_hat(cfg.tol)?,
    };
    let p = slepian_params(barrier, cfg.tol)?;
    let mut pairs: Vec<(&str, Value)> = vec![
        ("a", json!(p.a)),
        ("a_hat", json!(p.a_hat)),
        ("f1_a", json!(p.f1_a)),
        ("f2_ahat", json!(p.f2_ahat)),
        ("s", json!(p.s)),
        ("rho_hat", json!(p.rho_hat)),
        ("b", json!(p.b)),
    ];
    if p.b.abs() < 1e-9 {
        let (name, lambda) = match args.method {
            Method::Series => ("series", eval_lambda_series(p.rho_hat, 12).0),
            Method::Spectral => {
                ("spectral", leading_eigen(p.rho_hat, 0.0, cfg.tol, GridSpec::default())?.lambda)
            }
            Method::Fixedpoint => ("fixedpoint", lambda_fixed_point(p.rho_hat, cfg.tol)?.0),
            Method::Mc => {
                ("mc", estimate_exponent(p.rho_hat, 0.0, 2, 10, 1_000_000, cfg.seed)?.lambda_hat)
            }
        };
        pairs.push(("lambda", json!(lambda)));
        pairs.push(("lambda_method", json!(name)));
    }
    Ok(Rendered::good(render_record(&pairs, cfg.output)))
}

fn cmd_radius(args: &RadiusArgs, cfg: &RunConfig) -> Result<Rendered> {
    let mut rows: Vec<Vec<Value>> = Vec::new();
    for &rho in &args.rho {
        let v = radius_condition(rho, args.kmax)?;
        rows.push(vec![json!(rho), json!(v), json!(v < 0.25)]);
    }
    let threshold =
        if args.bisect { Some(radius_threshold(args.kmax, cfg.tol.max(1e-12))?) } else { None };

    let text = match cfg.output {
        OutputFormat::Json => {
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|r| json!({"rho": r[0], "condition": r[1], "certified": r[2]}))
                .collect();
            let mut obj = json!({
                "k_max": args.kmax,
                "bound": 0.25,
                "rows": rows_json,
            });
            if let Some(t) = threshold {
                obj["threshold"] = json!(t);
            }
            serde_json::to_string_pretty(&obj).expect("serializable radius report")
        }
        other => {
            let mut out = render_table(&["rho", "condition", "certified"], &rows, other);
            if let Some(t) = threshold {
                match other {
                    OutputFormat::Csv => eprintln!("threshold = {t}"),
                    _ => out.push_str(&format!("\nthreshold = {t} (condition crosses 1/4)")),
                }
            }
            out
        }
    };
    Ok(Rendered::good(text))
}

/// Absolute agreement gate for the deterministic methods.
const PAIRWISE_TOL: f64 = 1e-5;
/// Print tolerance of the reported reduction weight.
const RHO_HAT_WINDOW: f64 = 5e-4;

fn cmd_validate(args: &ValidateArgs, cfg: &RunConfig) -> Result<Rendered> {
    let table = compute_table(12);
    let rho_hat = slepian_params(0.0, 1e-12)?.rho_hat;
    let (n_min, n_max) = args.fit;

    let mut rows: Vec<Value> = Vec::new();
    let mut all_pass = true;
    for &rho in &args.rho {
        let series = table.eval_lambda(rho, 12).0;
        let spectral = leading_eigen(rho, 0.0, cfg.tol, GridSpec::default())?.lambda;
        let fixedpoint =
            if rho >= 0.0 { Some(lambda_fixed_point(rho, cfg.tol)?.0) } else { None };
        let fit = estimate_exponent(rho, 0.0, n_min, n_max, args.trials, cfg.seed)?;
        // widen the reported 95% interval to a 3-sigma band
        let se = (fit.ci_high.ln() - fit.lambda_hat.ln()) / 1.96;
        let band = (
            (fit.lambda_hat.ln() - 3.0 * se).exp(),
            (fit.lambda_hat.ln() + 3.0 * se).exp(),
        );

        let d_series_spectral = (series - spectral).abs();
        let d_fp_spectral = fixedpoint.map(|fp| (fp - spectral).abs());
        let mut failures: Vec<String> = Vec::new();
        if d_series_spectral >= PAIRWISE_TOL {
            failures.push(format!("series vs spectral differ by {d_series_spectral:.2e}"));
        }
        if let Some(d) = d_fp_spectral {
            if d >= PAIRWISE_TOL {
                failures.push(format!("fixedpoint vs spectral differ by {d:.2e}"));
            }
        }
        for (name, det) in [("series", Some(series)), ("spectral", Some(spectral)), ("fixedpoint", fixedpoint)] {
            if let Some(v) = det {
                if !(band.0 <= v && v <= band.1) {
                    failures.push(format!("mc 3-sigma band misses {name} value {v}"));
                }
            }
        }
        let pass = failures.is_empty();
        all_pass &= pass;
        let annotation = ((rho - rho_hat).abs() < RHO_HAT_WINDOW)
            .then(|| format!("Slepian reduction weight (rho_hat = {rho_hat:.8}, b = 0)"));
        rows.push(json!({
            "rho": rho,
            "series": series,
            "spectral": spectral,
            "fixedpoint": fixedpoint,
            "mc": {
                "lambda_hat": fit.lambda_hat,
                "ci_low": fit.ci_low,
                "ci_high": fit.ci_high,
                "band3_low": band.0,
                "band3_high": band.1,
            },
            "diff_series_spectral": d_series_spectral,
            "diff_fixedpoint_spectral": d_fp_spectral,
            "pass": pass,
            "failures": failures,
            "annotation": annotation,
        }));
    }

    let text = match cfg.output {
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "pairwise_tol": PAIRWISE_TOL,
            "trials": args.trials,
            "fit": [n_min, n_max],
            "seed": cfg.seed,
            "rho_hat": rho_hat,
            "rows": rows,
            "all_pass": all_pass,
        }))
        .expect("serializable validate report"),
        OutputFormat::Csv => {
            let header = [
                "rho",
                "series",
                "spectral",
                "fixedpoint",
                "mc_lambda",
                "mc_band3_low",
                "mc_band3_high",
                "pass",
                "annotation",
            ];
            let table_rows: Vec<Vec<Value>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r["rho"].clone(),
                        r["series"].clone(),
                        r["spectral"].clone(),
                        if r["fixedpoint"].is_null() {
                            json!("")
                        } else {
                            r["fixedpoint"].clone()
                        },
                        r["mc"]["lambda_hat"].clone(),
                        r["mc"]["band3_low"].clone(),
                        r["mc"]["band3_high"].clone(),
                        json!(if r["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" }),
                        if r["annotation"].is_null() {
                            json!("")
                        } else {
                            r["annotation"].clone()
                        },
                    ]
                })
                .collect();
            render_table(&header, &table_rows, OutputFormat::Csv)
        }
        OutputFormat::Pretty => {
            let mut out = String::new();
            for r in &rows {
                let rho = r["rho"].as_f64().expect("rho is numeric");
                let status = if r["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "rho = {rho}\n  series     = {}\n  spectral   = {}\n  fixedpoint = {}\n  mc         = {} in 3-sigma band [{}, {}]\n  {status}",
                    plain(&r["series"]),
                    plain(&r["spectral"]),
                    if r["fixedpoint"].is_null() { "skipped (rho < 0)".to_string() } else { plain(&r["fixedpoint"]) },
                    plain(&r["mc"]["lambda_hat"]),
                    plain(&r["mc"]["band3_low"]),
                    plain(&r["mc"]["band3_high"]),
                ));
                if let Some(note) = r["annotation"].as_str() {
                    out.push_str(&format!("  ({note})"));
                }
                for f in r["failures"].as_array().expect("failures array") {
                    out.push_str(&format!("\n  failure: {}", plain(f)));
                }
                out.push('\n');
            }
            out.push_str(if all_pass { "all methods agree" } else { "DISAGREEMENT FOUND" });
            out
        }
    };
    Ok(Rendered { text, ok: all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(argv: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(argv).expect("argv parses")
    }

    #[test]
    fn exponent_defaults_fill_in() {
        let cfg = parse(&["ma1-persistence", "exponent", "--method", "series", "--rho", "0.2"]);
        assert_eq!(cfg.tol, 1e-8);
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.output, OutputFormat::Pretty);
        match cfg.command {
            Command::Exponent(args) => {
                assert_eq!(args.method, Method::Series);
                assert_eq!(args.rho, 0.2);
                assert_eq!(args.threshold, 0.0);
                assert_eq!(args.order, 12);
            }
            other => panic!("wrong command: {other:?}"),
        }
    }

    #[test]
    fn radius_bisect_flag_parses() {
        let cfg = parse(&["ma1-persistence", "radius", "--bisect"]);
        match cfg.command {
            Command::Radius(args) => {
                assert!(args.bisect);
                assert_eq!(args.kmax, 40);
            }
            other => panic!("wrong command: {other:?}"),
        }
    }

    #[test]
    fn bad_numbers_and_unknown_flags_are_usage_errors() {
        for argv in [
            vec!["ma1-persistence", "exponent", "--rho", "abc"],
            vec!["ma1-persistence", "exponent", "--rho", "0.2", "--frobnicate"],
            vec!["ma1-persistence", "validate", "--rho", "0.95"],
            vec!["ma1-persistence", "simulate", "--rho", "0.2", "--fit", "9..5"],
        ] {
            let err = RunConfig::try_parse_from(&argv).expect_err("must reject");
            assert_eq!(err.exit_code(), 2, "argv {argv:?}");
        }
    }

    #[test]
    fn negative_rho_values_parse() {
        let cfg = parse(&["ma1-persistence", "exponent", "--rho", "-0.25"]);
        match cfg.command {
            Command::Exponent(args) => assert_eq!(args.rho, -0.25),
            other => panic!("wrong command: {other:?}"),
        }
    }

    #[test]
    fn full_precision_round_trip_through_parsing() {
        let value = 0.123_456_789_012_345_67f64;
        let text = format!("{value}");
        let cfg = parse(&["ma1-persistence", "exponent", "--rho", &text]);
        match cfg.command {
            Command::Exponent(args) => assert_eq!(args.rho.to_bits(), value.to_bits()),
            other => panic!("wrong command: {other:?}"),
        }
    }

    #[test]
    fn csv_quoting_follows_rfc_4180() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("with,comma"), "\"with,comma\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_field("line\nbreak"), "\"line\nbreak\"");
    }

    #[test]
    fn record_rendering_shapes() {
        let pairs =
            [("method", json!("series")), ("lambda", json!(0.5)), ("note", json!("a,b"))];
        let json_text = render_record(&pairs, OutputFormat::Json);
        let v: Value = serde_json::from_str(&json_text).unwrap();
        assert_eq!(v["lambda"], json!(0.5));
        let csv_text = render_record(&pairs, OutputFormat::Csv);
        assert_eq!(csv_text, "method,lambda,note\nseries,0.5,\"a,b\"");
        let pretty = render_record(&pairs, OutputFormat::Pretty);
        assert!(pretty.contains("lambda = 0.5"));
    }
}

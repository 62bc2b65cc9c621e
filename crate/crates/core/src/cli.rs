//! `rankbench` command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O failure, 3 internal
//! failure (eigenvector iteration did not converge).

use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::ahp::{AhpOptions, ConsistencyReport, PowerIteration};
use crate::error::{Error, ErrorClass, Result};
use crate::io::{
    agreement_summary, bundled, load_catalog_file, load_pairwise_matrix_file, load_scenarios_file,
    save_report, ReportFormat, RunConfig,
};
use crate::model::{validate_weights, ServiceCatalog};
use crate::ranking::Method;
use crate::scenario::{
    format_score, rank_flips, run_scenarios, sweep_weights_with, Scenario, SweepPoint,
};

/// Environment variable naming a JSON [`RunConfig`] file.
pub const CONFIG_ENV: &str = "RANKBENCH_CONFIG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rankbench", version, about = "Rank service alternatives with AHP and SAW")]
pub struct Cli {
    /// JSON run configuration; command-line flags override it.
    #[arg(long, env = CONFIG_ENV, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank the catalog under one scenario or inline weights.
    Rank(RankArgs),
    /// Run several scenarios and report rank agreement between methods.
    Compare(CompareArgs),
    /// Move one criterion weight across a range of values and re-rank.
    Sweep(SweepArgs),
    /// Print the consistency report of a pairwise comparison matrix.
    CheckConsistency(CheckArgs),
    /// Serve the HTTP API on loopback.
    Serve(ServeArgs),
    /// Run the four built-in scenarios on the desk catalog.
    ReproducePaper(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Catalog JSON file (defaults to the bundled desk catalog).
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Report format: table, csv or json.
    #[arg(long)]
    pub format: Option<ReportFormat>,
    /// Write the report into this directory instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Clamp derived comparison entries to the Saaty [1/9, 9] range.
    #[arg(long)]
    pub clamp_saaty: bool,
    /// Power-iteration convergence tolerance.
    #[arg(long)]
    pub eigen_tolerance: Option<f64>,
    /// Power-iteration cap.
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Prefix table output with a generation timestamp.
    #[arg(long)]
    pub timestamps: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Built-in scenario name (sim1..sim4) or scenario file path.
    #[arg(long, conflicts_with = "weights")]
    pub scenario: Option<String>,
    /// Inline weights as ID=VALUE; criteria left out are dropped from the ranking.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub weights: Vec<String>,
    /// Restrict to one method (repeatable).
    #[arg(long)]
    pub method: Vec<Method>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Built-in names or scenario files (repeatable); defaults to all built-ins.
    #[arg(long)]
    pub scenario: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Base scenario (built-in name or file).
    #[arg(long, default_value = "sim1")]
    pub scenario: String,
    /// Criterion whose weight is swept.
    #[arg(long)]
    pub criterion: String,
    /// Explicit sweep values.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["from", "to", "steps"])]
    pub values: Vec<f64>,
    #[arg(long)]
    pub from: Option<f64>,
    #[arg(long)]
    pub to: Option<f64>,
    /// Number of evenly spaced points from --from to --to inclusive.
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Pairwise matrix JSON: {"ids": [...], "entries": [[...]]}.
    pub matrix: PathBuf,
    #[arg(long)]
    pub format: Option<ReportFormat>,
    #[arg(long)]
    pub eigen_tolerance: Option<f64>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[arg(long)]
    pub serve_port: Option<u16>,
    #[arg(long)]
    pub clamp_saaty: bool,
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_VALIDATION
                }
            };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Validation => EXIT_VALIDATION,
        ErrorClass::Io => EXIT_IO,
        ErrorClass::Internal => EXIT_INTERNAL,
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let config = match &cli.config {
        Some(path) => RunConfig::load_file(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Rank(args) => cmd_rank(&config, args, out, err),
        Command::Compare(args) => cmd_compare(&config, args, out),
        Command::Sweep(args) => cmd_sweep(&config, args, out),
        Command::CheckConsistency(args) => cmd_check_consistency(&config, args, out, err),
        Command::Serve(args) => cmd_serve(&config, args, err),
        Command::ReproducePaper(args) => cmd_reproduce_paper(&config, args, out, err),
    }
}

struct Resolved {
    catalog: ServiceCatalog,
    format: ReportFormat,
    output: Option<PathBuf>,
    options: AhpOptions,
    timestamps: bool,
}

fn resolve(config: &RunConfig, common: &CommonArgs) -> Result<Resolved> {
    let catalog = match common.catalog.as_ref().or(config.catalog.as_ref()) {
        Some(path) => load_catalog_file(path)?,
        None => bundled::desk_catalog()?,
    };
    Ok(Resolved {
        catalog,
        format: common.format.or(config.format).unwrap_or_default(),
        output: common.output.clone().or_else(|| config.output_dir.clone()),
        options: ahp_options(
            config,
            common.clamp_saaty,
            common.eigen_tolerance,
            common.max_iterations,
        )?,
        timestamps: common.timestamps,
    })
}

fn ahp_options(
    config: &RunConfig,
    clamp: bool,
    tolerance: Option<f64>,
    max_iterations: Option<usize>,
) -> Result<AhpOptions> {
    let base = config.power_iteration()?;
    let power = PowerIteration {
        tolerance: tolerance.unwrap_or(base.tolerance),
        max_iterations: max_iterations.unwrap_or(base.max_iterations),
    };
    power.validate()?;
    Ok(AhpOptions {
        power,
        saaty_clamp: clamp || config.saaty_clamp,
    })
}

/// Resolves a built-in scenario name, or else reads a scenario file.
fn resolve_scenarios(spec: &str, catalog: &ServiceCatalog) -> Result<Vec<Scenario>> {
    if let Ok(builtins) = bundled::builtin_scenarios(catalog.criteria()) {
        if let Some(s) = builtins.into_iter().find(|s| s.name == spec) {
            return Ok(vec![s]);
        }
    }
    let path = Path::new(spec);
    if !path.exists() && !spec.contains(['/', '\\', '.']) {
        return Err(Error::UnknownScenario(spec.to_owned()));
    }
    load_scenarios_file(path, catalog.criteria())
}

fn parse_inline_weights(pairs: &[String]) -> Result<Vec<(String, f64)>> {
    pairs
        .iter()
        .map(|p| {
            let (id, value) = p
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected ID=VALUE, got `{p}`")))?;
            let value = value
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("bad weight `{p}`: {e}")))?;
            Ok((id.trim().to_owned(), value))
        })
        .collect()
}

fn emit(
    res: &Resolved,
    name: &str,
    body: &[u8],
    out: &mut dyn Write,
) -> Result<()> {
    let mut text = Vec::new();
    if res.timestamps && res.format == ReportFormat::Table {
        writeln!(text, "# generated {}", chrono::Utc::now().to_rfc3339())
            .map_err(|e| Error::SinkWrite(e.to_string()))?;
    }
    text.extend_from_slice(body);
    match &res.output {
        Some(dir) => {
            let io_err = |e: std::io::Error| Error::Io {
                path: dir.display().to_string(),
                message: e.to_string(),
            };
            std::fs::create_dir_all(dir).map_err(io_err)?;
            let path = dir.join(format!("{name}.{}", res.format.extension()));
            std::fs::write(&path, &text).map_err(|e| Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            writeln!(out, "wrote {}", path.display()).map_err(|e| Error::SinkWrite(e.to_string()))
        }
        None => out
            .write_all(&text)
            .map_err(|e| Error::SinkWrite(e.to_string())),
    }
}

pub fn cmd_rank(
    config: &RunConfig,
    args: RankArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let mut res = resolve(config, &args.common)?;
    let scenario = if !args.weights.is_empty() {
        let raw = parse_inline_weights(&args.weights)?;
        let ids: Vec<&str> = raw.iter().map(|(k, _)| k.as_str()).collect();
        if ids.len() < res.catalog.criteria().len() {
            res.catalog = res.catalog.project(&ids)?;
            let _ = writeln!(
                err,
                "note: ranking on {} of the catalog's criteria ({})",
                ids.len(),
                ids.join(", ")
            );
        }
        let weights = validate_weights(raw.iter().map(|(k, v)| (k, *v)), res.catalog.criteria())?;
        Scenario::new("inline", weights, Method::ALL)?
    } else {
        let spec = args
            .scenario
            .or_else(|| config.scenarios.first().cloned())
            .ok_or_else(|| Error::Config("rank needs --scenario or --weights".into()))?;
        let mut found = resolve_scenarios(&spec, &res.catalog)?;
        if found.len() != 1 {
            return Err(Error::Config(format!(
                "`{spec}` holds {} scenarios; rank takes one (use compare)",
                found.len()
            )));
        }
        found.remove(0)
    };
    let scenario = if args.method.is_empty() {
        scenario
    } else {
        let notes = scenario.notes.clone();
        let s = Scenario::new(scenario.name, scenario.weights, args.method)?;
        match notes {
            Some(n) => s.with_notes(n),
            None => s,
        }
    };
    let comparisons = run_scenarios(&res.catalog, std::slice::from_ref(&scenario), &res.options)?;
    let mut body = Vec::new();
    save_report(&comparisons, res.format, &mut body)?;
    emit(&res, "rank", &body, out)
}

pub fn cmd_compare(config: &RunConfig, args: CompareArgs, out: &mut dyn Write) -> Result<()> {
    let res = resolve(config, &args.common)?;
    let specs = if !args.scenario.is_empty() {
        args.scenario.clone()
    } else {
        config.scenarios.clone()
    };
    let scenarios = if specs.is_empty() {
        bundled::builtin_scenarios(res.catalog.criteria())?
    } else {
        let mut all = Vec::new();
        for s in &specs {
            all.extend(resolve_scenarios(s, &res.catalog)?);
        }
        all
    };
    let comparisons = run_scenarios(&res.catalog, &scenarios, &res.options)?;
    let mut body = Vec::new();
    save_report(&comparisons, res.format, &mut body)?;
    if res.format == ReportFormat::Table {
        body.extend_from_slice(format!("\n{}\n", agreement_summary(&comparisons)).as_bytes());
    }
    emit(&res, "compare", &body, out)
}

fn sweep_values(args: &SweepArgs) -> Result<Vec<f64>> {
    if !args.values.is_empty() {
        return Ok(args.values.clone());
    }
    match (args.from, args.to, args.steps) {
        (Some(from), Some(to), Some(steps)) if steps >= 2 => Ok((0..steps)
            .map(|k| from + (to - from) * k as f64 / (steps - 1) as f64)
            .collect()),
        (Some(from), Some(_), Some(1)) => Ok(vec![from]),
        _ => Err(Error::Config(
            "sweep needs --values or all of --from, --to and --steps".into(),
        )),
    }
}

pub fn cmd_sweep(config: &RunConfig, args: SweepArgs, out: &mut dyn Write) -> Result<()> {
    let res = resolve(config, &args.common)?;
    let mut base = resolve_scenarios(&args.scenario, &res.catalog)?;
    if base.len() != 1 {
        return Err(Error::Config(format!(
            "`{}` holds {} scenarios; sweep takes one base scenario",
            args.scenario,
            base.len()
        )));
    }
    let base = base.remove(0);
    let values = sweep_values(&args)?;
    let points = sweep_weights_with(&res.catalog, &base, &args.criterion, &values, &res.options)?;
    let body = render_sweep(&base, &args.criterion, &points, res.format)?;
    emit(&res, "sweep", &body, out)
}

fn order_string(p: &SweepPoint, method: Method) -> String {
    match &p.outcome {
        Ok(c) => c
            .ranking(method)
            .map(|r| r.order().join(" > "))
            .unwrap_or_default(),
        Err(_) => String::new(),
    }
}

fn render_sweep(
    base: &Scenario,
    criterion: &str,
    points: &[SweepPoint],
    format: ReportFormat,
) -> Result<Vec<u8>> {
    let sink = |e: std::io::Error| Error::SinkWrite(e.to_string());
    let mut buf = Vec::new();
    match format {
        ReportFormat::Table => {
            writeln!(buf, "Sweep of `{criterion}` weight from scenario {}", base.name).map_err(sink)?;
            let widths: Vec<usize> = base
                .methods
                .iter()
                .map(|&m| {
                    points
                        .iter()
                        .map(|p| order_string(p, m).len())
                        .max()
                        .unwrap_or(0)
                        .max(m.as_str().len())
                })
                .collect();
            let mut header = format!("{:<8}", "weight");
            for (m, w) in base.methods.iter().zip(&widths) {
                header.push_str(&format!("  {:<w$}", m.as_str()));
            }
            header.push_str("  tau");
            writeln!(buf, "{}", header.trim_end()).map_err(sink)?;
            for p in points {
                let mut line = format!("{:<8}", format_score(p.value));
                match &p.outcome {
                    Ok(c) => {
                        for (m, w) in base.methods.iter().zip(&widths) {
                            line.push_str(&format!("  {:<w$}", order_string(p, *m)));
                        }
                        if let Some(t) = c.kendall_tau {
                            line.push_str(&format!("  {t:.4}"));
                        }
                    }
                    Err(e) => line.push_str(&format!("  error: {e}")),
                }
                writeln!(buf, "{}", line.trim_end()).map_err(sink)?;
            }
            for &m in &base.methods {
                for (a, b) in rank_flips(points, m) {
                    writeln!(
                        buf,
                        "{m} rank order changes between {} and {}",
                        format_score(a),
                        format_score(b)
                    )
                    .map_err(sink)?;
                }
            }
        }
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::CRLF)
                .from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::SinkWrite(e.to_string());
            let mut header = vec!["criterion".to_owned(), "weight".to_owned()];
            header.extend(base.methods.iter().map(|m| format!("{m} order")));
            header.extend(["kendall tau".to_owned(), "error".to_owned()]);
            w.write_record(&header).map_err(csv_err)?;
            for p in points {
                let mut rec = vec![criterion.to_owned(), p.value.to_string()];
                rec.extend(base.methods.iter().map(|&m| order_string(p, m)));
                match &p.outcome {
                    Ok(c) => {
                        rec.push(c.kendall_tau.map(|t| format!("{t:.4}")).unwrap_or_default());
                        rec.push(String::new());
                    }
                    Err(e) => {
                        rec.push(String::new());
                        rec.push(e.to_string());
                    }
                }
                w.write_record(&rec).map_err(csv_err)?;
            }
            buf = w.into_inner().map_err(|e| Error::SinkWrite(e.to_string()))?;
        }
        ReportFormat::Json => {
            let entries: Vec<serde_json::Value> = points
                .iter()
                .map(|p| match &p.outcome {
                    Ok(c) => serde_json::json!({ "value": p.value, "comparison": c }),
                    Err(e) => serde_json::json!({
                        "value": p.value,
                        "error": { "code": e.code(), "message": e.to_string() }
                    }),
                })
                .collect();
            let doc = serde_json::json!({
                "base": base.name,
                "criterion": criterion,
                "points": entries,
            });
            serde_json::to_writer_pretty(&mut buf, &doc).map_err(|e| Error::SinkWrite(e.to_string()))?;
            buf.push(b'\n');
        }
    }
    Ok(buf)
}

/// Formats a number at 4 decimals without printing `-0.0000`.
fn fixed4(v: f64) -> String {
    let s = format_score(v);
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

pub fn render_consistency(report: &ConsistencyReport) -> String {
    let verdict = if report.acceptable {
        "acceptable (CR < 0.1)"
    } else {
        "not acceptable (CR >= 0.1)"
    };
    format!(
        "n           {}\nlambda_max  {}\nCI          {}\nRI          {}\nCR          {}\nverdict     {}\n",
        report.n,
        fixed4(report.lambda_max),
        fixed4(report.consistency_index),
        fixed4(report.random_index),
        fixed4(report.consistency_ratio),
        verdict
    )
}

pub fn cmd_check_consistency(
    config: &RunConfig,
    args: CheckArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let power = ahp_options(config, false, args.eigen_tolerance, args.max_iterations)?.power;
    let matrix = load_pairwise_matrix_file(&args.matrix)?;
    let report = power.consistency(&matrix)?;
    for w in report.warnings() {
        let _ = writeln!(err, "warning: {w}");
    }
    let text = match args.format.or(config.format).unwrap_or_default() {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::SinkWrite(e.to_string()))?;
            s.push('\n');
            s
        }
        ReportFormat::Csv => format!(
            "n,lambda_max,ci,ri,cr,acceptable\r\n{},{},{},{},{},{}\r\n",
            report.n,
            report.lambda_max,
            report.consistency_index,
            report.random_index,
            report.consistency_ratio,
            report.acceptable
        ),
        ReportFormat::Table => render_consistency(&report),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::SinkWrite(e.to_string()))
}

pub fn cmd_serve(config: &RunConfig, args: ServeArgs, err: &mut dyn Write) -> Result<()> {
    let options = ahp_options(config, args.clamp_saaty, None, None)?;
    let state = match args.catalog.as_ref().or(config.catalog.as_ref()) {
        Some(path) => crate::api::AppState::from_file(path.clone(), options)?,
        None => crate::api::AppState::with_catalog(bundled::desk_catalog()?, options),
    };
    let port = args.serve_port.or(config.serve_port).unwrap_or(8080);
    let io_err = |e: std::io::Error| Error::Io {
        path: format!("127.0.0.1:{port}"),
        message: e.to_string(),
    };
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(io_err)?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(("127.0.0.1", port))
            .await
            .map_err(io_err)?;
        let addr = listener.local_addr().map_err(io_err)?;
        let _ = writeln!(err, "serving on http://{addr}/api/v1");
        crate::api::serve(listener, state).await.map_err(io_err)
    })
}

pub fn cmd_reproduce_paper(
    config: &RunConfig,
    args: CommonArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let res = resolve(config, &args)?;
    let scenarios = bundled::builtin_scenarios(res.catalog.criteria())?;
    let comparisons = run_scenarios(&res.catalog, &scenarios, &res.options)?;
    let mut body = Vec::new();
    save_report(&comparisons, res.format, &mut body)?;
    let summary = agreement_summary(&comparisons);
    if res.format == ReportFormat::Table {
        body.extend_from_slice(format!("\n{summary}\n").as_bytes());
    } else {
        let _ = writeln!(err, "{summary}");
    }
    emit(&res, "reproduce-paper", &body, out)
}

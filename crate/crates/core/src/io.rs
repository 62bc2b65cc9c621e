//! Catalog, scenario, pairwise-matrix and report documents, plus run
//! configuration.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};

use crate::ahp::{PairwiseMatrix, PowerIteration};
use crate::error::{Error, Result};
use crate::model::{
    validate_weights, Criterion, DecisionMatrix, ServiceCatalog, ServiceProfile,
};
use crate::ranking::Method;
use crate::scenario::{rank_table, MethodComparison, Scenario};

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk catalog layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDocument {
    pub schema_version: u32,
    pub criteria: Vec<Criterion>,
    pub services: Vec<ServiceProfile>,
}

impl CatalogDocument {
    pub fn into_catalog(self) -> Result<ServiceCatalog> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersionUnsupported(self.schema_version));
        }
        ServiceCatalog::new(self.criteria, self.services).map_err(|e| match e {
            Error::MissingCriterion {
                owner: Some(ref s),
                ref criterion,
            }
            | Error::UnknownCriterion {
                owner: Some(ref s),
                ref criterion,
            } => {
                let entity = format!("service `{s}` criterion `{criterion}`");
                e.in_entity(entity)
            }
            Error::Validation { .. } => e,
            other => other.in_entity("catalog"),
        })
    }
}

impl From<&ServiceCatalog> for CatalogDocument {
    fn from(c: &ServiceCatalog) -> Self {
        CatalogDocument {
            schema_version: SCHEMA_VERSION,
            criteria: c.criteria().to_vec(),
            services: c.services().to_vec(),
        }
    }
}

fn read_all(mut source: impl Read, what: &str) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    source.read_to_end(&mut buf).map_err(|e| Error::Io {
        path: what.to_owned(),
        message: e.to_string(),
    })?;
    Ok(buf)
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_catalog(source: impl Read) -> Result<ServiceCatalog> {
    let bytes = read_all(source, "catalog stream")?;
    let doc: CatalogDocument = serde_json::from_slice(&bytes)?;
    doc.into_catalog()
}

pub fn load_catalog_file(path: impl AsRef<Path>) -> Result<ServiceCatalog> {
    load_catalog(open(path.as_ref())?)
}

pub fn save_catalog(catalog: &ServiceCatalog, mut sink: impl Write) -> Result<()> {
    let doc = CatalogDocument::from(catalog);
    serde_json::to_writer_pretty(&mut sink, &doc).map_err(|e| Error::SinkWrite(e.to_string()))?;
    writeln!(sink).map_err(|e| Error::SinkWrite(e.to_string()))
}

/// One entry of a scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub name: String,
    pub weights: IndexMap<String, f64>,
    #[serde(default = "default_methods")]
    pub methods: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

fn default_methods() -> Vec<String> {
    Method::ALL.iter().map(|m| m.as_str().to_owned()).collect()
}

impl ScenarioDocument {
    pub fn into_scenario(self, criteria: &[Criterion]) -> Result<Scenario> {
        let name = self.name.clone();
        let entity = || format!("scenario `{name}`");
        if let Some(cr) = self.cr {
            if !(cr.is_finite() && cr >= 0.0) {
                return Err(Error::Config(format!("cr must be nonnegative, got {cr}"))
                    .in_entity(entity()));
            }
        }
        let weights = validate_weights(self.weights.iter().map(|(k, v)| (k, *v)), criteria)
            .map_err(|e| e.in_entity(entity()))?
            .with_consistency_ratio(self.cr);
        let methods = self
            .methods
            .iter()
            .map(|m| m.parse::<Method>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.in_entity(entity()))?;
        let scenario =
            Scenario::new(self.name, weights, methods).map_err(|e| e.in_entity(entity()))?;
        Ok(match self.notes {
            Some(n) => scenario.with_notes(n),
            None => scenario,
        })
    }
}

impl From<&Scenario> for ScenarioDocument {
    fn from(s: &Scenario) -> Self {
        ScenarioDocument {
            name: s.name.clone(),
            weights: s.weights.as_map().clone(),
            methods: s.methods.iter().map(|m| m.as_str().to_owned()).collect(),
            cr: s.cr(),
            notes: s.notes.clone(),
        }
    }
}

/// Reads a JSON list of scenarios and validates each weight row against `criteria`.
pub fn load_scenarios(source: impl Read, criteria: &[Criterion]) -> Result<Vec<Scenario>> {
    let bytes = read_all(source, "scenario stream")?;
    let docs: Vec<ScenarioDocument> = serde_json::from_slice(&bytes)?;
    if docs.is_empty() {
        return Err(Error::EmptyDocument);
    }
    let mut seen = std::collections::HashSet::new();
    for d in &docs {
        if !seen.insert(d.name.as_str()) {
            return Err(Error::DuplicateId {
                kind: "scenario",
                id: d.name.clone(),
            });
        }
    }
    docs.into_iter().map(|d| d.into_scenario(criteria)).collect()
}

pub fn load_scenarios_file(path: impl AsRef<Path>, criteria: &[Criterion]) -> Result<Vec<Scenario>> {
    load_scenarios(open(path.as_ref())?, criteria)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairwiseDocument {
    #[serde(default)]
    ids: Option<Vec<String>>,
    entries: Vec<Vec<f64>>,
}

/// Reads `{"ids": [...], "entries": [[...], ...]}`; `ids` defaults to `1..=n`.
pub fn load_pairwise_matrix(source: impl Read) -> Result<PairwiseMatrix> {
    let bytes = read_all(source, "matrix stream")?;
    let doc: PairwiseDocument = serde_json::from_slice(&bytes)?;
    let ids = doc
        .ids
        .unwrap_or_else(|| (1..=doc.entries.len()).map(|i| i.to_string()).collect());
    PairwiseMatrix::new(ids, doc.entries)
}

pub fn load_pairwise_matrix_file(path: impl AsRef<Path>) -> Result<PairwiseMatrix> {
    load_pairwise_matrix(open(path.as_ref())?)
}

/// Reads a decision matrix from CSV: a header `id,<criterion>...` followed by
/// one row per alternative.
pub fn read_decision_matrix_csv(source: impl Read) -> Result<DecisionMatrix> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let csv_err = |e: csv::Error| {
        let (line, column) = e
            .position()
            .map(|p| (p.line() as usize, 0))
            .unwrap_or((0, 0));
        Error::Parse {
            line,
            column,
            message: e.to_string(),
        }
    };
    let headers = reader.headers().map_err(csv_err)?.clone();
    let cols: Vec<String> = headers.iter().skip(1).map(String::from).collect();
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let mut fields = record.iter();
        let id = fields.next().unwrap_or_default().to_owned();
        let row = fields
            .enumerate()
            .map(|(j, f)| {
                f.parse::<f64>().map_err(|e| Error::Parse {
                    line,
                    column: j + 2,
                    message: format!("`{f}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(id);
        values.push(row);
    }
    DecisionMatrix::new(rows, cols, values)
}

/// Combines criteria metadata with a decision matrix read from CSV.
pub fn catalog_from_matrix(criteria: Vec<Criterion>, matrix: &DecisionMatrix) -> Result<ServiceCatalog> {
    let services = matrix
        .rows()
        .iter()
        .zip(matrix.values())
        .map(|(id, row)| {
            ServiceProfile::new(id.clone(), id.clone(), matrix.cols().iter().cloned().zip(row.iter().copied()))
        })
        .collect();
    ServiceCatalog::new(criteria, services)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    /// Human-readable table text.
    #[default]
    Table,
    /// CSV (RFC 4180).
    Csv,
    /// Structured JSON.
    Json,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Table => "txt",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" | "table-text" | "text" => Ok(ReportFormat::Table),
            "csv" | "delimited" => Ok(ReportFormat::Csv),
            "json" | "structured" => Ok(ReportFormat::Json),
            other => Err(Error::Config(format!(
                "unknown report format `{other}` (expected table, csv or json)"
            ))),
        }
    }
}

/// Writes the comparisons to `sink`. Output is a pure function of the input.
pub fn save_report(
    comparisons: &[MethodComparison],
    format: ReportFormat,
    mut sink: impl Write,
) -> Result<()> {
    if comparisons.is_empty() {
        return Err(Error::EmptyReport);
    }
    let text = match format {
        ReportFormat::Table => render_table_text(comparisons),
        ReportFormat::Csv => render_csv(comparisons)?,
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(comparisons)
                .map_err(|e| Error::SinkWrite(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    sink.write_all(text.as_bytes())
        .and_then(|_| sink.flush())
        .map_err(|e| Error::SinkWrite(e.to_string()))
}

fn render_table_text(comparisons: &[MethodComparison]) -> String {
    let mut out = String::new();
    for (k, c) in comparisons.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let table = rank_table(c);
        out.push_str(&table.title);
        out.push('\n');

        let labels: Vec<Vec<String>> = table
            .rows
            .iter()
            .map(|r| r.cells.iter().map(|cell| cell.label()).collect())
            .collect();
        let id_width = table
            .rows
            .iter()
            .map(|r| r.alternative.chars().count())
            .max()
            .unwrap_or(0)
            .max(2);
        let col_widths: Vec<usize> = table
            .methods
            .iter()
            .enumerate()
            .map(|(m, method)| {
                labels
                    .iter()
                    .map(|row| row[m].chars().count())
                    .chain(std::iter::once(method.as_str().len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();

        let mut header = format!("{:id_width$}", "");
        for (method, w) in table.methods.iter().zip(&col_widths) {
            header.push_str(&format!("  {:<w$}", method.as_str()));
        }
        out.push_str(header.trim_end());
        out.push('\n');
        for (row, cells) in table.rows.iter().zip(&labels) {
            let mut line = format!("{:<id_width$}", row.alternative);
            for (cell, w) in cells.iter().zip(&col_widths) {
                line.push_str(&format!("  {cell:<w$}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        if let (Some(tau), Some(exact), Some(top)) =
            (c.kendall_tau, c.exact_rank_match, c.top_choice_agrees)
        {
            out.push_str(&format!(
                "Agreement: kendall tau = {:.4}, exact rank match = {}, top choice agrees = {}\n",
                tau,
                yes_no(exact),
                yes_no(top)
            ));
        }
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_csv(comparisons: &[MethodComparison]) -> Result<String> {
    let mut out = Vec::new();
    for (k, c) in comparisons.iter().enumerate() {
        if k > 0 {
            out.push(b'\n');
        }
        let table = rank_table(c);
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        let mut header = vec!["scenario".to_owned(), "alternative".to_owned()];
        for m in &table.methods {
            header.push(format!("{m} score"));
            header.push(format!("{m} rank"));
        }
        let sink_err = |e: csv::Error| Error::SinkWrite(e.to_string());
        w.write_record(&header).map_err(sink_err)?;
        for row in &table.rows {
            let mut record = vec![c.scenario.name.clone(), row.alternative.clone()];
            for cell in &row.cells {
                record.push(crate::scenario::format_score(cell.score));
                record.push(cell.rank.to_string());
            }
            w.write_record(&record).map_err(sink_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::SinkWrite(e.to_string()))?;
        out.extend_from_slice(&bytes);
    }
    String::from_utf8(out).map_err(|e| Error::SinkWrite(e.to_string()))
}

/// Summary line stating whether every comparison has identical AHP and SAW
/// rank orders.
pub fn agreement_summary(comparisons: &[MethodComparison]) -> String {
    let compared: Vec<_> = comparisons
        .iter()
        .filter(|c| c.exact_rank_match.is_some())
        .collect();
    let matching = compared
        .iter()
        .filter(|c| c.exact_rank_match == Some(true))
        .count();
    if matching == compared.len() {
        format!(
            "{matching}/{} scenarios: AHP and SAW rank orders identical",
            compared.len()
        )
    } else {
        let differing: Vec<&str> = compared
            .iter()
            .filter(|c| c.exact_rank_match != Some(true))
            .map(|c| c.scenario.name.as_str())
            .collect();
        format!(
            "{matching}/{} scenarios: AHP and SAW rank orders identical (differ: {})",
            compared.len(),
            differing.join(", ")
        )
    }
}

/// Settings shared by CLI commands and the server. Every field is optional in
/// the file; command-line flags take precedence.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub catalog: Option<PathBuf>,
    pub scenarios: Vec<String>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<ReportFormat>,
    pub saaty_clamp: bool,
    pub eigen_tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
    pub serve_port: Option<u16>,
}

impl RunConfig {
    pub fn load(source: impl Read) -> Result<RunConfig> {
        let bytes = read_all(source, "config stream")?;
        let cfg: RunConfig = serde_json::from_slice(&bytes)?;
        cfg.power_iteration()?;
        Ok(cfg)
    }

    pub fn load_file(path: impl AsRef<Path>) -> Result<RunConfig> {
        RunConfig::load(open(path.as_ref())?)
    }

    pub fn power_iteration(&self) -> Result<PowerIteration> {
        let d = PowerIteration::default();
        let p = PowerIteration {
            tolerance: self.eigen_tolerance.unwrap_or(d.tolerance),
            max_iterations: self.max_iterations.unwrap_or(d.max_iterations),
        };
        p.validate()?;
        Ok(p)
    }
}

/// Data files compiled into the library.
pub mod bundled {
    use super::*;

    pub const DESK_CATALOG: &str = include_str!("../data/desk_catalog.json");
    pub const SCENARIOS: &str = include_str!("../data/scenarios.json");

    pub fn desk_catalog() -> Result<ServiceCatalog> {
        load_catalog(DESK_CATALOG.as_bytes())
    }

    /// The four built-in weight scenarios `sim1`..`sim4`.
    pub fn builtin_scenarios(criteria: &[Criterion]) -> Result<Vec<Scenario>> {
        load_scenarios(SCENARIOS.as_bytes(), criteria)
    }
}

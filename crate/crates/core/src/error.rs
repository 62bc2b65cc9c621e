use thiserror::Error;

/// Errors produced anywhere in the ranking pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("missing value for criterion `{criterion}`{}", owner_suffix(.owner))]
    MissingCriterion {
        criterion: String,
        owner: Option<String>,
    },

    #[error("unknown criterion `{criterion}`{}", owner_suffix(.owner))]
    UnknownCriterion {
        criterion: String,
        owner: Option<String>,
    },

    #[error("weight for `{criterion}` must be in (0, 1], got {value}")]
    NonPositiveWeight { criterion: String, value: f64 },

    #[error("weights must sum to 1 (within 1e-5), got {sum}")]
    SumNotOne { sum: f64 },

    #[error("column is empty")]
    EmptyColumn,

    #[error("value {value} at position {index} must be strictly positive and finite{}", owner_suffix(.owner))]
    NonPositiveValue {
        index: usize,
        value: f64,
        owner: Option<String>,
    },

    #[error("catalog needs at least 2 services and 1 criterion, got {services} services and {criteria} criteria")]
    CatalogTooSmall { services: usize, criteria: usize },

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("empty {kind} id")]
    EmptyId { kind: &'static str },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("pairwise matrix needs at least {min} entities, got {got}")]
    TooFewEntities { min: usize, got: usize },

    #[error("pairwise entry ({i}, {j}) = {value} must be strictly positive and finite")]
    NonPositiveEntry { i: usize, j: usize, value: f64 },

    #[error("pairwise diagonal entry ({i}, {i}) must be 1, got {value}")]
    DiagonalNotOne { i: usize, value: f64 },

    #[error("reciprocity violated at ({i}, {j}): a_ij = {a_ij}, a_ji = {a_ji}")]
    NotReciprocal { i: usize, j: usize, a_ij: f64, a_ji: f64 },

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("unknown method `{0}` (expected AHP or SAW)")]
    UnknownMethod(String),

    #[error("scenario `{0}` selects no methods")]
    NoMethods(String),

    #[error("alternative id sets differ between rankings")]
    IdSetMismatch,

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported schema_version {0} (supported: 1)")]
    SchemaVersionUnsupported(u32),

    #[error("validation failed for {entity}: {source}")]
    Validation {
        entity: String,
        #[source]
        source: Box<Error>,
    },

    #[error("document contains no entries")]
    EmptyDocument,

    #[error("report has no comparisons")]
    EmptyReport,

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("failed to write report: {0}")]
    SinkWrite(String),
}

fn owner_suffix(owner: &Option<String>) -> String {
    match owner {
        Some(o) => format!(" (in `{o}`)"),
        None => String::new(),
    }
}

/// Coarse classification used to pick exit codes and HTTP statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Io,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Io { .. } | Error::SinkWrite(_) => ErrorClass::Io,
            Error::NoConvergence { .. } => ErrorClass::Internal,
            Error::Validation { source, .. } => source.class(),
            _ => ErrorClass::Validation,
        }
    }

    /// Wraps `self` with the identifier of the entity that failed validation.
    pub fn in_entity(self, entity: impl Into<String>) -> Error {
        Error::Validation {
            entity: entity.into(),
            source: Box::new(self),
        }
    }

    /// Innermost error, skipping `Validation` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Validation { source, .. } => source.root(),
            other => other,
        }
    }

    /// Stable machine-readable code, used by the HTTP API.
    pub fn code(&self) -> &'static str {
        match self.root() {
            Error::MissingCriterion { .. } => "missing_criterion",
            Error::UnknownCriterion { .. } => "unknown_criterion",
            Error::NonPositiveWeight { .. } => "non_positive_weight",
            Error::SumNotOne { .. } => "sum_not_one",
            Error::EmptyColumn => "empty_column",
            Error::NonPositiveValue { .. } => "non_positive_value",
            Error::CatalogTooSmall { .. } => "catalog_too_small",
            Error::DuplicateId { .. } => "duplicate_id",
            Error::EmptyId { .. } => "empty_id",
            Error::Shape(_) => "shape_mismatch",
            Error::TooFewEntities { .. } => "too_few_entities",
            Error::NonPositiveEntry { .. } => "non_positive_entry",
            Error::DiagonalNotOne { .. } => "diagonal_not_one",
            Error::NotReciprocal { .. } => "not_reciprocal",
            Error::NoConvergence { .. } => "no_convergence",
            Error::UnknownMethod(_) => "unknown_method",
            Error::NoMethods(_) => "no_methods",
            Error::IdSetMismatch => "id_set_mismatch",
            Error::UnknownScenario(_) => "unknown_scenario",
            Error::Config(_) => "invalid_config",
            Error::Parse { .. } => "parse_error",
            Error::SchemaVersionUnsupported(_) => "schema_version_unsupported",
            Error::Validation { .. } => "validation_error",
            Error::EmptyDocument => "empty_document",
            Error::EmptyReport => "empty_report",
            Error::Io { .. } => "io_error",
            Error::SinkWrite(_) => "sink_write_error",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

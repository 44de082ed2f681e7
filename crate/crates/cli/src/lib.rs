//! File format, reports and subcommands behind the `frobenius` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{
    cmd_analyze, cmd_catalog, cmd_embed, cmd_validate, CatalogEntry, Format, FunctionalOptions,
    Source,
};
pub use error::{CliError, CliResult, Status};
pub use format::{AlgebraFile, AnyAlgebra, EmbeddingFile, FieldName};
pub use report::AnalysisReport;

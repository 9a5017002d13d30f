//! Interchange format, example generators, fuzz corpus and reports.

pub mod document;
pub mod fuzz;
pub mod generators;
pub mod report;

pub use document::{parse_field_flag, AlgebraDocument, AnyLoaded, DocumentError, FieldSpec, Loaded, Meta, ProductEntry};
pub use fuzz::{fuzz_corpus, CorpusMember};
pub use report::{AnalyzeOptions, ConnectRequest, Outcome, Report, ReportError};

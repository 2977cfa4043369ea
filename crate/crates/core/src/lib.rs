//! Static design analysis for Java sources.
//!
//! The pipeline parses sources into signature-level class models
//! ([`source_model`]), extracts interaction evidence between user-defined
//! classes ([`interactions`]), builds the interaction graph ([`graph`]),
//! computes six coupling measures per class ([`metrics`]) and runs principal
//! component analysis over them ([`pca`]) to pick the most significant
//! measure and the least responsive class to attach new code to.
//! [`report`] ties the steps together and renders DOT, CSV and JSON.

pub mod diagnostics;
pub mod error;
pub mod exec;
pub mod graph;
pub mod interactions;
pub mod metrics;
pub mod pca;
pub mod report;
pub mod source_model;
pub mod synth;

pub use diagnostics::{Diagnostic, Location, Severity};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{build_graph, CcigView, Edge, InteractionGraph};
pub use interactions::{extract_all, Interaction, InteractionKind, InteractionSet};
pub use metrics::{metrics_table, ClassMetrics, Measure, MetricsTable};
pub use pca::{pca, Matrix, PcaOptions, PcaResult};
pub use report::{Analysis, AnalysisReport};
pub use source_model::{build_codebase, CodebaseModel};

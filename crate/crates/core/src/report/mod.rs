//! Pipeline driver and serialised outputs: DOT graph, metrics CSV, JSON
//! report, PCA tables and what-if diffs.

mod csv;
mod dot;
mod text;
mod whatif;

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

pub use self::csv::{csv_header, emit_metrics_csv, parse_metrics_csv};
pub use dot::{edge_style, emit_dot};
pub use text::{format_class_selection, format_measure_selection, format_metrics_table};
pub use whatif::{virtual_module_source, what_if, MetricsDelta, WhatIfOutcome, WhatIfReport};

use crate::diagnostics::{Diagnostic, Severity};
use crate::error::Result;
use crate::exec::Exec;
use crate::graph::{build_graph, Edge, InteractionGraph};
use crate::interactions::{extract_all, InteractionKind, InteractionSet};
use crate::metrics::{metrics_table_with, ClassMetrics, Measure, MetricsTable};
use crate::pca::{PcaResult, Selection, SelectionMode, SelectionReport};
use crate::source_model::{
    build_codebase_with, discover_sources, ClassKind, CodebaseModel, SourceFile,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "design-analyzer";

/// Everything derived from one source tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub model: CodebaseModel,
    pub evidences: InteractionSet,
    pub graph: InteractionGraph,
    pub metrics: MetricsTable,
}

impl Analysis {
    pub fn from_sources(files: &[SourceFile], exec: Exec) -> Result<Analysis> {
        let model = build_codebase_with(files, exec)?;
        Analysis::from_model(model, exec)
    }

    pub fn from_paths<P: AsRef<Path>>(paths: &[P], exec: Exec) -> Result<Analysis> {
        Analysis::from_sources(&discover_sources(paths)?, exec)
    }

    pub fn from_model(model: CodebaseModel, exec: Exec) -> Result<Analysis> {
        let evidences = extract_all(&model);
        let graph = build_graph(&model, &evidences)?;
        let metrics = metrics_table_with(&model, &evidences, &graph, exec)?;
        Ok(Analysis {
            model,
            evidences,
            graph,
            metrics,
        })
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.model.diagnostics
    }

    pub fn warning_count(&self) -> usize {
        self.model
            .diagnostics
            .iter()
            .filter(|d| d.severity >= Severity::Warning)
            .count()
    }

    pub fn report(&self, selection: Option<&Selection>) -> AnalysisReport {
        let classes = self.model.classes.len();
        let interfaces = self
            .model
            .classes
            .iter()
            .filter(|c| c.kind == ClassKind::Interface)
            .count();
        let totals = InteractionKind::ALL
            .iter()
            .map(|k| (k.name().to_string(), self.evidences.count_of(*k)))
            .collect();
        AnalysisReport {
            schema: SCHEMA_VERSION,
            summary: Summary {
                files: self.model.files.len(),
                classes,
                interfaces,
                evidences: self.evidences.len(),
                edges: self.graph.edge_count(),
            },
            interactions: InteractionSummary {
                totals,
                edges: self.graph.edges(),
            },
            metrics: MetricsSection {
                measures: Measure::labels(),
                rows: self.metrics.rows.clone(),
            },
            pca: selection.map(|s| PcaSection::new(&s.pca, s.report.mode)),
            selection: selection.map(|s| s.report.clone()),
            diagnostics: self.model.diagnostics.clone(),
            tool: ToolInfo::current(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub files: usize,
    pub classes: usize,
    pub interfaces: usize,
    pub evidences: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteractionSummary {
    pub totals: BTreeMap<String, usize>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsSection {
    pub measures: Vec<String>,
    pub rows: Vec<ClassMetrics>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PcaSection {
    /// `classes x measures` or `measures x classes`.
    pub orientation: String,
    pub covariance_divisor: String,
    #[serde(flatten)]
    pub result: PcaResult,
}

impl PcaSection {
    pub fn new(result: &PcaResult, mode: SelectionMode) -> Self {
        let orientation = match mode {
            SelectionMode::MostSignificantMeasure => "classes x measures",
            SelectionMode::LessResponsiveClass => "measures x classes",
        };
        PcaSection {
            orientation: orientation.into(),
            covariance_divisor: "1/n".into(),
            result: result.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: TOOL_NAME.into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub summary: Summary,
    pub interactions: InteractionSummary,
    pub metrics: MetricsSection,
    pub pca: Option<PcaSection>,
    pub selection: Option<SelectionReport>,
    pub diagnostics: Vec<Diagnostic>,
    pub tool: ToolInfo,
}

/// Rounds to 10 significant digits; the shortest round-trip form of the
/// result never needs more.
fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_significant(x)))
            {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON with struct field order preserved, floats limited to 10
/// significant digits and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialise");
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("value serialises");
    s.push('\n');
    s
}

pub fn emit_report_json(report: &AnalysisReport) -> String {
    to_json(report)
}

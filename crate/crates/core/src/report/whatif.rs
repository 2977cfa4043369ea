//! Attaching a hypothetical new class to an analysed codebase and diffing
//! the metrics before and after.

use serde::Serialize;

use super::{Analysis, AnalysisReport, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::interactions::{Interaction, InteractionKind, SourceLocation};
use crate::metrics::{metrics_table_with, ClassMetrics, Measure};

pub const VIRTUAL_FILE: &str = "<virtual>";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsDelta {
    pub class: String,
    /// True for the new module itself (its deltas are its full values).
    pub added: bool,
    pub nucd: i64,
    pub tnucd: i64,
    pub nucc: i64,
    pub tnucc: i64,
    pub class_coupling: i64,
    pub visible_members: i64,
}

impl MetricsDelta {
    fn between(before: Option<&ClassMetrics>, after: &ClassMetrics) -> Self {
        let d = |m: Measure| after.get(m) as i64 - before.map_or(0, |b| b.get(m) as i64);
        MetricsDelta {
            class: after.class.clone(),
            added: before.is_none(),
            nucd: d(Measure::Nucd),
            tnucd: d(Measure::Tnucd),
            nucc: d(Measure::Nucc),
            tnucc: d(Measure::Tnucc),
            class_coupling: d(Measure::ClassCoupling),
            visible_members: d(Measure::VisibleMembers),
        }
    }

    pub fn is_zero(&self) -> bool {
        [
            self.nucd,
            self.tnucd,
            self.nucc,
            self.tnucc,
            self.class_coupling,
            self.visible_members,
        ]
        .iter()
        .all(|v| *v == 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WhatIfOutcome {
    pub new_class: String,
    pub kind: InteractionKind,
    /// Qualified names of the classes the new module uses.
    pub targets: Vec<String>,
    pub after: Analysis,
    /// Rows that changed, plus the new module's row.
    pub diff: Vec<MetricsDelta>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhatIfReport {
    pub schema: u32,
    pub new_class: String,
    pub kind: InteractionKind,
    pub connect: Vec<String>,
    pub diff: Vec<MetricsDelta>,
    pub before: AnalysisReport,
    pub after: AnalysisReport,
}

impl WhatIfOutcome {
    pub fn report(&self, before: &Analysis) -> WhatIfReport {
        WhatIfReport {
            schema: SCHEMA_VERSION,
            new_class: self.new_class.clone(),
            kind: self.kind,
            connect: self.targets.clone(),
            diff: self.diff.clone(),
            before: before.report(None),
            after: self.after.report(None),
        }
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name.split('.').all(|seg| {
            let mut chars = seg.chars();
            chars
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$')
                && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
                && !crate::source_model::is_keyword(seg)
        })
}

fn resolve_target(before: &Analysis, name: &str) -> Result<String> {
    if before.model.contains(name) {
        return Ok(name.to_string());
    }
    let matches: Vec<&str> = before.model.resolve(name).collect();
    match matches.as_slice() {
        [one] => Ok(one.to_string()),
        [] => Err(Error::Validation(format!("unknown target class `{name}`"))),
        many => Err(Error::Validation(format!(
            "target `{name}` is ambiguous: {}",
            many.join(", ")
        ))),
    }
}

/// Adds `new_class` using each of `connect` through `kind` and recomputes
/// every measure. Targets may be qualified names or unambiguous simple names.
pub fn what_if(
    before: &Analysis,
    new_class: &str,
    connect: &[String],
    kind: InteractionKind,
    exec: Exec,
) -> Result<WhatIfOutcome> {
    if !valid_name(new_class) {
        return Err(Error::Validation(format!(
            "`{new_class}` is not a valid class name"
        )));
    }
    let simple = new_class.rsplit('.').next().unwrap_or(new_class);
    if before.model.contains(new_class) || before.model.is_user_defined(simple) {
        return Err(Error::Validation(format!(
            "class `{new_class}` collides with an existing class"
        )));
    }
    let mut targets: Vec<String> = Vec::new();
    for c in connect {
        let t = resolve_target(before, c)?;
        if !targets.contains(&t) {
            targets.push(t);
        }
    }

    let model = before.model.with_virtual_class(new_class)?;
    let extra = targets.iter().map(|t| Interaction {
        source: new_class.to_string(),
        target: t.clone(),
        kind,
        location: SourceLocation {
            file: VIRTUAL_FILE.into(),
            line: 0,
        },
        via: VIRTUAL_FILE.into(),
    });
    let evidences = before.evidences.with(extra);
    let graph = before.graph.add_virtual_module(new_class, &targets, kind)?;
    let metrics = metrics_table_with(&model, &evidences, &graph, exec)?;

    let diff = metrics
        .rows
        .iter()
        .map(|row| MetricsDelta::between(before.metrics.row(&row.class), row))
        .filter(|d| d.added || !d.is_zero())
        .collect();

    Ok(WhatIfOutcome {
        new_class: new_class.to_string(),
        kind,
        targets,
        after: Analysis {
            model,
            evidences,
            graph,
            metrics,
        },
        diff,
    })
}

/// Java source for a class that uses each target exactly once through
/// `kind`, with only private members. Parsing it alongside the original
/// corpus reproduces the what-if state.
pub fn virtual_module_source(new_class: &str, targets: &[String], kind: InteractionKind) -> String {
    let simple = |t: &String| t.rsplit('.').next().unwrap_or(t).to_string();
    let names: Vec<String> = targets.iter().map(simple).collect();
    let class_name = new_class.rsplit('.').next().unwrap_or(new_class);
    let mut body = String::new();
    let header = match kind {
        InteractionKind::Inheritance if !names.is_empty() => {
            format!("class {class_name} implements {}", names.join(", "))
        }
        _ => format!("class {class_name}"),
    };
    for (i, n) in names.iter().enumerate() {
        let member = match kind {
            InteractionKind::ObjectDeclaration => format!("    private {n} f{i};\n"),
            InteractionKind::Parameter => format!("    private void m{i}({n} p) {{}}\n"),
            InteractionKind::ReturnType => format!("    private {n} m{i}() {{ return null; }}\n"),
            InteractionKind::LocalVariable => format!("    private void m{i}() {{ {n} v; }}\n"),
            InteractionKind::Inheritance => String::new(),
        };
        body.push_str(&member);
    }
    format!("{header} {{\n{body}}}\n")
}

//! The six per-class coupling measures.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::InteractionGraph;
use crate::interactions::InteractionSet;
use crate::source_model::CodebaseModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Measure {
    Nucd,
    Tnucd,
    Nucc,
    Tnucc,
    ClassCoupling,
    VisibleMembers,
}

impl Measure {
    /// Column order of every metrics table.
    pub const ALL: [Measure; 6] = [
        Measure::Nucd,
        Measure::Tnucd,
        Measure::Nucc,
        Measure::Tnucc,
        Measure::ClassCoupling,
        Measure::VisibleMembers,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Measure::Nucd => "NUCD",
            Measure::Tnucd => "TNUCD",
            Measure::Nucc => "NUCC",
            Measure::Tnucc => "TNUCC",
            Measure::ClassCoupling => "ClassCoupling",
            Measure::VisibleMembers => "VisibleMembers",
        }
    }

    pub fn column(self) -> &'static str {
        match self {
            Measure::Nucd => "nucd",
            Measure::Tnucd => "tnucd",
            Measure::Nucc => "nucc",
            Measure::Tnucc => "tnucc",
            Measure::ClassCoupling => "class_coupling",
            Measure::VisibleMembers => "visible_members",
        }
    }

    pub fn labels() -> Vec<String> {
        Measure::ALL.iter().map(|m| m.label().to_string()).collect()
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ClassMetrics {
    pub class: String,
    pub nucd: usize,
    pub tnucd: usize,
    pub nucc: usize,
    pub tnucc: usize,
    pub class_coupling: usize,
    pub visible_members: usize,
}

impl ClassMetrics {
    pub fn get(&self, m: Measure) -> usize {
        match m {
            Measure::Nucd => self.nucd,
            Measure::Tnucd => self.tnucd,
            Measure::Nucc => self.nucc,
            Measure::Tnucc => self.tnucc,
            Measure::ClassCoupling => self.class_coupling,
            Measure::VisibleMembers => self.visible_members,
        }
    }

    pub fn values(&self) -> [usize; 6] {
        Measure::ALL.map(|m| self.get(m))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct MetricsTable {
    /// One row per class, sorted by qualified name.
    pub rows: Vec<ClassMetrics>,
}

impl MetricsTable {
    pub fn measure_names(&self) -> Vec<String> {
        Measure::labels()
    }

    pub fn row(&self, class: &str) -> Option<&ClassMetrics> {
        self.rows.iter().find(|r| r.class == class)
    }

    pub fn class_names(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.class.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn require(model: &CodebaseModel, class: &str) -> Result<()> {
    if model.contains(class) {
        Ok(())
    } else {
        Err(Error::UnknownClass(class.to_string()))
    }
}

/// Distinct classes `class` depends on through parameters, return types and locals.
pub fn nucd(evidences: &InteractionSet, model: &CodebaseModel, class: &str) -> Result<usize> {
    require(model, class)?;
    let targets: BTreeSet<&str> = evidences
        .iter()
        .filter(|e| e.kind.is_dependency() && e.source == class)
        .map(|e| e.target.as_str())
        .collect();
    Ok(targets.len())
}

pub fn tnucd(evidences: &InteractionSet, model: &CodebaseModel, class: &str) -> Result<usize> {
    require(model, class)?;
    Ok(evidences
        .iter()
        .filter(|e| e.kind.is_dependency() && e.source == class)
        .count())
}

/// Distinct classes that depend on `class`.
pub fn nucc(evidences: &InteractionSet, model: &CodebaseModel, class: &str) -> Result<usize> {
    require(model, class)?;
    let sources: BTreeSet<&str> = evidences
        .iter()
        .filter(|e| e.kind.is_dependency() && e.target == class)
        .map(|e| e.source.as_str())
        .collect();
    Ok(sources.len())
}

pub fn tnucc(evidences: &InteractionSet, model: &CodebaseModel, class: &str) -> Result<usize> {
    require(model, class)?;
    Ok(evidences
        .iter()
        .filter(|e| e.kind.is_dependency() && e.target == class)
        .count())
}

/// Declared non-private fields and methods, constructors included.
pub fn visible_members(model: &CodebaseModel, class: &str) -> Result<usize> {
    let c = model
        .class(class)
        .ok_or_else(|| Error::UnknownClass(class.to_string()))?;
    let fields = c
        .fields
        .iter()
        .filter(|f| f.visibility.is_visible())
        .count();
    let methods = c
        .methods
        .iter()
        .filter(|m| m.visibility.is_visible())
        .count();
    Ok(fields + methods)
}

pub fn metrics_table(
    model: &CodebaseModel,
    evidences: &InteractionSet,
    graph: &InteractionGraph,
) -> Result<MetricsTable> {
    metrics_table_with(model, evidences, graph, Exec::default())
}

#[derive(Default)]
struct Tally<'a> {
    partners: BTreeSet<&'a str>,
    total: usize,
}

/// Builds the class x measure table. The evidence list is bucketed once;
/// rows are then filled per class, in parallel under `Exec::Parallel`.
pub fn metrics_table_with(
    model: &CodebaseModel,
    evidences: &InteractionSet,
    graph: &InteractionGraph,
    exec: Exec,
) -> Result<MetricsTable> {
    let names = model.class_names();
    if graph.node_count() != names.len() || names.iter().any(|n| !graph.contains(n)) {
        return Err(Error::Inconsistent(
            "graph nodes do not match the codebase classes".into(),
        ));
    }

    let mut outbound: HashMap<&str, Tally> = HashMap::new();
    let mut inbound: HashMap<&str, Tally> = HashMap::new();
    for e in evidences.iter().filter(|e| e.kind.is_dependency()) {
        let o = outbound.entry(e.source.as_str()).or_default();
        o.partners.insert(e.target.as_str());
        o.total += 1;
        let i = inbound.entry(e.target.as_str()).or_default();
        i.partners.insert(e.source.as_str());
        i.total += 1;
    }

    let ccig = graph.ccig();
    let rows = exec.map(&names, |name| -> Result<ClassMetrics> {
        let out = outbound.get(name.as_str());
        let inc = inbound.get(name.as_str());
        Ok(ClassMetrics {
            class: name.clone(),
            nucd: out.map_or(0, |t| t.partners.len()),
            tnucd: out.map_or(0, |t| t.total),
            nucc: inc.map_or(0, |t| t.partners.len()),
            tnucc: inc.map_or(0, |t| t.total),
            class_coupling: ccig.class_coupling(name)?,
            visible_members: visible_members(model, name)?,
        })
    });
    Ok(MetricsTable {
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

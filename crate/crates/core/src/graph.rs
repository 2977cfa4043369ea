//! The interaction graph: classes as nodes, one edge per (source, target,
//! kind) with the number of evidences behind it.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interactions::{InteractionKind, InteractionSet};
use crate::source_model::CodebaseModel;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub source: String,
    pub target: String,
    pub kind: InteractionKind,
    pub evidence_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InteractionGraph {
    nodes: BTreeSet<String>,
    edges: BTreeMap<(String, String, InteractionKind), usize>,
    out_adj: BTreeMap<String, BTreeSet<(String, InteractionKind)>>,
    in_adj: BTreeMap<String, BTreeSet<(String, InteractionKind)>>,
}

impl InteractionGraph {
    fn with_nodes(nodes: impl IntoIterator<Item = String>) -> Self {
        InteractionGraph {
            nodes: nodes.into_iter().collect(),
            ..Default::default()
        }
    }

    fn add_evidence(
        &mut self,
        source: &str,
        target: &str,
        kind: InteractionKind,
        count: usize,
    ) -> Result<()> {
        for end in [source, target] {
            if !self.nodes.contains(end) {
                return Err(Error::Inconsistent(format!(
                    "evidence references unknown class `{end}`"
                )));
            }
        }
        if source == target {
            return Err(Error::Inconsistent(format!("self-loop on `{source}`")));
        }
        *self
            .edges
            .entry((source.to_string(), target.to_string(), kind))
            .or_insert(0) += count;
        self.out_adj
            .entry(source.to_string())
            .or_default()
            .insert((target.to_string(), kind));
        self.in_adj
            .entry(target.to_string())
            .or_default()
            .insert((source.to_string(), kind));
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, node: &str) -> bool {
        self.nodes.contains(node)
    }

    /// Edges sorted by (source, target, kind).
    pub fn edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .map(|((s, t, k), n)| Edge {
                source: s.clone(),
                target: t.clone(),
                kind: *k,
                evidence_count: *n,
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn evidence_count(&self, source: &str, target: &str, kind: InteractionKind) -> usize {
        self.edges
            .get(&(source.to_string(), target.to_string(), kind))
            .copied()
            .unwrap_or(0)
    }

    pub fn out_neighbors(&self, node: &str) -> impl Iterator<Item = &(String, InteractionKind)> {
        self.out_adj.get(node).into_iter().flatten()
    }

    pub fn in_neighbors(&self, node: &str) -> impl Iterator<Item = &(String, InteractionKind)> {
        self.in_adj.get(node).into_iter().flatten()
    }

    pub fn ccig(&self) -> CcigView<'_> {
        CcigView { graph: self }
    }

    /// Returns a copy with one extra node wired to `connect_to` by edges of
    /// `kind`. The receiver is left untouched.
    pub fn add_virtual_module(
        &self,
        name: &str,
        connect_to: &[String],
        kind: InteractionKind,
    ) -> Result<InteractionGraph> {
        if self.nodes.contains(name) {
            return Err(Error::Validation(format!("class `{name}` already exists")));
        }
        if let Some(missing) = connect_to.iter().find(|t| !self.nodes.contains(t.as_str())) {
            return Err(Error::Validation(format!(
                "unknown target class `{missing}`"
            )));
        }
        let mut g = self.clone();
        g.nodes.insert(name.to_string());
        for target in connect_to {
            g.add_evidence(name, target, kind, 1)?;
        }
        Ok(g)
    }
}

/// Builds the graph for `model`. Parallel evidences collapse into one edge
/// per (source, target, kind); isolated classes remain as nodes.
pub fn build_graph(model: &CodebaseModel, evidences: &InteractionSet) -> Result<InteractionGraph> {
    let mut g =
        InteractionGraph::with_nodes(model.classes.iter().map(|c| c.qualified_name.clone()));
    for e in evidences.iter() {
        g.add_evidence(&e.source, &e.target, e.kind, 1)?;
    }
    Ok(g)
}

/// The class-class subgraph (object declaration and inheritance edges).
#[derive(Debug, Clone, Copy)]
pub struct CcigView<'g> {
    graph: &'g InteractionGraph,
}

impl<'g> CcigView<'g> {
    pub fn edges(&self) -> Vec<Edge> {
        self.graph
            .edges()
            .into_iter()
            .filter(|e| e.kind.is_class_class())
            .collect()
    }

    fn check(&self, class: &str) -> Result<()> {
        if self.graph.contains(class) {
            Ok(())
        } else {
            Err(Error::UnknownClass(class.to_string()))
        }
    }

    /// Distinct classes this class is a client of.
    pub fn client_partners(&self, class: &str) -> BTreeSet<&'g str> {
        self.graph
            .out_neighbors(class)
            .filter(|(_, k)| k.is_class_class())
            .map(|(t, _)| t.as_str())
            .collect()
    }

    /// Distinct classes this class is a server to.
    pub fn server_partners(&self, class: &str) -> BTreeSet<&'g str> {
        self.graph
            .in_neighbors(class)
            .filter(|(_, k)| k.is_class_class())
            .map(|(s, _)| s.as_str())
            .collect()
    }

    pub fn client_coupling(&self, class: &str) -> Result<usize> {
        self.check(class)?;
        Ok(self.client_partners(class).len())
    }

    pub fn server_coupling(&self, class: &str) -> Result<usize> {
        self.check(class)?;
        Ok(self.server_partners(class).len())
    }

    pub fn class_coupling(&self, class: &str) -> Result<usize> {
        Ok(self.client_coupling(class)? + self.server_coupling(class)?)
    }
}

use std::fmt::Write;

use crate::graph::InteractionGraph;
use crate::interactions::{Category, InteractionKind};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn simple_name(qualified: &str) -> &str {
    qualified.rsplit('.').next().unwrap_or(qualified)
}

pub fn edge_style(kind: InteractionKind) -> &'static str {
    match kind.category() {
        Category::ClassClass => "solid",
        Category::OperationOperation => "dashed",
        Category::DependencyOnly => "dotted",
    }
}

/// Renders the graph as a DOT digraph. Nodes are keyed by qualified name and
/// labelled with the simple name; edges carry `Kind xN` labels (the count is
/// omitted when 1) and are styled solid / dashed / dotted for class-class,
/// operation-operation and local-variable kinds.
pub fn emit_dot(graph: &InteractionGraph) -> String {
    let mut out = String::from("digraph design {\n");
    for node in graph.nodes() {
        let _ = writeln!(
            out,
            "  {} [label={}];",
            quote(node),
            quote(simple_name(node))
        );
    }
    for e in graph.edges() {
        let label = if e.evidence_count == 1 {
            e.kind.to_string()
        } else {
            format!("{} x{}", e.kind, e.evidence_count)
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, style={}];",
            quote(&e.source),
            quote(&e.target),
            quote(&label),
            edge_style(e.kind)
        );
    }
    out.push_str("}\n");
    out
}

//! Plain-text tables for terminal output.

use std::fmt::Write;

use crate::metrics::{Measure, MetricsTable};
use crate::pca::Selection;

fn vector(v: &[f64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| format!("{:.4}", if x.abs() < 5e-5 { 0.0 } else { *x }))
        .collect();
    format!("({})", parts.join(", "))
}

pub fn format_metrics_table(table: &MetricsTable) -> String {
    let width = table
        .rows
        .iter()
        .map(|r| r.class.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = format!("{:<width$}", "class");
    for m in Measure::ALL {
        let _ = write!(out, "  {:>14}", m.label());
    }
    out.push('\n');
    for r in &table.rows {
        let _ = write!(out, "{:<width$}", r.class);
        for v in r.values() {
            let _ = write!(out, "  {v:>14}");
        }
        out.push('\n');
    }
    out
}

fn retained_table(out: &mut String, curve: &[f64]) {
    out.push_str("\nComponents  % variance retained\n");
    for (i, v) in curve.iter().enumerate() {
        let _ = writeln!(out, "{:<10}  {:.2}%", i + 1, v * 100.0);
    }
}

/// Every component vector with its eigenvalue, then the retained-variance
/// curve and the chosen measure.
pub fn format_measure_selection(sel: &Selection) -> String {
    let p = &sel.pca;
    let mut out = format!(
        "Principal components of the class x measure matrix ({} classes, covariance divisor 1/n{})\n",
        p.rows,
        if p.standardized { ", standardized" } else { "" }
    );
    let _ = writeln!(out, "Measure order: {}", p.labels.join(", "));
    out.push_str("\nPC  Component vector  Eigenvalue\n");
    for (i, (v, l)) in p.eigenvectors.iter().zip(&p.eigenvalues).enumerate() {
        let _ = writeln!(out, "{:<3} {}  {:.4}", i + 1, vector(v), l);
    }
    retained_table(&mut out, &p.retained_variance);
    let r = &sel.report;
    let _ = writeln!(
        out,
        "\nMost significant measure: {} (|loading| {:.4} on PC1; {} component(s) retain {:.2}%)",
        r.chosen,
        r.rationale[0].value,
        r.component_count,
        r.retained_variance * 100.0
    );
    out
}

/// The retained components over classes (numbered from 1), the
/// all-negative candidates and the recommended class.
pub fn format_class_selection(sel: &Selection) -> String {
    let p = &sel.pca;
    let r = &sel.report;
    let mut out = format!(
        "Principal components of the measure x class matrix ({} classes{})\n\nClasses:\n",
        p.labels.len(),
        if p.standardized { ", standardized" } else { "" }
    );
    for (i, l) in p.labels.iter().enumerate() {
        let _ = writeln!(out, "  {:>3}  {l}", i + 1);
    }
    out.push_str("\nPC  Eigen vector  Eigenvalue\n");
    for (i, v) in r.loadings.iter().enumerate() {
        let _ = writeln!(out, "{:<3} {}  {:.4}", i + 1, vector(v), p.eigenvalues[i]);
    }
    let _ = writeln!(
        out,
        "\n{} component(s) retain {:.2}% of the variance.",
        r.component_count,
        r.retained_variance * 100.0
    );
    if r.fallback {
        out.push_str("No class is negative on every retained component; falling back to the lowest class coupling.\n");
    } else {
        out.push_str("Classes negative on every retained component (class coupling):\n");
    }
    for c in &r.rationale {
        let _ = writeln!(out, "  {} ({})", c.label, c.value);
    }
    let _ = writeln!(out, "\nRecommended attachment point: {}", r.chosen);
    out
}

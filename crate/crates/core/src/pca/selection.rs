//! Choosing the most significant coupling measure and the least responsive
//! class from principal components.

use serde::Serialize;

use super::{pca, Matrix, PcaOptions, PcaResult};
use crate::error::{Error, Result};
use crate::metrics::{Measure, MetricsTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SelectionMode {
    MostSignificantMeasure,
    LessResponsiveClass,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionOptions {
    /// Retained-variance fraction the component count must reach.
    pub variance_target: f64,
    /// Upper bound on the automatically chosen component count.
    pub max_components: Option<usize>,
    /// Fixed component count, overriding the variance rule.
    pub components: Option<usize>,
    pub standardize: bool,
}

impl SelectionOptions {
    pub fn for_measures() -> Self {
        SelectionOptions {
            variance_target: 0.95,
            max_components: None,
            components: None,
            standardize: false,
        }
    }

    pub fn for_classes() -> Self {
        SelectionOptions {
            variance_target: 0.95,
            max_components: Some(3),
            components: None,
            standardize: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub mode: SelectionMode,
    pub chosen: String,
    pub component_count: usize,
    pub labels: Vec<String>,
    /// Top `component_count` eigenvectors, one row per component.
    pub loadings: Vec<Vec<f64>>,
    pub retained_variance: f64,
    /// Measures: |loading| on the first component, descending.
    /// Classes: all-negative candidates (or every class on fallback) by class coupling.
    pub rationale: Vec<Candidate>,
    /// True when no class was negative on every retained component.
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection {
    pub pca: PcaResult,
    pub report: SelectionReport,
}

/// Index of the largest |loading|; the earliest index wins ties.
pub fn strongest_loading(loadings: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, x) in loadings.iter().enumerate() {
        match best {
            Some(b) if x.abs() <= loadings[b].abs() => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Positions whose loading is strictly negative in every given component.
pub fn all_negative_candidates<V: AsRef<[f64]>>(components: &[V]) -> Vec<usize> {
    let Some(first) = components.first() else {
        return Vec::new();
    };
    (0..first.as_ref().len())
        .filter(|&j| {
            components
                .iter()
                .all(|c| c.as_ref().get(j).is_some_and(|x| *x < 0.0))
        })
        .collect()
}

/// Smallest `d` whose cumulative retained variance reaches `target`, capped.
pub fn components_for_target(curve: &[f64], target: f64, cap: Option<usize>) -> usize {
    let m = curve.len();
    let d = curve
        .iter()
        .position(|v| *v >= target - 1e-12)
        .map_or(m, |i| i + 1);
    cap.map_or(d, |c| d.min(c.max(1))).clamp(1, m.max(1))
}

fn component_count(p: &PcaResult, opts: &SelectionOptions) -> Result<usize> {
    let m = p.eigenvalues.len();
    match opts.components {
        Some(0) => Err(Error::Validation("component count must be positive".into())),
        Some(d) if d > m => Err(Error::Validation(format!(
            "component count {d} exceeds {m}"
        ))),
        Some(d) => Ok(d),
        None => Ok(components_for_target(
            &p.retained_variance,
            opts.variance_target,
            opts.max_components,
        )),
    }
}

fn require_variance(p: &PcaResult, what: &str) -> Result<()> {
    if p.total_variance() <= 0.0 {
        return Err(Error::Degenerate(format!(
            "total variance is zero: every {what} has identical values, so no component can be ranked"
        )));
    }
    Ok(())
}

fn sorted(table: &MetricsTable) -> MetricsTable {
    let mut rows = table.rows.clone();
    rows.sort_by(|a, b| a.class.cmp(&b.class));
    MetricsTable { rows }
}

/// PCA over the class x measure matrix; the measure with the largest
/// absolute weight in the first component is chosen.
pub fn most_significant_measure(
    table: &MetricsTable,
    opts: &SelectionOptions,
) -> Result<Selection> {
    if table.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "measure selection needs at least 2 classes, got {}",
            table.len()
        )));
    }
    let table = &sorted(table);
    let rows: Vec<Vec<f64>> = table
        .rows
        .iter()
        .map(|r| r.values().iter().map(|v| *v as f64).collect())
        .collect();
    let x = Matrix::from_rows(&rows)?;
    let labels = Measure::labels();
    let p = pca(
        &x,
        &labels,
        PcaOptions {
            standardize: opts.standardize,
        },
    )?;
    require_variance(&p, "class")?;
    let d = component_count(&p, opts)?;

    let first = &p.eigenvectors[0];
    let chosen = strongest_loading(first).expect("six measures");
    let mut rationale: Vec<Candidate> = labels
        .iter()
        .zip(first)
        .map(|(l, v)| Candidate {
            label: l.clone(),
            value: v.abs(),
        })
        .collect();
    rationale.sort_by(|a, b| b.value.total_cmp(&a.value));

    let report = SelectionReport {
        mode: SelectionMode::MostSignificantMeasure,
        chosen: labels[chosen].clone(),
        component_count: d,
        labels: labels.clone(),
        loadings: p.eigenvectors[..d].to_vec(),
        retained_variance: p.retained_variance[d - 1],
        rationale,
        fallback: false,
    };
    Ok(Selection { pca: p, report })
}

/// PCA over the transposed measure x class matrix. Classes negative on
/// every retained component are candidates; the one with the lowest class
/// coupling wins (name order on ties). With no candidate, the lowest-coupling
/// class overall is chosen and the report is flagged as a fallback.
pub fn less_responsive_class(table: &MetricsTable, opts: &SelectionOptions) -> Result<Selection> {
    if table.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "class selection needs at least 2 classes, got {}",
            table.len()
        )));
    }
    let table = &sorted(table);
    let rows: Vec<Vec<f64>> = Measure::ALL
        .iter()
        .map(|m| table.rows.iter().map(|r| r.get(*m) as f64).collect())
        .collect();
    let x = Matrix::from_rows(&rows)?;
    let labels = table.class_names();
    let p = pca(
        &x,
        &labels,
        PcaOptions {
            standardize: opts.standardize,
        },
    )?;
    require_variance(&p, "measure")?;
    let d = component_count(&p, opts)?;

    let candidates = all_negative_candidates(&p.eigenvectors[..d]);
    let fallback = candidates.is_empty();
    let pool: Vec<usize> = if fallback {
        (0..labels.len()).collect()
    } else {
        candidates
    };
    let mut ranked: Vec<(usize, &str)> = pool
        .iter()
        .map(|&j| (table.rows[j].class_coupling, labels[j].as_str()))
        .collect();
    ranked.sort();

    let report = SelectionReport {
        mode: SelectionMode::LessResponsiveClass,
        chosen: ranked[0].1.to_string(),
        component_count: d,
        labels: labels.clone(),
        loadings: p.eigenvectors[..d].to_vec(),
        retained_variance: p.retained_variance[d - 1],
        rationale: ranked
            .iter()
            .map(|(cc, l)| Candidate {
                label: l.to_string(),
                value: *cc as f64,
            })
            .collect(),
        fallback,
    };
    Ok(Selection { pca: p, report })
}

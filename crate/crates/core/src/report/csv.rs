use crate::error::{Error, Result};
use crate::metrics::{ClassMetrics, Measure, MetricsTable};

pub fn csv_header() -> String {
    let mut cols = vec!["class"];
    cols.extend(Measure::ALL.iter().map(|m| m.column()));
    cols.join(",")
}

/// One header line then one row per class, LF-terminated.
pub fn emit_metrics_csv(table: &MetricsTable) -> String {
    let mut out = csv_header();
    out.push('\n');
    for r in &table.rows {
        let vals: Vec<String> = r.values().iter().map(usize::to_string).collect();
        out.push_str(&r.class);
        out.push(',');
        out.push_str(&vals.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_metrics_csv(text: &str) -> Result<MetricsTable> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == csv_header() => {}
        other => {
            return Err(Error::Validation(format!(
                "unexpected CSV header {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.is_empty()) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 7 {
            return Err(Error::Validation(format!(
                "CSV row {} has {} cells",
                i + 2,
                cells.len()
            )));
        }
        let mut v = [0usize; 6];
        for (slot, cell) in v.iter_mut().zip(&cells[1..]) {
            *slot = cell.parse().map_err(|_| {
                Error::Validation(format!("CSV row {}: `{cell}` is not a count", i + 2))
            })?;
        }
        rows.push(ClassMetrics {
            class: cells[0].to_string(),
            nucd: v[0],
            tnucd: v[1],
            nucc: v[2],
            tnucc: v[3],
            class_coupling: v[4],
            visible_members: v[5],
        });
    }
    Ok(MetricsTable { rows })
}

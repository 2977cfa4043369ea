use std::collections::{BTreeSet, HashSet};
use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use super::lexer::{strip_comments_and_strings, tokenize};
use super::model::{ClassModel, CodebaseModel};
use super::parser::{parse_compilation_unit, ParsedUnit};
use crate::diagnostics::{Diagnostic, Severity};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// A source file: display path and full text.
pub type SourceFile = (String, String);

/// Strips, tokenizes and parses one file.
pub fn parse_file(path: &str, source: &str) -> Result<ParsedUnit> {
    let stripped = strip_comments_and_strings(source).map_err(|e| match e {
        Error::Lex { line, message } => Error::Parse {
            file: path.to_string(),
            line,
            message,
        },
        other => other,
    })?;
    parse_compilation_unit(&tokenize(&stripped), path)
}

pub fn build_codebase(files: &[SourceFile]) -> Result<CodebaseModel> {
    build_codebase_with(files, Exec::default())
}

/// Parses every file (in parallel under `Exec::Parallel`) and merges the
/// results in path order. Files that fail to lex or parse are dropped with
/// a warning; later duplicates of a qualified name are dropped likewise.
pub fn build_codebase_with(files: &[SourceFile], exec: Exec) -> Result<CodebaseModel> {
    if files.is_empty() {
        return Err(Error::EmptyCodebase);
    }
    let mut sorted: Vec<&SourceFile> = files.iter().collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));

    let parsed = exec.map(&sorted, |(path, src)| parse_file(path, src));

    let mut classes: Vec<ClassModel> = Vec::new();
    let mut diagnostics = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for ((path, _), unit) in sorted.iter().zip(parsed) {
        match unit {
            Ok(unit) => {
                diagnostics.extend(unit.diagnostics);
                for class in unit.classes {
                    if seen.insert(class.qualified_name.clone()) {
                        classes.push(class);
                    } else {
                        diagnostics.push(Diagnostic::warning(
                            path,
                            class.line,
                            format!("duplicate class `{}` ignored", class.qualified_name),
                        ));
                    }
                }
            }
            Err(Error::Parse {
                file,
                line,
                message,
            }) => {
                diagnostics.push(Diagnostic::warning(
                    &file,
                    line,
                    format!("file skipped: {message}"),
                ));
            }
            Err(other) => return Err(other),
        }
    }
    if classes.is_empty() {
        return Err(Error::EmptyCodebase);
    }

    let known: BTreeSet<String> = classes.iter().map(|c| c.simple_name.clone()).collect();
    for class in &mut classes {
        for method in &mut class.methods {
            method.body_evidence.retain(|e| known.contains(&e.name));
        }
    }

    let files = sorted.iter().map(|(p, _)| p.clone()).collect();
    let mut model = CodebaseModel::from_classes(classes, files, diagnostics);
    let ambiguous: Vec<Diagnostic> = model
        .simple_name_index
        .iter()
        .filter(|(_, q)| q.len() > 1)
        .map(|(simple, q)| {
            let all: Vec<&str> = q.iter().map(String::as_str).collect();
            Diagnostic::global(
                Severity::Warning,
                format!(
                    "simple name `{simple}` is ambiguous ({}); references attach to every match",
                    all.join(", ")
                ),
            )
        })
        .collect();
    model.diagnostics.extend(ambiguous);
    Ok(model)
}

/// Collects `.java` files under each path (files are taken as given),
/// sorted by path. Display paths keep the caller's spelling.
pub fn discover_sources<P: AsRef<Path>>(paths: &[P]) -> Result<Vec<SourceFile>> {
    let mut found: Vec<PathBuf> = Vec::new();
    for root in paths {
        let root = root.as_ref();
        if !root.exists() {
            return Err(Error::Io {
                path: root.display().to_string(),
                message: "no such file or directory".into(),
            });
        }
        for entry in WalkDir::new(root).follow_links(true) {
            let entry = entry.map_err(|e| Error::Io {
                path: root.display().to_string(),
                message: e.to_string(),
            })?;
            let p = entry.path();
            if entry.file_type().is_file() && p.extension().is_some_and(|ext| ext == "java") {
                found.push(p.to_path_buf());
            }
        }
    }
    found.sort();
    found.dedup();
    if found.is_empty() {
        return Err(Error::NoInput);
    }
    found
        .into_iter()
        .map(|p| {
            let bytes = std::fs::read(&p).map_err(|e| Error::io(&p, e))?;
            let text = String::from_utf8_lossy(&bytes).into_owned();
            Ok((p.display().to_string().replace('\\', "/"), text))
        })
        .collect()
}

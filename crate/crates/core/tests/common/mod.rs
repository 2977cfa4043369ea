#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use design_analyzer::source_model::{discover_sources, SourceFile};

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

/// The committed corpus with paths relative to its root.
pub fn corpus_sources() -> Vec<SourceFile> {
    let root = fixture("corpus");
    discover_sources(&[&root])
        .unwrap()
        .into_iter()
        .map(|(path, text)| {
            let rel = Path::new(&path).strip_prefix(&root).unwrap();
            (rel.to_string_lossy().replace('\\', "/"), text)
        })
        .collect()
}

pub fn write_corpus(dir: &Path, files: &[SourceFile]) {
    for (path, text) in files {
        let p = dir.join(path);
        std::fs::create_dir_all(p.parent().unwrap()).unwrap();
        std::fs::write(p, text).unwrap();
    }
}

pub type DotEdge = (String, String, Vec<(String, String)>);

#[derive(Debug, Default, PartialEq)]
pub struct DotGraph {
    pub name: String,
    pub nodes: BTreeSet<String>,
    /// (source, target, attributes as key/value pairs)
    pub edges: Vec<DotEdge>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Sym(&'static str),
}

fn lex_dot(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some(ch) => {
                        s.push(*ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Id(s));
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Tok::Sym("->"));
            i += 2;
        } else if let Some(sym) = ["{", "}", "[", "]", ";", ",", "="]
            .iter()
            .find(|s| s.starts_with(c))
        {
            out.push(Tok::Sym(sym));
            i += 1;
        } else if c.is_alphanumeric() || c == '_' || c == '.' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.')
            {
                i += 1;
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

/// Parses the subset of the DOT grammar used for directed graphs: node and
/// edge statements with optional attribute lists.
pub fn parse_dot(text: &str) -> Result<DotGraph, String> {
    let toks = lex_dot(text)?;
    let mut i = 0;
    let expect = |i: &mut usize, t: Tok| -> Result<(), String> {
        if toks.get(*i) == Some(&t) {
            *i += 1;
            Ok(())
        } else {
            Err(format!("expected {t:?}, found {:?}", toks.get(*i)))
        }
    };
    let id = |i: &mut usize| -> Result<String, String> {
        match toks.get(*i) {
            Some(Tok::Id(s)) => {
                *i += 1;
                Ok(s.clone())
            }
            other => Err(format!("expected identifier, found {other:?}")),
        }
    };
    let mut g = DotGraph::default();
    expect(&mut i, Tok::Id("digraph".into()))?;
    if let Some(Tok::Id(_)) = toks.get(i) {
        g.name = id(&mut i)?;
    }
    expect(&mut i, Tok::Sym("{"))?;
    while toks.get(i) != Some(&Tok::Sym("}")) {
        let a = id(&mut i)?;
        let target = if toks.get(i) == Some(&Tok::Sym("->")) {
            i += 1;
            Some(id(&mut i)?)
        } else {
            None
        };
        let mut attrs = Vec::new();
        if toks.get(i) == Some(&Tok::Sym("[")) {
            i += 1;
            while toks.get(i) != Some(&Tok::Sym("]")) {
                let k = id(&mut i)?;
                expect(&mut i, Tok::Sym("="))?;
                attrs.push((k, id(&mut i)?));
                if toks.get(i) == Some(&Tok::Sym(",")) {
                    i += 1;
                }
            }
            i += 1;
        }
        if toks.get(i) == Some(&Tok::Sym(";")) {
            i += 1;
        }
        match target {
            Some(b) => {
                if !g.nodes.contains(&a) || !g.nodes.contains(&b) {
                    return Err(format!("edge {a} -> {b} references an undeclared node"));
                }
                g.edges.push((a, b, attrs));
            }
            None => {
                g.nodes.insert(a);
            }
        }
    }
    i += 1;
    if i != toks.len() {
        return Err("trailing tokens after graph".into());
    }
    Ok(g)
}

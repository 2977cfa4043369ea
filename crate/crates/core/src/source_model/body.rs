//! Shallow scan of method bodies for local-variable and instantiation evidence.

use std::collections::BTreeSet;

use super::cursor::Cursor;
use super::lexer::Token;
use super::model::{BodyEvidence, EvidenceKind};

/// Scans a method body (tokens between its braces) for every type name that
/// appears as `new T` or as the declared type of a statement-initial
/// `T name =` / `T name;`, keeping only names in `known`.
pub fn scan_body_evidence(body: &[Token], known: &BTreeSet<String>) -> Vec<BodyEvidence> {
    let mut evidence = scan_body_candidates(body);
    evidence.retain(|e| known.contains(&e.name));
    evidence
}

/// Same scan without the user-defined filter. The parser runs this before
/// the full class set is known; the codebase builder filters afterwards.
pub fn scan_body_candidates(body: &[Token]) -> Vec<BodyEvidence> {
    let mut out = Vec::new();
    for (i, tok) in body.iter().enumerate() {
        if tok.is_keyword("new") {
            let mut c = Cursor::at(body, i + 1);
            if let Some(ty) = c.parse_type() {
                out.extend(ty.names.into_iter().map(|name| BodyEvidence {
                    name,
                    kind: EvidenceKind::Instantiation,
                    line: tok.line,
                }));
            }
            continue;
        }
        if tok.is_ident() && statement_start(body, i) {
            let mut c = Cursor::at(body, i);
            if let Some(ty) = c.parse_type() {
                let after = c.peek_at(1);
                let declares = c.peek().is_ident()
                    && (after.is_punct('=')
                        || after.is_punct(';')
                        || (after.is_punct(':') && for_header(body, i)));
                if declares {
                    out.extend(ty.names.into_iter().map(|name| BodyEvidence {
                        name,
                        kind: EvidenceKind::LocalDeclaration,
                        line: tok.line,
                    }));
                }
            }
        }
    }
    out
}

fn statement_start(body: &[Token], i: usize) -> bool {
    if i == 0 {
        return true;
    }
    let prev = &body[i - 1];
    if prev.is_punct('{') || prev.is_punct('}') || prev.is_punct(';') || prev.is_punct(':') {
        return true;
    }
    if prev.is_keyword("final") {
        return true;
    }
    // for (A a = ...; ...) and try (A a = ...)
    prev.is_punct('(') && i >= 2 && (body[i - 2].is_keyword("for") || body[i - 2].is_keyword("try"))
}

fn for_header(body: &[Token], i: usize) -> bool {
    i >= 2 && body[i - 1].is_punct('(') && body[i - 2].is_keyword("for")
}

#[cfg(test)]
mod tests {
    use super::super::lexer::tokenize;
    use super::*;

    fn known(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn scan(src: &str, names: &[&str]) -> Vec<(String, EvidenceKind)> {
        let mut toks = tokenize(src);
        toks.pop();
        scan_body_evidence(&toks, &known(names))
            .into_iter()
            .map(|e| (e.name, e.kind))
            .collect()
    }

    #[test]
    fn declaration_with_instantiation_gives_two() {
        assert_eq!(
            scan("A a = new A();", &["A"]),
            vec![
                ("A".into(), EvidenceKind::LocalDeclaration),
                ("A".into(), EvidenceKind::Instantiation)
            ]
        );
    }

    #[test]
    fn primitives_give_nothing() {
        assert!(scan("int x = 5;", &["A"]).is_empty());
    }

    #[test]
    fn instantiation_as_argument() {
        assert_eq!(
            scan("helper(new B());", &["B"]),
            vec![("B".into(), EvidenceKind::Instantiation)]
        );
    }

    #[test]
    fn return_of_new() {
        assert_eq!(
            scan("return new C(x);", &["C"]),
            vec![("C".into(), EvidenceKind::Instantiation)]
        );
    }

    #[test]
    fn generic_local_contributes_argument() {
        assert_eq!(
            scan("List<A> xs = new ArrayList<>();", &["A"]),
            vec![("A".into(), EvidenceKind::LocalDeclaration)]
        );
    }

    #[test]
    fn uninitialised_and_final_locals() {
        let got = scan(
            "x = 1; A a; final B b = y; if (c) { C c2; }",
            &["A", "B", "C"],
        );
        let names: Vec<&str> = got.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["A", "B", "C"]);
    }

    #[test]
    fn assignments_and_calls_are_not_declarations() {
        assert!(scan("a = b; foo.bar(x); A.run(); x.y = z;", &["A", "a", "foo"]).is_empty());
    }

    #[test]
    fn for_loop_header_declaration() {
        assert_eq!(
            scan(
                "for (A it = first(); it != null; it = it.next()) {}",
                &["A"]
            ),
            vec![("A".into(), EvidenceKind::LocalDeclaration)]
        );
    }

    #[test]
    fn enhanced_for_variable() {
        assert_eq!(
            scan("for (A a : items) { a.run(); }", &["A"]),
            vec![("A".to_string(), EvidenceKind::LocalDeclaration)]
        );
        assert!(scan("x = flag ? A : b;", &["A"]).is_empty());
    }

    #[test]
    fn array_creation_counts_element_type() {
        assert_eq!(
            scan("Object o = new A[3];", &["A"]),
            vec![("A".into(), EvidenceKind::Instantiation)]
        );
    }
}

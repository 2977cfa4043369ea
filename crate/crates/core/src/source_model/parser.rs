//! Signature-level parser for Java compilation units.
//!
//! Only class/interface headers, member signatures and method bodies (as
//! token ranges for the evidence scan) are modelled. Anything else is
//! skipped by balanced-delimiter recovery; malformed members become
//! diagnostics instead of aborting the file.

use super::body::scan_body_candidates;
use super::cursor::Cursor;
use super::lexer::Token;
use super::model::{ClassKind, ClassModel, MemberField, MethodSig, TypeRef, Visibility};
use crate::diagnostics::Diagnostic;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedUnit {
    pub classes: Vec<ClassModel>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses one file's token stream into class models, outer classes before
/// the classes nested in them.
pub fn parse_compilation_unit(tokens: &[Token], source_file: &str) -> Result<ParsedUnit> {
    check_brace_balance(tokens, source_file)?;
    let mut p = Parser {
        c: Cursor::new(tokens),
        file: source_file,
        package: None,
        classes: Vec::new(),
        diagnostics: Vec::new(),
    };
    p.compilation_unit();
    Ok(ParsedUnit {
        classes: p.classes,
        diagnostics: p.diagnostics,
    })
}

fn check_brace_balance(tokens: &[Token], file: &str) -> Result<()> {
    let mut open: Vec<usize> = Vec::new();
    for t in tokens {
        if t.is_punct('{') {
            open.push(t.line);
        } else if t.is_punct('}') && open.pop().is_none() {
            return Err(Error::Parse {
                file: file.to_string(),
                line: t.line,
                message: "unmatched `}`".into(),
            });
        }
    }
    match open.pop() {
        Some(line) => Err(Error::Parse {
            file: file.to_string(),
            line,
            message: "`{` is never closed".into(),
        }),
        None => Ok(()),
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Modifiers {
    visibility: Option<Visibility>,
    is_static: bool,
    is_final: bool,
}

type MemberResult = std::result::Result<(), String>;

struct Parser<'a> {
    c: Cursor<'a>,
    file: &'a str,
    package: Option<String>,
    classes: Vec<ClassModel>,
    diagnostics: Vec<Diagnostic>,
}

impl<'a> Parser<'a> {
    fn warn(&mut self, line: usize, message: String) {
        self.diagnostics
            .push(Diagnostic::warning(self.file, line, message));
    }

    fn compilation_unit(&mut self) {
        while !self.c.at_eof() {
            let start = self.c.pos;
            let line = self.c.peek().line;
            if self.c.eat_punct(';') {
                continue;
            }
            if self.c.eat_keyword("package") {
                let mut name = String::new();
                while !self.c.at_eof() && !self.c.at_punct(';') {
                    name.push_str(&self.c.bump().text);
                }
                self.c.eat_punct(';');
                self.package = Some(name);
                continue;
            }
            if self.c.eat_keyword("import") {
                while !self.c.at_eof() && !self.c.eat_punct(';') {
                    self.c.bump();
                }
                continue;
            }
            let mods = self.modifiers();
            if self.c.at_keyword("class") || self.c.at_keyword("interface") {
                if let Err(msg) = self.type_declaration(None, mods) {
                    self.warn(line, format!("skipped malformed type declaration: {msg}"));
                    self.c.pos = start;
                    self.recover(true);
                }
            } else if self.skip_unmodelled_declaration() {
                continue;
            } else {
                let text = self.c.peek().text.clone();
                self.warn(line, format!("unexpected `{text}` at top level"));
                self.recover(true);
            }
        }
    }

    /// Skips to the end of the current construct: through `;`, or through
    /// a balanced `{...}` block. Stops before a closing `}` unless `top`.
    fn recover(&mut self, top: bool) {
        while !self.c.at_eof() {
            let t = self.c.peek();
            if t.is_punct('}') {
                if top {
                    self.c.bump();
                }
                return;
            }
            if self.c.eat_punct(';') {
                return;
            }
            if t.is_punct('{') {
                self.c.skip_balanced('{', '}');
                self.c.eat_punct(';');
                return;
            }
            self.c.bump();
        }
    }

    fn modifiers(&mut self) -> Modifiers {
        let mut m = Modifiers::default();
        loop {
            let t = self.c.peek();
            if self.c.at_annotation() {
                self.c.skip_annotation();
                continue;
            }
            let vis = match t.text.as_str() {
                "public" => Some(Visibility::Public),
                "protected" => Some(Visibility::Protected),
                "private" => Some(Visibility::Private),
                _ => None,
            };
            if t.kind == super::lexer::TokenKind::Keyword {
                match t.text.as_str() {
                    _ if vis.is_some() => m.visibility = vis,
                    "static" => m.is_static = true,
                    "final" => m.is_final = true,
                    "abstract" | "native" | "synchronized" | "transient" | "volatile"
                    | "strictfp" => {}
                    "default" if !self.c.peek_at(1).is_punct(':') => {}
                    _ => break,
                }
                self.c.bump();
                continue;
            }
            // Contextual modifiers: sealed, non-sealed.
            if t.is_ident_named("sealed")
                && self.c.peek_at(1).kind == super::lexer::TokenKind::Keyword
            {
                self.c.bump();
                continue;
            }
            if t.is_ident_named("non")
                && self.c.peek_at(1).is_punct('-')
                && self.c.peek_at(2).is_ident_named("sealed")
            {
                self.c.pos += 3;
                continue;
            }
            break;
        }
        m
    }

    /// Enums, records and annotation types are outside the modelled subset.
    /// Returns true if one was skipped.
    fn skip_unmodelled_declaration(&mut self) -> bool {
        let t = self.c.peek();
        let what = if t.is_keyword("enum") {
            "enum"
        } else if t.is_punct('@') && self.c.peek_at(1).is_keyword("interface") {
            "annotation type"
        } else if t.is_ident_named("record")
            && self.c.peek_at(1).is_ident()
            && (self.c.peek_at(2).is_punct('(') || self.c.peek_at(2).is_punct('<'))
        {
            "record"
        } else {
            return false;
        };
        let line = t.line;
        let name = if what == "annotation type" {
            self.c.peek_at(2).text.clone()
        } else {
            self.c.peek_at(1).text.clone()
        };
        while !self.c.at_eof()
            && !self.c.at_punct('{')
            && !self.c.at_punct('}')
            && !self.c.at_punct(';')
        {
            if self.c.at_punct('(') {
                self.c.skip_balanced('(', ')');
            } else {
                self.c.bump();
            }
        }
        if self.c.at_punct('{') {
            self.c.skip_balanced('{', '}');
        } else {
            self.c.eat_punct(';');
        }
        self.diagnostics.push(Diagnostic::info(
            self.file,
            line,
            format!("{what} `{name}` is not modelled; skipped"),
        ));
        true
    }

    /// At `class`/`interface`. `outer` is the enclosing class's qualified name.
    fn type_declaration(&mut self, outer: Option<&str>, _mods: Modifiers) -> MemberResult {
        let kind = if self.c.eat_keyword("interface") {
            ClassKind::Interface
        } else {
            self.c.bump();
            ClassKind::Class
        };
        let name_tok = self.c.peek();
        if !name_tok.is_ident() {
            return Err(format!("expected type name, found `{}`", name_tok.text));
        }
        self.c.bump();
        let simple_name = name_tok.text.clone();
        let qualified_name = match (outer, &self.package) {
            (Some(o), _) => format!("{o}.{simple_name}"),
            (None, Some(pkg)) => format!("{pkg}.{simple_name}"),
            (None, None) => simple_name.clone(),
        };
        if self.c.at_punct('<') {
            self.c.skip_angles();
        }

        let mut extends_names = Vec::new();
        let mut implements_names = Vec::new();
        loop {
            if self.c.eat_keyword("extends") {
                extends_names.extend(self.type_name_list()?);
            } else if self.c.eat_keyword("implements") {
                implements_names.extend(self.type_name_list()?);
            } else if self.c.peek().is_ident_named("permits") {
                self.c.bump();
                self.type_name_list()?;
            } else {
                break;
            }
        }
        if !self.c.at_punct('{') {
            return Err(format!("expected `{{` after header of `{simple_name}`"));
        }
        if kind == ClassKind::Interface {
            // An interface's supertypes all come through `extends`.
            extends_names.append(&mut implements_names);
        }

        let mut model = ClassModel {
            qualified_name,
            simple_name,
            kind,
            extends_names,
            implements_names,
            fields: Vec::new(),
            methods: Vec::new(),
            source_file: self.file.to_string(),
            line: name_tok.line,
        };
        let slot = self.classes.len();
        self.classes
            .push(ClassModel::empty(&model.qualified_name, self.file));
        self.class_body(&mut model);
        self.classes[slot] = model;
        Ok(())
    }

    fn type_name_list(&mut self) -> std::result::Result<Vec<String>, String> {
        let mut names = Vec::new();
        loop {
            let ty = self
                .c
                .parse_type()
                .ok_or_else(|| format!("expected type, found `{}`", self.c.peek().text))?;
            if let Some(n) = ty.simple_name() {
                names.push(n.to_string());
            }
            if !self.c.eat_punct(',') {
                return Ok(names);
            }
        }
    }

    fn class_body(&mut self, model: &mut ClassModel) {
        self.c.bump(); // {
        loop {
            if self.c.at_eof() {
                return;
            }
            if self.c.eat_punct('}') {
                return;
            }
            let start = self.c.pos;
            let line = self.c.peek().line;
            if let Err(msg) = self.member(model) {
                self.warn(
                    line,
                    format!(
                        "skipped malformed member of `{}`: {msg}",
                        model.qualified_name
                    ),
                );
                self.c.pos = start;
                self.recover(false);
            }
        }
    }

    fn member(&mut self, model: &mut ClassModel) -> MemberResult {
        let in_interface = model.kind == ClassKind::Interface;
        let mods = self.modifiers();
        if self.c.eat_punct(';') {
            return Ok(());
        }
        if self.c.at_punct('{') {
            // instance or static initializer
            self.c.skip_balanced('{', '}');
            return Ok(());
        }
        if self.c.at_keyword("class") || self.c.at_keyword("interface") {
            let outer = model.qualified_name.clone();
            return self.type_declaration(Some(&outer), mods);
        }
        if self.skip_unmodelled_declaration() {
            return Ok(());
        }
        if self.c.at_punct('<') {
            self.c.skip_angles();
        }

        let default_visibility = if in_interface {
            Visibility::Public
        } else {
            Visibility::Package
        };
        let visibility = mods.visibility.unwrap_or(default_visibility);
        let line = self.c.peek().line;

        if self.c.peek().is_ident_named(&model.simple_name) && self.c.peek_at(1).is_punct('(') {
            let name = self.c.bump().text.clone();
            let params = self.params()?;
            self.throws_clause()?;
            if !self.c.at_punct('{') {
                return Err(format!("expected constructor body for `{name}`"));
            }
            let body_evidence = self.body();
            model.methods.push(MethodSig {
                name,
                return_type: TypeRef::void(),
                params,
                visibility,
                is_static: false,
                is_final: false,
                is_constructor: true,
                body_evidence,
                line,
            });
            return Ok(());
        }

        let ty = self.c.parse_type().ok_or_else(|| {
            format!(
                "expected member declaration, found `{}`",
                self.c.peek().text
            )
        })?;
        let name_tok = self.c.peek();
        if !name_tok.is_ident() {
            return Err(format!("expected member name, found `{}`", name_tok.text));
        }
        self.c.bump();

        if self.c.at_punct('(') {
            let params = self.params()?;
            let mut return_type = ty;
            while self.c.at_punct('[') && self.c.peek_at(1).is_punct(']') {
                return_type.raw.push_str("[]");
                self.c.pos += 2;
            }
            self.throws_clause()?;
            let body_evidence = if self.c.at_punct('{') {
                self.body()
            } else if self.c.eat_punct(';') {
                Vec::new()
            } else if self.c.eat_keyword("default") {
                // annotation element default value
                while !self.c.at_eof() && !self.c.eat_punct(';') {
                    self.c.bump();
                }
                Vec::new()
            } else {
                return Err(format!(
                    "expected method body or `;` after `{}`",
                    name_tok.text
                ));
            };
            model.methods.push(MethodSig {
                name: name_tok.text.clone(),
                return_type,
                params,
                visibility,
                is_static: mods.is_static,
                is_final: mods.is_final,
                is_constructor: false,
                body_evidence,
                line,
            });
            return Ok(());
        }

        let mut fields = Vec::new();
        let mut name = name_tok;
        loop {
            let mut field_ty = ty.clone();
            while self.c.at_punct('[') && self.c.peek_at(1).is_punct(']') {
                field_ty.raw.push_str("[]");
                self.c.pos += 2;
            }
            let initializer_instantiates = if self.c.eat_punct('=') {
                self.initializer()?
            } else {
                None
            };
            fields.push(MemberField {
                name: name.text.clone(),
                ty: field_ty,
                visibility,
                // interface fields are implicitly static
                is_static: mods.is_static || in_interface,
                initializer_instantiates,
                line: name.line,
            });
            if self.c.eat_punct(';') {
                break;
            }
            if self.c.eat_punct(',') && self.c.peek().is_ident() {
                name = self.c.bump();
                continue;
            }
            return Err(format!("expected `;` after field `{}`", name.text));
        }
        model.fields.extend(fields);
        Ok(())
    }

    /// Consumes a field initializer up to (not including) the `,` or `;`
    /// that ends it. Returns the instantiated simple name for `new A(...)`.
    fn initializer(&mut self) -> std::result::Result<Option<String>, String> {
        let mut instantiates = None;
        if self.c.at_keyword("new") {
            let mut look = self.c.clone();
            look.bump();
            instantiates = look
                .parse_type()
                .and_then(|t| t.simple_name().map(str::to_string));
        }
        let mut depth = 0usize;
        loop {
            let t = self.c.peek();
            if t.is_eof() {
                return Err("unterminated field initializer".into());
            }
            if depth == 0 && (t.is_punct(',') || t.is_punct(';')) {
                return Ok(instantiates);
            }
            if t.is_keyword("new") {
                self.c.bump();
                // Consume the type so commas inside its type arguments are not separators.
                let _ = self.c.parse_type();
                continue;
            }
            if t.is_punct('.') && self.c.peek_at(1).is_punct('<') {
                self.c.bump();
                self.c.skip_angles();
                continue;
            }
            if t.is_punct('(') || t.is_punct('[') || t.is_punct('{') {
                depth += 1;
            } else if t.is_punct(')') || t.is_punct(']') || t.is_punct('}') {
                if depth == 0 {
                    return Err(format!("unexpected `{}` in field initializer", t.text));
                }
                depth -= 1;
            }
            self.c.bump();
        }
    }

    fn params(&mut self) -> std::result::Result<Vec<TypeRef>, String> {
        self.c.bump(); // (
        let mut params = Vec::new();
        if self.c.eat_punct(')') {
            return Ok(params);
        }
        loop {
            while self.c.at_annotation() || self.c.at_keyword("final") {
                if self.c.eat_keyword("final") {
                    continue;
                }
                self.c.skip_annotation();
            }
            let mut ty = self.c.parse_type().ok_or_else(|| {
                format!("expected parameter type, found `{}`", self.c.peek().text)
            })?;
            let name = self.c.peek();
            if !(name.is_ident() || name.is_keyword("this")) {
                return Err(format!("expected parameter name, found `{}`", name.text));
            }
            self.c.bump();
            while self.c.at_punct('[') && self.c.peek_at(1).is_punct(']') {
                ty.raw.push_str("[]");
                self.c.pos += 2;
            }
            params.push(ty);
            if self.c.eat_punct(',') {
                continue;
            }
            if self.c.eat_punct(')') {
                return Ok(params);
            }
            return Err(format!(
                "expected `,` or `)` in parameter list, found `{}`",
                self.c.peek().text
            ));
        }
    }

    fn throws_clause(&mut self) -> MemberResult {
        if self.c.eat_keyword("throws") {
            self.type_name_list()?;
        }
        Ok(())
    }

    /// At `{`: consumes the body and scans it for type evidence.
    fn body(&mut self) -> Vec<super::model::BodyEvidence> {
        let open = self.c.pos;
        self.c.skip_balanced('{', '}');
        let close = self.c.pos.saturating_sub(1);
        let toks = self.c.tokens();
        if close > open + 1 {
            scan_body_candidates(&toks[open + 1..close])
        } else {
            Vec::new()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::lexer::{strip_comments_and_strings, tokenize};
    use super::super::model::EvidenceKind;
    use super::*;

    fn parse(src: &str) -> ParsedUnit {
        let stripped = strip_comments_and_strings(src).unwrap();
        parse_compilation_unit(&tokenize(&stripped), "T.java").unwrap()
    }

    fn one(src: &str) -> ClassModel {
        let mut unit = parse(src);
        assert_eq!(unit.classes.len(), 1, "{:?}", unit.classes);
        unit.classes.remove(0)
    }

    #[test]
    fn field_with_instantiation() {
        let b = one("class B { A a = new A(); }");
        assert_eq!(b.qualified_name, "B");
        assert_eq!(b.fields.len(), 1);
        let f = &b.fields[0];
        assert_eq!(f.name, "a");
        assert_eq!(f.ty.names, vec!["A"]);
        assert_eq!(f.initializer_instantiates.as_deref(), Some("A"));
        assert_eq!(f.visibility, Visibility::Package);
    }

    #[test]
    fn implements_clause() {
        let b = one("class B implements A { }");
        assert_eq!(b.implements_names, vec!["A"]);
        assert!(b.extends_names.is_empty());
    }

    #[test]
    fn nested_class_is_separate_model() {
        let unit = parse("public class Outer { class Inner {} }");
        let names: Vec<&str> = unit
            .classes
            .iter()
            .map(|c| c.qualified_name.as_str())
            .collect();
        assert_eq!(names, vec!["Outer", "Outer.Inner"]);
        assert_eq!(unit.classes[1].simple_name, "Inner");
        assert!(unit.classes[0].fields.is_empty());
    }

    #[test]
    fn package_prefixes_qualified_name() {
        let unit =
            parse("package com.acme.ui;\nimport java.util.List;\nclass Panel { class Row {} }");
        let names: Vec<&str> = unit
            .classes
            .iter()
            .map(|c| c.qualified_name.as_str())
            .collect();
        assert_eq!(names, vec!["com.acme.ui.Panel", "com.acme.ui.Panel.Row"]);
    }

    #[test]
    fn interface_extends_list_and_implicit_visibility() {
        let i = one(
            "interface Shape extends Drawable, Sized { double area(); Point origin(); int K = 3; }",
        );
        assert_eq!(i.kind, ClassKind::Interface);
        assert_eq!(i.extends_names, vec!["Drawable", "Sized"]);
        assert!(i.implements_names.is_empty());
        assert_eq!(i.methods.len(), 2);
        assert!(i
            .methods
            .iter()
            .all(|m| m.visibility == Visibility::Public && m.body_evidence.is_empty()));
        assert!(i.fields[0].is_static);
    }

    #[test]
    fn method_signatures_and_modifiers() {
        let b = one("public class B extends Base<A> {
                public static A make(A a, A c) throws IOException { return null; }
                protected final List<C> all() { return null; }
                private void run(int n, String... rest) {}
                B(D d) { super(); }
            }");
        assert_eq!(b.extends_names, vec!["Base"]);
        let m = &b.methods;
        assert_eq!(m.len(), 4);
        assert_eq!(m[0].name, "make");
        assert!(m[0].is_static && !m[0].is_final);
        assert_eq!(m[0].params.len(), 2);
        assert_eq!(m[0].return_type.names, vec!["A"]);
        assert!(m[1].is_final);
        assert_eq!(m[1].visibility, Visibility::Protected);
        assert_eq!(m[1].return_type.names, vec!["List", "C"]);
        assert_eq!(m[2].visibility, Visibility::Private);
        assert_eq!(m[2].params[1].raw, "String...");
        assert!(m[3].is_constructor);
        assert!(m[3].return_type.is_void());
        assert_eq!(m[3].params[0].names, vec!["D"]);
    }

    #[test]
    fn body_evidence_is_collected_unfiltered() {
        let b = one("class B { void m() { A a = new A(); int k = 0; } }");
        let ev = &b.methods[0].body_evidence;
        assert_eq!(ev.len(), 2);
        assert_eq!(ev[0].kind, EvidenceKind::LocalDeclaration);
        assert_eq!(ev[1].kind, EvidenceKind::Instantiation);
    }

    #[test]
    fn multiple_declarators_and_generic_initializers() {
        let b =
            one("class B { A x, y; Map<K, V> m = new HashMap<K, V>(), n; int[] arr = {1, 2}; }");
        let names: Vec<&str> = b.fields.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, vec!["x", "y", "m", "n", "arr"]);
        assert_eq!(
            b.fields[2].initializer_instantiates.as_deref(),
            Some("HashMap")
        );
        assert_eq!(b.fields[3].initializer_instantiates, None);
    }

    #[test]
    fn unmodelled_constructs_are_skipped() {
        let unit = parse(
            "@Entity(name = \"x\") public class B {
                static { init(); }
                { count++; }
                enum Color { RED, GREEN; void f() {} }
                @interface Marker { int v() default 1; }
                record Pair(A a, A b) {}
                @Override public String toString() { return \"\"; }
                A a;
            }
            enum Top { X }",
        );
        assert_eq!(unit.classes.len(), 1);
        let b = &unit.classes[0];
        assert_eq!(b.methods.len(), 1);
        assert_eq!(b.fields.len(), 1);
        assert!(unit
            .diagnostics
            .iter()
            .all(|d| d.severity == crate::diagnostics::Severity::Info));
        assert_eq!(unit.diagnostics.len(), 4);
    }

    #[test]
    fn malformed_member_is_skipped_with_warning() {
        let unit = parse("class B { int = 5; A good; void ok() {} }");
        let b = &unit.classes[0];
        assert_eq!(b.fields.len(), 1);
        assert_eq!(b.fields[0].name, "good");
        assert_eq!(b.methods.len(), 1);
        assert_eq!(unit.diagnostics.len(), 1);
        assert_eq!(
            unit.diagnostics[0].severity,
            crate::diagnostics::Severity::Warning
        );
    }

    #[test]
    fn unbalanced_braces_are_an_error() {
        let toks = tokenize("class B {\n void m() {\n}");
        let err = parse_compilation_unit(&toks, "X.java").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                file: "X.java".into(),
                line: 1,
                message: "`{` is never closed".into()
            }
        );
        let err = parse_compilation_unit(&tokenize("class B {}}"), "Y.java").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn generic_methods_and_class_type_parameters() {
        let b = one("class Box<T extends Comparable<T>> { <R> R map(Fn<T, R> f) { return null; } T get() { return v; } }");
        assert_eq!(b.methods.len(), 2);
        assert_eq!(b.methods[0].params[0].names, vec!["Fn", "T", "R"]);
    }

    #[test]
    fn anonymous_class_in_field_initializer() {
        let b = one("class B { Runnable r = new Runnable() { public void run() { x(); } }; A a; }");
        assert_eq!(b.fields.len(), 2);
        assert_eq!(
            b.fields[0].initializer_instantiates.as_deref(),
            Some("Runnable")
        );
    }

    #[test]
    fn parsing_is_repeatable() {
        let src = "class A { B b; C f(D d) { E e = new E(); return null; } }";
        assert_eq!(parse(src), parse(src));
    }
}

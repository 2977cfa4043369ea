//! Comment/literal neutralisation and tokenisation of Java-like source text.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Identifier,
    Keyword,
    Punctuation,
    Literal,
    EndOfFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// 1-based line in the stripped source.
    pub line: usize,
    /// 1-based column, counted in chars.
    pub column: usize,
}

impl Token {
    pub fn is_punct(&self, c: char) -> bool {
        self.kind == TokenKind::Punctuation
            && self.text.len() == c.len_utf8()
            && self.text.starts_with(c)
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        self.kind == TokenKind::Keyword && self.text == kw
    }

    pub fn is_ident(&self) -> bool {
        self.kind == TokenKind::Identifier
    }

    pub fn is_ident_named(&self, name: &str) -> bool {
        self.kind == TokenKind::Identifier && self.text == name
    }

    pub fn is_eof(&self) -> bool {
        self.kind == TokenKind::EndOfFile
    }
}

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
];

const LITERAL_WORDS: &[&str] = &["true", "false", "null"];

pub(crate) const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

#[derive(Clone, Copy)]
enum Quote {
    Double,
    Single,
}

/// Blanks out comments and the contents of string, text-block and char
/// literals. Every replaced char becomes a space; newlines and carriage
/// returns survive, so line and column positions are unchanged. Literal
/// delimiters are kept, leaving an empty (space-filled) literal behind.
pub fn strip_comments_and_strings(source: &str) -> Result<String> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = String::with_capacity(source.len());
    let mut line = 1usize;
    let mut i = 0usize;

    // Pushes a blanked char, keeping line structure.
    fn blank(out: &mut String, c: char, line: &mut usize) {
        match c {
            '\n' => {
                *line += 1;
                out.push('\n');
            }
            '\r' => out.push('\r'),
            _ => out.push(' '),
        }
    }

    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        match (c, next) {
            ('/', Some('/')) => {
                while i < chars.len() && chars[i] != '\n' {
                    blank(&mut out, chars[i], &mut line);
                    i += 1;
                }
            }
            ('/', Some('*')) => {
                let opened = line;
                out.push_str("  ");
                i += 2;
                loop {
                    if i >= chars.len() {
                        return Err(Error::Lex {
                            line: opened,
                            message: "unterminated block comment".into(),
                        });
                    }
                    if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                        out.push_str("  ");
                        i += 2;
                        break;
                    }
                    blank(&mut out, chars[i], &mut line);
                    i += 1;
                }
            }
            ('"', _) if chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"') => {
                let opened = line;
                out.push_str("\"\"\"");
                i += 3;
                loop {
                    if i >= chars.len() {
                        return Err(Error::Lex {
                            line: opened,
                            message: "unterminated text block".into(),
                        });
                    }
                    if chars[i] == '\\' && i + 1 < chars.len() {
                        blank(&mut out, chars[i], &mut line);
                        blank(&mut out, chars[i + 1], &mut line);
                        i += 2;
                        continue;
                    }
                    if chars[i] == '"'
                        && chars.get(i + 1) == Some(&'"')
                        && chars.get(i + 2) == Some(&'"')
                    {
                        out.push_str("\"\"\"");
                        i += 3;
                        break;
                    }
                    blank(&mut out, chars[i], &mut line);
                    i += 1;
                }
            }
            ('"', _) | ('\'', _) => {
                let quote = if c == '"' {
                    Quote::Double
                } else {
                    Quote::Single
                };
                let delim = c;
                let opened = line;
                out.push(delim);
                i += 1;
                loop {
                    if i >= chars.len() || chars[i] == '\n' {
                        let what = match quote {
                            Quote::Double => "string literal",
                            Quote::Single => "char literal",
                        };
                        return Err(Error::Lex {
                            line: opened,
                            message: format!("unterminated {what}"),
                        });
                    }
                    if chars[i] == '\\' && i + 1 < chars.len() && chars[i + 1] != '\n' {
                        out.push_str("  ");
                        i += 2;
                        continue;
                    }
                    if chars[i] == delim {
                        out.push(delim);
                        i += 1;
                        break;
                    }
                    blank(&mut out, chars[i], &mut line);
                    i += 1;
                }
            }
            _ => {
                if c == '\n' {
                    line += 1;
                }
                out.push(c);
                i += 1;
            }
        }
    }
    Ok(out)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Splits stripped source into tokens. Never fails: any char outside the
/// recognised classes becomes a one-char punctuation token.
pub fn tokenize(source: &str) -> Vec<Token> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0usize;

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }

        let start = i;
        let (start_line, start_col) = (line, column);
        let kind = if is_ident_start(c) {
            while i < chars.len() && is_ident_part(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if is_keyword(&word) {
                TokenKind::Keyword
            } else if LITERAL_WORDS.contains(&word.as_str()) {
                TokenKind::Literal
            } else {
                TokenKind::Identifier
            }
        } else if c.is_ascii_digit() {
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.')
            {
                i += 1;
            }
            TokenKind::Literal
        } else if c == '"' || c == '\'' {
            let triple =
                c == '"' && chars.get(i + 1) == Some(&'"') && chars.get(i + 2) == Some(&'"');
            if triple {
                i += 3;
                while i < chars.len()
                    && !(chars[i] == '"'
                        && chars.get(i + 1) == Some(&'"')
                        && chars.get(i + 2) == Some(&'"'))
                {
                    i += 1;
                }
                i = (i + 3).min(chars.len());
            } else {
                i += 1;
                while i < chars.len() && chars[i] != c && chars[i] != '\n' {
                    i += 1;
                }
                if i < chars.len() && chars[i] == c {
                    i += 1;
                }
            }
            TokenKind::Literal
        } else {
            i += 1;
            TokenKind::Punctuation
        };

        let text: String = chars[start..i].iter().collect();
        // Text blocks may span lines.
        for ch in text.chars() {
            if ch == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        tokens.push(Token {
            kind,
            text,
            line: start_line,
            column: start_col,
        });
    }

    tokens.push(Token {
        kind: TokenKind::EndOfFile,
        text: String::new(),
        line,
        column,
    });
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds_and_text(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src)
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    }

    #[test]
    fn block_comment_is_blanked() {
        let out = strip_comments_and_strings("class A { /* new B() */ }").unwrap();
        assert_eq!(out, "class A {               }");
        assert_eq!(out.len(), "class A { /* new B() */ }".len());
    }

    #[test]
    fn string_contents_are_blanked() {
        let out = strip_comments_and_strings(r#"String s = "new C()";"#).unwrap();
        assert_eq!(out, r#"String s = "       ";"#);
        assert!(!out.contains("new"));
    }

    #[test]
    fn empty_input_is_identity() {
        assert_eq!(strip_comments_and_strings("").unwrap(), "");
    }

    #[test]
    fn line_comment_and_newlines_survive() {
        let src = "a // new B()\nb /* x\n y */ c\n";
        let out = strip_comments_and_strings(src).unwrap();
        assert_eq!(out.lines().count(), src.lines().count());
        assert_eq!(out, "a           \nb     \n      c\n");
    }

    #[test]
    fn escaped_quotes_stay_inside_literal() {
        let out = strip_comments_and_strings(r#"x = "a\"new B()"; y = '\'';"#).unwrap();
        assert!(!out.contains("new"));
        assert!(out.ends_with("y = '  ';"));
    }

    #[test]
    fn text_block_spans_lines() {
        let src = "s = \"\"\"\n new A();\n \"\"\"; A a;";
        let out = strip_comments_and_strings(src).unwrap();
        assert_eq!(out.matches('\n').count(), 2);
        assert!(!out.contains("new"));
        assert!(out.ends_with("A a;"));
    }

    #[test]
    fn unterminated_block_comment_reports_opening_line() {
        let err = strip_comments_and_strings("class A {}\n\n/* open\n more").unwrap_err();
        assert_eq!(
            err,
            Error::Lex {
                line: 3,
                message: "unterminated block comment".into()
            }
        );
    }

    #[test]
    fn unterminated_string_reports_opening_line() {
        let err = strip_comments_and_strings("a\nString s = \"oops;\nb").unwrap_err();
        assert!(matches!(err, Error::Lex { line: 2, .. }));
    }

    #[test]
    fn class_header_tokens() {
        use TokenKind::*;
        assert_eq!(
            kinds_and_text("class B extends A"),
            vec![
                (Keyword, "class".into()),
                (Identifier, "B".into()),
                (Keyword, "extends".into()),
                (Identifier, "A".into()),
                (EndOfFile, String::new()),
            ]
        );
    }

    #[test]
    fn generic_brackets_are_punctuation() {
        let toks = tokenize("List<A> xs;");
        let texts: Vec<&str> = toks.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, vec!["List", "<", "A", ">", "xs", ";", ""]);
        assert!(toks[1].is_punct('<') && toks[3].is_punct('>'));
    }

    #[test]
    fn instantiation_statement_has_eight_tokens() {
        let toks = tokenize("A a = new A();");
        assert_eq!(toks.len(), 9);
        assert!(toks[8].is_eof());
        assert!(toks[3].is_keyword("new"));
    }

    #[test]
    fn positions_are_one_based_and_monotone() {
        let toks = tokenize("class A {\n  int x;\n}");
        assert_eq!((toks[0].line, toks[0].column), (1, 1));
        let int_tok = toks.iter().find(|t| t.text == "int").unwrap();
        assert_eq!((int_tok.line, int_tok.column), (2, 3));
        for w in toks.windows(2) {
            assert!((w[0].line, w[0].column) <= (w[1].line, w[1].column));
        }
    }

    #[test]
    fn shift_operator_splits_for_nested_generics() {
        let texts: Vec<String> = tokenize("Map<A, List<B>> m;")
            .into_iter()
            .map(|t| t.text)
            .collect();
        assert!(texts.windows(2).any(|w| w[0] == ">" && w[1] == ">"));
    }

    #[test]
    fn unknown_chars_become_punctuation() {
        let toks = tokenize("a # b");
        assert_eq!(toks[1].kind, TokenKind::Punctuation);
        assert_eq!(toks[1].text, "#");
    }
}

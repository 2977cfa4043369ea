use super::lexer::{Token, TokenKind, PRIMITIVES};
use super::model::TypeRef;

static EOF_TOKEN: Token = Token {
    kind: TokenKind::EndOfFile,
    text: String::new(),
    line: 0,
    column: 0,
};

/// Read position over a token slice. Reading past the end yields an
/// end-of-file token, so slices need not carry their own terminator.
#[derive(Debug, Clone)]
pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn at(toks: &'a [Token], pos: usize) -> Self {
        Cursor { toks, pos }
    }

    pub fn tokens(&self) -> &'a [Token] {
        self.toks
    }

    pub fn peek(&self) -> &'a Token {
        self.peek_at(0)
    }

    pub fn peek_at(&self, k: usize) -> &'a Token {
        self.toks.get(self.pos + k).unwrap_or(&EOF_TOKEN)
    }

    pub fn at_eof(&self) -> bool {
        self.peek().is_eof()
    }

    pub fn bump(&mut self) -> &'a Token {
        let t = self.peek();
        if !t.is_eof() {
            self.pos += 1;
        }
        t
    }

    pub fn at_punct(&self, c: char) -> bool {
        self.peek().is_punct(c)
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if self.at_punct(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn at_keyword(&self, kw: &str) -> bool {
        self.peek().is_keyword(kw)
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.at_keyword(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// At `open`: consumes through the matching `close`, or to end of input.
    pub fn skip_balanced(&mut self, open: char, close: char) {
        let mut depth = 0usize;
        while !self.at_eof() {
            let t = self.bump();
            if t.is_punct(open) {
                depth += 1;
            } else if t.is_punct(close) {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    return;
                }
            }
        }
    }

    /// At `<`: consumes a type-parameter or type-argument list. Stops early
    /// (without consuming) at a token that cannot appear inside one.
    pub fn skip_angles(&mut self) {
        let mut depth = 0usize;
        while !self.at_eof() {
            let t = self.peek();
            if t.is_punct(';') || t.is_punct('{') || t.is_punct('}') {
                return;
            }
            self.pos += 1;
            if t.is_punct('<') {
                depth += 1;
            } else if t.is_punct('>') {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    return;
                }
            } else if t.is_punct('(') {
                self.pos -= 1;
                self.skip_balanced('(', ')');
            }
        }
    }

    /// At `@` (not `@interface`): consumes `@Name.Name(args)`.
    pub fn skip_annotation(&mut self) {
        self.bump();
        if self.peek().is_ident() {
            self.bump();
            while self.at_punct('.') && self.peek_at(1).is_ident() {
                self.pos += 2;
            }
        }
        if self.at_punct('(') {
            self.skip_balanced('(', ')');
        }
    }

    pub fn at_annotation(&self) -> bool {
        self.at_punct('@') && !self.peek_at(1).is_keyword("interface")
    }

    /// Parses a type reference. On failure the position is left unchanged.
    pub fn parse_type(&mut self) -> Option<TypeRef> {
        let start = self.pos;
        let mut raw = String::new();
        let mut names = Vec::new();
        if self.type_inner(&mut raw, &mut names) {
            Some(TypeRef { raw, names })
        } else {
            self.pos = start;
            None
        }
    }

    fn type_inner(&mut self, raw: &mut String, names: &mut Vec<String>) -> bool {
        while self.at_annotation() {
            self.skip_annotation();
        }
        let t = self.peek();
        if t.kind == TokenKind::Keyword && PRIMITIVES.contains(&t.text.as_str()) {
            raw.push_str(&t.text);
            self.bump();
        } else if t.is_ident() {
            let mut simple = String::new();
            let mut args = Vec::new();
            loop {
                let seg = self.bump();
                raw.push_str(&seg.text);
                simple.clone_from(&seg.text);
                if self.at_punct('<') && !self.type_args(raw, &mut args) {
                    return false;
                }
                if self.at_punct('.') && self.peek_at(1).is_ident() {
                    raw.push('.');
                    self.bump();
                    continue;
                }
                break;
            }
            push_unique(names, simple);
            for a in args {
                push_unique(names, a);
            }
        } else {
            return false;
        }
        while self.at_punct('[') && self.peek_at(1).is_punct(']') {
            raw.push_str("[]");
            self.pos += 2;
        }
        if self.at_punct('.') && self.peek_at(1).is_punct('.') && self.peek_at(2).is_punct('.') {
            raw.push_str("...");
            self.pos += 3;
        }
        true
    }

    fn type_args(&mut self, raw: &mut String, names: &mut Vec<String>) -> bool {
        raw.push('<');
        self.bump();
        if self.eat_punct('>') {
            raw.push('>');
            return true;
        }
        loop {
            if self.eat_punct('?') {
                raw.push('?');
                for kw in ["extends", "super"] {
                    if self.eat_keyword(kw) {
                        raw.push(' ');
                        raw.push_str(kw);
                        raw.push(' ');
                        if !self.type_inner(raw, names) {
                            return false;
                        }
                    }
                }
            } else if !self.type_inner(raw, names) {
                return false;
            }
            if self.eat_punct(',') {
                raw.push_str(", ");
                continue;
            }
            if self.eat_punct('>') {
                raw.push('>');
                return true;
            }
            return false;
        }
    }
}

fn push_unique(names: &mut Vec<String>, name: String) {
    if !names.contains(&name) {
        names.push(name);
    }
}

#[cfg(test)]
mod tests {
    use super::super::lexer::tokenize;
    use super::*;

    fn ty(src: &str) -> Option<TypeRef> {
        let toks = tokenize(src);
        Cursor::new(&toks).parse_type()
    }

    #[test]
    fn generic_arguments_follow_raw_name() {
        let t = ty("Map<String, List<A>> m").unwrap();
        assert_eq!(t.raw, "Map<String, List<A>>");
        assert_eq!(t.names, vec!["Map", "String", "List", "A"]);
    }

    #[test]
    fn arrays_are_stripped_from_names() {
        let t = ty("A[][] xs").unwrap();
        assert_eq!(t.raw, "A[][]");
        assert_eq!(t.names, vec!["A"]);
        let p = ty("int[] xs").unwrap();
        assert!(p.names.is_empty());
    }

    #[test]
    fn qualified_and_nested_names_use_last_segment() {
        assert_eq!(ty("java.util.List<A>").unwrap().names, vec!["List", "A"]);
        assert_eq!(ty("Outer.Inner x").unwrap().names, vec!["Inner"]);
    }

    #[test]
    fn wildcards_and_varargs() {
        let t = ty("List<? extends A>").unwrap();
        assert_eq!(t.names, vec!["List", "A"]);
        let v = ty("B... bs").unwrap();
        assert_eq!(v.raw, "B...");
        assert_eq!(v.names, vec!["B"]);
    }

    #[test]
    fn comparison_is_not_a_type() {
        let toks = tokenize("a < b;");
        let mut c = Cursor::new(&toks);
        assert!(c.parse_type().is_none());
        assert_eq!(c.pos, 0);
    }

    #[test]
    fn void_and_diamond() {
        assert!(ty("void").unwrap().names.is_empty());
        assert_eq!(ty("ArrayList<>").unwrap().names, vec!["ArrayList"]);
    }
}

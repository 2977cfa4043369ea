//! Source text to signature-level class models.

mod body;
mod codebase;
mod cursor;
mod lexer;
mod model;
mod parser;

pub use body::{scan_body_candidates, scan_body_evidence};
pub use codebase::{build_codebase, build_codebase_with, discover_sources, parse_file, SourceFile};
pub use lexer::{is_keyword, strip_comments_and_strings, tokenize, Token, TokenKind};
pub use model::{
    BodyEvidence, ClassKind, ClassModel, CodebaseModel, EvidenceKind, MemberField, MethodSig,
    TypeRef, Visibility,
};
pub use parser::{parse_compilation_unit, ParsedUnit};

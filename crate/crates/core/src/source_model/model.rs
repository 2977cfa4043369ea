use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagnostics::Diagnostic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Visibility {
    Public,
    Protected,
    Package,
    Private,
}

impl Visibility {
    /// Non-private members are reachable from at least one other class.
    pub fn is_visible(self) -> bool {
        self != Visibility::Private
    }
}

/// A type as written in source plus the simple names it refers to.
///
/// `names` holds the raw type's simple name followed by the simple names of
/// its generic arguments (recursively, first occurrence order). Array
/// suffixes are dropped and primitives contribute nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TypeRef {
    pub raw: String,
    pub names: Vec<String>,
}

impl TypeRef {
    pub fn void() -> Self {
        TypeRef {
            raw: "void".into(),
            names: Vec::new(),
        }
    }

    /// The simple name of the outermost type, if it is not a primitive.
    pub fn simple_name(&self) -> Option<&str> {
        self.names.first().map(String::as_str)
    }

    pub fn is_void(&self) -> bool {
        self.raw == "void"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MemberField {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: TypeRef,
    pub visibility: Visibility,
    pub is_static: bool,
    /// Simple name `A` when the initializer has the `new A(...)` form.
    pub initializer_instantiates: Option<String>,
    pub line: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceKind {
    LocalDeclaration,
    Instantiation,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BodyEvidence {
    pub name: String,
    pub kind: EvidenceKind,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MethodSig {
    pub name: String,
    pub return_type: TypeRef,
    pub params: Vec<TypeRef>,
    pub visibility: Visibility,
    pub is_static: bool,
    pub is_final: bool,
    pub is_constructor: bool,
    /// Empty for methods without a body.
    pub body_evidence: Vec<BodyEvidence>,
    pub line: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Class,
    Interface,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ClassModel {
    /// `pkg.Outer.Inner`; the package prefix is absent for the default package.
    pub qualified_name: String,
    pub simple_name: String,
    pub kind: ClassKind,
    pub extends_names: Vec<String>,
    pub implements_names: Vec<String>,
    pub fields: Vec<MemberField>,
    pub methods: Vec<MethodSig>,
    pub source_file: String,
    pub line: usize,
}

impl ClassModel {
    /// An empty class, used for what-if modules that have no source.
    pub fn empty(qualified_name: &str, source_file: &str) -> Self {
        let simple_name = qualified_name
            .rsplit('.')
            .next()
            .unwrap_or(qualified_name)
            .to_string();
        ClassModel {
            qualified_name: qualified_name.to_string(),
            simple_name,
            kind: ClassKind::Class,
            extends_names: Vec::new(),
            implements_names: Vec::new(),
            fields: Vec::new(),
            methods: Vec::new(),
            source_file: source_file.to_string(),
            line: 0,
        }
    }
}

/// All user-defined classes of an analysed source tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodebaseModel {
    pub classes: Vec<ClassModel>,
    pub simple_name_index: BTreeMap<String, BTreeSet<String>>,
    pub files: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
}

impl CodebaseModel {
    /// Assembles a model from already-parsed classes, indexing them by simple name.
    pub fn from_classes(
        classes: Vec<ClassModel>,
        files: Vec<String>,
        diagnostics: Vec<Diagnostic>,
    ) -> Self {
        let mut index: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for c in &classes {
            index
                .entry(c.simple_name.clone())
                .or_default()
                .insert(c.qualified_name.clone());
        }
        CodebaseModel {
            classes,
            simple_name_index: index,
            files,
            diagnostics,
        }
    }

    pub fn class(&self, qualified_name: &str) -> Option<&ClassModel> {
        self.classes
            .iter()
            .find(|c| c.qualified_name == qualified_name)
    }

    pub fn contains(&self, qualified_name: &str) -> bool {
        self.class(qualified_name).is_some()
    }

    /// Qualified names a simple name may refer to. Empty for external types.
    pub fn resolve(&self, simple_name: &str) -> impl Iterator<Item = &str> {
        self.simple_name_index
            .get(simple_name)
            .into_iter()
            .flat_map(|set| set.iter().map(String::as_str))
    }

    pub fn is_user_defined(&self, simple_name: &str) -> bool {
        self.simple_name_index.contains_key(simple_name)
    }

    /// Qualified names in sorted order.
    pub fn class_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .classes
            .iter()
            .map(|c| c.qualified_name.clone())
            .collect();
        names.sort();
        names
    }

    /// A copy with an extra, memberless class. Fails if the name is taken.
    pub fn with_virtual_class(&self, qualified_name: &str) -> crate::Result<CodebaseModel> {
        if self.contains(qualified_name) {
            return Err(crate::Error::Validation(format!(
                "class `{qualified_name}` already exists"
            )));
        }
        let mut classes = self.classes.clone();
        classes.push(ClassModel::empty(qualified_name, "<virtual>"));
        Ok(CodebaseModel::from_classes(
            classes,
            self.files.clone(),
            self.diagnostics.clone(),
        ))
    }
}

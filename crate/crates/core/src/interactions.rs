//! Interaction evidence: every place where one user-defined class depends on
//! another through a return type, a parameter, a field, a method-local
//! variable or instantiation, or a supertype clause.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::source_model::{ClassModel, CodebaseModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum InteractionKind {
    ReturnType,
    Parameter,
    ObjectDeclaration,
    LocalVariable,
    Inheritance,
}

/// Which coupling family an interaction kind feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Category {
    /// Operation-operation: parameter and return types.
    OperationOperation,
    /// Class-class: object declaration and inheritance; the CCIG edges.
    ClassClass,
    /// Local variables and instantiations; counted by the NUCD family only.
    DependencyOnly,
}

impl InteractionKind {
    pub const ALL: [InteractionKind; 5] = [
        InteractionKind::ReturnType,
        InteractionKind::Parameter,
        InteractionKind::ObjectDeclaration,
        InteractionKind::LocalVariable,
        InteractionKind::Inheritance,
    ];

    pub fn category(self) -> Category {
        match self {
            InteractionKind::ReturnType | InteractionKind::Parameter => {
                Category::OperationOperation
            }
            InteractionKind::ObjectDeclaration | InteractionKind::Inheritance => {
                Category::ClassClass
            }
            InteractionKind::LocalVariable => Category::DependencyOnly,
        }
    }

    pub fn is_class_class(self) -> bool {
        self.category() == Category::ClassClass
    }

    /// Kinds counted by NUCD, TNUCD, NUCC and TNUCC.
    pub fn is_dependency(self) -> bool {
        matches!(
            self,
            InteractionKind::Parameter
                | InteractionKind::ReturnType
                | InteractionKind::LocalVariable
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            InteractionKind::ReturnType => "ReturnType",
            InteractionKind::Parameter => "Parameter",
            InteractionKind::ObjectDeclaration => "ObjectDeclaration",
            InteractionKind::LocalVariable => "LocalVariable",
            InteractionKind::Inheritance => "Inheritance",
        }
    }
}

impl fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InteractionKind {
    type Err = String;

    /// Accepts the display names and the kebab-case CLI spellings.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_lowercase();
        InteractionKind::ALL
            .into_iter()
            .find(|k| k.name().to_lowercase() == norm)
            .ok_or_else(|| format!("unknown interaction kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SourceLocation {
    pub file: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Interaction {
    /// The client: the class that contains the dependency.
    pub source: String,
    /// The supplier: the class being used.
    pub target: String,
    pub kind: InteractionKind,
    pub location: SourceLocation,
    pub via: String,
}

impl Interaction {
    fn sort_key(&self) -> (&str, usize, InteractionKind, &str, &str, &str) {
        (
            &self.location.file,
            self.location.line,
            self.kind,
            &self.source,
            &self.target,
            &self.via,
        )
    }
}

impl PartialOrd for Interaction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interaction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Interaction {
    /// `source -> target Kind file:line via`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} {} {}:{} {}",
            self.source, self.target, self.kind, self.location.file, self.location.line, self.via
        )
    }
}

/// Evidence list in (file, line, kind) order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct InteractionSet {
    pub evidences: Vec<Interaction>,
}

impl InteractionSet {
    pub fn new(mut evidences: Vec<Interaction>) -> Self {
        evidences.sort();
        InteractionSet { evidences }
    }

    pub fn len(&self) -> usize {
        self.evidences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.evidences.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interaction> {
        self.evidences.iter()
    }

    pub fn count_of(&self, kind: InteractionKind) -> usize {
        self.evidences.iter().filter(|e| e.kind == kind).count()
    }

    /// A copy with extra evidences merged in.
    pub fn with(&self, extra: impl IntoIterator<Item = Interaction>) -> InteractionSet {
        let mut all = self.evidences.clone();
        all.extend(extra);
        InteractionSet::new(all)
    }
}

/// Emits one interaction per user-defined match of each simple name,
/// skipping self-references.
fn emit<'m>(
    model: &'m CodebaseModel,
    class: &ClassModel,
    names: impl IntoIterator<Item = &'m str>,
    kind: InteractionKind,
    line: usize,
    via: &str,
    out: &mut Vec<Interaction>,
) {
    for name in names {
        for target in model.resolve(name) {
            if target == class.qualified_name {
                continue;
            }
            out.push(Interaction {
                source: class.qualified_name.clone(),
                target: target.to_string(),
                kind,
                location: SourceLocation {
                    file: class.source_file.clone(),
                    line,
                },
                via: via.to_string(),
            });
        }
    }
}

pub fn extract_return_type(model: &CodebaseModel) -> Vec<Interaction> {
    let mut out = Vec::new();
    for class in &model.classes {
        for m in class.methods.iter().filter(|m| !m.is_constructor) {
            let names = m.return_type.names.iter().map(String::as_str);
            emit(
                model,
                class,
                names,
                InteractionKind::ReturnType,
                m.line,
                &m.name,
                &mut out,
            );
        }
    }
    out
}

/// One evidence per parameter position, constructors included.
pub fn extract_parameters(model: &CodebaseModel) -> Vec<Interaction> {
    let mut out = Vec::new();
    for class in &model.classes {
        for m in &class.methods {
            for p in &m.params {
                let names = p.names.iter().map(String::as_str);
                emit(
                    model,
                    class,
                    names,
                    InteractionKind::Parameter,
                    m.line,
                    &m.name,
                    &mut out,
                );
            }
        }
    }
    out
}

/// Field types, plus the instantiated type of a `new X()` initializer when
/// it is not already among the declared type's names.
pub fn extract_object_declarations(model: &CodebaseModel) -> Vec<Interaction> {
    let mut out = Vec::new();
    for class in &model.classes {
        for f in &class.fields {
            let mut names: Vec<&str> = f.ty.names.iter().map(String::as_str).collect();
            if let Some(inst) = f.initializer_instantiates.as_deref() {
                if !names.contains(&inst) {
                    names.push(inst);
                }
            }
            emit(
                model,
                class,
                names,
                InteractionKind::ObjectDeclaration,
                f.line,
                &f.name,
                &mut out,
            );
        }
    }
    out
}

pub fn extract_local_variables(model: &CodebaseModel) -> Vec<Interaction> {
    let mut out = Vec::new();
    for class in &model.classes {
        for m in &class.methods {
            for e in &m.body_evidence {
                emit(
                    model,
                    class,
                    [e.name.as_str()],
                    InteractionKind::LocalVariable,
                    e.line,
                    &m.name,
                    &mut out,
                );
            }
        }
    }
    out
}

/// Subtype -> supertype, one per `extends`/`implements` entry.
pub fn extract_inheritance(model: &CodebaseModel) -> Vec<Interaction> {
    let mut out = Vec::new();
    for class in &model.classes {
        let supers = class
            .extends_names
            .iter()
            .chain(&class.implements_names)
            .map(String::as_str);
        emit(
            model,
            class,
            supers,
            InteractionKind::Inheritance,
            class.line,
            &class.simple_name,
            &mut out,
        );
    }
    out
}

pub fn extract_all(model: &CodebaseModel) -> InteractionSet {
    let mut all = extract_return_type(model);
    all.extend(extract_parameters(model));
    all.extend(extract_object_declarations(model));
    all.extend(extract_local_variables(model));
    all.extend(extract_inheritance(model));
    InteractionSet::new(all)
}

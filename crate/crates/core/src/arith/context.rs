use std::fmt;
use std::sync::Arc;

use super::ArithError;

/// Ordered set of variable names shared by every polynomial built over it.
///
/// Contexts are compared by name list, so two independently constructed
/// contexts with the same names are interchangeable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
}

/// Shared handle to a [`VarContext`].
pub type Ctx = Arc<VarContext>;

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ctx, ArithError> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(ArithError::InvalidName(n.to_string()));
            }
            if out.iter().any(|m| m == n) {
                return Err(ArithError::DuplicateName(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(Arc::new(VarContext { names: out }))
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A new context with `extra` appended; fails on collisions.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ctx, ArithError> {
        let mut all: Vec<&str> = self.names.iter().map(String::as_str).collect();
        all.extend(extra.iter().map(|s| s.as_ref()));
        VarContext::new(&all)
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

pub(crate) fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::LESS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{0}` declared twice")]
    Duplicate(String),
    #[error("symbol `{name}` must have arity at least 1, got {arity}")]
    ZeroArity { name: String, arity: usize },
    #[error("`{0}` is not a valid symbol name")]
    BadName(String),
    #[error("`<` can only be declared as a binary relation")]
    LessNotBinary,
}

/// A one-sorted first-order vocabulary. Equality is always available and is
/// never listed as a relation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    relations: Vec<(String, usize)>,
    functions: Vec<(String, usize)>,
    constants: Vec<String>,
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !matches!(s, "forall" | "exists" | "Qcf")
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Convenience constructor for a signature with `<` as its only symbol.
    pub fn order() -> Signature {
        let mut sig = Signature::new();
        sig.add_relation(LESS, 2).expect("fresh signature");
        sig
    }

    fn check_fresh(&self, name: &str) -> Result<(), SignatureError> {
        if self.contains(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.relation_arity(name).is_some()
            || self.function_arity(name).is_some()
            || self.is_constant(name)
    }

    pub fn add_relation(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if name == LESS {
            if arity != 2 {
                return Err(SignatureError::LessNotBinary);
            }
        } else if !is_ident(name) {
            return Err(SignatureError::BadName(name.to_string()));
        }
        if arity == 0 {
            return Err(SignatureError::ZeroArity { name: name.to_string(), arity });
        }
        self.check_fresh(name)?;
        self.relations.push((name.to_string(), arity));
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if !is_ident(name) {
            return Err(SignatureError::BadName(name.to_string()));
        }
        if arity == 0 {
            return Err(SignatureError::ZeroArity { name: name.to_string(), arity });
        }
        self.check_fresh(name)?;
        self.functions.push((name.to_string(), arity));
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str) -> Result<(), SignatureError> {
        if !is_ident(name) {
            return Err(SignatureError::BadName(name.to_string()));
        }
        self.check_fresh(name)?;
        self.constants.push(name.to_string());
        Ok(())
    }

    pub fn with_relation(mut self, name: &str, arity: usize) -> Result<Self, SignatureError> {
        self.add_relation(name, arity)?;
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Result<Self, SignatureError> {
        self.add_function(name, arity)?;
        Ok(self)
    }

    pub fn with_constant(mut self, name: &str) -> Result<Self, SignatureError> {
        self.add_constant(name)?;
        Ok(self)
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn functions(&self) -> &[(String, usize)] {
        &self.functions
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn relation_arity(&self, name: &str) -> Option<usize> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }

    pub fn has_less(&self) -> bool {
        self.relation_arity(LESS) == Some(2)
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.relations
            .iter()
            .map(|(n, _)| n.clone())
            .chain(self.functions.iter().map(|(n, _)| n.clone()))
            .chain(self.constants.iter().cloned())
            .collect()
    }

    /// Adds every symbol of `other`; fails on the first clash.
    pub fn extend(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for (n, a) in &other.relations {
            self.add_relation(n, *a)?;
        }
        for (n, a) in &other.functions {
            self.add_function(n, *a)?;
        }
        for c in &other.constants {
            self.add_constant(c)?;
        }
        Ok(())
    }

    /// Adds the symbols of `other` not already declared; a name declared in
    /// both must have the same kind and arity.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for (n, a) in &other.relations {
            if self.relation_arity(n) != Some(*a) {
                self.add_relation(n, *a)?;
            }
        }
        for (n, a) in &other.functions {
            if self.function_arity(n) != Some(*a) {
                self.add_function(n, *a)?;
            }
        }
        for c in &other.constants {
            if !self.is_constant(c) {
                self.add_constant(c)?;
            }
        }
        Ok(())
    }

    /// The header block used by theory, fragment and axiom files.
    pub fn header(&self) -> String {
        let mut out = String::new();
        for (n, a) in &self.relations {
            out.push_str(&format!("rel {n} {a}\n"));
        }
        for (n, a) in &self.functions {
            out.push_str(&format!("fun {n} {a}\n"));
        }
        for c in &self.constants {
            out.push_str(&format!("const {c}\n"));
        }
        out.push_str("begin\n");
        out
    }
}

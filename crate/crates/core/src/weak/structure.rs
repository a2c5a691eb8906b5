use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{QcfTemplate, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("`{name}`: tuple {tuple:?} leaves the domain 0..{size}")]
    OutOfDomain { name: String, tuple: Vec<usize>, size: usize },
    #[error("`{name}`: tuples of different lengths")]
    MixedArity { name: String },
    #[error("function `{name}` is not total or not single-valued")]
    NotAFunction { name: String },
    #[error("invalid structure JSON: {0}")]
    Json(String),
}

/// A finite L*-structure: an ordinary structure on `0..size` plus, for each
/// `Qcf` template key, the set of parameter tuples at which the quantifier
/// holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakStructure {
    size: usize,
    #[serde(default)]
    relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
    /// Rows `[input.., output]`.
    #[serde(default)]
    functions: BTreeMap<String, BTreeSet<Vec<usize>>>,
    #[serde(default)]
    constants: BTreeMap<String, usize>,
    #[serde(default)]
    qcf: BTreeMap<String, BTreeSet<Vec<usize>>>,
}

/// All tuples of length `arity` over `0..size` in lexicographic order.
pub fn tuples(size: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = size.checked_pow(arity as u32).unwrap_or(usize::MAX);
    (0..count).map(move |mut i| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = i % size;
            i /= size;
        }
        t
    })
}

fn check_tuples(name: &str, size: usize, set: &BTreeSet<Vec<usize>>) -> Result<(), StructureError> {
    let mut arity = None;
    for t in set {
        if t.iter().any(|&e| e >= size) {
            return Err(StructureError::OutOfDomain { name: name.into(), tuple: t.clone(), size });
        }
        if *arity.get_or_insert(t.len()) != t.len() {
            return Err(StructureError::MixedArity { name: name.into() });
        }
    }
    Ok(())
}

impl WeakStructure {
    pub fn new(size: usize) -> Result<WeakStructure, StructureError> {
        if size == 0 {
            return Err(StructureError::EmptyDomain);
        }
        Ok(WeakStructure {
            size,
            relations: BTreeMap::new(),
            functions: BTreeMap::new(),
            constants: BTreeMap::new(),
            qcf: BTreeMap::new(),
        })
    }

    /// Empty relations, constant functions with value 0 and constants at 0.
    pub fn plain(sig: &Signature, size: usize) -> Result<WeakStructure, StructureError> {
        let mut m = WeakStructure::new(size)?;
        for (r, _) in sig.relations() {
            m.relations.insert(r.clone(), BTreeSet::new());
        }
        for (f, arity) in sig.functions() {
            m.set_function(f, *arity, |_| 0)?;
        }
        for c in sig.constants() {
            m.constants.insert(c.clone(), 0);
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relation(&self, name: &str) -> Option<&BTreeSet<Vec<usize>>> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> &BTreeMap<String, BTreeSet<Vec<usize>>> {
        &self.relations
    }

    pub fn function_rows(&self, name: &str) -> Option<&BTreeSet<Vec<usize>>> {
        self.functions.get(name)
    }

    pub fn functions(&self) -> &BTreeMap<String, BTreeSet<Vec<usize>>> {
        &self.functions
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.get(name).copied()
    }

    pub fn constants(&self) -> &BTreeMap<String, usize> {
        &self.constants
    }

    pub fn qcf_table(&self, key: &str) -> Option<&BTreeSet<Vec<usize>>> {
        self.qcf.get(key)
    }

    pub fn qcf_tables(&self) -> &BTreeMap<String, BTreeSet<Vec<usize>>> {
        &self.qcf
    }

    pub fn set_relation(
        &mut self,
        name: &str,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<(), StructureError> {
        let set: BTreeSet<Vec<usize>> = tuples.into_iter().collect();
        check_tuples(name, self.size, &set)?;
        self.relations.insert(name.to_string(), set);
        Ok(())
    }

    pub fn set_function(
        &mut self,
        name: &str,
        arity: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Result<(), StructureError> {
        let mut rows = BTreeSet::new();
        for mut t in tuples(self.size, arity) {
            let out = f(&t);
            t.push(out);
            rows.insert(t);
        }
        check_tuples(name, self.size, &rows)?;
        self.functions.insert(name.to_string(), rows);
        Ok(())
    }

    pub fn set_constant(&mut self, name: &str, e: usize) -> Result<(), StructureError> {
        if e >= self.size {
            return Err(StructureError::OutOfDomain { name: name.into(), tuple: vec![e], size: self.size });
        }
        self.constants.insert(name.to_string(), e);
        Ok(())
    }

    pub fn set_qcf(
        &mut self,
        key: &str,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<(), StructureError> {
        let set: BTreeSet<Vec<usize>> = tuples.into_iter().collect();
        check_tuples(key, self.size, &set)?;
        self.qcf.insert(key.to_string(), set);
        Ok(())
    }

    /// Adds an empty table for every template that has none yet.
    pub fn with_false_qcf<'a>(mut self, templates: impl IntoIterator<Item = &'a QcfTemplate>) -> WeakStructure {
        for t in templates {
            self.qcf.entry(t.key().to_string()).or_default();
        }
        self
    }

    pub fn validate(&self) -> Result<(), StructureError> {
        if self.size == 0 {
            return Err(StructureError::EmptyDomain);
        }
        for (n, set) in self.relations.iter().chain(&self.qcf) {
            check_tuples(n, self.size, set)?;
        }
        for (n, rows) in &self.functions {
            check_tuples(n, self.size, rows)?;
            let Some(width) = rows.iter().next().map(Vec::len) else {
                return Err(StructureError::NotAFunction { name: n.clone() });
            };
            if width < 2 {
                return Err(StructureError::NotAFunction { name: n.clone() });
            }
            let inputs: BTreeSet<&[usize]> = rows.iter().map(|r| &r[..width - 1]).collect();
            let expected = self.size.checked_pow((width - 1) as u32);
            if inputs.len() != rows.len() || Some(inputs.len()) != expected {
                return Err(StructureError::NotAFunction { name: n.clone() });
            }
        }
        for (n, &e) in &self.constants {
            if e >= self.size {
                return Err(StructureError::OutOfDomain { name: n.clone(), tuple: vec![e], size: self.size });
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<WeakStructure, StructureError> {
        let m: WeakStructure = serde_json::from_str(text).map_err(|e| StructureError::Json(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure serializes")
    }
}

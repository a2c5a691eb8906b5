use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::Signature;

/// Name of the least infinite regular cardinal.
pub const OMEGA: &str = "omega";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CofinalitySpecError {
    #[error("`{0}` is not a cardinal name")]
    BadName(String),
}

/// A class C of regular cardinals: either an explicit finite set of names or
/// the complement of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofinalitySpec {
    names: BTreeSet<String>,
    complemented: bool,
}

impl CofinalitySpec {
    pub fn finite<I, S>(names: I) -> CofinalitySpec
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        CofinalitySpec { names: names.into_iter().map(Into::into).collect(), complemented: false }
    }

    pub fn all_except<I, S>(names: I) -> CofinalitySpec
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        CofinalitySpec { names: names.into_iter().map(Into::into).collect(), complemented: true }
    }

    /// `omega`, `omega,aleph1`, or `all-except:omega`.
    pub fn parse(text: &str) -> Result<CofinalitySpec, CofinalitySpecError> {
        let text = text.trim();
        let (complemented, list) = match text.strip_prefix("all-except:") {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let mut names = BTreeSet::new();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part != OMEGA && !is_cardinal_name(part) {
                return Err(CofinalitySpecError::BadName(part.to_string()));
            }
            names.insert(part.to_string());
        }
        Ok(CofinalitySpec { names, complemented })
    }

    pub fn contains(&self, cardinal: &str) -> bool {
        self.names.contains(cardinal) != self.complemented
    }

    /// The class of regular cardinals is infinite, so a complement of a
    /// finite set is never empty.
    pub fn is_nonempty(&self) -> bool {
        self.complemented || !self.names.is_empty()
    }

    /// A finite set never exhausts the regular cardinals.
    pub fn is_not_all(&self) -> bool {
        !self.complemented || !self.names.is_empty()
    }

    /// Warnings for classes outside "non-empty and not all regular cardinals".
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.is_nonempty() {
            out.push("cofinality class is empty".to_string());
        }
        if !self.is_not_all() {
            out.push("cofinality class contains every regular cardinal".to_string());
        }
        out
    }
}

fn is_cardinal_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && Signature::new().with_constant(s).is_ok()
}

impl fmt::Display for CofinalitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complemented {
            f.write_str("all-except:")?;
        }
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        f.write_str(&names.join(","))
    }
}

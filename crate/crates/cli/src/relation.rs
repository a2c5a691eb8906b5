//! Relation names accepted by `order-check`.
//!
//! A name always denotes a relation between the `--x` and `--y` orders:
//! `inverse-neg(R)` builds `R` between Y and X first, and `compose(R, S)`
//! builds `R` between X and Y and `S` between Y and Y.

use std::fmt;

use qcf_core::order::{LazyRelation, NormalOrder, OrderError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationSpec {
    Connection,
    Sparse,
    SelfLeq,
    Full,
    Empty,
    InverseNeg(Box<RelationSpec>),
    Anti(Box<RelationSpec>),
    Normalize(Box<RelationSpec>),
    NormalizeFactored(Box<RelationSpec>),
    Lower(Box<RelationSpec>),
    Compose(Box<RelationSpec>, Box<RelationSpec>),
}

pub const NAMES: &str = "connection, sparse, self, full, empty, inverse-neg(R), anti(R), normalize(R), \
                         normalize-factored(R), lower(R), compose(R, S)";

impl RelationSpec {
    pub fn parse(text: &str) -> Result<RelationSpec, String> {
        let mut p = Parser { s: text, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(format!("unexpected `{}` at column {}", &text[p.pos..], p.pos + 1));
        }
        Ok(spec)
    }

    pub fn build(&self, x: &NormalOrder, y: &NormalOrder, bound: usize) -> Result<LazyRelation, OrderError> {
        use RelationSpec::*;
        Ok(match self {
            Connection => LazyRelation::connection(x, y)?,
            Sparse => LazyRelation::sparse(x, y)?,
            SelfLeq if x != y => return Err(OrderError::OrderMismatch),
            SelfLeq => LazyRelation::self_connection(x)?,
            Full => LazyRelation::full(x, y)?,
            Empty => LazyRelation::empty(x, y)?,
            InverseNeg(r) => r.build(y, x, bound)?.inverse_neg(),
            Anti(r) => r.build(x, y, bound)?.antitone_closure(bound),
            Normalize(r) => r.build(x, y, bound)?.normalize_monotone(bound),
            NormalizeFactored(r) => r.build(x, y, bound)?.normalize_monotone_factored(bound),
            Lower(r) => r.build(x, y, bound)?.monotone_lower(bound),
            Compose(r, s) => r.build(x, y, bound)?.compose(&s.build(y, y, bound)?, bound)?,
        })
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RelationSpec::*;
        match self {
            Connection => f.write_str("connection"),
            Sparse => f.write_str("sparse"),
            SelfLeq => f.write_str("self"),
            Full => f.write_str("full"),
            Empty => f.write_str("empty"),
            InverseNeg(r) => write!(f, "inverse-neg({r})"),
            Anti(r) => write!(f, "anti({r})"),
            Normalize(r) => write!(f, "normalize({r})"),
            NormalizeFactored(r) => write!(f, "normalize-factored({r})"),
            Lower(r) => write!(f, "lower({r})"),
            Compose(r, s) => write!(f, "compose({r}, {s})"),
        }
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.s[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        self.skip_ws();
        if self.s[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(format!("expected `{c}` at column {}", self.pos + 1))
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let len = self.s[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
            .unwrap_or(self.s.len() - start);
        self.pos += len;
        &self.s[start..start + len]
    }

    fn spec(&mut self) -> Result<RelationSpec, String> {
        use RelationSpec::*;
        let column = self.pos + 1;
        let name = self.word().to_string();
        let unary: Option<fn(Box<RelationSpec>) -> RelationSpec> = match name.as_str() {
            "connection" => return Ok(Connection),
            "sparse" => return Ok(Sparse),
            "self" => return Ok(SelfLeq),
            "full" => return Ok(Full),
            "empty" => return Ok(Empty),
            "inverse-neg" => Some(InverseNeg),
            "anti" => Some(Anti),
            "normalize" => Some(Normalize),
            "normalize-factored" => Some(NormalizeFactored),
            "lower" => Some(Lower),
            "compose" => None,
            "" => return Err(format!("expected a relation name at column {column}")),
            other => return Err(format!("unknown relation `{other}`; expected one of {NAMES}")),
        };
        self.expect('(')?;
        let first = Box::new(self.spec()?);
        let out = match unary {
            Some(make) => make(first),
            None => {
                self.expect(',')?;
                Compose(first, Box::new(self.spec()?))
            }
        };
        self.expect(')')?;
        Ok(out)
    }
}

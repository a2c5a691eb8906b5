//! Recursive-descent parser for the formula surface syntax.
//!
//! Precedence, tightest first: `~`, `&`, `|`, `->`, `<->`. `&`, `|` and
//! `<->` associate to the left, `->` to the right. Binders extend as far
//! right as possible.

use thiserror::Error;

use super::signature::Signature;
use super::{Formula, Term, LESS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    BadChar(char),
    #[error("expected {expected}, found {found}")]
    Expected { expected: String, found: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("Qcf must bind two different variables, got `{0}` twice")]
    SameQcfVariables(String),
    #[error("infix `<` needs a binary relation `<` in the signature")]
    LessUndeclared,
    #[error("trailing input starting at {0}")]
    Trailing(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    Qcf,
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Equals,
    Less,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Qcf => "`Qcf`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Less => "`<`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let rest = |s: &str| chars[i..].iter().take(s.len()).copied().eq(s.chars());
        let (tok, len) = if rest("<->") {
            (Tok::DArrow, 3)
        } else if rest("->") {
            (Tok::Arrow, 2)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len()
                && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
            {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let tok = match word.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "Qcf" => Tok::Qcf,
                _ => Tok::Ident(word),
            };
            (tok, j - i)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '=' => Tok::Equals,
                '<' => Tok::Less,
                other => {
                    return Err(ParseError {
                        line: l,
                        column: cl,
                        kind: ParseErrorKind::BadChar(other),
                    })
                }
            };
            (tok, 1)
        };
        out.push(Spanned { tok, line: l, column: cl });
        i += len;
        col += len;
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'a Signature,
    bound: Vec<String>,
}

/// Parses one formula. Identifiers in term position are variables when bound
/// by an enclosing binder, constants when the signature declares them, and
/// free variables otherwise.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, sig, bound: Vec::new() };
    let f = p.formula()?;
    if p.peek() != &Tok::Eof {
        let found = p.peek().describe();
        return Err(p.error(ParseErrorKind::Trailing(found)));
    }
    Ok(f)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError { line: s.line, column: s.column, kind }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[pos];
        ParseError { line: s.line, column: s.column, kind }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == &tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Expected {
                expected: tok.describe(),
                found: self.peek().describe(),
            }))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.error(ParseErrorKind::Expected {
                expected: "identifier".into(),
                found: other.describe(),
            })),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while self.peek() == &Tok::DArrow {
            self.bump();
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == &Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == &Tok::Bar {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == &Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let v = self.ident()?;
                self.expect(Tok::Dot)?;
                self.bound.push(v.clone());
                let body = self.formula();
                self.bound.pop();
                let body = body?;
                Ok(if universal {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                })
            }
            Tok::Qcf => {
                self.bump();
                let at = self.pos;
                let x = self.ident()?;
                let y = self.ident()?;
                if x == y {
                    return Err(self.error_at(at, ParseErrorKind::SameQcfVariables(x)));
                }
                self.expect(Tok::Dot)?;
                self.bound.push(x.clone());
                self.bound.push(y.clone());
                let body = self.formula();
                self.bound.pop();
                self.bound.pop();
                Ok(Formula::Qcf(x, y, Box::new(body?)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        if let (Tok::Ident(name), Tok::LParen) = (self.peek().clone(), self.peek2()) {
            if let Some(arity) = self.sig.relation_arity(&name) {
                let at = self.pos;
                self.bump();
                let args = self.arguments()?;
                if args.len() != arity {
                    return Err(self.error_at(
                        at,
                        ParseErrorKind::Arity { name, expected: arity, found: args.len() },
                    ));
                }
                return Ok(Formula::Atom(name, args));
            }
        }
        let lhs = self.term()?;
        match self.peek() {
            Tok::Equals => {
                self.bump();
                Ok(Formula::Eq(lhs, self.term()?))
            }
            Tok::Less => {
                if !self.sig.has_less() {
                    return Err(self.error(ParseErrorKind::LessUndeclared));
                }
                self.bump();
                Ok(Formula::Atom(LESS.to_string(), vec![lhs, self.term()?]))
            }
            other => Err(self.error(ParseErrorKind::Expected {
                expected: "`=` or `<`".into(),
                found: other.describe(),
            })),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let at = self.pos;
        let name = self.ident()?;
        if self.peek() == &Tok::LParen {
            let Some(arity) = self.sig.function_arity(&name) else {
                return Err(self.error_at(at, ParseErrorKind::UnknownSymbol(name)));
            };
            let args = self.arguments()?;
            if args.len() != arity {
                return Err(self.error_at(
                    at,
                    ParseErrorKind::Arity { name, expected: arity, found: args.len() },
                ));
            }
            return Ok(Term::App(name, args));
        }
        if self.bound.contains(&name) {
            Ok(Term::Var(name))
        } else if self.sig.is_constant(&name) {
            Ok(Term::Const(name))
        } else if let Some(arity) = self.sig.function_arity(&name) {
            Err(self.error_at(at, ParseErrorKind::Arity { name, expected: arity, found: 0 }))
        } else {
            Ok(Term::Var(name))
        }
    }
}

use thiserror::Error;

use super::{parse_formula, print_formula, Formula, ParseError, Signature, SignatureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("line {line}: {source}")]
    Signature { line: usize, source: SignatureError },
    #[error("line {line}: malformed declaration `{text}`")]
    Declaration { line: usize, text: String },
    #[error("missing `begin` line after the signature header")]
    MissingBegin,
    #[error("line {line}: {error}")]
    Parse { line: usize, error: ParseError },
    #[error("line {line}: sentence has free variables: {vars}")]
    NotASentence { line: usize, vars: String },
}

/// A named finite sequence of sentences over a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub sentences: Vec<Formula>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

/// Reads the `rel`/`fun`/`const` header up to `begin`. Returns the signature
/// and the remaining non-blank, comment-stripped lines with 1-based numbers.
pub fn parse_signature_header(text: &str) -> Result<(Signature, Vec<(usize, String)>), TheoryError> {
    let mut sig = Signature::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));
    let mut begun = false;
    for (n, line) in lines.by_ref() {
        if line.is_empty() {
            continue;
        }
        if line == "begin" {
            begun = true;
            break;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || TheoryError::Declaration { line: n, text: line.to_string() };
        let arity = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let res = match parts.as_slice() {
            ["rel", name, a] => sig.add_relation(name, arity(a)?),
            ["fun", name, a] => sig.add_function(name, arity(a)?),
            ["const", name] => sig.add_constant(name),
            _ => return Err(bad()),
        };
        res.map_err(|source| TheoryError::Signature { line: n, source })?;
    }
    if !begun {
        return Err(TheoryError::MissingBegin);
    }
    let rest = lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(n, l)| (n, l.to_string()))
        .collect();
    Ok((sig, rest))
}

pub(crate) fn parse_sentence(line: usize, text: &str, sig: &Signature) -> Result<Formula, TheoryError> {
    let f = parse_formula(text, sig).map_err(|error| TheoryError::Parse { line, error })?;
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(TheoryError::NotASentence { line, vars: free.join(", ") });
    }
    Ok(f)
}

impl Theory {
    pub fn new(name: impl Into<String>, signature: Signature, sentences: Vec<Formula>) -> Theory {
        Theory { name: name.into(), signature, sentences }
    }

    /// Parses the theory file format: a signature header terminated by
    /// `begin`, then one sentence per line. `#` starts a comment.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Theory, TheoryError> {
        let (signature, lines) = parse_signature_header(text)?;
        let sentences = lines
            .iter()
            .map(|(n, l)| parse_sentence(*n, l, &signature))
            .collect::<Result<_, _>>()?;
        Ok(Theory { name: name.into(), signature, sentences })
    }

    pub fn to_text(&self) -> String {
        let mut out = self.signature.header();
        for s in &self.sentences {
            out.push_str(&print_formula(s));
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

//! Text formats read by the command-line tool.
//!
//! Poset file:
//!
//! ```text
//! # N5
//! elements: x1 x2 x3 x4 x5
//! covers: x1<x2 x1<x3 x3<x4 x4<x5 x2<x5
//! set: x1 x2 x3 x4 x5
//! ```
//!
//! `elements: @divisors` selects the divisor lattice instead; `covers:` is
//! then not allowed. `set:` is optional for finite posets.
//!
//! Function file:
//!
//! ```text
//! over: 1 2 3
//! f1: 1 2 3
//! f2: 1 1/2 2-i
//! f3: 0 0 1
//! ```

use crate::error::{Error, Result};
use crate::family::FunctionFamily;
use crate::order::{FinitePoset, OrderBackend};
use crate::scalar::Scalar;

/// Backend named by a poset file.
#[derive(Clone, Debug)]
pub enum Backend {
    Finite(FinitePoset),
    Divisors,
}

#[derive(Clone, Debug)]
pub struct PosetFile {
    pub backend: Backend,
    /// Element identifiers from the `set:` line, in file order.
    pub set: Option<Vec<String>>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_key(lineno: usize, line: &str) -> Result<(&str, &str)> {
    line.split_once(':')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `key: values`")))
}

pub fn parse_poset(text: &str) -> Result<PosetFile> {
    let mut elements: Option<Vec<String>> = None;
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut set: Option<Vec<String>> = None;
    for (lineno, line) in content_lines(text) {
        let (key, rest) = split_key(lineno, line)?;
        let words = || rest.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        match key {
            "elements" if elements.is_some() => {
                return Err(Error::Parse(format!("line {lineno}: second `elements:` line")));
            }
            "elements" => elements = Some(words()),
            "covers" => {
                for tok in rest.split_whitespace() {
                    let chain: Vec<&str> = tok.split('<').collect();
                    if chain.len() < 2 || chain.iter().any(|s| s.is_empty()) {
                        return Err(Error::Parse(format!("line {lineno}: bad cover `{tok}`")));
                    }
                    for w in chain.windows(2) {
                        covers.push((w[0].to_string(), w[1].to_string()));
                    }
                }
            }
            "set" if set.is_some() => return Err(Error::Parse(format!("line {lineno}: second `set:` line"))),
            "set" => set = Some(words()),
            other => return Err(Error::Parse(format!("line {lineno}: unknown key `{other}`"))),
        }
    }
    let elements = elements.ok_or_else(|| Error::Parse("missing `elements:` line".into()))?;
    let backend = if elements == ["@divisors"] {
        if !covers.is_empty() {
            return Err(Error::Parse("`covers:` given for the divisor backend".into()));
        }
        Backend::Divisors
    } else {
        if let Some(bad) = elements.iter().find(|e| e.starts_with('@')) {
            return Err(Error::Parse(format!("unknown backend `{bad}`")));
        }
        Backend::Finite(FinitePoset::from_covers(&elements, &covers)?)
    };
    Ok(PosetFile { backend, set })
}

/// Parsed but not yet bound to a backend.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionTable {
    pub over: Vec<String>,
    pub rows: Vec<Vec<Scalar>>,
}

pub fn parse_functions(text: &str) -> Result<FunctionTable> {
    let mut over: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (lineno, line) in content_lines(text) {
        let (key, rest) = split_key(lineno, line)?;
        if key == "over" {
            if over.is_some() {
                return Err(Error::Parse(format!("line {lineno}: second `over:` line")));
            }
            over = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let Some(m) = over.as_ref() else {
            return Err(Error::Parse(format!("line {lineno}: `over:` must come first")));
        };
        let expected = format!("f{}", rows.len() + 1);
        if key != expected {
            return Err(Error::Parse(format!("line {lineno}: expected `{expected}:`, found `{key}:`")));
        }
        let vals = rest
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Scalar>>>()
            .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
        if vals.len() != m.len() {
            return Err(Error::Parse(format!(
                "line {lineno}: {} values for {} elements",
                vals.len(),
                m.len()
            )));
        }
        rows.push(vals);
    }
    let over = over.ok_or_else(|| Error::Parse("missing `over:` line".into()))?;
    if rows.is_empty() {
        return Err(Error::Parse("no `f1:` line".into()));
    }
    Ok(FunctionTable { over, rows })
}

impl FunctionTable {
    /// Resolves the element identifiers against `backend`.
    pub fn bind<O: OrderBackend>(&self, backend: &O) -> Result<FunctionFamily<O::Elem>> {
        let domain = self.over.iter().map(|s| backend.parse_element(s)).collect::<Result<Vec<_>>>()?;
        for (i, a) in domain.iter().enumerate() {
            if domain[..i].contains(a) {
                return Err(Error::Parse(format!("`{}` listed twice in `over:`", self.over[i])));
            }
        }
        FunctionFamily::from_table(&domain, self.rows.clone())
    }
}

use std::fmt;

use super::format::format_multivector;
use super::parse::{parse_expression, parse_field};
use crate::error::{Error, Result};
use crate::fieldlin::Subspace;
use crate::grassmann::{Algebra, Multivector};

/// A list of spanning vectors with its algebra, in the text format
///
/// ```text
/// n=3 field=Q
/// e1 + e{2,3}
/// # comments and blank lines are ignored
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFile {
    pub alg: Algebra,
    pub vectors: Vec<Multivector>,
}

impl SubspaceFile {
    pub fn new(alg: Algebra, vectors: Vec<Multivector>) -> Self {
        SubspaceFile { alg, vectors }
    }

    /// The RREF basis of a subspace, one vector per line.
    pub fn from_subspace(b: &Subspace) -> Self {
        SubspaceFile { alg: b.algebra(), vectors: b.basis() }
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::span(self.alg, &self.vectors).expect("vectors belong to the file's algebra")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::SubspaceFile { line: 0, message: "missing header".into() })?;
        let alg = parse_header(header).map_err(|message| Error::SubspaceFile { line: hline, message })?;
        let vectors = lines
            .map(|(line, l)| {
                parse_expression(l, alg).map_err(|e| Error::SubspaceFile { line, message: e.to_string() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubspaceFile { alg, vectors })
    }
}

fn parse_header(h: &str) -> std::result::Result<Algebra, String> {
    let mut n = None;
    let mut field = None;
    for part in h.split_whitespace() {
        match part.split_once('=') {
            Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| format!("bad generator count '{v}'"))?),
            Some(("field", v)) => field = Some(parse_field(v).map_err(|e| e.to_string())?),
            _ => return Err(format!("unexpected header item '{part}', expected n=<int> field=Q|GF(<p>)")),
        }
    }
    let n = n.ok_or("header lacks n=<int>")?;
    let field = field.ok_or("header lacks field=Q|GF(<p>)")?;
    Algebra::new(n, field).map_err(|e| e.to_string())
}

impl fmt::Display for SubspaceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} field={}", self.alg.n(), self.alg.field())?;
        for v in &self.vectors {
            writeln!(f, "{}", format_multivector(v))?;
        }
        Ok(())
    }
}

//! DIMACS CNF and JSON clause-set I/O.
//!
//! The writer emits `p cnf <max var> <clauses>` followed by one
//! zero-terminated clause per line, in canonical order. Comment lines
//! (`c ...`) are accepted anywhere by the reader; clauses may span lines.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::clause::{Clause, ClauseError, ClauseSet, Literal};

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed problem line `{text}`")]
    PLine { line: usize, text: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: duplicate `p cnf` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    Token { line: usize, token: String },
    #[error("line {line}: variable {var} exceeds declared maximum {max}")]
    VarOutOfRange { line: usize, var: u32, max: u32 },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("line {line}: {source}")]
    Clause {
        line: usize,
        #[source]
        source: ClauseError,
    },
    #[error("invalid JSON clause-set: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn write_dimacs<W: Write>(f: &ClauseSet, mut out: W) -> io::Result<()> {
    writeln!(out, "p cnf {} {}", f.max_var().unwrap_or(0), f.c())?;
    for c in f.clauses() {
        for l in c.literals() {
            write!(out, "{l} ")?;
        }
        writeln!(out, "0")?;
    }
    Ok(())
}

pub fn to_dimacs_string(f: &ClauseSet) -> String {
    let mut buf = Vec::new();
    write_dimacs(f, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

/// Reads a DIMACS CNF. Duplicate clauses collapse, but the number of clause
/// lines must match the header.
pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<ClauseSet, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open = false;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line: line_no });
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let bad = || DimacsError::PLine { line: line_no, text: trimmed.to_string() };
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(bad());
            }
            let n = parts[2].parse().map_err(|_| bad())?;
            let c = parts[3].parse().map_err(|_| bad())?;
            header = Some((n, c));
            continue;
        }
        let (max_var, _) = header.ok_or(DimacsError::MissingHeader)?;
        for tok in trimmed.split_whitespace() {
            let x: i32 = tok.parse().map_err(|_| DimacsError::Token { line: line_no, token: tok.to_string() })?;
            if x == 0 {
                let c =
                    Clause::new(current.drain(..)).map_err(|source| DimacsError::Clause { line: line_no, source })?;
                clauses.push(c);
                open = false;
                continue;
            }
            let lit = Literal::new(x).map_err(|source| DimacsError::Clause { line: line_no, source })?;
            if lit.var() > max_var {
                return Err(DimacsError::VarOutOfRange { line: line_no, var: lit.var(), max: max_var });
            }
            current.push(lit);
            open = true;
        }
    }
    let (_, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if open {
        return Err(DimacsError::Unterminated);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCount { declared, found: clauses.len() });
    }
    Ok(ClauseSet::new(clauses))
}

pub fn parse_dimacs_str(s: &str) -> Result<ClauseSet, DimacsError> {
    parse_dimacs(s.as_bytes())
}

/// JSON form: an array of arrays of nonzero integers.
pub fn parse_json(s: &str) -> Result<ClauseSet, DimacsError> {
    Ok(serde_json::from_str(s)?)
}

pub fn to_json_string(f: &ClauseSet) -> String {
    serde_json::to_string(f).expect("clause-sets always serialize")
}

/// Accepts either format, deciding on the first non-blank character.
pub fn parse_any(s: &str) -> Result<ClauseSet, DimacsError> {
    if s.trim_start().starts_with('[') {
        parse_json(s)
    } else {
        parse_dimacs_str(s)
    }
}

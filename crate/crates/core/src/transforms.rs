//! Clause-set surgery: full subsumption resolution and extension, full
//! m-expansion, and DP-reduction.
//!
//! Resolution replaces `C ∪ {v}, C ∪ {v̄}` by `C`; extension is its inverse.
//! Either is *strict* when the pivot variable survives elsewhere in the
//! clause-set. The measure changes are asserted on every call.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{Clause, ClauseSet, Literal, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("variable must be positive")]
    ZeroVariable,
    #[error("clause {clause} already mentions variable {var}")]
    PivotInClause { clause: Clause, var: Var },
    #[error("resolvent {0} is already in the clause-set")]
    ResolventPresent(Clause),
    #[error("parent clause {0} is missing")]
    MissingParent(Clause),
    #[error("clause {0} is not in the clause-set")]
    MissingClause(Clause),
    #[error("extension would duplicate existing clause {0}")]
    DuplicateExtension(Clause),
    #[error("m = {m} is not in 1..=nfc = {nfc}")]
    BadM { m: usize, nfc: usize },
    #[error("selection must be {m} distinct full clauses of the input: {reason}")]
    BadSelection { m: usize, reason: String },
    #[error("variable {0} does not occur in the clause-set")]
    VarNotPresent(Var),
    #[error("extension variable {var} is not fresh")]
    StaleVariable { var: Var },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strictness {
    Strict,
    NonStrict,
}

fn check_pivot(c: &Clause, v: Var) -> Result<(), TransformError> {
    if v == 0 {
        return Err(TransformError::ZeroVariable);
    }
    if c.contains_var(v) {
        return Err(TransformError::PivotInClause { clause: c.clone(), var: v });
    }
    Ok(())
}

fn pair(c: &Clause, v: Var) -> (Clause, Clause) {
    let pos = c.with(Literal::positive(v)).expect("pivot is not in the clause");
    let neg = c.with(Literal::negative(v)).expect("pivot is not in the clause");
    (pos, neg)
}

/// Replaces `C ∪ {v}` and `C ∪ {v̄}` by `C`.
pub fn full_subsumption_resolution(
    f: &ClauseSet,
    c: &Clause,
    v: Var,
) -> Result<(ClauseSet, Strictness), TransformError> {
    check_pivot(c, v)?;
    if f.contains(c) {
        return Err(TransformError::ResolventPresent(c.clone()));
    }
    let (pos, neg) = pair(c, v);
    for parent in [&pos, &neg] {
        if !f.contains(parent) {
            return Err(TransformError::MissingParent(parent.clone()));
        }
    }
    let strict = f.clauses().iter().any(|d| *d != pos && *d != neg && d.contains_var(v));
    let out: ClauseSet =
        f.clauses().iter().filter(|d| **d != pos && **d != neg).cloned().chain(std::iter::once(c.clone())).collect();
    assert_eq!(out.c() + 1, f.c());
    let strictness = if strict {
        assert_eq!(out.n(), f.n());
        assert_eq!(out.deficiency(), f.deficiency() - 1);
        Strictness::Strict
    } else {
        assert_eq!(out.n() + 1, f.n());
        assert_eq!(out.deficiency(), f.deficiency());
        Strictness::NonStrict
    };
    Ok((out, strictness))
}

/// Replaces `C` by `C ∪ {v}` and `C ∪ {v̄}`.
pub fn full_subsumption_extension(
    f: &ClauseSet,
    c: &Clause,
    v: Var,
) -> Result<(ClauseSet, Strictness), TransformError> {
    check_pivot(c, v)?;
    if !f.contains(c) {
        return Err(TransformError::MissingClause(c.clone()));
    }
    let (pos, neg) = pair(c, v);
    for child in [&pos, &neg] {
        if f.contains(child) {
            return Err(TransformError::DuplicateExtension(child.clone()));
        }
    }
    let strictness = if f.vars().contains(&v) { Strictness::Strict } else { Strictness::NonStrict };
    let out: ClauseSet = f.clauses().iter().filter(|d| *d != c).cloned().chain([pos, neg]).collect();
    assert_eq!(out.c(), f.c() + 1);
    match strictness {
        Strictness::Strict => assert_eq!(out.n(), f.n()),
        Strictness::NonStrict => assert_eq!(out.n(), f.n() + 1),
    }
    debug_assert!(!f.is_hitting() || out.is_hitting());
    Ok((out, strictness))
}

/// Record of one full m-expansion, enough to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionStep {
    pub selected_full_clauses: Vec<Clause>,
    pub extension_var: Var,
    pub m: usize,
}

/// Extends `m` full clauses of `F` with one fresh variable: the first
/// extension is non-strict, the remaining `m − 1` strict. Without an explicit
/// selection the first `m` full clauses in canonical order are used, and the
/// fresh variable is always `max(var(F)) + 1`.
pub fn full_m_expansion(
    f: &ClauseSet,
    m: usize,
    selection: Option<&[Clause]>,
) -> Result<(ClauseSet, ExpansionStep), TransformError> {
    let nfc = f.nfc();
    if m == 0 || m > nfc {
        return Err(TransformError::BadM { m, nfc });
    }
    let selected: Vec<Clause> = match selection {
        None => f.full_clauses().take(m).cloned().collect(),
        Some(sel) => {
            let mut s = sel.to_vec();
            s.sort();
            s.dedup();
            let bad = |reason: String| TransformError::BadSelection { m, reason };
            if s.len() != m {
                return Err(bad(format!("{} distinct clauses given", s.len())));
            }
            if let Some(c) = s.iter().find(|c| !f.contains(c) || !f.is_full(c)) {
                return Err(bad(format!("{c} is not a full clause of the input")));
            }
            s
        }
    };
    let step = ExpansionStep { selected_full_clauses: selected, extension_var: f.max_var().unwrap_or(0) + 1, m };
    let g = apply_expansion(f, &step)?;
    Ok((g, step))
}

/// Replays a recorded expansion on `F`.
pub fn apply_expansion(f: &ClauseSet, step: &ExpansionStep) -> Result<ClauseSet, TransformError> {
    let v = step.extension_var;
    if f.vars().contains(&v) {
        return Err(TransformError::StaleVariable { var: v });
    }
    if step.selected_full_clauses.len() != step.m {
        return Err(TransformError::BadSelection {
            m: step.m,
            reason: format!("{} clauses recorded", step.selected_full_clauses.len()),
        });
    }
    let mut g = f.clone();
    for (i, c) in step.selected_full_clauses.iter().enumerate() {
        if !f.is_full(c) {
            return Err(TransformError::BadSelection { m: step.m, reason: format!("{c} is not full") });
        }
        let (next, strictness) = full_subsumption_extension(&g, c, v)?;
        let expected = if i == 0 { Strictness::NonStrict } else { Strictness::Strict };
        assert_eq!(strictness, expected);
        g = next;
    }
    let m = step.m as i64;
    assert_eq!(g.n(), f.n() + 1);
    assert_eq!(g.c(), f.c() + step.m);
    assert_eq!(g.deficiency(), f.deficiency() + m - 1);
    assert_eq!(g.nfc(), 2 * step.m);
    Ok(g)
}

/// Result of eliminating one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpReduction {
    pub result: ClauseSet,
    /// Pairs `(C ∋ v, D ∋ v̄)` that clash on a second variable and so have no
    /// resolvent.
    pub skipped_pairs: Vec<(Clause, Clause)>,
}

/// Replaces every clause on `v` by the resolvents on `v`. Resolvents are only
/// formed for pairs clashing in `v` alone; duplicates merge.
pub fn dp_reduction(f: &ClauseSet, v: Var) -> Result<DpReduction, TransformError> {
    if !f.vars().contains(&v) {
        return Err(TransformError::VarNotPresent(v));
    }
    let pos_lit = Literal::positive(v);
    let neg_lit = Literal::negative(v);
    let pos: Vec<&Clause> = f.clauses().iter().filter(|c| c.contains(pos_lit)).collect();
    let neg: Vec<&Clause> = f.clauses().iter().filter(|c| c.contains(neg_lit)).collect();
    let mut skipped = Vec::new();
    let mut resolvents = Vec::new();
    for c in &pos {
        for d in &neg {
            let a = c.without(pos_lit);
            let b = d.without(neg_lit);
            if a.clashes_with(&b) {
                skipped.push(((*c).clone(), (*d).clone()));
                continue;
            }
            let r = Clause::new(a.literals().iter().chain(b.literals()).copied()).expect("no clash outside the pivot");
            resolvents.push(r);
        }
    }
    let result = f.clauses().iter().filter(|c| !c.contains_var(v)).cloned().chain(resolvents).collect();
    Ok(DpReduction { result, skipped_pairs: skipped })
}

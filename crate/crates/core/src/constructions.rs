//! Witness clause-sets: the `F_k` family reaching `S₂(k)` full clauses at
//! deficiency `k`, two explicit deficiency-7 matrices, and a chain of strict
//! resolutions out of `A₄`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{make_an, Clause, ClauseError, ClauseSet, Literal};
use crate::report::WitnessReport;
use crate::sat::{Budget, KernelError};
use crate::sequences::{a2_fast, S2PrimeTable, SeqError};
use crate::transforms::{
    apply_expansion, full_m_expansion, full_subsumption_resolution, ExpansionStep, Strictness, TransformError,
};

pub const DEFAULT_FK_CAP: u64 = 64;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("k = {k} exceeds the cap {cap}")]
    CapExceeded { k: u64, cap: u64 },
    #[error("construction step failed: {0}")]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Clause(#[from] ClauseError),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// How `F_k` was obtained from `F_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub k: u64,
    /// Deficiencies along the way, starting with 1 and ending with `k`.
    pub chain: Vec<u64>,
    pub steps: Vec<ExpansionStep>,
    #[serde(rename = "final")]
    pub final_set: ClauseSet,
    pub report: WitnessReport,
}

impl ConstructionTrace {
    /// Re-applies the recorded steps to `F_1`.
    pub fn replay(&self) -> Result<ClauseSet, TransformError> {
        self.steps.iter().try_fold(f1(), |f, step| apply_expansion(&f, step))
    }
}

/// `{{1}, {−1}}`.
pub fn f1() -> ClauseSet {
    make_an(1).expect("A_1 is within every cap")
}

/// `F_k`: `F_1` for `k = 1`, otherwise the full `a₂(k)`-expansion of
/// `F_{i(k)}`, with canonical clause selection.
pub fn build_fk(k: u64, budget: &Budget) -> Result<ConstructionTrace, ConstructionError> {
    build_fk_with_cap(k, DEFAULT_FK_CAP, budget)
}

pub fn build_fk_with_cap(k: u64, cap: u64, budget: &Budget) -> Result<ConstructionTrace, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::ZeroK);
    }
    if k > cap {
        return Err(ConstructionError::CapExceeded { k, cap });
    }
    let mut table = S2PrimeTable::with_prefix(k as usize);
    let mut chain = vec![k];
    while *chain.last().unwrap() > 1 {
        let cur = *chain.last().unwrap();
        chain.push(table.index(cur)?);
    }
    chain.reverse();

    let mut f = f1();
    let mut steps = Vec::new();
    for &d in &chain[1..] {
        let m = a2_fast(d) as usize;
        let (g, step) = full_m_expansion(&f, m, None)?;
        f = g;
        steps.push(step);
    }
    let report = WitnessReport::verify(&f, budget)?;
    let s2 = 2 * a2_fast(k);
    if report.deficiency != k as i64 || report.nfc as u64 != s2 {
        return Err(ConstructionError::Verification(format!(
            "F_{k} has deficiency {} and {} full clauses, expected {k} and {s2}",
            report.deficiency, report.nfc
        )));
    }
    if report.is_uhit == Some(false) {
        return Err(ConstructionError::Verification(format!("F_{k} is not UHIT")));
    }
    Ok(ConstructionTrace { k, chain, steps, final_set: f, report })
}

/// Reads a variable-clause matrix: one string per variable (row), one
/// character per clause (column), `+` / `-` / `0`.
fn from_matrix(rows: &[&str]) -> ClauseSet {
    let width = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == width));
    (0..width)
        .map(|col| {
            let lits = rows.iter().enumerate().filter_map(|(r, row)| {
                let v = r as u32 + 1;
                match row.as_bytes()[col] {
                    b'+' => Some(Literal::positive(v)),
                    b'-' => Some(Literal::negative(v)),
                    b'0' => None,
                    other => panic!("bad matrix entry {}", other as char),
                }
            });
            Clause::new(lits).expect("one entry per variable")
        })
        .collect()
}

/// Minimally unsatisfiable, deficiency 7, nine full clauses, not hitting.
/// Columns, left to right:
/// {−1,2,3,4} {−1,2,−3,4} {1,−2,3,4} {1,−2,−3,4} {−1,−2,3,4} {−1,−2,−3,4}
/// {1,2} {−1,−2,3,−4} {−1,2,3,−4} {1,−2,3,−4} {−3,−4}
pub fn witness_mu_def7() -> ClauseSet {
    from_matrix(&["--++--+--+0", "++----+-+-0", "+-+-+-0+++-", "++++++0----"])
}

/// Unsatisfiable hitting, deficiency 7, variable-regular of degree 10.
/// Columns, left to right:
/// {−3,−4} {1,−2,3,−4} {−1,2,3,−4} {1,2,3,−4} {−1,−2,−3,4} {1,−2,−3,4}
/// {−1,2,−3,4} {−1,−2,3} {1,−2,3,4} {−1,2,3,4} {1,2,4}
pub fn witness_uhit_def7() -> ClauseSet {
    from_matrix(&["0+-+-+--+-+", "0-++--+--++", "-+++---+++0", "----+++0+++"])
}

/// One strict resolution of the A₄ chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub pivot: u32,
    pub resolvent: Clause,
    pub clause_set: ClauseSet,
    pub report: WitnessReport,
}

/// `A₄` followed by four strict full subsumption resolutions on variables
/// 1, 2, 3, 4. At each step the resolvent is the canonically smallest
/// clause `C` for which both parents are present and the resolution is strict.
pub fn a4_chain(budget: &Budget) -> Result<Vec<ChainStep>, ConstructionError> {
    let mut f = make_an(4)?;
    let mut out = vec![ChainStep {
        pivot: 0,
        resolvent: Clause::empty(),
        clause_set: f.clone(),
        report: WitnessReport::verify(&f, budget)?,
    }];
    for pivot in 1..=4u32 {
        let neg = Literal::negative(pivot);
        let mut candidates: Vec<Clause> = f
            .clauses()
            .iter()
            .filter(|d| d.contains(neg))
            .map(|d| d.without(neg))
            .filter(|c| !f.contains(c) && f.contains(&c.with(Literal::positive(pivot)).unwrap()))
            .collect();
        candidates.sort();
        let mut done = None;
        for c in candidates {
            let (g, s) = full_subsumption_resolution(&f, &c, pivot)?;
            if s == Strictness::Strict {
                done = Some((c, g));
                break;
            }
        }
        let (c, g) = done.ok_or_else(|| ConstructionError::Verification(format!("no strict resolution on {pivot}")))?;
        let report = WitnessReport::verify(&g, budget)?;
        f = g;
        out.push(ChainStep { pivot, resolvent: c, clause_set: f.clone(), report });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{is_mu, is_satisfiable, is_uhit, unit_propagate};
    use crate::sequences::s2_direct;

    fn cs(rows: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_ints(rows).unwrap()
    }

    #[test]
    fn first_members() {
        let b = Budget::default();
        let t1 = build_fk(1, &b).unwrap();
        assert_eq!(t1.final_set, cs(&[&[1], &[-1]]));
        assert_eq!(t1.report.nfc, 2);
        assert!(t1.steps.is_empty());

        let t2 = build_fk(2, &b).unwrap();
        assert_eq!(t2.chain, vec![1, 2]);
        assert_eq!(t2.steps[0].m, 2);
        assert_eq!((t2.report.deficiency, t2.report.nfc), (2, 4));
        assert_eq!(t2.report.is_uhit, Some(true));
    }

    #[test]
    fn nfc_row_up_to_13() {
        let b = Budget::default();
        let row: Vec<usize> = (1..=13).map(|k| build_fk(k, &b).unwrap().report.nfc).collect();
        assert_eq!(row, vec![2, 4, 4, 6, 8, 8, 8, 10, 12, 12, 14, 16, 16]);
        for k in 1..=13u64 {
            let t = build_fk(k, &b).unwrap();
            assert_eq!(t.report.nfc as u64, s2_direct(k));
            assert!(t.final_set.n() <= 12);
            assert!(is_uhit(&t.final_set, &b).unwrap());
            assert_eq!(t.replay().unwrap(), t.final_set);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let b = Budget::default();
        assert!(matches!(build_fk(65, &b), Err(ConstructionError::CapExceeded { .. })));
        assert!(matches!(build_fk(0, &b), Err(ConstructionError::ZeroK)));
        assert!(build_fk_with_cap(100, 100, &b).is_ok());
    }

    #[test]
    fn mu_def7_transcription() {
        let f = witness_mu_def7();
        assert_eq!(
            f,
            cs(&[
                &[-1, 2, 3, 4],
                &[-1, 2, -3, 4],
                &[1, -2, 3, 4],
                &[1, -2, -3, 4],
                &[-1, -2, 3, 4],
                &[-1, -2, -3, 4],
                &[1, 2],
                &[-1, -2, 3, -4],
                &[-1, 2, 3, -4],
                &[1, -2, 3, -4],
                &[-3, -4],
            ])
        );
        assert_eq!(f.measures(), (4, 11, 7));
        assert_eq!(f.nfc(), 9);
        assert!(!f.is_hitting());
        assert!(is_mu(&f, &Budget::default()).unwrap());
        assert!(f.nfc() <= f.min_var_degree().unwrap());
    }

    #[test]
    fn mu_def7_instantiations() {
        let b = Budget::default();
        let f = witness_mu_def7();
        let low = f.assign(Literal::negative(4));
        assert!(is_mu(&low, &b).unwrap());
        let a3 = make_an(3).unwrap();
        let (expected, _) = full_subsumption_resolution(&a3, &Clause::from_ints(&[1, 2]).unwrap(), 3).unwrap();
        assert_eq!(low, expected);

        let high = f.assign(Literal::positive(4));
        assert!(is_mu(&high, &b).unwrap());
        let (reduced, set) = unit_propagate(&high);
        assert_eq!(set, vec![Literal::negative(3)]);
        assert_eq!(reduced, make_an(2).unwrap());
    }

    #[test]
    fn uhit_def7_transcription() {
        let f = witness_uhit_def7();
        assert_eq!(
            f,
            cs(&[
                &[-3, -4],
                &[1, -2, 3, -4],
                &[-1, 2, 3, -4],
                &[1, 2, 3, -4],
                &[-1, -2, -3, 4],
                &[1, -2, -3, 4],
                &[-1, 2, -3, 4],
                &[-1, -2, 3],
                &[1, -2, 3, 4],
                &[-1, 2, 3, 4],
                &[1, 2, 4],
            ])
        );
        assert_eq!(f.deficiency(), 7);
        assert!(f.is_hitting());
        let sizes: Vec<usize> = f.clauses().iter().map(Clause::len).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 8);
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 2);
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 1);
        assert!(f.weight_sum().is_one());
        assert!(f.var_degrees().values().all(|&d| d == 10));
        assert!(is_uhit(&f, &Budget::default()).unwrap());
        assert!(!is_satisfiable(&f, &Budget::default()).unwrap());
    }

    #[test]
    fn a4_chain_measures() {
        let chain = a4_chain(&Budget::default()).unwrap();
        assert_eq!(chain[0].report.deficiency, 12);
        assert_eq!(chain[0].report.min_var_degree, Some(16));
        let defs: Vec<i64> = chain[1..].iter().map(|s| s.report.deficiency).collect();
        let mvd: Vec<Option<usize>> = chain[1..].iter().map(|s| s.report.min_var_degree).collect();
        assert_eq!(defs, vec![11, 10, 9, 8]);
        assert_eq!(mvd, vec![Some(14), Some(13), Some(12), Some(11)]);
        assert!(chain.iter().all(|s| s.report.is_uhit == Some(true)));
        let pivots: Vec<u32> = chain[1..].iter().map(|s| s.pivot).collect();
        assert_eq!(pivots, vec![1, 2, 3, 4]);
    }
}

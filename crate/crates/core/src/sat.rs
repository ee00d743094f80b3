//! Exact decision procedures for small clause-sets.
//!
//! Up to [`EXHAUSTIVE_MAX_VARS`] variables the kernel enumerates assignments
//! as bit masks; beyond that it runs a DPLL search with unit propagation.
//! Both paths are bounded by a [`Budget`] and report exhaustion instead of
//! guessing. Every satisfying assignment is re-checked against the input
//! before it is returned.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{ClauseSet, Literal, Var};

pub const EXHAUSTIVE_MAX_VARS: usize = 25;

/// Below this many variables the exhaustive scan stays on one thread.
const PARALLEL_MIN_VARS: usize = 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("search budget exceeded ({what} cap {cap})")]
    BudgetExceeded { what: &'static str, cap: u64 },
    #[error("kernel self-check failed: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest `2^n` the exhaustive path may enumerate.
    pub max_assignments: u64,
    /// Decision nodes the backtracking path may open.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_assignments: 1 << 26, max_nodes: 10_000_000 }
    }
}

/// A total assignment over the variables of a clause-set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment(pub BTreeMap<Var, bool>);

impl Assignment {
    pub fn satisfies(&self, f: &ClauseSet) -> bool {
        f.clauses().iter().all(|c| c.literals().iter().any(|l| self.0.get(&l.var()) == Some(&l.is_positive())))
    }

    /// The clause of literals set to true.
    pub fn literals(&self) -> Vec<Literal> {
        self.0.iter().map(|(&v, &b)| Literal::from_var(v, b)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(Assignment),
    Unsat,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }
}

/// Clauses over dense indices `0..n` as (positive mask, negative mask) when
/// `n ≤ 64`.
struct Indexed {
    vars: Vec<Var>,
    clauses: Vec<(u64, u64)>,
}

impl Indexed {
    fn new(f: &ClauseSet) -> Option<Self> {
        let vars: Vec<Var> = f.vars().iter().copied().collect();
        if vars.len() > 64 {
            return None;
        }
        let pos_of = |v: Var| vars.binary_search(&v).expect("variable of F");
        let clauses = f
            .clauses()
            .iter()
            .map(|c| {
                c.literals().iter().fold((0u64, 0u64), |(p, n), l| {
                    let bit = 1u64 << pos_of(l.var());
                    if l.is_positive() {
                        (p | bit, n)
                    } else {
                        (p, n | bit)
                    }
                })
            })
            .collect();
        Some(Indexed { vars, clauses })
    }

    #[inline]
    fn satisfied_by(&self, a: u64) -> bool {
        self.clauses.iter().all(|&(p, n)| (a & p) | (!a & n) != 0)
    }

    fn to_assignment(&self, a: u64) -> Assignment {
        Assignment(self.vars.iter().enumerate().map(|(i, &v)| (v, a >> i & 1 == 1)).collect())
    }
}

pub fn solve(f: &ClauseSet, budget: &Budget) -> Result<SatOutcome, KernelError> {
    let n = f.n();
    if f.clauses().iter().any(|c| c.is_empty()) {
        return Ok(SatOutcome::Unsat);
    }
    let exhaustive_fits = n <= EXHAUSTIVE_MAX_VARS && (1u64 << n) <= budget.max_assignments;
    let outcome = if exhaustive_fits { exhaustive(f) } else { Dpll::new(f, budget.max_nodes).run()? };
    if let SatOutcome::Sat(a) = &outcome {
        if !a.satisfies(f) || a.0.len() != n {
            return Err(KernelError::Inconsistent(format!("bad witness {:?} for {f}", a.0)));
        }
    }
    Ok(outcome)
}

fn exhaustive(f: &ClauseSet) -> SatOutcome {
    let ix = Indexed::new(f).expect("exhaustive path has at most 25 variables");
    let total = 1u64 << ix.vars.len();
    let found = if ix.vars.len() >= PARALLEL_MIN_VARS {
        (0..total).into_par_iter().find_first(|&a| ix.satisfied_by(a))
    } else {
        (0..total).find(|&a| ix.satisfied_by(a))
    };
    match found {
        Some(a) => SatOutcome::Sat(ix.to_assignment(a)),
        None => SatOutcome::Unsat,
    }
}

struct Dpll {
    vars: Vec<Var>,
    clauses: Vec<Vec<(usize, bool)>>,
    values: Vec<Option<bool>>,
    nodes: u64,
    cap: u64,
}

impl Dpll {
    fn new(f: &ClauseSet, cap: u64) -> Self {
        let vars: Vec<Var> = f.vars().iter().copied().collect();
        let clauses = f
            .clauses()
            .iter()
            .map(|c| c.literals().iter().map(|l| (vars.binary_search(&l.var()).unwrap(), l.is_positive())).collect())
            .collect();
        let n = vars.len();
        Dpll { vars, clauses, values: vec![None; n], nodes: 0, cap }
    }

    fn run(mut self) -> Result<SatOutcome, KernelError> {
        if self.search()? {
            let a = self.vars.iter().zip(&self.values).map(|(&v, val)| (v, val.unwrap_or(false))).collect();
            Ok(SatOutcome::Sat(Assignment(a)))
        } else {
            Ok(SatOutcome::Unsat)
        }
    }

    /// Unit propagation to fixpoint. Returns the trail, or `None` on conflict
    /// (the partial trail is undone before returning).
    fn propagate(&mut self) -> Option<Vec<usize>> {
        let mut trail = Vec::new();
        loop {
            let mut changed = false;
            for ci in 0..self.clauses.len() {
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for &(v, s) in &self.clauses[ci] {
                    match self.values[v] {
                        Some(b) if b == s => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open += 1;
                            unassigned = Some((v, s));
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => {
                        self.undo(&trail);
                        return None;
                    }
                    (1, Some((v, s))) => {
                        self.values[v] = Some(s);
                        trail.push(v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(trail);
            }
        }
    }

    fn undo(&mut self, trail: &[usize]) {
        for &v in trail {
            self.values[v] = None;
        }
    }

    fn search(&mut self) -> Result<bool, KernelError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(KernelError::BudgetExceeded { what: "node", cap: self.cap });
        }
        let Some(trail) = self.propagate() else {
            return Ok(false);
        };
        let Some(branch) = self.values.iter().position(Option::is_none) else {
            return Ok(true);
        };
        for value in [false, true] {
            self.values[branch] = Some(value);
            if self.search()? {
                return Ok(true);
            }
            self.values[branch] = None;
        }
        self.undo(&trail);
        Ok(false)
    }
}

pub fn is_satisfiable(f: &ClauseSet, budget: &Budget) -> Result<bool, KernelError> {
    Ok(solve(f, budget)?.is_sat())
}

/// Unsatisfiable, and satisfiable after removing any single clause.
pub fn is_mu(f: &ClauseSet, budget: &Budget) -> Result<bool, KernelError> {
    if is_satisfiable(f, budget)? {
        return Ok(false);
    }
    for c in f.clauses() {
        if !is_satisfiable(&f.without(c), budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hitting with weight sum exactly one. When the instance is within budget
/// the verdict is cross-checked against [`solve`].
pub fn is_uhit(f: &ClauseSet, budget: &Budget) -> Result<bool, KernelError> {
    let hitting = f.is_hitting();
    let verdict = hitting && f.weight_sum().is_one();
    if hitting && within_exhaustive_budget(f, budget) {
        let unsat = !is_satisfiable(f, budget)?;
        if unsat != verdict {
            return Err(KernelError::Inconsistent(format!(
                "hitting clause-set with weight {} but unsat={unsat}: {f}",
                f.weight_sum()
            )));
        }
    }
    Ok(verdict)
}

pub fn within_exhaustive_budget(f: &ClauseSet, budget: &Budget) -> bool {
    f.n() <= EXHAUSTIVE_MAX_VARS && (1u64 << f.n()) <= budget.max_assignments
}

/// Repeatedly assigns unit clauses. Returns the reduced clause-set and the
/// literals that were set; stops early if the empty clause appears.
pub fn unit_propagate(f: &ClauseSet) -> (ClauseSet, Vec<Literal>) {
    let mut cur = f.clone();
    let mut set = Vec::new();
    while let Some(unit) = cur.clauses().iter().find(|c| c.len() == 1).map(|c| c.literals()[0]) {
        set.push(unit);
        cur = cur.assign(unit);
        if cur.clauses().iter().any(|c| c.is_empty()) {
            break;
        }
    }
    (cur, set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause::{make_an, Clause};

    fn cs(rows: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_ints(rows).unwrap()
    }

    fn f2() -> ClauseSet {
        cs(&[&[-1, 2], &[-2, 3], &[-3, 1], &[1, 3], &[-2, -3]])
    }

    fn f3() -> ClauseSet {
        cs(&[&[-1, 2], &[-2, 3], &[-3, 1], &[1, 2, 3], &[-1, -2, -3]])
    }

    // truth-table oracle independent of both kernel paths
    fn brute_sat(f: &ClauseSet) -> bool {
        let vars: Vec<Var> = f.vars().iter().copied().collect();
        (0..1u32 << vars.len()).any(|bits| {
            let val = |v: Var| bits >> vars.iter().position(|&x| x == v).unwrap() & 1 == 1;
            f.clauses().iter().all(|c| c.literals().iter().any(|l| val(l.var()) == l.is_positive()))
        })
    }

    #[test]
    fn basic_verdicts() {
        let b = Budget::default();
        assert!(!is_satisfiable(&cs(&[&[1], &[-1]]), &b).unwrap());
        assert!(is_satisfiable(&ClauseSet::default(), &b).unwrap());
        assert!(!is_satisfiable(&make_an(0).unwrap(), &b).unwrap());
        assert!(!is_satisfiable(&f2(), &b).unwrap());
        for c in f2().clauses() {
            let sub = f2().without(c);
            assert!(brute_sat(&sub));
            assert!(is_satisfiable(&sub, &b).unwrap());
        }
    }

    #[test]
    fn mu_examples() {
        let b = Budget::default();
        assert!(is_mu(&f2(), &b).unwrap());
        assert!(!is_mu(&cs(&[&[1], &[-1], &[1, 2]]), &b).unwrap());
        assert!(is_mu(&make_an(0).unwrap(), &b).unwrap());
        assert!(!is_mu(&ClauseSet::default(), &b).unwrap());
        // with {1,2} in place of {1,3}, {-1,2} and {1,2} already force 2,
        // so dropping {-3,1} leaves it unsatisfiable
        let g = cs(&[&[-1, 2], &[-2, 3], &[-3, 1], &[1, 2], &[-2, -3]]);
        assert!(!is_satisfiable(&g, &b).unwrap());
        assert!(!is_mu(&g, &b).unwrap());
        assert!(!brute_sat(&g.without(&Clause::from_ints(&[-3, 1]).unwrap())));
    }

    #[test]
    fn uhit_examples() {
        let b = Budget::default();
        assert!(is_uhit(&f3(), &b).unwrap());
        assert!(!is_uhit(&f2(), &b).unwrap());
        for n in 0..=10 {
            assert!(is_uhit(&make_an(n).unwrap(), &b).unwrap());
        }
        // hitting but satisfiable
        assert!(!is_uhit(&cs(&[&[1, 2], &[-1, 2]]), &b).unwrap());
    }

    #[test]
    fn dpll_agrees_with_exhaustive() {
        let tiny = Budget { max_assignments: 1, max_nodes: 1_000_000 };
        let b = Budget::default();
        for f in [f2(), f3(), make_an(3).unwrap(), cs(&[&[1, 2], &[-1, 3], &[-3, -2]])] {
            assert_eq!(is_satisfiable(&f, &tiny).unwrap(), is_satisfiable(&f, &b).unwrap());
            assert_eq!(is_satisfiable(&f, &b).unwrap(), brute_sat(&f));
            for c in f.clauses() {
                let g = f.without(c);
                assert_eq!(is_satisfiable(&g, &tiny).unwrap(), brute_sat(&g));
            }
        }
    }

    #[test]
    fn witness_is_verified_and_total() {
        let f = cs(&[&[1, 2], &[-1, 3], &[-3, -2]]);
        for b in [Budget::default(), Budget { max_assignments: 1, max_nodes: 100 }] {
            let SatOutcome::Sat(a) = solve(&f, &b).unwrap() else { panic!("expected SAT") };
            assert!(a.satisfies(&f));
            assert_eq!(a.0.len(), 3);
        }
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        let b = Budget { max_assignments: 1, max_nodes: 3 };
        let err = is_satisfiable(&make_an(6).unwrap(), &b).unwrap_err();
        assert_eq!(err, KernelError::BudgetExceeded { what: "node", cap: 3 });
    }

    #[test]
    fn wide_instance_uses_backtracking() {
        // 30 variables: chain x1 -> x2 -> ... -> x30, plus x1 and -x30
        let mut rows: Vec<Vec<i32>> = (1..30).map(|i| vec![-i, i + 1]).collect();
        rows.push(vec![1]);
        let sat_set = ClauseSet::new(rows.iter().map(|r| Clause::from_ints(r).unwrap()));
        assert!(is_satisfiable(&sat_set, &Budget::default()).unwrap());
        rows.push(vec![-30]);
        let unsat_set = ClauseSet::new(rows.iter().map(|r| Clause::from_ints(r).unwrap()));
        assert!(!is_satisfiable(&unsat_set, &Budget::default()).unwrap());
        assert!(is_mu(&unsat_set, &Budget::default()).unwrap());
    }

    #[test]
    fn propagation_reduces() {
        let f = cs(&[&[-3], &[1, 2], &[-1, -2, 3], &[-1, 2, 3]]);
        let (g, set) = unit_propagate(&f);
        assert_eq!(set, vec![Literal::new(-3).unwrap()]);
        assert_eq!(g.to_ints(), vec![vec![-1, -2], vec![-1, 2], vec![1, 2]]);
    }
}

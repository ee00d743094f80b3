use serde::{Deserialize, Serialize};

use crate::clause::ClauseSet;
use crate::sat::{self, Budget, KernelError};

/// Verified facts about one clause-set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub n: usize,
    pub c: usize,
    pub deficiency: i64,
    pub nfc: usize,
    /// Absent for clause-sets without variables.
    pub min_var_degree: Option<usize>,
    pub is_hitting: bool,
    pub weight_sum_is_one: bool,
    pub is_unsat: Option<bool>,
    pub is_mu: Option<bool>,
    pub is_uhit: Option<bool>,
}

impl WitnessReport {
    /// Structural measures only; the kernel fields stay empty.
    pub fn measure(f: &ClauseSet) -> Self {
        WitnessReport {
            n: f.n(),
            c: f.c(),
            deficiency: f.deficiency(),
            nfc: f.nfc(),
            min_var_degree: f.min_var_degree().ok(),
            is_hitting: f.is_hitting(),
            weight_sum_is_one: f.weight_sum().is_one(),
            is_unsat: None,
            is_mu: None,
            is_uhit: None,
        }
    }

    /// Measures plus kernel verdicts. A verdict whose search ran out of
    /// budget is left as `None`; self-check failures propagate.
    pub fn verify(f: &ClauseSet, budget: &Budget) -> Result<Self, KernelError> {
        let mut r = Self::measure(f);
        r.is_unsat = soften(sat::is_satisfiable(f, budget).map(|s| !s))?;
        r.is_mu = soften(sat::is_mu(f, budget))?;
        r.is_uhit = soften(sat::is_uhit(f, budget))?;
        if r.is_uhit == Some(true) && r.is_unsat.is_none() {
            // hitting + weight 1 already certifies unsatisfiability
            r.is_unsat = Some(true);
        }
        debug_assert!(r.is_uhit != Some(true) || (r.is_hitting && r.is_unsat == Some(true)));
        Ok(r)
    }
}

fn soften(r: Result<bool, KernelError>) -> Result<Option<bool>, KernelError> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(KernelError::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

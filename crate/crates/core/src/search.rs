//! Brute-force oracles for the four extremal quantities at small `n`.
//!
//! UHIT clause-sets are the same thing as partitions of `{0,1}^n` into
//! subcubes, so the hitting side enumerates partitions directly. The MU side
//! enumerates clause-sets over at most four variables, with every clause
//! required to keep a private falsifying point.
//!
//! Points of the cube are bit patterns; bit `v-1` is the value of variable
//! `v`. A clause is stored as the subcube `(mask, value)` of points it
//! falsifies, so a positive literal `v` fixes bit `v-1` to 0.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{make_an, Clause, ClauseSet, Literal};
use crate::constructions::{a4_chain, build_fk, f1, witness_mu_def7, witness_uhit_def7, ConstructionError};
use crate::report::WitnessReport;
use crate::sat::{Budget, KernelError};
use crate::sequences::{non_mersenne, non_mersenne1, s2_direct, SeqError};
use crate::transforms::full_m_expansion;

pub const EXHAUSTIVE_UHIT_MAX_N: u32 = 4;
pub const EXHAUSTIVE_MU_MAX_N: u32 = 4;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
pub const DEFAULT_SAMPLES: u64 = 2_000;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("n_max must be at least 1")]
    ZeroNMax,
    #[error("MU enumeration supports n_max <= {max}, got {got}")]
    MuNMaxTooLarge { max: u32, got: u32 },
    #[error("partition enumeration supports n <= {max}, got {got}")]
    PartitionNTooLarge { max: u32, got: u32 },
    #[error("witness failed re-verification: {0}")]
    WitnessRejected(String),
    #[error("contradiction: {0}")]
    Contradiction(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// max nfc over UHIT
    Maxsmarh,
    /// max nfc over MU
    Maxsmar,
    /// max min-var-degree over UHIT
    Minnonmerh,
    /// max min-var-degree over MU
    Minnonmer,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Quantity::Maxsmarh, Quantity::Maxsmar, Quantity::Minnonmerh, Quantity::Minnonmer];

    pub fn hitting(self) -> bool {
        matches!(self, Quantity::Maxsmarh | Quantity::Minnonmerh)
    }

    pub fn counts_full_clauses(self) -> bool {
        matches!(self, Quantity::Maxsmarh | Quantity::Maxsmar)
    }

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Maxsmarh => "maxsmarh",
            Quantity::Maxsmar => "maxsmar",
            Quantity::Minnonmerh => "minnonmerh",
            Quantity::Minnonmer => "minnonmer",
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Quantity::Maxsmarh => "fch",
            Quantity::Maxsmar => "fc",
            Quantity::Minnonmerh => "vdh",
            Quantity::Minnonmer => "vd",
        }
    }

    fn of(self, r: &WitnessReport) -> usize {
        if self.counts_full_clauses() {
            r.nfc
        } else {
            r.min_var_degree.unwrap_or(0)
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s || q.short_name() == s)
            .ok_or_else(|| format!("unknown quantity `{s}`"))
    }
}

// ---------------------------------------------------------------------------
// Upper bounds

/// Upper bound for the max min-var-degree over MU (and hence UHIT).
pub fn ub_min_var_degree(k: u64) -> Result<u64, SeqError> {
    non_mersenne1(k)
}

/// Upper bound for the max nfc over MU. `nfc <= minvdeg <= nM₁(k)`, and when
/// `nfc = minvdeg` the number of full clauses is even and at most
/// `2·maxsmar(k - nfc/2 + 1)`. So `nM₁(k)` itself is only kept if it passes
/// both tests, otherwise the bound drops by one.
pub fn ub_full_clauses(k: u64) -> Result<u64, SeqError> {
    let u = non_mersenne1(k)?;
    if u % 2 == 1 {
        return Ok(u - 1);
    }
    let reduced = k + 1 - u / 2;
    if reduced >= k {
        return Ok(u);
    }
    if u > 2 * ub_full_clauses(reduced)? {
        Ok(u - 1)
    } else {
        Ok(u)
    }
}

/// Upper bound for the max nfc over UHIT, which is always even.
pub fn ub_full_clauses_hitting(k: u64) -> Result<u64, SeqError> {
    let u = ub_full_clauses(k)?;
    Ok(u - u % 2)
}

pub fn upper_bound(q: Quantity, k: u64) -> Result<u64, SeqError> {
    match q {
        Quantity::Maxsmarh => ub_full_clauses_hitting(k),
        Quantity::Maxsmar => ub_full_clauses(k),
        Quantity::Minnonmerh | Quantity::Minnonmer => ub_min_var_degree(k),
    }
}

fn upper_bound_argument(q: Quantity, k: u64) -> Result<String, SeqError> {
    let u = non_mersenne1(k)?;
    Ok(match q {
        Quantity::Minnonmerh | Quantity::Minnonmer => format!("minvdeg <= nM1({k}) = {u}"),
        Quantity::Maxsmar => {
            let b = ub_full_clauses(k)?;
            if b == u {
                format!("nfc <= minvdeg <= nM1({k}) = {u}")
            } else {
                format!("nfc <= nM1({k}) = {u}; nfc = {u} would force nfc = minvdeg, excluded by parity or the DP-reduction bound, so nfc <= {b}")
            }
        }
        Quantity::Maxsmarh => {
            let b = ub_full_clauses_hitting(k)?;
            format!("nfc <= {} (MU bound), and nfc is even for UHIT, so nfc <= {b}", ub_full_clauses(k)?)
        }
    })
}

// ---------------------------------------------------------------------------
// Cube geometry

struct Cube {
    n: u32,
    all_vars: u32,
    full: u64,
    /// indexed by `(mask << n) | value`
    cells: Vec<u64>,
}

impl Cube {
    fn new(n: u32) -> Self {
        assert!(n <= 5);
        let pts = 1u32 << n;
        let mut cells = vec![0u64; 1 << (2 * n)];
        for mask in 0..pts {
            for value in 0..pts {
                if value & !mask != 0 {
                    continue;
                }
                cells[((mask << n) | value) as usize] =
                    (0..pts).filter(|p| p & mask == value).fold(0, |s, p| s | 1 << p);
            }
        }
        let full = if pts == 64 { u64::MAX } else { (1u64 << pts) - 1 };
        Cube { n, all_vars: pts - 1, full, cells }
    }

    fn cell(&self, mask: u32, value: u32) -> u64 {
        self.cells[((mask << self.n) | value) as usize]
    }
}

fn cells_to_clause_set(cells: &[(u32, u32)]) -> ClauseSet {
    cells
        .iter()
        .map(|&(mask, value)| {
            let lits = (0..32).filter(|b| mask >> b & 1 == 1).map(|b| Literal::from_var(b + 1, value >> b & 1 == 0));
            Clause::new(lits).expect("one literal per variable")
        })
        .collect()
}

/// (n, nfc, minvdeg) of a cell list, straight from the masks.
fn cell_measures(cells: &[(u32, u32)]) -> (u32, usize, usize) {
    let union = cells.iter().fold(0, |u, &(m, _)| u | m);
    let nfc = cells.iter().filter(|&&(m, _)| m == union).count();
    let mvd = (0..32)
        .filter(|b| union >> b & 1 == 1)
        .map(|b| cells.iter().filter(|&&(m, _)| m >> b & 1 == 1).count())
        .min()
        .unwrap_or(0);
    (union.count_ones(), nfc, mvd)
}

// ---------------------------------------------------------------------------
// UHIT: subcube partitions

/// Best partitions found at one deficiency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyRecord {
    pub partitions: u64,
    pub max_nfc: usize,
    pub nfc_witness: ClauseSet,
    pub max_min_var_degree: usize,
    pub mvd_witness: ClauseSet,
}

/// Everything the partition enumeration learned about UHIT clause-sets with
/// at most `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionLandscape {
    pub n: u32,
    pub symmetry_reduced: bool,
    pub partitions: u64,
    pub by_deficiency: BTreeMap<i64, DeficiencyRecord>,
}

impl PartitionLandscape {
    pub fn best(&self, q: Quantity, k: u64) -> Option<(usize, &ClauseSet)> {
        let r = self.by_deficiency.get(&(k as i64))?;
        Some(if q.counts_full_clauses() { (r.max_nfc, &r.nfc_witness) } else { (r.max_min_var_degree, &r.mvd_witness) })
    }
}

#[derive(Default)]
struct Acc {
    partitions: u64,
    per_def: BTreeMap<i64, AccRecord>,
}

struct AccRecord {
    partitions: u64,
    max_nfc: usize,
    nfc_witness: Vec<(u32, u32)>,
    max_mvd: usize,
    mvd_witness: Vec<(u32, u32)>,
}

impl Acc {
    fn leaf(&mut self, cells: &[(u32, u32)]) {
        let (n, nfc, mvd) = cell_measures(cells);
        if n == 0 {
            return;
        }
        self.partitions += 1;
        let d = cells.len() as i64 - n as i64;
        let e = self.per_def.entry(d).or_insert_with(|| AccRecord {
            partitions: 0,
            max_nfc: nfc,
            nfc_witness: cells.to_vec(),
            max_mvd: mvd,
            mvd_witness: cells.to_vec(),
        });
        e.partitions += 1;
        if nfc > e.max_nfc {
            e.max_nfc = nfc;
            e.nfc_witness = cells.to_vec();
        }
        if mvd > e.max_mvd {
            e.max_mvd = mvd;
            e.mvd_witness = cells.to_vec();
        }
    }

    /// Ties keep `self`, so merging in branch order is deterministic.
    fn merge(mut self, other: Acc) -> Acc {
        self.partitions += other.partitions;
        for (d, o) in other.per_def {
            match self.per_def.get_mut(&d) {
                None => {
                    self.per_def.insert(d, o);
                }
                Some(e) => {
                    e.partitions += o.partitions;
                    if o.max_nfc > e.max_nfc {
                        e.max_nfc = o.max_nfc;
                        e.nfc_witness = o.nfc_witness;
                    }
                    if o.max_mvd > e.max_mvd {
                        e.max_mvd = o.max_mvd;
                        e.mvd_witness = o.mvd_witness;
                    }
                }
            }
        }
        self
    }
}

fn partition_dfs(cube: &Cube, covered: u64, stack: &mut Vec<(u32, u32)>, acc: &mut Acc) {
    if covered == cube.full {
        acc.leaf(stack);
        return;
    }
    let p = (!covered).trailing_zeros();
    for mask in 0..=cube.all_vars {
        let value = p & mask;
        let s = cube.cell(mask, value);
        if s & covered == 0 {
            stack.push((mask, value));
            partition_dfs(cube, covered | s, stack, acc);
            stack.pop();
        }
    }
}

/// Enumerates every partition of `{0,1}^n` into subcubes. With
/// `symmetry_reduced` the cell through the all-zeros point is only tried with
/// free variables `1..=j`, which covers every partition up to renaming
/// variables. The whole cube as a single cell (the clause-set `{⊥}`) is
/// skipped.
pub fn uhit_landscape(n: u32, symmetry_reduced: bool) -> Result<PartitionLandscape, SearchError> {
    if n == 0 {
        return Err(SearchError::ZeroNMax);
    }
    if n > EXHAUSTIVE_UHIT_MAX_N {
        return Err(SearchError::PartitionNTooLarge { max: EXHAUSTIVE_UHIT_MAX_N, got: n });
    }
    let cube = Cube::new(n);
    let first_masks: Vec<u32> = if symmetry_reduced {
        (0..n).map(|j| cube.all_vars & !((1 << j) - 1)).collect()
    } else {
        (1..=cube.all_vars).collect()
    };
    let mut branches = Vec::new();
    for m0 in first_masks {
        let s0 = cube.cell(m0, 0);
        let p = (!s0).trailing_zeros();
        for mask in 0..=cube.all_vars {
            let value = p & mask;
            let s = cube.cell(mask, value);
            if s & s0 == 0 {
                branches.push((vec![(m0, 0), (mask, value)], s0 | s));
            }
        }
    }
    let accs: Vec<Acc> = branches
        .into_par_iter()
        .map(|(mut stack, covered)| {
            let mut acc = Acc::default();
            partition_dfs(&cube, covered, &mut stack, &mut acc);
            acc
        })
        .collect();
    let acc = accs.into_iter().fold(Acc::default(), Acc::merge);
    Ok(PartitionLandscape {
        n,
        symmetry_reduced,
        partitions: acc.partitions,
        by_deficiency: acc
            .per_def
            .into_iter()
            .map(|(d, r)| {
                (
                    d,
                    DeficiencyRecord {
                        partitions: r.partitions,
                        max_nfc: r.max_nfc,
                        nfc_witness: cells_to_clause_set(&r.nfc_witness),
                        max_min_var_degree: r.max_mvd,
                        mvd_witness: cells_to_clause_set(&r.mvd_witness),
                    },
                )
            })
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// Certificates

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    ExhaustivePartitions,
    SampledExpansions,
    ExhaustiveMu,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCertificate {
    pub k: u64,
    pub n_max: u32,
    pub quantity: Quantity,
    pub mode: SearchMode,
    /// `None` when nothing with deficiency `k` exists within the search space.
    pub best_value: Option<u64>,
    pub witness: Option<ClauseSet>,
    pub witness_report: Option<WitnessReport>,
    /// Every clause-set with at most `n_max` variables was considered.
    pub exhaustive_over_n_max: bool,
    pub upper_bound: u64,
    /// The lower bound meets the proven upper bound.
    pub exact: bool,
    pub argument: String,
    pub budget_exhausted: bool,
    pub nodes: u64,
    /// Only present for sampled certificates.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Node cap for MU enumeration.
    pub node_budget: u64,
    /// Random expansion walks when the partition search is out of range.
    pub samples: u64,
    pub seed: u64,
    pub kernel: Budget,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            kernel: Budget::default(),
        }
    }
}

/// Re-verifies a witness through the kernel and builds the certificate.
#[allow(clippy::too_many_arguments)]
fn certify(
    q: Quantity,
    k: u64,
    n_max: u32,
    mode: SearchMode,
    found: Option<ClauseSet>,
    exhaustive: bool,
    budget_exhausted: bool,
    nodes: u64,
    seed: Option<u64>,
    opts: &SearchOptions,
) -> Result<ExtremalCertificate, SearchError> {
    let ub = upper_bound(q, k)?;
    let mut argument = upper_bound_argument(q, k)?;
    let (best_value, witness_report) = match &found {
        None => (None, None),
        Some(w) => {
            let r = WitnessReport::verify(w, &opts.kernel)?;
            let class_ok = if q.hitting() { r.is_uhit == Some(true) } else { r.is_mu == Some(true) };
            if !class_ok || r.deficiency != k as i64 || r.n > n_max as usize {
                return Err(SearchError::WitnessRejected(format!(
                    "{q} witness at k={k}: deficiency {}, n {}, uhit {:?}, mu {:?}",
                    r.deficiency, r.n, r.is_uhit, r.is_mu
                )));
            }
            (Some(q.of(&r) as u64), Some(r))
        }
    };
    if let Some(v) = best_value {
        if v > ub {
            return Err(SearchError::Contradiction(format!(
                "{q}({k}) witness attains {v}, above the upper bound {ub}"
            )));
        }
        if q.hitting() && q.counts_full_clauses() && v % 2 == 1 {
            return Err(SearchError::Contradiction(format!("UHIT witness at k={k} has odd nfc {v}")));
        }
    }
    let exact = best_value == Some(ub);
    if exact {
        argument.push_str("; attained, so the value is exact");
    } else if exhaustive && !budget_exhausted {
        argument.push_str(&format!("; exact only within n <= {n_max}, larger n not searched"));
    } else {
        argument.push_str("; lower bound only");
    }
    Ok(ExtremalCertificate {
        k,
        n_max,
        quantity: q,
        mode,
        best_value,
        witness: found,
        witness_report,
        exhaustive_over_n_max: exhaustive && !budget_exhausted,
        upper_bound: ub,
        exact,
        argument,
        budget_exhausted,
        nodes,
        seed,
    })
}

/// Dispatches on the quantity.
pub fn search(q: Quantity, k: u64, n_max: u32, opts: &SearchOptions) -> Result<ExtremalCertificate, SearchError> {
    if q.hitting() {
        search_uhit(q, k, n_max, opts)
    } else {
        search_mu(q, k, n_max, opts)
    }
}

/// UHIT side: exhaustive over partitions when `n_max <= 4`, otherwise the
/// four-variable landscape plus seeded random expansion walks and `F_k`.
pub fn search_uhit(q: Quantity, k: u64, n_max: u32, opts: &SearchOptions) -> Result<ExtremalCertificate, SearchError> {
    assert!(q.hitting());
    if k == 0 {
        return Err(SearchError::ZeroK);
    }
    if n_max == 0 {
        return Err(SearchError::ZeroNMax);
    }
    let exhaustive = n_max <= EXHAUSTIVE_UHIT_MAX_N;
    let land = uhit_landscape(n_max.min(EXHAUSTIVE_UHIT_MAX_N), true)?;
    let mut best: Option<(usize, ClauseSet)> = land.best(q, k).map(|(v, w)| (v, w.clone()));
    if exhaustive {
        return certify(
            q,
            k,
            n_max,
            SearchMode::ExhaustivePartitions,
            best.map(|b| b.1),
            true,
            false,
            land.partitions,
            None,
            opts,
        );
    }
    let mut consider = |f: ClauseSet| {
        let v = if q.counts_full_clauses() { f.nfc() } else { f.min_var_degree().unwrap_or(0) };
        if f.deficiency() == k as i64 && f.n() <= n_max as usize && best.as_ref().is_none_or(|b| v > b.0) {
            best = Some((v, f));
        }
    };
    if let Ok(t) = build_fk(k, &opts.kernel) {
        consider(t.final_set);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        if let Some(f) = random_expansion_walk(k, n_max, &mut rng) {
            consider(f);
        }
    }
    certify(
        q,
        k,
        n_max,
        SearchMode::SampledExpansions,
        best.map(|b| b.1),
        false,
        false,
        opts.samples,
        Some(opts.seed),
        opts,
    )
}

/// Random full m-expansions from `F_1` until deficiency `k` is reached or the
/// variable limit is hit. Each result is UHIT since expansion preserves it.
fn random_expansion_walk(k: u64, n_max: u32, rng: &mut ChaCha8Rng) -> Option<ClauseSet> {
    let mut f = f1();
    loop {
        let d = f.deficiency() as u64;
        if d == k {
            return Some(f);
        }
        if f.n() >= n_max as usize {
            return None;
        }
        let hi = (f.nfc() as u64).min(k - d + 1);
        if hi < 2 {
            return None;
        }
        let m = rng.gen_range(2..=hi) as usize;
        let full: Vec<Clause> = f.full_clauses().cloned().collect();
        let mut pick: Vec<Clause> = sample(rng, full.len(), m).into_iter().map(|i| full[i].clone()).collect();
        pick.sort();
        let (g, _) = full_m_expansion(&f, m, Some(&pick)).ok()?;
        f = g;
    }
}

struct MuEnum<'a> {
    cube: &'a Cube,
    q: Quantity,
    c: usize,
    nonfull: Vec<((u32, u32), u64)>,
    half: u32,
    nodes: u64,
    cap: u64,
    exhausted: bool,
    best: Option<(usize, Vec<(u32, u32)>)>,
}

impl MuEnum<'_> {
    /// `ones`: points falsified by exactly one chosen clause.
    fn dfs(&mut self, start: usize, covered: u64, ones: u64, stack: &mut Vec<((u32, u32), u64)>) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            self.exhausted = true;
            return;
        }
        let left = self.c - stack.len();
        if left == 0 {
            if covered == self.cube.full {
                let cells: Vec<(u32, u32)> = stack.iter().map(|e| e.0).collect();
                let (n, nfc, mvd) = cell_measures(&cells);
                if n == self.cube.n {
                    let v = if self.q.counts_full_clauses() { nfc } else { mvd };
                    if self.best.as_ref().is_none_or(|b| v > b.0) {
                        self.best = Some((v, cells));
                    }
                }
            }
            return;
        }
        let uncovered = (self.cube.full & !covered).count_ones();
        if uncovered > left as u32 * self.half || self.nonfull.len() - start < left {
            return;
        }
        for i in start..self.nonfull.len() {
            let (cell, s) = self.nonfull[i];
            if s & !covered == 0 {
                continue;
            }
            let new_ones = (ones & !s) | (s & !covered);
            if stack.iter().any(|&(_, t)| t & new_ones == 0) {
                continue;
            }
            stack.push((cell, s));
            self.dfs(i + 1, covered | s, new_ones, stack);
            stack.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

fn choose_full(points: u32, f: usize) -> Vec<Vec<u32>> {
    // point 0 is always chosen: flipping polarities moves any full clause there
    fn rec(next: u32, points: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in next..points {
            if points - p < left as u32 {
                break;
            }
            cur.push(p);
            rec(p + 1, points, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if f == 0 {
        out.push(Vec::new());
    } else {
        rec(1, points, f - 1, &mut vec![0], &mut out);
    }
    out
}

/// MU side: every MU clause-set with deficiency `k` and `1 <= n <= n_max`
/// variables, up to flipping polarities, within the node budget. Full clauses
/// are chosen first, in decreasing number.
pub fn search_mu(q: Quantity, k: u64, n_max: u32, opts: &SearchOptions) -> Result<ExtremalCertificate, SearchError> {
    assert!(!q.hitting());
    if k == 0 {
        return Err(SearchError::ZeroK);
    }
    if n_max == 0 {
        return Err(SearchError::ZeroNMax);
    }
    if n_max > EXHAUSTIVE_MU_MAX_N {
        return Err(SearchError::MuNMaxTooLarge { max: EXHAUSTIVE_MU_MAX_N, got: n_max });
    }
    let mut best: Option<(usize, ClauseSet)> = None;
    let mut nodes = 0u64;
    let mut exhausted = false;
    for n in 1..=n_max {
        let points = 1u32 << n;
        let c = n as usize + k as usize;
        if c > points as usize {
            continue;
        }
        let cube = Cube::new(n);
        let mut nonfull = Vec::new();
        for mask in 1..cube.all_vars {
            for value in 0..points {
                if value & !mask == 0 {
                    nonfull.push(((mask, value), cube.cell(mask, value)));
                }
            }
        }
        let mut e = MuEnum {
            cube: &cube,
            q,
            c,
            nonfull,
            half: points / 2,
            nodes: 0,
            cap: opts.node_budget.saturating_sub(nodes),
            exhausted: false,
            best: None,
        };
        for f in (0..=c).rev() {
            if q.counts_full_clauses() && best.as_ref().is_some_and(|b| b.0 >= f) {
                break;
            }
            for pts in choose_full(points, f) {
                let stack0: Vec<((u32, u32), u64)> = pts.iter().map(|&p| ((cube.all_vars, p), 1u64 << p)).collect();
                let covered = stack0.iter().fold(0, |s, e| s | e.1);
                let mut stack = stack0;
                e.dfs(0, covered, covered, &mut stack);
                if e.exhausted {
                    break;
                }
            }
            if e.exhausted || (q.counts_full_clauses() && e.best.is_some()) {
                break;
            }
        }
        nodes += e.nodes;
        if let Some((v, cells)) = e.best {
            if best.as_ref().is_none_or(|b| v > b.0) {
                best = Some((v, cells_to_clause_set(&cells)));
            }
        }
        if e.exhausted {
            exhausted = true;
            break;
        }
    }
    certify(q, k, n_max, SearchMode::ExhaustiveMu, best.map(|b| b.1), true, exhausted, nodes, None, opts)
}

// ---------------------------------------------------------------------------
// SNM membership

/// Whether `S₂(k)` meets `nM(k)` and `nM₁(k)`.
pub fn snm_membership(k: u64) -> Result<(bool, bool), SeqError> {
    let s = s2_direct(k);
    Ok((s == non_mersenne(k)?, s == non_mersenne1(k)?))
}

// ---------------------------------------------------------------------------
// Table 1

pub const PAPER_TABLE_K_MAX: u64 = 13;

/// Published values for `k = 1..=13`.
pub const PAPER_NM: [u64; 13] = [2, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 16, 17];
pub const PAPER_NM1: [u64; 13] = [2, 4, 5, 6, 8, 8, 10, 11, 12, 13, 14, 16, 16];
pub const PAPER_MINNONMER: [u64; 13] = [2, 4, 5, 6, 8, 8, 10, 11, 12, 13, 14, 16, 16];
pub const PAPER_MINNONMERH: [u64; 13] = [2, 4, 5, 6, 8, 8, 10, 11, 12, 13, 14, 16, 16];
pub const PAPER_MAXSMAR: [u64; 13] = [2, 4, 4, 6, 8, 8, 9, 10, 12, 12, 14, 16, 16];
pub const PAPER_MAXSMARH: [u64; 13] = [2, 4, 4, 6, 8, 8, 8, 10, 12, 12, 14, 16, 16];
pub const PAPER_S2: [u64; 13] = [2, 4, 4, 6, 8, 8, 8, 10, 12, 12, 14, 16, 16];

pub fn paper_value(q: Quantity, k: u64) -> Option<u64> {
    let row = match q {
        Quantity::Maxsmarh => &PAPER_MAXSMARH,
        Quantity::Maxsmar => &PAPER_MAXSMAR,
        Quantity::Minnonmerh => &PAPER_MINNONMERH,
        Quantity::Minnonmer => &PAPER_MINNONMER,
    };
    (1..=PAPER_TABLE_K_MAX).contains(&k).then(|| row[k as usize - 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    /// Evaluated from the sequence definitions.
    Computed,
    /// A verified witness meets the proven upper bound.
    Certified,
    /// Stored value, consistent with but not closed by the bounds.
    PaperPinned,
    /// No stored value; only bounds are known.
    BoundsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub k: u64,
    pub value: Option<u64>,
    pub status: EntryStatus,
    pub lower_bound: Option<u64>,
    pub upper_bound: Option<u64>,
    pub lower_bound_source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub entries: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1 {
    pub k_max: u64,
    pub rows: Vec<TableRow>,
    /// Disagreements with stored values or broken inequalities; empty when
    /// everything checks out.
    pub findings: Vec<String>,
}

/// Best verified witness value per (quantity, k), with where it came from.
struct LowerBounds(BTreeMap<(Quantity, u64), (u64, String)>);

impl LowerBounds {
    fn offer(&mut self, q: Quantity, k: u64, v: u64, source: &str) {
        let e = self.0.entry((q, k)).or_insert((v, source.to_string()));
        if v > e.0 {
            *e = (v, source.to_string());
        }
    }

    /// Feeds a witness into every quantity it bounds.
    fn offer_set(&mut self, f: &ClauseSet, budget: &Budget, source: &str) -> Result<(), SearchError> {
        let r = WitnessReport::verify(f, budget)?;
        if r.deficiency < 1 || r.is_mu != Some(true) {
            return Err(SearchError::WitnessRejected(format!("{source}: not MU")));
        }
        let k = r.deficiency as u64;
        let hit = r.is_uhit == Some(true);
        for q in Quantity::ALL {
            if q.hitting() && !hit {
                continue;
            }
            self.offer(q, k, q.of(&r) as u64, source);
        }
        Ok(())
    }

    fn get(&self, q: Quantity, k: u64) -> Option<&(u64, String)> {
        self.0.get(&(q, k))
    }
}

/// Assembles the table. Lower bounds come from verified witnesses: `F_k`,
/// the two deficiency-7 matrices, the A₄ chain, `A_n`, the partition
/// landscape (if given) and any certificates; upper bounds from
/// [`upper_bound`].
pub fn table1(
    k_max: u64,
    landscape: Option<&PartitionLandscape>,
    certificates: &[ExtremalCertificate],
    budget: &Budget,
) -> Result<Table1, SearchError> {
    if k_max == 0 {
        return Err(SearchError::ZeroK);
    }
    let mut lb = LowerBounds(BTreeMap::new());
    for k in 1..=k_max {
        let t = build_fk(k, budget)?;
        lb.offer_set(&t.final_set, budget, "F_k")?;
    }
    lb.offer_set(&witness_mu_def7(), budget, "MU deficiency-7 matrix")?;
    lb.offer_set(&witness_uhit_def7(), budget, "UHIT deficiency-7 matrix")?;
    for step in a4_chain(budget)? {
        lb.offer_set(&step.clause_set, budget, "A_4 resolution chain")?;
    }
    for n in 1..=4 {
        lb.offer_set(&make_an(n).expect("small"), budget, "A_n")?;
    }
    if let Some(land) = landscape {
        let src = format!("partitions of the {}-cube", land.n);
        for rec in land.by_deficiency.values() {
            lb.offer_set(&rec.nfc_witness, budget, &src)?;
            lb.offer_set(&rec.mvd_witness, budget, &src)?;
        }
    }
    for cert in certificates {
        if let Some(w) = &cert.witness {
            lb.offer_set(w, budget, &format!("{} search, n <= {}", cert.quantity, cert.n_max))?;
        }
    }
    // MU contains UHIT and minvdeg >= nfc
    for k in 1..=k_max {
        for (from, to) in [
            (Quantity::Maxsmarh, Quantity::Maxsmar),
            (Quantity::Maxsmarh, Quantity::Minnonmerh),
            (Quantity::Minnonmerh, Quantity::Minnonmer),
            (Quantity::Maxsmar, Quantity::Minnonmer),
        ] {
            if let Some((v, s)) = lb.get(from, k).cloned() {
                lb.offer(to, k, v, &s);
            }
        }
    }

    let mut findings = Vec::new();
    let computed =
        |name: &str, f: &dyn Fn(u64) -> Result<u64, SeqError>, paper: &[u64; 13], findings: &mut Vec<String>| {
            let entries = (1..=k_max)
                .map(|k| {
                    let v = f(k)?;
                    if k <= PAPER_TABLE_K_MAX && paper[k as usize - 1] != v {
                        findings.push(format!("{name}({k}) = {v}, stored {}", paper[k as usize - 1]));
                    }
                    Ok(TableEntry {
                        k,
                        value: Some(v),
                        status: EntryStatus::Computed,
                        lower_bound: None,
                        upper_bound: None,
                        lower_bound_source: None,
                    })
                })
                .collect::<Result<Vec<_>, SeqError>>()?;
            Ok::<TableRow, SeqError>(TableRow { name: name.to_string(), entries })
        };

    let mut rows = vec![
        computed("nM", &non_mersenne, &PAPER_NM, &mut findings)?,
        computed("nM1", &non_mersenne1, &PAPER_NM1, &mut findings)?,
    ];
    for q in [Quantity::Minnonmer, Quantity::Minnonmerh, Quantity::Maxsmar, Quantity::Maxsmarh] {
        let mut entries = Vec::new();
        for k in 1..=k_max {
            let ub = upper_bound(q, k)?;
            let (lo, src) = match lb.get(q, k) {
                Some((v, s)) => (Some(*v), Some(s.clone())),
                None => (None, None),
            };
            if let Some(l) = lo {
                if l > ub {
                    return Err(SearchError::Contradiction(format!("{q}({k}): witness {l} above upper bound {ub}")));
                }
            }
            let stored = paper_value(q, k);
            let status = match stored {
                None if lo == Some(ub) => EntryStatus::Certified,
                None => EntryStatus::BoundsOnly,
                Some(s) => {
                    if lo.is_some_and(|l| l > s) || s > ub {
                        findings.push(format!("{q}({k}): stored {s} outside [{lo:?}, {ub}]"));
                    }
                    if lo == Some(s) && s == ub {
                        EntryStatus::Certified
                    } else {
                        EntryStatus::PaperPinned
                    }
                }
            };
            let value = stored.or((status == EntryStatus::Certified).then_some(ub));
            entries.push(TableEntry {
                k,
                value,
                status,
                lower_bound: lo,
                upper_bound: Some(ub),
                lower_bound_source: src,
            });
        }
        rows.push(TableRow { name: q.name().to_string(), entries });
    }
    rows.push(computed("S2", &|k| Ok(s2_direct(k)), &PAPER_S2, &mut findings)?);

    let value = |rows: &[TableRow], name: &str, k: u64| {
        rows.iter().find(|r| r.name == name).and_then(|r| r.entries[k as usize - 1].value)
    };
    for k in 1..=k_max {
        let get = |n| value(&rows, n, k);
        let chains = [
            ("maxsmarh", "maxsmar"),
            ("maxsmar", "minnonmer"),
            ("maxsmarh", "minnonmerh"),
            ("minnonmerh", "minnonmer"),
            ("S2", "maxsmarh"),
            ("minnonmer", "nM1"),
            ("nM1", "nM"),
        ];
        for (a, b) in chains {
            if let (Some(x), Some(y)) = (get(a), get(b)) {
                if x > y {
                    findings.push(format!("k={k}: {a} = {x} > {b} = {y}"));
                }
            }
        }
    }
    Ok(Table1 { k_max, rows, findings })
}

impl Table1 {
    pub fn row(&self, name: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn values(&self, name: &str) -> Option<Vec<Option<u64>>> {
        self.row(name).map(|r| r.entries.iter().map(|e| e.value).collect())
    }

    /// Aligned text; `*` marks stored values not closed by the bounds, `?`
    /// entries with bounds only.
    pub fn render_text(&self) -> String {
        let w = 4;
        let mut out = format!("{:<11}", "k");
        for k in 1..=self.k_max {
            out.push_str(&format!("{k:>w$}"));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{:<11}", r.name));
            for e in &r.entries {
                let cell = match (e.value, e.status) {
                    (Some(v), EntryStatus::PaperPinned) => format!("{v}*"),
                    (Some(v), _) => v.to_string(),
                    (None, _) => match (e.lower_bound, e.upper_bound) {
                        (Some(l), Some(u)) => format!("{l}-{u}"),
                        _ => "?".to_string(),
                    },
                };
                out.push_str(&format!("{cell:>w$}"));
            }
            out.push('\n');
        }
        for f in &self.findings {
            out.push_str(&format!("finding: {f}\n"));
        }
        out
    }
}

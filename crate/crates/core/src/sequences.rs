//! Integer sequences around the Smarandache primitive numbers.
//!
//! `S₂(k)` is the smallest `n` such that `2^k` divides `n!`. It is computed
//! here three ways: directly from `ord₂(n!)` ([`s2_direct`]), as twice the
//! meta-Fibonacci sequence `a₂` ([`a2`], [`a2_fast`]), and through the
//! course-of-values recursion `S'₂` ([`S2PrimeTable`]). The index `i(k)` and the slack `σ(k)` of that recursion
//! are exposed as well, together with the non-Mersenne enumerations `nM` and
//! `nM₁` which bound `S₂` from above.
//!
//! Everything is exact `u64` arithmetic. Since `S₂(k) ≤ k + 1 + log₂ k`, all
//! values for `k ≤ MAX_SUPPORTED_K` fit comfortably.

// comparisons are written as in the recurrences, e.g. `k − i + 1 ≤ S'₂(i)`
#![allow(clippy::int_plus_one)]

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest argument accepted by the closed-form and logarithmic routines.
pub const MAX_SUPPORTED_K: u64 = 1 << 60;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("2-adic valuation of 0 is undefined")]
    OrdOfZero,
    #[error("argument must be at least {min}, got {got}")]
    BelowDomain { min: u64, got: u64 },
    #[error("table `{name}` has {len} values, at least {needed} required")]
    TableTooShort { name: String, len: usize, needed: usize },
    #[error("table `{0}` contains no closed plateau")]
    NoClosedPlateau(String),
    #[error("index characterisations disagree at k={k}: formula {formula}, minimality {minimality}")]
    IndexMismatch { k: u64, formula: u64, minimality: u64 },
}

/// `⌊log₂ x⌋` via bit length, `x ≥ 1`.
#[inline]
pub fn floor_log2(x: u64) -> u32 {
    debug_assert!(x > 0);
    63 - x.leading_zeros()
}

/// Largest `m` with `2^m | n`.
pub fn ord2(n: u64) -> Result<u32, SeqError> {
    if n == 0 {
        return Err(SeqError::OrdOfZero);
    }
    Ok(n.trailing_zeros())
}

/// The ruler sequence `r_n = ord₂(2n)`.
pub fn ruler(n: u64) -> Result<u32, SeqError> {
    if n == 0 {
        return Err(SeqError::BelowDomain { min: 1, got: 0 });
    }
    // ord2(2n) without forming 2n, which could overflow
    Ok(n.trailing_zeros() + 1)
}

/// `ord₂(n!) = Σ_{j≥1} ⌊n / 2^j⌋`.
fn ord2_factorial(n: u64) -> u64 {
    let mut acc = 0;
    let mut q = n;
    while q > 1 {
        q /= 2;
        acc += q;
    }
    acc
}

/// Smallest `n` with `2^k | n!`, by bisection on `ord₂(n!)`, which is
/// nondecreasing in `n`. The answer lies in `[k, 2k]` (and is 0 at `k = 0`).
pub fn s2_direct(k: u64) -> u64 {
    assert!(k <= MAX_SUPPORTED_K, "k={k} exceeds supported range");
    let (mut lo, mut hi) = (0u64, 2 * k);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ord2_factorial(mid) >= k {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// A named, contiguous prefix `values[0..len]` of an integer sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    pub name: String,
    pub values: Vec<u64>,
}

impl SequenceTable {
    pub fn new(name: impl Into<String>, values: Vec<u64>) -> Self {
        Self { name: name.into(), values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<u64> {
        self.values.get(k).copied()
    }
}

/// `S₂(0..=upto)` in a single pass of running valuation sums.
pub fn s2_table(upto: usize) -> SequenceTable {
    let mut values = Vec::with_capacity(upto + 1);
    values.push(0);
    let mut n = 0u64;
    let mut acc = 0u64;
    for k in 1..=upto as u64 {
        while acc < k {
            n += 1;
            acc += u64::from(n.trailing_zeros());
        }
        values.push(n);
    }
    SequenceTable::new("S2", values)
}

/// Memoized prefix of the meta-Fibonacci sequence
/// `a₂(k) = a₂(k − a₂(k−1)) + a₂(k − 1 − a₂(k−2))`, `a₂(0) = 0`, `a₂(1) = 1`.
#[derive(Clone, Debug)]
pub struct A2Table {
    values: Vec<u64>,
}

impl Default for A2Table {
    fn default() -> Self {
        Self { values: vec![0, 1] }
    }
}

impl A2Table {
    pub fn with_prefix(upto: usize) -> Self {
        let mut t = Self::default();
        t.extend_to(upto);
        t
    }

    pub fn extend_to(&mut self, upto: usize) {
        self.values.reserve(upto.saturating_sub(self.values.len()) + 1);
        while self.values.len() <= upto {
            let k = self.values.len();
            let v = &self.values;
            let first = k - v[k - 1] as usize;
            let second = k - 1 - v[k - 2] as usize;
            let next = v[first] + v[second];
            self.values.push(next);
        }
    }

    pub fn get(&mut self, k: usize) -> u64 {
        self.extend_to(k);
        self.values[k]
    }

    pub fn value(&self, k: usize) -> Option<u64> {
        self.values.get(k).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_table(&self) -> SequenceTable {
        SequenceTable::new("a2", self.values.clone())
    }
}

/// `a₂(k)` through the memoized nested recursion.
pub fn a2(k: u64) -> u64 {
    A2Table::with_prefix(k as usize).values[k as usize]
}

/// `a₂(k)` by the logarithmic descent `a₂(k) = 2^(p−1) + a₂(k + 1 − 2^p)`,
/// `p = ⌊log₂(k+1)⌋`. No table needed.
pub fn a2_fast(k: u64) -> u64 {
    assert!(k <= MAX_SUPPORTED_K, "k={k} exceeds supported range");
    let mut k = k;
    let mut acc = 0u64;
    while k > 0 {
        let p = floor_log2(k + 1);
        acc += 1 << (p - 1);
        k = k + 1 - (1 << p);
    }
    acc
}

/// Memoized course-of-values recursion `S'₂`:
/// `S'₂(0) = 0`, `S'₂(1) = 2`, and for `k ≥ 2`, `S'₂(k) = 2(k − i + 1)` with
/// `i ∈ 1..k−1` minimal such that `k − i + 1 ≤ S'₂(i)`.
///
/// The minimal `i` for `k + 1` is never smaller than the one for `k` (the
/// condition only gets harder), so a single forward pointer finds every
/// minimum exactly.
#[derive(Clone, Debug)]
pub struct S2PrimeTable {
    values: Vec<u64>,
    cursor: u64,
}

impl Default for S2PrimeTable {
    fn default() -> Self {
        Self { values: vec![0, 2], cursor: 1 }
    }
}

impl S2PrimeTable {
    pub fn with_prefix(upto: usize) -> Self {
        let mut t = Self::default();
        t.extend_to(upto);
        t
    }

    pub fn extend_to(&mut self, upto: usize) {
        while self.values.len() <= upto {
            let k = self.values.len() as u64;
            let mut i = self.cursor;
            while i + self.values[i as usize] < k + 1 {
                i += 1;
            }
            debug_assert!(i <= k - 1, "no admissible index for k={k}");
            self.cursor = i;
            self.values.push(2 * (k - i + 1));
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&mut self, k: usize) -> u64 {
        self.extend_to(k);
        self.values[k]
    }

    pub fn value(&self, k: usize) -> Option<u64> {
        self.values.get(k).copied()
    }

    /// `i(k) = k + 1 − S'₂(k)/2`. In debug builds the minimality
    /// characterisation is evaluated as well and must agree.
    pub fn index(&mut self, k: u64) -> Result<u64, SeqError> {
        let formula = k + 1 - self.get(k as usize) / 2;
        if cfg!(debug_assertions) {
            let minimality = self.index_by_minimality(k);
            if minimality != formula {
                return Err(SeqError::IndexMismatch { k, formula, minimality });
            }
        }
        Ok(formula)
    }

    /// Minimal `i ≥ 0` with `i + S'₂(i) ≥ k + 1`.
    pub fn index_by_minimality(&mut self, k: u64) -> u64 {
        let hi = k.max(1);
        self.extend_to(hi as usize);
        // i + S'2(i) is strictly increasing, so binary search is exact
        let (mut lo, mut hi) = (0u64, hi);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if mid + self.values[mid as usize] >= k + 1 {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    /// `σ(k) = (i(k) + S'₂(i(k))) − (k + 1)`.
    pub fn slack(&mut self, k: u64) -> Result<u64, SeqError> {
        let i = self.index(k)?;
        Ok(i + self.get(i as usize) - (k + 1))
    }

    pub fn to_table(&self) -> SequenceTable {
        SequenceTable::new("S2'", self.values.clone())
    }
}

pub fn s2_prime(k: u64) -> u64 {
    S2PrimeTable::with_prefix(k as usize).values[k as usize]
}

pub fn index_i(k: u64) -> Result<u64, SeqError> {
    S2PrimeTable::with_prefix(k as usize).index(k)
}

pub fn slack(k: u64) -> Result<u64, SeqError> {
    S2PrimeTable::with_prefix(k as usize).slack(k)
}

/// The `k`-th natural number that is not of the form `2^m − 1`:
/// `nM(k) = k + ⌊log₂(k + 1 + ⌊log₂(k+1)⌋)⌋`.
pub fn non_mersenne(k: u64) -> Result<u64, SeqError> {
    if k == 0 {
        return Err(SeqError::BelowDomain { min: 1, got: 0 });
    }
    assert!(k <= MAX_SUPPORTED_K, "k={k} exceeds supported range");
    let inner = k + 1 + u64::from(floor_log2(k + 1));
    Ok(k + u64::from(floor_log2(inner)))
}

/// `nM₁(k)`: equals `nM(k)` except at `k = 2^n − n + 1`, `n ≥ 3`, where it is `2^n`.
pub fn non_mersenne1(k: u64) -> Result<u64, SeqError> {
    let base = non_mersenne(k)?;
    Ok(match special_exponent(k) {
        Some(n) => 1 << n,
        None => base,
    })
}

/// `Some(n)` iff `k = 2^n − n + 1` for some `n ≥ 3`.
fn special_exponent(k: u64) -> Option<u32> {
    (3..62u32).find(|&n| (1u64 << n) - u64::from(n) + 1 == k)
}

/// Pointwise `a(k+1) − a(k)`.
pub fn delta_profile(t: &SequenceTable) -> Result<Vec<i64>, SeqError> {
    if t.values.len() < 2 {
        return Err(SeqError::TableTooShort { name: t.name.clone(), len: t.values.len(), needed: 2 });
    }
    Ok(t.values.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect())
}

/// Sizes of the maximal constant runs of a sequence on `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlateauProfile {
    pub first_value: i64,
    pub plateau_sizes: Vec<u64>,
}

impl PlateauProfile {
    /// Rebuilds `a(1), a(2), …` of a `d`-Delta sequence from its plateaus.
    pub fn reconstruct(&self, d: i64) -> Vec<i64> {
        let mut out = Vec::new();
        let mut v = self.first_value;
        for &size in &self.plateau_sizes {
            out.extend(std::iter::repeat_n(v, size as usize));
            v += d;
        }
        out
    }
}

/// Plateau decomposition over indices `k ≥ 1`. The trailing run may still be
/// open and is discarded.
pub fn plateau_profile(t: &SequenceTable) -> Result<PlateauProfile, SeqError> {
    let body = t.values.get(1..).unwrap_or(&[]);
    let mut sizes = Vec::new();
    let mut run = 0u64;
    for (idx, &v) in body.iter().enumerate() {
        run += 1;
        if let Some(&next) = body.get(idx + 1) {
            if next != v {
                sizes.push(run);
                run = 0;
            }
        }
    }
    if sizes.is_empty() {
        return Err(SeqError::NoClosedPlateau(t.name.clone()));
    }
    Ok(PlateauProfile { first_value: body[0] as i64, plateau_sizes: sizes })
}

/// All sequences of this module tabulated on `0..=upto`, for bulk checks.
#[derive(Clone, Debug)]
pub struct SequenceBundle {
    pub s2: SequenceTable,
    pub a2: SequenceTable,
    pub s2_prime: SequenceTable,
    pub index: SequenceTable,
    pub slack: SequenceTable,
}

impl SequenceBundle {
    pub fn build(upto: usize) -> Self {
        let s2 = s2_table(upto);
        let a2 = A2Table::with_prefix(upto).to_table();
        let mut sp = S2PrimeTable::with_prefix(upto + 1);
        let mut index = Vec::with_capacity(upto + 1);
        let mut slack = Vec::with_capacity(upto + 1);
        for k in 0..=upto as u64 {
            // formula only; the two characterisations are compared in `check`
            let i = k + 1 - sp.get(k as usize) / 2;
            index.push(i);
            slack.push(i + sp.get(i as usize) - (k + 1));
        }
        let mut s2_prime = sp.to_table();
        s2_prime.values.truncate(upto + 1);
        Self { s2, a2, s2_prime, index: SequenceTable::new("i", index), slack: SequenceTable::new("sigma", slack) }
    }
}

/// One violated identity found by [`check_identities`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub law: &'static str,
    pub k: u64,
    pub detail: String,
}

/// Runs every cross-method identity on `0..=upto` and returns the violations.
pub fn check_identities(upto: usize) -> Result<Vec<Finding>, SeqError> {
    let b = SequenceBundle::build(upto);
    let mut sp = S2PrimeTable::with_prefix(upto + 1);
    let mut out = Vec::new();
    let mut flag = |law: &'static str, k: u64, detail: String| out.push(Finding { law, k, detail });

    for k in 0..=upto {
        let ku = k as u64;
        let s2 = b.s2.values[k];
        let fast = a2_fast(ku);
        if s2 != 2 * fast {
            flag("s2_equals_twice_a2", ku, format!("S2={s2}, a2_fast={fast}"));
        }
        if b.a2.values[k] != fast {
            flag("a2_memo_equals_fast", ku, format!("memo={}, fast={fast}", b.a2.values[k]));
        }
        if b.s2_prime.values[k] != s2 {
            flag("s2_prime_equals_s2", ku, format!("S2'={}, S2={s2}", b.s2_prime.values[k]));
        }
        let by_min = sp.index_by_minimality(ku);
        if by_min != b.index.values[k] {
            flag("index_characterisations", ku, format!("formula={}, minimality={by_min}", b.index.values[k]));
        }
        let sigma = b.slack.values[k];
        if sigma > 2 {
            flag("slack_at_most_two", ku, format!("sigma={sigma}"));
        }
        if k >= 2 {
            let lhs = b.s2_prime.values[k];
            let rhs =
                b.s2_prime.values[b.index.values[k - 1] as usize] + b.s2_prime.values[b.index.values[k - 2] as usize];
            if lhs != rhs {
                flag("nested_recursion", ku, format!("S2'={lhs}, sum={rhs}"));
            }
        }
        if k < upto {
            let d_sp = b.s2_prime.values[k + 1] - b.s2_prime.values[k];
            let d_idx = b.index.values[k + 1] as i64 - b.index.values[k] as i64;
            if d_sp != 2 * sigma.min(1) {
                flag("delta_vs_slack", ku, format!("delta={d_sp}, sigma={sigma}"));
            }
            let next = b.slack.values[k + 1];
            let ok = if sigma > 0 { next == sigma - 1 } else { next == 0 || next == 2 };
            if !ok {
                flag("slack_behaviour", ku, format!("sigma={sigma}, next={next}"));
            }
            let slackless = [d_idx == 1, sigma == 0, d_sp == 0];
            if slackless.iter().any(|&x| x != slackless[0]) {
                flag("slackless_equivalence", ku, format!("d_idx={d_idx}, sigma={sigma}, d_sp={d_sp}"));
            }
        }
        if k >= 1 {
            let nm = non_mersenne(ku)?;
            let cap = ku + 1 + u64::from(floor_log2(ku));
            if !(ku + 1 <= s2 && s2 <= nm && nm <= cap) {
                flag("bounds", ku, format!("S2={s2}, nM={nm}, cap={cap}"));
            }
        }
    }
    Ok(out)
}

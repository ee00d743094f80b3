//! Literals, clauses and clause-sets with their basic measures.
//!
//! Literals are nonzero integers, `-x` being the complement of `x`. A clause
//! is a clash-free set of literals kept sorted by variable, negative literal
//! first; a clause-set is a sorted, duplicate-free list of clauses. All values
//! are immutable once built, so the cached variable set and degree map stay
//! valid.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Variables are positive integers.
pub type Var = u32;

/// Upper limit on `n` for [`make_an`] unless the caller raises it.
pub const DEFAULT_AN_CAP: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClauseError {
    #[error("0 is not a literal")]
    ZeroLiteral,
    #[error("literal {0} is out of range")]
    LiteralOutOfRange(i64),
    #[error("clause contains both {0} and its complement")]
    Clash(i32),
    #[error("min-var-degree is undefined for a clause-set without variables")]
    NoVariables,
    #[error("A_{n} exceeds the cap of {cap} variables")]
    CapExceeded { n: u32, cap: u32 },
}

/// A nonzero integer literal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Literal(i32);

impl Literal {
    pub fn new(value: i32) -> Result<Self, ClauseError> {
        match value {
            0 => Err(ClauseError::ZeroLiteral),
            i32::MIN => Err(ClauseError::LiteralOutOfRange(i64::from(value))),
            v => Ok(Literal(v)),
        }
    }

    pub fn positive(v: Var) -> Self {
        assert!(v > 0 && v <= i32::MAX as u32);
        Literal(v as i32)
    }

    pub fn negative(v: Var) -> Self {
        assert!(v > 0 && v <= i32::MAX as u32);
        Literal(-(v as i32))
    }

    pub fn from_var(v: Var, positive: bool) -> Self {
        if positive {
            Self::positive(v)
        } else {
            Self::negative(v)
        }
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn complement(self) -> Self {
        Literal(-self.0)
    }
}

impl TryFrom<i32> for Literal {
    type Error = ClauseError;
    fn try_from(v: i32) -> Result<Self, Self::Error> {
        Literal::new(v)
    }
}

impl From<Literal> for i32 {
    fn from(l: Literal) -> i32 {
        l.0
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.var().cmp(&other.var()).then(self.is_positive().cmp(&other.is_positive()))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A clash-free set of literals, sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct Clause(Vec<Literal>);

impl Clause {
    /// The empty clause `⊥`.
    pub fn empty() -> Self {
        Clause(Vec::new())
    }

    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Result<Self, ClauseError> {
        let mut v: Vec<Literal> = lits.into_iter().collect();
        v.sort();
        v.dedup();
        if let Some(w) = v.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(ClauseError::Clash(w[1].value()));
        }
        Ok(Clause(v))
    }

    pub fn from_ints(ints: &[i32]) -> Result<Self, ClauseError> {
        Self::new(ints.iter().map(|&x| Literal::new(x)).collect::<Result<Vec<_>, _>>()?)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|l| l.var())
    }

    pub fn contains(&self, l: Literal) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.literal_of(v).is_some()
    }

    /// The literal on variable `v`, if any.
    pub fn literal_of(&self, v: Var) -> Option<Literal> {
        self.0.binary_search_by(|l| l.var().cmp(&v)).ok().map(|i| self.0[i])
    }

    /// `self ∪ {l}`; fails if `l̄ ∈ self`.
    pub fn with(&self, l: Literal) -> Result<Self, ClauseError> {
        Self::new(self.0.iter().copied().chain(std::iter::once(l)))
    }

    /// `self ∖ {l}`.
    pub fn without(&self, l: Literal) -> Self {
        Clause(self.0.iter().copied().filter(|&x| x != l).collect())
    }

    /// Whether `self ∩ other̄ ≠ ∅`.
    pub fn clashes_with(&self, other: &Clause) -> bool {
        self.clashing_vars(other).next().is_some()
    }

    pub fn clashing_vars<'a>(&'a self, other: &'a Clause) -> impl Iterator<Item = Var> + 'a {
        self.0.iter().filter(move |l| other.contains(l.complement())).map(|l| l.var())
    }

    pub fn to_ints(&self) -> Vec<i32> {
        self.0.iter().map(|l| l.value()).collect()
    }
}

impl TryFrom<Vec<i32>> for Clause {
    type Error = ClauseError;
    fn try_from(v: Vec<i32>) -> Result<Self, Self::Error> {
        Clause::from_ints(&v)
    }
}

impl From<Clause> for Vec<i32> {
    fn from(c: Clause) -> Self {
        c.to_ints()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "⊥");
        }
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A clause over variables `1..=64` as two bit masks: bit `v−1` of `vars` is
/// set iff `v` occurs, and the same bit of `positive` iff it occurs unnegated.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct PackedClause {
    pub vars: u64,
    pub positive: u64,
}

impl PackedClause {
    pub fn pack(c: &Clause) -> Option<Self> {
        let mut p = PackedClause::default();
        for l in c.literals() {
            let v = l.var();
            if v == 0 || v > 64 {
                return None;
            }
            let bit = 1u64 << (v - 1);
            p.vars |= bit;
            if l.is_positive() {
                p.positive |= bit;
            }
        }
        Some(p)
    }

    #[inline]
    pub fn clashes(self, other: PackedClause) -> bool {
        (self.positive ^ other.positive) & self.vars & other.vars != 0
    }
}

/// An exact dyadic rational `numerator / 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub numerator: BigUint,
    pub exponent: u32,
}

impl Dyadic {
    pub fn is_one(&self) -> bool {
        self.cmp_one() == Ordering::Equal
    }

    pub fn cmp_one(&self) -> Ordering {
        self.numerator.cmp(&(BigUint::from(1u8) << self.exponent))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

/// A finite set of clauses in canonical order.
#[derive(Clone, Debug, Default)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
    vars: BTreeSet<Var>,
    degrees: BTreeMap<Var, usize>,
}

impl PartialEq for ClauseSet {
    fn eq(&self, other: &Self) -> bool {
        self.clauses == other.clauses
    }
}

impl Eq for ClauseSet {}

impl PartialOrd for ClauseSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClauseSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.clauses.cmp(&other.clauses)
    }
}

impl std::hash::Hash for ClauseSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.clauses.hash(state);
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet::new(iter)
    }
}

impl ClauseSet {
    /// Builds a clause-set; duplicate clauses collapse.
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Self {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        clauses.sort();
        clauses.dedup();
        let mut degrees = BTreeMap::new();
        for c in &clauses {
            for v in c.vars() {
                *degrees.entry(v).or_insert(0) += 1;
            }
        }
        let vars = degrees.keys().copied().collect();
        ClauseSet { clauses, vars, degrees }
    }

    pub fn from_ints(rows: &[&[i32]]) -> Result<Self, ClauseError> {
        Ok(Self::new(rows.iter().map(|r| Clause::from_ints(r)).collect::<Result<Vec<_>, _>>()?))
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.binary_search(c).is_ok()
    }

    pub fn vars(&self) -> &BTreeSet<Var> {
        &self.vars
    }

    pub fn max_var(&self) -> Option<Var> {
        self.vars.iter().next_back().copied()
    }

    /// `n(F)`.
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    /// `c(F)`.
    pub fn c(&self) -> usize {
        self.clauses.len()
    }

    /// `δ(F) = c(F) − n(F)`.
    pub fn deficiency(&self) -> i64 {
        self.c() as i64 - self.n() as i64
    }

    pub fn measures(&self) -> (usize, usize, i64) {
        (self.n(), self.c(), self.deficiency())
    }

    pub fn is_full(&self, c: &Clause) -> bool {
        c.len() == self.n()
    }

    /// Clauses containing every variable of the clause-set.
    pub fn full_clauses(&self) -> impl Iterator<Item = &Clause> + '_ {
        let n = self.n();
        self.clauses.iter().filter(move |c| c.len() == n)
    }

    pub fn nfc(&self) -> usize {
        self.full_clauses().count()
    }

    /// Number of clauses mentioning each variable.
    pub fn var_degrees(&self) -> &BTreeMap<Var, usize> {
        &self.degrees
    }

    pub fn var_degree(&self, v: Var) -> usize {
        self.degrees.get(&v).copied().unwrap_or(0)
    }

    pub fn min_var_degree(&self) -> Result<usize, ClauseError> {
        self.degrees.values().copied().min().ok_or(ClauseError::NoVariables)
    }

    /// Variables attaining the min-var-degree.
    pub fn min_degree_vars(&self) -> Result<BTreeSet<Var>, ClauseError> {
        let m = self.min_var_degree()?;
        Ok(self.degrees.iter().filter(|(_, &d)| d == m).map(|(&v, _)| v).collect())
    }

    /// Packed form when every variable is at most 64.
    pub fn packed(&self) -> Option<Vec<PackedClause>> {
        self.clauses.iter().map(PackedClause::pack).collect()
    }

    /// Every two distinct clauses clash.
    pub fn is_hitting(&self) -> bool {
        if let Some(p) = self.packed() {
            return p.iter().enumerate().all(|(i, a)| p[i + 1..].iter().all(|b| a.clashes(*b)));
        }
        self.clauses.iter().enumerate().all(|(i, a)| self.clauses[i + 1..].iter().all(|b| a.clashes_with(b)))
    }

    /// `Σ_C 2^(−|C|)` exactly, as `Σ_C 2^(n−|C|) / 2^n`.
    pub fn weight_sum(&self) -> Dyadic {
        let n = self.n() as u32;
        let mut numerator = BigUint::from(0u8);
        for c in &self.clauses {
            numerator += BigUint::from(1u8) << (n - c.len() as u32);
        }
        Dyadic { numerator, exponent: n }
    }

    /// Sets literal `l` to true: drops satisfied clauses and removes `l̄`.
    pub fn assign(&self, l: Literal) -> ClauseSet {
        self.clauses.iter().filter(|c| !c.contains(l)).map(|c| c.without(l.complement())).collect()
    }

    pub fn to_ints(&self) -> Vec<Vec<i32>> {
        self.clauses.iter().map(Clause::to_ints).collect()
    }

    /// The clause-set with `c` removed.
    pub fn without(&self, c: &Clause) -> ClauseSet {
        self.clauses.iter().filter(|d| *d != c).cloned().collect()
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ClauseSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.clauses.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClauseSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(ClauseSet::new(Vec::<Clause>::deserialize(d)?))
    }
}

/// All `2^n` full clauses over `1..=n`.
pub fn make_an(n: u32) -> Result<ClauseSet, ClauseError> {
    make_an_with_cap(n, DEFAULT_AN_CAP)
}

pub fn make_an_with_cap(n: u32, cap: u32) -> Result<ClauseSet, ClauseError> {
    if n > cap || n >= 64 {
        return Err(ClauseError::CapExceeded { n, cap });
    }
    Ok((0..1u64 << n)
        .map(|bits| Clause((1..=n).map(|v| Literal::from_var(v, bits >> (v - 1) & 1 == 1)).collect()))
        .collect())
}

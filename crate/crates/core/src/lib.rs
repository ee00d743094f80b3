//! Hitting clause-sets, full clauses and the `S₂` sequence family.
//!
//! `sequences` holds the integer sequences, `clause`/`dimacs` the clause-set
//! model and I/O, `sat` the verification kernel, `transforms` the
//! clause-set operations, `constructions` the witness families and `search`
//! the brute-force oracles and the table of extremal values.

pub mod clause;
pub mod constructions;
pub mod dimacs;
pub mod report;
pub mod sat;
pub mod search;
pub mod sequences;
pub mod transforms;

pub use clause::{make_an, Clause, ClauseSet, Literal, Var};
pub use report::WitnessReport;
pub use sat::Budget;

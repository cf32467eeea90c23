//! Solvers for the dag realization problem: given a sequence of
//! `(indegree | outdegree)` pairs, decide whether a simple directed acyclic
//! graph with exactly those degrees exists and produce one when it does.
//!
//! The decision problem is NP-complete in general. This crate provides
//!
//! * an exact backtracking solver over the minimal candidates of the
//!   opposed order ([`exact::solve_exact`]),
//! * the linear-time greedy `lexmax` strategy and its rule-assisted variant
//!   ([`exact::solve_lexmax`], [`reduce::solve_lexmax_with_rules`]),
//! * polynomial solvers for prescribed topological orders, source-sink
//!   sequences and forest sequences ([`topo`], [`exact::solve_forest`]),
//! * four randomized strategies with seeded, reproducible trials
//!   ([`random`]),
//! * sequence metrics and classification ([`metrics`]), and
//! * instance generators and an edge-list reader ([`generate`]).
//!
//! The [`oracle`] module carries brute-force reference deciders for testing.

pub mod exact;
pub mod generate;
pub mod metrics;
pub mod oracle;
pub mod random;
pub mod reduce;
pub mod seq;
pub mod topo;

pub use exact::{ChildOrder, Outcome, SolveReport, Strategy};
pub use seq::{parse_sequence, validate, Dag, DegreeTuple, Sequence};

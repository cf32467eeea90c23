//! Experiment harness and output plumbing behind the `dagrealize` binary:
//! enumeration rows, random-sequence experiments, strategy dispatch, and
//! the JSON/CSV/DOT serializations.

pub mod harness;
pub mod output;
pub mod solve;

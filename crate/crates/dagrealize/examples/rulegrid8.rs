//! Dev round 8: failure-count shape of the finalist pipelines at m=14,15.

use dagrealize::exact::{solve_exact, solve_lexmax, ChildOrder, Outcome};
use dagrealize::generate::{enumerate_sequences, EnumerationSpec};
use dagrealize::reduce::solve_lexmax_with_rules;

fn main() {
    for m in [14u64, 15] {
        let spec = EnumerationSpec { n: 9, m, non_trivial_only: true };
        let (mut dag, mut nonlex, mut int_fail, mut both_fail) = (0u64, 0u64, 0u64, 0u64);
        enumerate_sequences(&spec, |s| {
            if solve_exact(s, ChildOrder::LexmaxFirst, None).outcome != Outcome::Realizable {
                return;
            }
            dag += 1;
            if solve_lexmax(s).outcome == Outcome::Realizable {
                return;
            }
            nonlex += 1;
            let p = solve_lexmax_with_rules(s).outcome == Outcome::Realizable;
            if !p {
                int_fail += 1;
                if solve_lexmax_with_rules(&s.mirror()).outcome != Outcome::Realizable {
                    both_fail += 1;
                }
            }
        })
        .unwrap();
        println!("m={m} dag={dag} nonlexmax={nonlex} int_fail={int_fail} both_fail={both_fail}  (targets: m=14 -> 124958/1255/54, m=15 -> 226343/3148/146)");
    }
}

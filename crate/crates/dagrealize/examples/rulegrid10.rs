//! Dev round 10: "reduced non-lexmax" = rules made progress, yet the
//! residual still defeats the greedy strategy. Several progress/residual
//! variants.

use dagrealize::exact::{solve_exact, solve_lexmax, ChildOrder, Outcome};
use dagrealize::generate::{enumerate_sequences, EnumerationSpec};
use dagrealize::reduce::{reduce_fixpoint, solve_lexmax_with_rules};
use dagrealize::topo::realize_source_sink;

fn main() {
    for m in [11u64, 12, 13, 14] {
        let spec = EnumerationSpec { n: 9, m, non_trivial_only: true };
        // v1: fixpoint made progress AND pure lexmax on residual fails
        // v2: fixpoint (either side) progress AND residual lexmax fails (primal fixpoint)
        // v3: interleaved pipeline fails AND fixpoint made progress
        // v4: fixpoint progress AND interleaved-from-residual fails
        let mut v = [0u64; 4];
        enumerate_sequences(&spec, |s| {
            if solve_exact(s, ChildOrder::LexmaxFirst, None).outcome != Outcome::Realizable {
                return;
            }
            if solve_lexmax(s).outcome == Outcome::Realizable {
                return;
            }
            let trace = reduce_fixpoint(s);
            let (resid, _) = trace.residual.strip_zero_tuples();
            let resid_lex_ok = if resid.is_source_sink() {
                realize_source_sink(&resid.canonical_sort()).is_some()
            } else {
                solve_lexmax(&resid).outcome == Outcome::Realizable
            };
            let progressed = trace.made_progress();
            let mirror_progressed = reduce_fixpoint(&s.mirror()).made_progress();
            let int_ok = solve_lexmax_with_rules(s).outcome == Outcome::Realizable;
            let resid_int_ok = if resid.is_source_sink() {
                realize_source_sink(&resid.canonical_sort()).is_some()
            } else {
                solve_lexmax_with_rules(&resid).outcome == Outcome::Realizable
            };
            if progressed && !resid_lex_ok {
                v[0] += 1;
            }
            if (progressed || mirror_progressed) && !resid_lex_ok {
                v[1] += 1;
            }
            if !int_ok && progressed {
                v[2] += 1;
            }
            if progressed && !resid_int_ok {
                v[3] += 1;
            }
        })
        .unwrap();
        let target = match m {
            11 => 0,
            12 => 1,
            13 => 12,
            14 => 54,
            _ => unreachable!(),
        };
        println!("m={m} [fix_prog&residlex, eitherprog&residlex, int&prog, prog&residint] = {v:?} target={target}");
    }
}

use dagrealize::exact::{solve_exact, solve_lexmax, ChildOrder, Outcome};
use dagrealize::generate::{enumerate_sequences, EnumerationSpec};
use dagrealize::reduce::{reduce_fixpoint, solve_lexmax_with_rules};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    println!("m,nontrivial_dag,nonlexmax,fail_primal,fail_both,fail_both_and_nonreducible");
    for arg in &args {
        let m: u64 = arg.parse().unwrap();
        let spec = EnumerationSpec { n: 9, m, non_trivial_only: true };
        let (mut dag, mut nonlex, mut fail_p, mut fail_b, mut fail_b_nr) = (0u64, 0u64, 0u64, 0u64, 0u64);
        enumerate_sequences(&spec, |s| {
            if solve_exact(s, ChildOrder::LexmaxFirst, None).outcome != Outcome::Realizable {
                return;
            }
            dag += 1;
            if solve_lexmax(s).outcome == Outcome::Realizable {
                return;
            }
            nonlex += 1;
            let primal = solve_lexmax_with_rules(s).outcome == Outcome::Realizable;
            if !primal {
                fail_p += 1;
                let mirrored = solve_lexmax_with_rules(&s.mirror()).outcome == Outcome::Realizable;
                if !mirrored {
                    fail_b += 1;
                    let red = reduce_fixpoint(s).made_progress()
                        || reduce_fixpoint(&s.mirror()).made_progress();
                    if !red {
                        fail_b_nr += 1;
                    }
                    println!("# hard: {s}");
                }
            }
        })
        .unwrap();
        println!("{arg},{dag},{nonlex},{fail_p},{fail_b},{fail_b_nr}");
    }
}

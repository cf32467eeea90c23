//! Dev harness: classify every enumerated multiset for n = 9 at chosen m
//! values and print the count columns used by the experiment tables.

use dagrealize::exact::{solve_exact, solve_lexmax, ChildOrder, Outcome};
use dagrealize::generate::{enumerate_sequences, EnumerationSpec};
use dagrealize::reduce::{reduce_fixpoint, solve_lexmax_with_rules};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args[0].parse().unwrap();
    let ms: Vec<u64> = args[1..].iter().map(|s| s.parse().unwrap()).collect();
    println!("n,m,candidates,nontrivial_cand,dag,nontrivial_dag,nonlexmax,rules_fail,nonred_nonlexmax");
    for &m in &ms {
        let spec = EnumerationSpec { n, m, non_trivial_only: false };
        let mut candidates = 0u64;
        let mut nontrivial_cand = 0u64;
        let mut dag = 0u64;
        let mut nontrivial_dag = 0u64;
        let mut nonlexmax = 0u64;
        let mut rules_fail = 0u64;
        let mut nonred_nonlexmax = 0u64;
        enumerate_sequences(&spec, |s| {
            candidates += 1;
            let nontrivial = s.num_streams() >= 2;
            if nontrivial {
                nontrivial_cand += 1;
            }
            let realizable =
                solve_exact(s, ChildOrder::LexmaxFirst, None).outcome == Outcome::Realizable;
            if realizable {
                dag += 1;
                if nontrivial {
                    nontrivial_dag += 1;
                    let lexmax_ok = solve_lexmax(s).outcome == Outcome::Realizable;
                    if !lexmax_ok {
                        nonlexmax += 1;
                        let rules_ok =
                            solve_lexmax_with_rules(s).outcome == Outcome::Realizable;
                        if !rules_ok {
                            rules_fail += 1;
                            if !reduce_fixpoint(s).made_progress() {
                                nonred_nonlexmax += 1;
                            }
                        }
                    }
                }
            }
        })
        .unwrap();
        println!("{n},{m},{candidates},{nontrivial_cand},{dag},{nontrivial_dag},{nonlexmax},{rules_fail},{nonred_nonlexmax}");
    }
}

//! Safe simplification rules applied to a fixpoint, and the deterministic
//! lexmax strategy interleaved with them.
//!
//! Each rule either fires (returning the reduced sequence together with the
//! arcs it forces) or reports that it does not apply. Firing preserves
//! realizability in both directions, so the rules may be applied eagerly.

use crate::exact::{
    reduce_by_tuple, vmin_unchecked, Outcome, SolveReport, SolveStats, Strategy,
};
use crate::seq::{Dag, Entry, Sequence};
use crate::topo::realize_source_sink;

/// Which rule fired; `Mirror` variants are the same rule applied to the
/// mirrored sequence with all forced arcs reversed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleId {
    UniqueCandidate,
    UniqueCandidateMirror,
    DegreeDominance,
    DegreeDominanceMirror,
    TotalDegree,
}

/// One applied reduction: the rule, the pivot label it fired on, and the
/// arcs it forces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionStep {
    pub rule: RuleId,
    pub pivot: u32,
    pub arcs: Vec<(u32, u32)>,
}

/// A maximal run of rule applications plus the sequence that remains.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub residual: Sequence,
}

impl ReductionTrace {
    pub fn forced_arcs(&self) -> Vec<(u32, u32)> {
        self.steps.iter().flat_map(|s| s.arcs.iter().copied()).collect()
    }

    pub fn made_progress(&self) -> bool {
        !self.steps.is_empty()
    }

    /// Combines the forced arcs with a witness for the residual into a
    /// witness for the original sequence. The dominance rule can force arcs
    /// whose reversal a residual witness is free to use; such mutual pairs
    /// are repaired by rerouting against a third arc.
    pub fn replay(&self, n_original: usize, residual_witness: &Dag) -> Dag {
        let mut arcs = self.forced_arcs();
        arcs.extend_from_slice(residual_witness.arcs());
        let _ = repair_mutual_pairs(n_original, &mut arcs);
        Dag::new(n_original, arcs)
    }
}

/// Rewrites `u -> v, v -> u` pairs by exchanging heads with some third arc
/// so that degrees are preserved and the result stays simple and acyclic.
/// Returns false when some pair could not be dissolved; callers then fall
/// back to a from-scratch witness.
pub(crate) fn repair_mutual_pairs(n: usize, arcs: &mut Vec<(u32, u32)>) -> bool {
    fn mutual_pairs(arcs: &[(u32, u32)]) -> Vec<(u32, u32)> {
        let set: std::collections::HashSet<(u32, u32)> = arcs.iter().copied().collect();
        let mut pairs: Vec<(u32, u32)> = set
            .iter()
            .copied()
            .filter(|&(x, y)| x < y && set.contains(&(y, x)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    loop {
        let pairs = mutual_pairs(arcs);
        let Some(&(u, v)) = pairs.first() else {
            return Dag::new(n, arcs.clone()).is_acyclic();
        };
        let mut candidates: Vec<(u32, u32)> = arcs.clone();
        candidates.sort_unstable();
        let mut fixed = false;
        'search: for (p, q) in [(v, u), (u, v)] {
            for &(x, y) in &candidates {
                if x == p || x == q || y == p || y == q {
                    continue;
                }
                // (p, q), (x, y)  ->  (p, y), (x, q)
                let introduces = |a: (u32, u32)| {
                    arcs.contains(&a) || arcs.contains(&(a.1, a.0))
                };
                if introduces((p, y)) || introduces((x, q)) {
                    continue;
                }
                let mut trial = arcs.clone();
                let pos = trial.iter().position(|&a| a == (p, q)).unwrap();
                trial.swap_remove(pos);
                let pos = trial.iter().position(|&a| a == (x, y)).unwrap();
                trial.swap_remove(pos);
                trial.push((p, y));
                trial.push((x, q));
                if mutual_pairs(&trial).len() >= pairs.len() {
                    continue;
                }
                // once no pair remains the whole graph must be acyclic
                let done = mutual_pairs(&trial).is_empty();
                if done && !Dag::new(n, trial.clone()).is_acyclic() {
                    continue;
                }
                *arcs = trial;
                fixed = true;
                break 'search;
            }
        }
        if !fixed {
            return false;
        }
    }
}

/// Reduces when the minimal candidate set (on either side) has exactly one
/// value: that reduction step is forced for any realizable sequence.
pub fn rule_unique_vmin(seq: &Sequence) -> Option<(Sequence, ReductionStep)> {
    debug_assert!(seq.is_canonical(), "contract: canonically sorted sequence");
    if seq.is_source_sink() || seq.n() == 0 {
        return None;
    }
    let vmin = vmin_unchecked(seq);
    if vmin.len() == 1 {
        let pivot = vmin.members()[0].label;
        let (reduced, arcs) = reduce_by_tuple(seq, pivot);
        return Some((reduced, ReductionStep { rule: RuleId::UniqueCandidate, pivot, arcs }));
    }
    let mirrored = seq.mirror().canonical_sort();
    let vmin = vmin_unchecked(&mirrored);
    if vmin.len() == 1 {
        let pivot = vmin.members()[0].label;
        let (reduced, arcs) = reduce_by_tuple(&mirrored, pivot);
        let arcs = arcs.into_iter().map(|(x, y)| (y, x)).collect();
        return Some((
            reduced.mirror().canonical_sort(),
            ReductionStep { rule: RuleId::UniqueCandidateMirror, pivot, arcs },
        ));
    }
    None
}

fn dominance_primal(seq: &Sequence) -> Option<(Sequence, ReductionStep)> {
    let non_sources = seq.entries().iter().filter(|e| e.tuple.a > 0).count();
    let mut pivots: Vec<&Entry> = seq.entries().iter().filter(|e| e.tuple.b > 0).collect();
    pivots.sort_by_key(|e| e.label);
    for e in pivots {
        let available = non_sources - usize::from(e.tuple.a > 0);
        if available == 0 || e.tuple.b as usize != available {
            continue;
        }
        let pivot = e.label;
        let mut arcs = Vec::with_capacity(available);
        let mut entries = Vec::with_capacity(seq.n());
        for other in seq.entries() {
            let mut tuple = other.tuple;
            if other.label != pivot && tuple.a > 0 {
                arcs.push((pivot, other.label));
                tuple.a -= 1;
            }
            if other.label == pivot {
                tuple.b = 0;
            }
            if !tuple.is_zero() {
                entries.push(Entry { label: other.label, tuple });
            }
        }
        let reduced = Sequence::from_entries(entries).canonical_sort();
        return Some((reduced, ReductionStep { rule: RuleId::DegreeDominance, pivot, arcs }));
    }
    None
}

/// Reduces when some tuple's outdegree equals the number of other tuples
/// with positive indegree: all those arcs are forced. The mirrored variant
/// covers a dominating indegree.
pub fn rule_degree_dominance(seq: &Sequence) -> Option<(Sequence, ReductionStep)> {
    debug_assert!(seq.is_canonical(), "contract: canonically sorted sequence");
    if let Some(hit) = dominance_primal(seq) {
        return Some(hit);
    }
    let mirrored = seq.mirror().canonical_sort();
    let (reduced, step) = dominance_primal(&mirrored)?;
    Some((
        reduced.mirror().canonical_sort(),
        ReductionStep {
            rule: RuleId::DegreeDominanceMirror,
            pivot: step.pivot,
            arcs: step.arcs.into_iter().map(|(x, y)| (y, x)).collect(),
        },
    ))
}

/// Reduces a stream tuple with total degree `n - 1`: such a vertex is
/// adjacent to every other vertex, so in particular every single-demand
/// source must feed it and it must feed every single-demand sink. Fires
/// only under the stated source/sink count bounds and only when it forces
/// at least one arc.
pub fn rule_total_degree(seq: &Sequence) -> Option<(Sequence, ReductionStep)> {
    debug_assert!(seq.is_canonical(), "contract: canonically sorted sequence");
    let n = seq.n() as u32;
    if n == 0 {
        return None;
    }
    let q = seq.num_sources() as u32;
    let s = seq.num_sinks() as u32;
    let mut pivots: Vec<&Entry> = seq.entries().iter().filter(|e| e.tuple.is_stream()).collect();
    pivots.sort_by_key(|e| e.label);
    for e in pivots {
        if e.tuple.a + e.tuple.b != n - 1 || e.tuple.a > q || e.tuple.b > s {
            continue;
        }
        let feeders: Vec<u32> = seq
            .entries()
            .iter()
            .filter(|x| x.tuple.is_source() && x.tuple.b == 1)
            .map(|x| x.label)
            .collect();
        let drains: Vec<u32> = seq
            .entries()
            .iter()
            .filter(|x| x.tuple.is_sink() && x.tuple.a == 1)
            .map(|x| x.label)
            .collect();
        if feeders.is_empty() && drains.is_empty() {
            continue;
        }
        let pivot = e.label;
        let mut arcs = Vec::with_capacity(feeders.len() + drains.len());
        arcs.extend(feeders.iter().map(|&f| (f, pivot)));
        arcs.extend(drains.iter().map(|&d| (pivot, d)));
        let mut entries = Vec::with_capacity(seq.n());
        for other in seq.entries() {
            if feeders.contains(&other.label) || drains.contains(&other.label) {
                continue; // spent entirely
            }
            let mut tuple = other.tuple;
            if other.label == pivot {
                tuple.a -= feeders.len() as u32;
                tuple.b -= drains.len() as u32;
            }
            if !tuple.is_zero() {
                entries.push(Entry { label: other.label, tuple });
            }
        }
        let reduced = Sequence::from_entries(entries).canonical_sort();
        return Some((reduced, ReductionStep { rule: RuleId::TotalDegree, pivot, arcs }));
    }
    None
}

pub(crate) fn apply_one_rule(seq: &Sequence) -> Option<(Sequence, ReductionStep)> {
    rule_unique_vmin(seq)
        .or_else(|| rule_degree_dominance(seq))
        .or_else(|| rule_total_degree(seq))
}

/// Applies the rules in priority order until none fires or the sequence is
/// down to sources and sinks. Deterministic; every step deletes a tuple or
/// spends demand, so at most `n + m` steps happen.
pub fn reduce_fixpoint(seq: &Sequence) -> ReductionTrace {
    let mut current = seq.canonical_sort();
    let mut steps = Vec::new();
    let cap = seq.n() as u64 + seq.m() + 1;
    while !current.is_source_sink() {
        let Some((reduced, step)) = apply_one_rule(&current) else {
            break;
        };
        steps.push(step);
        current = reduced;
        assert!(steps.len() as u64 <= cap, "reduction fixpoint exceeded its step bound");
    }
    ReductionTrace { steps, residual: current }
}

/// The practical deterministic pipeline: run the reduction rules to a
/// fixpoint, take one lexmax step when nothing fires, repeat; source-sink
/// leaves are realized directly. Failure only means this pipeline did not
/// realize the sequence.
pub fn solve_lexmax_with_rules(seq: &Sequence) -> SolveReport {
    let mut current = seq.canonical_sort();
    debug_assert!(current.is_balanced() && current.is_zero_free(), "contract: validated, zero-free");
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    let mut stream_order: Vec<u32> = Vec::new();
    let mut nodes = 0u64;
    // A dominance step on a stream pivot may force arcs whose reversal the
    // remaining pipeline is free to pick; only then is a repair pass needed.
    let mut needs_repair = false;
    let fail = |nodes, depth| SolveReport::failure(Strategy::LexmaxWithRules, nodes, depth);
    loop {
        nodes += 1;
        if current.is_source_sink() {
            let depth = stream_order.len();
            return match realize_source_sink(&current) {
                Some(leaf) => {
                    arcs.extend_from_slice(leaf.arcs());
                    if needs_repair && !repair_mutual_pairs(seq.n(), &mut arcs) {
                        // degree-exact rewiring failed; rebuild from scratch
                        let exact =
                            crate::exact::solve_exact(seq, crate::exact::ChildOrder::LexmaxFirst, None);
                        arcs = exact.witness.expect("rules preserve realizability").arcs().to_vec();
                    }
                    SolveReport {
                        outcome: Outcome::Realizable,
                        witness: Some(Dag::new(seq.n(), arcs)),
                        stream_order,
                        stats: SolveStats {
                            nodes_expanded: nodes,
                            max_depth: depth,
                            strategy: Strategy::LexmaxWithRules,
                            seed: None,
                            trials: 1,
                        },
                    }
                }
                None => fail(nodes, depth),
            };
        }
        if let Some((reduced, step)) = apply_one_rule(&current) {
            if matches!(step.rule, RuleId::DegreeDominance | RuleId::DegreeDominanceMirror) {
                let pivot_was_stream = current
                    .entry_by_label(step.pivot)
                    .is_some_and(|e| e.tuple.is_stream());
                needs_repair |= pivot_was_stream;
            }
            arcs.extend_from_slice(&step.arcs);
            current = reduced;
            continue;
        }
        if current.num_sources() == 0 {
            return fail(nodes, stream_order.len());
        }
        let vmin = vmin_unchecked(&current);
        let Some(choice) = vmin.lexmax().copied() else {
            return fail(nodes, stream_order.len());
        };
        let (reduced, mut step_arcs) = reduce_by_tuple(&current, choice.label);
        arcs.append(&mut step_arcs);
        stream_order.push(choice.label);
        current = reduced;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve_exact, ChildOrder};
    use crate::seq::{parse_sequence, DegreeTuple};
    use crate::topo::verify_realization;

    fn seq(tuples: &[(u32, u32)]) -> Sequence {
        Sequence::from_tuples(tuples.iter().map(|&(a, b)| DegreeTuple::new(a, b)))
    }

    fn example1() -> Sequence {
        parse_sequence("0 3\n0 1\n1 2\n2 3\n4 4\n1 1\n1 0\n2 0\n3 0").unwrap()
    }

    #[test]
    fn unique_vmin_fires_on_worked_example() {
        let s = seq(&[(0, 3), (0, 3), (2, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        let (reduced, step) = rule_unique_vmin(&s).expect("single candidate");
        assert_eq!(step.rule, RuleId::UniqueCandidate);
        assert_eq!(s.entry_by_label(step.pivot).unwrap().tuple, DegreeTuple::new(2, 2));
        let expected = seq(&[(0, 2), (0, 2), (0, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        assert_eq!(reduced.value_key(), expected.value_key());
    }

    #[test]
    fn unique_vmin_does_not_fire_on_example1() {
        // both sides have two minimal candidates
        assert!(rule_unique_vmin(&example1()).is_none());
    }

    #[test]
    fn unique_vmin_guards_source_sink() {
        assert!(rule_unique_vmin(&seq(&[(0, 1), (1, 0)])).is_none());
    }

    #[test]
    fn dominance_source_pivot() {
        let s = seq(&[(0, 2), (1, 1), (2, 0)]);
        let (reduced, step) = rule_degree_dominance(&s).expect("source dominates");
        assert_eq!(step.rule, RuleId::DegreeDominance);
        assert_eq!(step.pivot, 1);
        let mut arcs = step.arcs.clone();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(1, 2), (1, 3)]);
        assert_eq!(reduced.value_key(), seq(&[(0, 1), (1, 0)]).value_key());
    }

    #[test]
    fn dominance_mirror_sink_pivot() {
        // the sink needs every tuple with positive outdegree as in-neighbor
        let s = seq(&[(0, 1), (0, 1), (1, 2), (3, 0)]);
        let (reduced, step) = rule_degree_dominance(&s).expect("sink dominates");
        assert_eq!(step.rule, RuleId::DegreeDominanceMirror);
        assert_eq!(step.pivot, 4);
        let mut arcs = step.arcs.clone();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(1, 4), (2, 4), (3, 4)]);
        assert_eq!(reduced.value_key(), seq(&[(1, 1)]).value_key());
    }

    #[test]
    fn dominance_none_when_no_dominant_tuple() {
        assert!(rule_degree_dominance(&example1()).is_none());
    }

    #[test]
    fn total_degree_three_vertex_path() {
        let s = seq(&[(0, 1), (1, 1), (1, 0)]);
        let (reduced, step) = rule_total_degree(&s).expect("total degree n-1");
        assert_eq!(step.rule, RuleId::TotalDegree);
        let mut arcs = step.arcs.clone();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(1, 2), (2, 3)]);
        assert_eq!(reduced.n(), 0);
    }

    #[test]
    fn total_degree_partial_reduction() {
        let s = seq(&[(0, 2), (0, 1), (2, 2), (1, 0), (2, 0)]);
        let (reduced, step) = rule_total_degree(&s).expect("fires");
        let mut arcs = step.arcs.clone();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(2, 3), (3, 4)]);
        // residual keeps realizability: (0|2),(1|1),(2|0) is realizable
        assert_eq!(reduced.value_key(), seq(&[(0, 2), (1, 1), (2, 0)]).value_key());
        let exact = solve_exact(&reduced.strip_zero_tuples().0, ChildOrder::LexmaxFirst, None);
        assert_eq!(exact.outcome, Outcome::Realizable);
    }

    #[test]
    fn total_degree_none_without_full_tuple() {
        assert!(rule_total_degree(&seq(&[(0, 2), (1, 1), (1, 1), (2, 0)]).canonical_sort()).is_none());
    }

    #[test]
    fn fixpoint_identity_on_source_sink() {
        let s = seq(&[(0, 2), (1, 0), (1, 0)]);
        let trace = reduce_fixpoint(&s);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.residual.value_key(), s.value_key());
    }

    #[test]
    fn fixpoint_reduces_opposed_to_source_sink() {
        // opposed: candidates are unique at every step
        let s = seq(&[(0, 2), (0, 2), (1, 2), (2, 2), (3, 0), (2, 0)]);
        let trace = reduce_fixpoint(&s);
        assert!(trace.residual.is_source_sink());
        assert!(trace.made_progress());
    }

    #[test]
    fn fixpoint_replay_verifies_against_original() {
        let s = seq(&[(0, 2), (0, 2), (1, 2), (2, 2), (3, 0), (2, 0)]);
        let trace = reduce_fixpoint(&s);
        let leaf = realize_source_sink(&trace.residual).expect("residual realizable");
        let dag = trace.replay(s.n(), &leaf);
        assert!(verify_realization(&dag, &s));
    }

    #[test]
    fn lexmax_with_rules_solves_example1() {
        // plain lexmax fails on this sequence, the mirror-side unique rule
        // cracks it
        let s = example1();
        let report = solve_lexmax_with_rules(&s);
        if report.outcome == Outcome::Realizable {
            assert!(verify_realization(report.witness.as_ref().unwrap(), &s));
        }
        // realizability itself is guaranteed by the exact solver
        assert_eq!(solve_exact(&s, ChildOrder::LexmaxFirst, None).outcome, Outcome::Realizable);
    }
}

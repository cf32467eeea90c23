//! Position bounds for topological orders, the bipartite bounding graph,
//! and the four randomized realization strategies.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{
    reduce_by_tuple, solve_exact, vmin_unchecked, ChildOrder, Outcome, SolveReport, SolveStats,
    Strategy,
};
use crate::reduce::{apply_one_rule, repair_mutual_pairs, RuleId};
use crate::seq::{Dag, Entry, Sequence};
use crate::topo::{realize_source_sink, realize_with_order, OrderedSequence};

/// Largest stream-tuple count for which perfect matchings are enumerated.
pub const DEFAULT_MATCHING_CAP: usize = 10;

/// Degree caps for position `i` (1-based) in any topological order of a
/// realization: indegree at most `min(n - s, i - 1)`, outdegree at most
/// `min(n - q, n - i)`.
pub fn lemma4_bounds(n: usize, q: usize, s: usize, i: usize) -> (u32, u32) {
    debug_assert!(1 <= i && i <= n);
    let a_max = (n - s).min(i - 1) as u32;
    let b_max = (n - q).min(n - i) as u32;
    (a_max, b_max)
}

/// Bipartite graph pairing the stream positions `q+1 ..= n-s` (each carrying
/// its position bounds) with the stream tuples; a stream tuple can occupy a
/// position iff it fits the bounds. Realizations force a perfect matching.
#[derive(Clone, Debug)]
pub struct BoundingGraph {
    /// (position, bound pair) per left vertex, ascending positions
    positions: Vec<(usize, (u32, u32))>,
    /// stream entries, right vertices, in canonical sequence order
    streams: Vec<Entry>,
    /// left index -> right indices
    adj: Vec<Vec<usize>>,
}

impl BoundingGraph {
    pub fn positions(&self) -> &[(usize, (u32, u32))] {
        &self.positions
    }

    pub fn streams(&self) -> &[Entry] {
        &self.streams
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn num_streams(&self) -> usize {
        self.streams.len()
    }

    /// A stream tuple fitting no position at all certifies unrealizability.
    pub fn has_isolated_stream(&self) -> bool {
        let mut seen = vec![false; self.streams.len()];
        for row in &self.adj {
            for &j in row {
                seen[j] = true;
            }
        }
        seen.iter().any(|&s| !s)
    }
}

/// Builds the bounding graph of a canonical, zero-free sequence.
pub fn build_bounding_graph(seq: &Sequence) -> BoundingGraph {
    debug_assert!(seq.is_canonical(), "contract: canonically sorted sequence");
    let n = seq.n();
    let q = seq.num_sources();
    let s = seq.num_sinks();
    let streams: Vec<Entry> = seq.entries()[q..n - s].to_vec();
    let mut positions = Vec::with_capacity(streams.len());
    let mut adj = Vec::with_capacity(streams.len());
    for i in q + 1..=n - s {
        let bounds = lemma4_bounds(n, q, s, i);
        let row = streams
            .iter()
            .enumerate()
            .filter(|(_, e)| e.tuple.a <= bounds.0 && e.tuple.b <= bounds.1)
            .map(|(j, _)| j)
            .collect();
        positions.push((i, bounds));
        adj.push(row);
    }
    BoundingGraph { positions, streams, adj }
}

/// Augmenting-path bipartite matching decision: true iff every position can
/// be assigned a distinct stream tuple within the bounds.
pub fn has_perfect_matching(bg: &BoundingGraph) -> bool {
    let r = bg.streams.len();
    let mut matched: Vec<Option<usize>> = vec![None; r];
    fn augment(bg: &BoundingGraph, left: usize, seen: &mut [bool], matched: &mut [Option<usize>]) -> bool {
        for &j in &bg.adj[left] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if matched[j].is_none() || augment(bg, matched[j].unwrap(), seen, matched) {
                matched[j] = Some(left);
                return true;
            }
        }
        false
    }
    let mut seen = vec![false; r];
    for left in 0..bg.adj.len() {
        seen.fill(false);
        if !augment(bg, left, &mut seen, &mut matched) {
            return false;
        }
    }
    true
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SampleError {
    #[error("the bounding graph admits no perfect matching")]
    NoPerfectMatching,
    #[error(
        "{streams} stream tuples exceed the matching enumeration cap of {cap}; \
         uniform matching sampling is only available by enumeration"
    )]
    CapExceeded { streams: usize, cap: usize },
}

fn matching_counts(bg: &BoundingGraph) -> Vec<u64> {
    // counts[used] = number of ways to extend a partial matching that
    // assigned positions 0..popcount(used) exactly the streams in `used`
    let r = bg.streams.len();
    let full = 1usize << r;
    let mut counts = vec![0u64; full];
    counts[full - 1] = 1;
    let mut masks: Vec<usize> = (0..full).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    for mask in masks {
        if mask == full - 1 {
            continue;
        }
        let i = mask.count_ones() as usize;
        let mut total = 0u64;
        for &j in &bg.adj[i] {
            if mask & (1 << j) == 0 {
                total += counts[mask | (1 << j)];
            }
        }
        counts[mask] = total;
    }
    counts
}

/// Number of perfect matchings, or an error when the stream count exceeds
/// the enumeration cap.
pub fn count_perfect_matchings(bg: &BoundingGraph, cap: usize) -> Result<u64, SampleError> {
    if bg.streams.len() > cap {
        return Err(SampleError::CapExceeded { streams: bg.streams.len(), cap });
    }
    Ok(matching_counts(bg)[0])
}

/// Draws a perfect matching uniformly at random by enumeration and returns
/// the induced stream order (labels, position-ascending).
pub fn sample_order_uniform(
    bg: &BoundingGraph,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u32>, SampleError> {
    let r = bg.streams.len();
    if r > cap {
        return Err(SampleError::CapExceeded { streams: r, cap });
    }
    let counts = matching_counts(bg);
    if counts[0] == 0 {
        return Err(SampleError::NoPerfectMatching);
    }
    let mut order = Vec::with_capacity(r);
    let mut used = 0usize;
    for i in 0..r {
        let mut x = rng.random_range(0..counts[used]);
        let mut picked = None;
        for &j in &bg.adj[i] {
            if used & (1 << j) != 0 {
                continue;
            }
            let w = counts[used | (1 << j)];
            if x < w {
                picked = Some(j);
                break;
            }
            x -= w;
        }
        let j = picked.expect("counts cover all completions");
        used |= 1 << j;
        order.push(bg.streams[j].label);
    }
    Ok(order)
}

/// The four randomized strategies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RandStrategy {
    /// Uniform random permutation of the stream tuples (rand1).
    StreamPermutation,
    /// Uniform perfect matching of the bounding graph (rand2).
    BoundingPermutation,
    /// One solver pass sampling uniformly from the minimal candidate set
    /// (rand3).
    OpposedPermutation,
    /// As rand3 with the reduction rules applied between steps (rand4).
    OpposedPermutationRules,
}

impl RandStrategy {
    pub fn all() -> [RandStrategy; 4] {
        [
            RandStrategy::StreamPermutation,
            RandStrategy::BoundingPermutation,
            RandStrategy::OpposedPermutation,
            RandStrategy::OpposedPermutationRules,
        ]
    }

    fn as_strategy(self) -> Strategy {
        match self {
            RandStrategy::StreamPermutation => Strategy::StreamPermutation,
            RandStrategy::BoundingPermutation => Strategy::BoundingPermutation,
            RandStrategy::OpposedPermutation => Strategy::OpposedPermutation,
            RandStrategy::OpposedPermutationRules => Strategy::OpposedPermutationRules,
        }
    }
}

impl fmt::Display for RandStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_strategy())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RandError {
    #[error(transparent)]
    Sample(#[from] SampleError),
}

enum Trial {
    Realized { arcs: Vec<(u32, u32)>, stream_order: Vec<u32>, nodes: u64 },
    Failed { nodes: u64 },
    /// The bounding graph has no perfect matching; no realization exists.
    ProvenUnrealizable,
}

/// With the candidate whose outdegree equals the cap of the next free
/// position, no later position is possible for it: it must be placed now.
fn restricted_choice(current: &Sequence, rng: &mut ChaCha8Rng) -> Option<u32> {
    let vmin = vmin_unchecked(current);
    if vmin.is_empty() {
        return None;
    }
    let lexmax = vmin.members()[0];
    let next_b_cap = (current.n() - current.num_sources() - 1) as u32;
    if lexmax.tuple.b == next_b_cap {
        return Some(lexmax.label);
    }
    let members = vmin.members();
    Some(members[rng.random_range(0..members.len())].label)
}

fn order_trial(canonical: &Sequence, stream_labels: Vec<u32>) -> Trial {
    let q = canonical.num_sources();
    let s = canonical.num_sinks();
    let n = canonical.n();
    let mut entries: Vec<Entry> = Vec::with_capacity(n);
    entries.extend_from_slice(&canonical.entries()[..q]);
    for &label in &stream_labels {
        entries.push(*canonical.entry_by_label(label).expect("stream label"));
    }
    entries.extend_from_slice(&canonical.entries()[n - s..]);
    let ordered = OrderedSequence::from_arrangement(&Sequence::from_entries(entries));
    match realize_with_order(&ordered) {
        Some(dag) => Trial::Realized {
            arcs: dag.arcs().to_vec(),
            stream_order: stream_labels,
            nodes: 1,
        },
        None => Trial::Failed { nodes: 1 },
    }
}

fn run_trial(
    canonical: &Sequence,
    strategy: RandStrategy,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Trial, RandError> {
    match strategy {
        RandStrategy::StreamPermutation => {
            let q = canonical.num_sources();
            let s = canonical.num_sinks();
            let mut labels: Vec<u32> = canonical.entries()[q..canonical.n() - s]
                .iter()
                .map(|e| e.label)
                .collect();
            labels.shuffle(rng);
            Ok(order_trial(canonical, labels))
        }
        RandStrategy::BoundingPermutation => {
            let bg = build_bounding_graph(canonical);
            match sample_order_uniform(&bg, cap, rng) {
                Ok(labels) => Ok(order_trial(canonical, labels)),
                Err(SampleError::NoPerfectMatching) => Ok(Trial::ProvenUnrealizable),
                Err(e @ SampleError::CapExceeded { .. }) => Err(RandError::Sample(e)),
            }
        }
        RandStrategy::OpposedPermutation => Ok(opposed_trial(canonical, rng, false)),
        RandStrategy::OpposedPermutationRules => Ok(opposed_trial(canonical, rng, true)),
    }
}

fn opposed_trial(canonical: &Sequence, rng: &mut ChaCha8Rng, with_rules: bool) -> Trial {
    let mut current = canonical.clone();
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    let mut stream_order: Vec<u32> = Vec::new();
    let mut nodes = 0u64;
    let mut needs_repair = false;
    loop {
        nodes += 1;
        if current.is_source_sink() {
            return match realize_source_sink(&current) {
                Some(leaf) => {
                    arcs.extend_from_slice(leaf.arcs());
                    if needs_repair && !repair_mutual_pairs(canonical.n(), &mut arcs) {
                        let exact = solve_exact(canonical, ChildOrder::LexmaxFirst, None);
                        arcs = exact.witness.expect("rules preserve realizability").arcs().to_vec();
                    }
                    Trial::Realized { arcs, stream_order, nodes }
                }
                None => Trial::Failed { nodes },
            };
        }
        if with_rules {
            if let Some((reduced, step)) = apply_one_rule(&current) {
                if matches!(step.rule, RuleId::DegreeDominance | RuleId::DegreeDominanceMirror) {
                    needs_repair |= current
                        .entry_by_label(step.pivot)
                        .is_some_and(|e| e.tuple.is_stream());
                }
                arcs.extend_from_slice(&step.arcs);
                current = reduced;
                continue;
            }
        }
        if current.num_sources() == 0 {
            return Trial::Failed { nodes };
        }
        let Some(label) = restricted_choice(&current, rng) else {
            return Trial::Failed { nodes };
        };
        let (reduced, mut step_arcs) = reduce_by_tuple(&current, label);
        arcs.append(&mut step_arcs);
        stream_order.push(label);
        current = reduced;
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs a single trial of the given strategy with a fresh generator.
pub fn rand_trial(seq: &Sequence, strategy: RandStrategy, seed: u64) -> Result<SolveReport, RandError> {
    run_randomized_with_cap(seq, strategy, 1, seed, DEFAULT_MATCHING_CAP)
}

/// Repeats trials with per-trial generator streams derived from `seed`,
/// stopping at the first witness. Identical inputs give identical reports.
pub fn run_randomized(
    seq: &Sequence,
    strategy: RandStrategy,
    trials: u64,
    seed: u64,
) -> Result<SolveReport, RandError> {
    run_randomized_with_cap(seq, strategy, trials, seed, DEFAULT_MATCHING_CAP)
}

/// As [`run_randomized`] with an explicit matching enumeration cap.
pub fn run_randomized_with_cap(
    seq: &Sequence,
    strategy: RandStrategy,
    trials: u64,
    seed: u64,
    cap: usize,
) -> Result<SolveReport, RandError> {
    assert!(trials >= 1, "at least one trial");
    let canonical = seq.canonical_sort();
    debug_assert!(canonical.is_balanced() && canonical.is_zero_free(), "contract: validated, zero-free");
    let mut nodes = 0u64;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        match run_trial(&canonical, strategy, cap, &mut rng)? {
            Trial::Realized { arcs, stream_order, nodes: trial_nodes } => {
                return Ok(SolveReport {
                    outcome: Outcome::Realizable,
                    witness: Some(Dag::new(seq.n(), arcs)),
                    stream_order,
                    stats: SolveStats {
                        nodes_expanded: nodes + trial_nodes,
                        max_depth: 0,
                        strategy: strategy.as_strategy(),
                        seed: Some(seed),
                        trials: t + 1,
                    },
                });
            }
            Trial::Failed { nodes: trial_nodes } => nodes += trial_nodes,
            Trial::ProvenUnrealizable => {
                let mut report = SolveReport::failure(strategy.as_strategy(), nodes + 1, 0);
                report.stats.seed = Some(seed);
                report.stats.trials = t + 1;
                return Ok(report);
            }
        }
    }
    let mut report = SolveReport::failure(strategy.as_strategy(), nodes, 0);
    report.stats.seed = Some(seed);
    report.stats.trials = trials;
    Ok(report)
}

/// Success counts over a fixed number of trials (no early stop); the
/// empirical single-trial success estimate is `successes / trials`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Tally {
    pub successes: u64,
    pub trials: u64,
}

impl Tally {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

/// Runs every trial and tallies successes; used by the experiment harness.
pub fn success_tally(
    seq: &Sequence,
    strategy: RandStrategy,
    trials: u64,
    seed: u64,
) -> Result<Tally, RandError> {
    let canonical = seq.canonical_sort();
    let mut successes = 0u64;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        match run_trial(&canonical, strategy, DEFAULT_MATCHING_CAP, &mut rng)? {
            Trial::Realized { .. } => successes += 1,
            Trial::Failed { .. } => {}
            Trial::ProvenUnrealizable => return Ok(Tally { successes: 0, trials }),
        }
    }
    Ok(Tally { successes, trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{parse_sequence, DegreeTuple};
    use crate::topo::verify_realization;

    fn seq(tuples: &[(u32, u32)]) -> Sequence {
        Sequence::from_tuples(tuples.iter().map(|&(a, b)| DegreeTuple::new(a, b)))
    }

    fn example1() -> Sequence {
        parse_sequence("0 3\n0 1\n1 2\n2 3\n4 4\n1 1\n1 0\n2 0\n3 0").unwrap()
    }

    #[test]
    fn bounds_match_position_formula() {
        assert_eq!(lemma4_bounds(9, 2, 3, 5), (4, 4));
        assert_eq!(lemma4_bounds(9, 2, 3, 1), (0, 7));
        assert_eq!(lemma4_bounds(9, 2, 3, 9), (6, 0));
    }

    #[test]
    fn bounding_graph_of_example1() {
        let bg = build_bounding_graph(&example1());
        assert_eq!(bg.num_streams(), 4);
        // stream (4|4), label 5, fits only position 5
        let heavy = bg.streams().iter().position(|e| e.label == 5).unwrap();
        let fits: Vec<usize> = bg
            .positions()
            .iter()
            .zip(bg.adjacency())
            .filter(|(_, row)| row.contains(&heavy))
            .map(|((i, _), _)| *i)
            .collect();
        assert_eq!(fits, vec![5]);
        // the light streams (1|2) and (1|1) fit every position 3..=6
        for label in [3u32, 6] {
            let j = bg.streams().iter().position(|e| e.label == label).unwrap();
            let count = bg.adjacency().iter().filter(|row| row.contains(&j)).count();
            assert_eq!(count, 4);
        }
        assert!(!bg.has_isolated_stream());
        assert!(has_perfect_matching(&bg));
        assert_eq!(count_perfect_matchings(&bg, 10).unwrap(), 6);
    }

    #[test]
    fn isolated_stream_is_unmatched() {
        // (3|3) exceeds every position bound once n - s = 3
        let s = seq(&[(0, 3), (3, 3), (2, 0), (2, 0), (2, 0)]).canonical_sort();
        let bg = build_bounding_graph(&s);
        assert!(bg.has_isolated_stream());
        assert!(!has_perfect_matching(&bg));
    }

    #[test]
    fn complete_bipartite_has_matching() {
        let s = seq(&[(0, 2), (0, 2), (1, 1), (1, 1), (2, 0), (2, 0)]).canonical_sort();
        let bg = build_bounding_graph(&s);
        assert!(has_perfect_matching(&bg));
    }

    #[test]
    fn matching_sampler_is_uniform() {
        let bg = build_bounding_graph(&example1());
        let total = count_perfect_matchings(&bg, 10).unwrap();
        assert_eq!(total, 6);
        let draws = 12_000u64;
        let mut freq = std::collections::HashMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..draws {
            let order = sample_order_uniform(&bg, 10, &mut rng).unwrap();
            *freq.entry(order).or_insert(0u64) += 1;
        }
        assert_eq!(freq.len(), total as usize);
        // chi-square, 5 degrees of freedom, 99.9% quantile 20.5
        let expected = draws as f64 / total as f64;
        let chi2: f64 = freq
            .values()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 20.5, "chi-square {chi2} too large for a uniform sampler");
    }

    #[test]
    fn sampler_respects_single_edge_graph() {
        let s = seq(&[(0, 1), (1, 1), (1, 0)]);
        let bg = build_bounding_graph(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(sample_order_uniform(&bg, 10, &mut rng).unwrap(), vec![2]);
    }

    #[test]
    fn sampler_cap_is_enforced() {
        let tuples: Vec<(u32, u32)> = std::iter::once((0, 11))
            .chain(std::iter::repeat((1, 1)).take(11))
            .chain(std::iter::once((11, 0)))
            .collect();
        // 11 streams exceed a cap of 10
        let s = seq(&tuples).canonical_sort();
        let bg = build_bounding_graph(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(matches!(
            sample_order_uniform(&bg, 10, &mut rng),
            Err(SampleError::CapExceeded { streams: 11, cap: 10 })
        ));
    }

    #[test]
    fn opposed_strategy_always_realizes_opposed_sequences() {
        let s = seq(&[(0, 2), (0, 2), (1, 2), (2, 2), (3, 0), (2, 0)]);
        for t in 0..50 {
            let report = run_randomized(&s, RandStrategy::OpposedPermutation, 1, t).unwrap();
            assert_eq!(report.outcome, Outcome::Realizable, "trial seed {t}");
            assert!(verify_realization(report.witness.as_ref().unwrap(), &s));
        }
    }

    #[test]
    fn seeded_trials_are_deterministic() {
        let s = example1();
        for strategy in RandStrategy::all() {
            let a = run_randomized(&s, strategy, 16, 42).unwrap();
            let b = run_randomized(&s, strategy, 16, 42).unwrap();
            assert_eq!(a, b, "strategy {strategy}");
        }
    }

    #[test]
    fn unrealizable_fails_every_variant() {
        let s = seq(&[(0, 2), (2, 0)]);
        for strategy in RandStrategy::all() {
            let tally = success_tally(&s, strategy, 64, 3).unwrap();
            assert_eq!(tally.successes, 0, "strategy {strategy}");
        }
    }

    #[test]
    fn witnesses_from_all_variants_verify() {
        let s = example1();
        for strategy in RandStrategy::all() {
            let report = run_randomized(&s, strategy, 200, 7).unwrap();
            if let Some(w) = &report.witness {
                assert!(verify_realization(w, &s), "strategy {strategy}");
            }
        }
    }
}

//! The opposed relation, the minimal-candidate set driving the recursive
//! exact solver, the greedy lexmax strategy, and two dedicated solvers for
//! forest sequences.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::seq::{Dag, DegreeTuple, Sequence};
use crate::topo::realize_source_sink;

/// The opposed partial order: `t1 <= t2` iff `t1.a <= t2.a` and
/// `t1.b >= t2.b`. Reflexive, transitive and antisymmetric, but not total.
pub fn opposed_leq(t1: DegreeTuple, t2: DegreeTuple) -> bool {
    t1.a <= t2.a && t1.b >= t2.b
}

/// Strict variant of [`opposed_leq`].
pub fn opposed_lt(t1: DegreeTuple, t2: DegreeTuple) -> bool {
    t1 != t2 && opposed_leq(t1, t2)
}

/// One candidate value from the minimal set: a stream tuple value with a
/// representative label (the smallest) and how often the value occurs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VminMember {
    pub tuple: DegreeTuple,
    pub label: u32,
    pub multiplicity: usize,
}

/// The stream tuples that are minimal in the opposed order and whose
/// indegree fits the current source count, deduplicated by value and listed
/// in decreasing lexicographic order. These are exactly the candidates the
/// exact solver has to branch over.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VminSet {
    members: Vec<VminMember>,
}

impl VminSet {
    pub fn members(&self) -> &[VminMember] {
        &self.members
    }

    pub fn values(&self) -> Vec<DegreeTuple> {
        self.members.iter().map(|m| m.tuple).collect()
    }

    /// Number of distinct candidate values.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of candidate tuples counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.members.iter().map(|m| m.multiplicity).sum()
    }

    /// The lexicographically largest member, when any.
    pub fn lexmax(&self) -> Option<&VminMember> {
        self.members.first()
    }
}

/// Candidate computation tolerating sequences without sources (giving the
/// empty set, which certifies unrealizability of a nonempty non-source-sink
/// sequence).
pub(crate) fn vmin_unchecked(seq: &Sequence) -> VminSet {
    debug_assert!(seq.is_canonical(), "contract: canonically sorted sequence");
    let k = seq.num_sources() as u32;
    let n = seq.n();
    let q = seq.num_sources();
    let s = seq.num_sinks();
    let streams = &seq.entries()[q..n - s];
    let mut members: Vec<VminMember> = Vec::new();
    'outer: for e in streams {
        if e.tuple.a > k {
            continue;
        }
        for other in streams {
            if opposed_lt(other.tuple, e.tuple) {
                continue 'outer;
            }
        }
        match members.iter_mut().find(|m| m.tuple == e.tuple) {
            Some(m) => {
                m.multiplicity += 1;
                m.label = m.label.min(e.label);
            }
            None => members.push(VminMember { tuple: e.tuple, label: e.label, multiplicity: 1 }),
        }
    }
    members.sort_by(|x, y| y.tuple.cmp(&x.tuple));
    VminSet { members }
}

/// Computes the minimal candidate set of a canonical, zero-free sequence
/// that has at least one source and at least one stream tuple.
pub fn compute_vmin(seq: &Sequence) -> VminSet {
    assert!(seq.num_streams() > 0, "compute_vmin requires a stream tuple");
    assert!(seq.num_sources() > 0, "compute_vmin requires a source tuple");
    vmin_unchecked(seq)
}

/// Applies one reduction step: connects the chosen stream tuple to its
/// `a` largest sources, zeroes its indegree, strips spent tuples and
/// re-canonicalizes. Returns the reduced sequence and the forced arcs.
///
/// Panics if `label` is not a stream tuple or its indegree exceeds the
/// source count.
pub fn reduce_by_tuple(seq: &Sequence, label: u32) -> (Sequence, Vec<(u32, u32)>) {
    debug_assert!(seq.is_canonical(), "contract: canonically sorted sequence");
    let chosen = seq.entry_by_label(label).expect("label present");
    assert!(chosen.tuple.is_stream(), "reduce_by_tuple requires a stream tuple");
    let demand = chosen.tuple.a as usize;
    assert!(demand <= seq.num_sources(), "indegree exceeds source count");

    let mut arcs = Vec::with_capacity(demand);
    let mut entries = Vec::with_capacity(seq.n());
    for (pos, e) in seq.entries().iter().enumerate() {
        let mut tuple = e.tuple;
        if pos < demand {
            // canonical order: the first `demand` entries are the largest sources
            arcs.push((e.label, label));
            tuple.b -= 1;
        }
        if e.label == label {
            tuple.a = 0;
        }
        if !tuple.is_zero() {
            entries.push(crate::seq::Entry { label: e.label, tuple });
        }
    }
    (Sequence::from_entries(entries).canonical_sort(), arcs)
}

/// Search outcome of a solver run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    /// A witness realization was found.
    Realizable,
    /// For complete strategies: a proof of non-realizability. For
    /// single-path or randomized strategies: this run did not realize the
    /// sequence, nothing more.
    Unrealizable,
    /// The node budget ran out before the search tree was exhausted.
    BudgetExhausted,
}

/// Which strategy produced a report.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Exact(ChildOrder),
    Lexmax,
    LexmaxWithRules,
    Forest(ForestPicker),
    ForestSwaps,
    StreamPermutation,
    BoundingPermutation,
    OpposedPermutation,
    OpposedPermutationRules,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Strategy::Exact(ChildOrder::LexmaxFirst) => "exact",
            Strategy::Exact(ChildOrder::LexminFirst) => "exact-lexmin-first",
            Strategy::Lexmax => "lexmax",
            Strategy::LexmaxWithRules => "lexmax-rules",
            Strategy::Forest(ForestPicker::First) => "forest-first",
            Strategy::Forest(ForestPicker::Lexmax) => "forest-lexmax",
            Strategy::Forest(ForestPicker::Random { .. }) => "forest-random",
            Strategy::ForestSwaps => "forest-swaps",
            Strategy::StreamPermutation => "rand1",
            Strategy::BoundingPermutation => "rand2",
            Strategy::OpposedPermutation => "rand3",
            Strategy::OpposedPermutationRules => "rand4",
        };
        f.write_str(name)
    }
}

/// Child exploration order of the exact solver.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChildOrder {
    /// Decreasing lexicographic order; the first explored path coincides
    /// with the greedy lexmax path.
    LexmaxFirst,
    /// Increasing lexicographic order.
    LexminFirst,
}

/// Tuple-choice policy for [`solve_forest`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ForestPicker {
    /// Smallest label among admissible stream tuples.
    First,
    /// Lexicographically largest admissible value, smallest label.
    Lexmax,
    /// Uniform among admissible tuples, driven by the seed.
    Random { seed: u64 },
}

/// Search statistics attached to every report.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SolveStats {
    pub nodes_expanded: u64,
    pub max_depth: usize,
    pub strategy: Strategy,
    pub seed: Option<u64>,
    pub trials: u64,
}

/// Result of a solver run: outcome, witness (iff realizable), the order in
/// which stream vertices were placed, and statistics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub witness: Option<Dag>,
    /// Labels of stream tuples in placement order along the successful
    /// path; empty for strategies that do not place streams one by one.
    pub stream_order: Vec<u32>,
    pub stats: SolveStats,
}

impl SolveReport {
    pub fn realizable(&self) -> bool {
        self.outcome == Outcome::Realizable
    }

    pub(crate) fn failure(strategy: Strategy, nodes: u64, depth: usize) -> Self {
        SolveReport {
            outcome: Outcome::Unrealizable,
            witness: None,
            stream_order: Vec::new(),
            stats: SolveStats {
                nodes_expanded: nodes,
                max_depth: depth,
                strategy,
                seed: None,
                trials: 1,
            },
        }
    }
}

enum DfsResult {
    Realized { arcs: Vec<(u32, u32)>, stream_order: Vec<u32> },
    Failed,
    OutOfBudget,
}

struct ExactSearch {
    child_order: ChildOrder,
    budget: Option<u64>,
    nodes: u64,
    max_depth: usize,
    failed: HashSet<Vec<DegreeTuple>>,
}

impl ExactSearch {
    fn dfs(&mut self, seq: &Sequence, depth: usize) -> DfsResult {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                return DfsResult::OutOfBudget;
            }
        }
        if seq.is_source_sink() {
            return match realize_source_sink(seq) {
                Some(dag) => DfsResult::Realized {
                    arcs: dag.arcs().to_vec(),
                    stream_order: Vec::new(),
                },
                None => DfsResult::Failed,
            };
        }
        if seq.num_sources() == 0 {
            // a nonempty dag needs a source vertex
            return DfsResult::Failed;
        }
        let vmin = vmin_unchecked(seq);
        if vmin.is_empty() {
            return DfsResult::Failed;
        }
        let key = seq.value_key();
        if self.failed.contains(&key) {
            return DfsResult::Failed;
        }
        let mut members = vmin.members.clone();
        if self.child_order == ChildOrder::LexminFirst {
            members.reverse();
        }
        for member in &members {
            let (reduced, mut arcs) = reduce_by_tuple(seq, member.label);
            match self.dfs(&reduced, depth + 1) {
                DfsResult::Realized { arcs: mut rest, stream_order: mut order } => {
                    arcs.append(&mut rest);
                    let mut stream_order = vec![member.label];
                    stream_order.append(&mut order);
                    return DfsResult::Realized { arcs, stream_order };
                }
                DfsResult::Failed => {}
                DfsResult::OutOfBudget => return DfsResult::OutOfBudget,
            }
        }
        self.failed.insert(key);
        DfsResult::Failed
    }
}

/// Depth-first exact decision procedure: branches over the minimal
/// candidate set at every node, solves source-sink leaves directly, and
/// memoizes failed tuple multisets. Complete: `Unrealizable` is a proof.
///
/// With [`ChildOrder::LexmaxFirst`] the first explored leaf path is exactly
/// the greedy lexmax path, so the returned stream order doubles as the
/// canonical order behind the opposed-distance metric.
pub fn solve_exact(seq: &Sequence, child_order: ChildOrder, node_budget: Option<u64>) -> SolveReport {
    let prepared = seq.canonical_sort();
    debug_assert!(prepared.is_balanced() && prepared.is_zero_free(), "contract: validated, zero-free");
    let mut search = ExactSearch {
        child_order,
        budget: node_budget,
        nodes: 0,
        max_depth: 0,
        failed: HashSet::new(),
    };
    let strategy = Strategy::Exact(child_order);
    match search.dfs(&prepared, 0) {
        DfsResult::Realized { arcs, stream_order } => SolveReport {
            outcome: Outcome::Realizable,
            witness: Some(Dag::new(seq.n(), arcs)),
            stream_order,
            stats: SolveStats {
                nodes_expanded: search.nodes,
                max_depth: search.max_depth,
                strategy,
                seed: None,
                trials: 1,
            },
        },
        DfsResult::Failed => SolveReport::failure(strategy, search.nodes, search.max_depth),
        DfsResult::OutOfBudget => SolveReport {
            outcome: Outcome::BudgetExhausted,
            witness: None,
            stream_order: Vec::new(),
            stats: SolveStats {
                nodes_expanded: search.nodes,
                max_depth: search.max_depth,
                strategy,
                seed: None,
                trials: 1,
            },
        },
    }
}

/// The greedy single-path strategy: always reduce by the lexicographically
/// largest candidate, no backtracking. `Unrealizable` only means the
/// sequence is not realized by this strategy.
pub fn solve_lexmax(seq: &Sequence) -> SolveReport {
    let mut current = seq.canonical_sort();
    debug_assert!(current.is_balanced() && current.is_zero_free(), "contract: validated, zero-free");
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    let mut stream_order = Vec::new();
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        if current.is_source_sink() {
            let depth = stream_order.len();
            return match realize_source_sink(&current) {
                Some(leaf) => {
                    arcs.extend_from_slice(leaf.arcs());
                    SolveReport {
                        outcome: Outcome::Realizable,
                        witness: Some(Dag::new(seq.n(), arcs)),
                        stream_order,
                        stats: SolveStats {
                            nodes_expanded: nodes,
                            max_depth: depth,
                            strategy: Strategy::Lexmax,
                            seed: None,
                            trials: 1,
                        },
                    }
                }
                None => SolveReport::failure(Strategy::Lexmax, nodes, depth),
            };
        }
        if current.num_sources() == 0 {
            return SolveReport::failure(Strategy::Lexmax, nodes, stream_order.len());
        }
        let vmin = vmin_unchecked(&current);
        let Some(choice) = vmin.lexmax().copied() else {
            return SolveReport::failure(Strategy::Lexmax, nodes, stream_order.len());
        };
        let (reduced, mut step_arcs) = reduce_by_tuple(&current, choice.label);
        arcs.append(&mut step_arcs);
        stream_order.push(choice.label);
        current = reduced;
    }
}

/// True iff the stream tuples can be arranged into a chain of the opposed
/// order; such sequences are decided exactly by the lexmax strategy.
pub fn is_opposed_sequence(seq: &Sequence) -> bool {
    let mut streams: Vec<DegreeTuple> = seq.tuples().filter(|t| t.is_stream()).collect();
    streams.sort_by(|x, y| x.a.cmp(&y.a).then(y.b.cmp(&x.b)));
    streams.windows(2).all(|w| opposed_leq(w[0], w[1]))
}

/// Exact solver for forest sequences (total indegree at most `n - 1`): any
/// admissible stream tuple may be reduced, so a single greedy pass decides.
/// The picker only changes the witness, never the decision.
///
/// Panics if the sequence is not a forest sequence.
pub fn solve_forest(seq: &Sequence, picker: ForestPicker) -> SolveReport {
    assert!(seq.is_forest(), "solve_forest requires total indegree <= n - 1");
    let mut current = seq.canonical_sort();
    debug_assert!(current.is_balanced() && current.is_zero_free(), "contract: validated, zero-free");
    let mut rng = match picker {
        ForestPicker::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let seed = match picker {
        ForestPicker::Random { seed } => Some(seed),
        _ => None,
    };
    let strategy = Strategy::Forest(picker);
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    let mut stream_order = Vec::new();
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        if current.is_source_sink() {
            let depth = stream_order.len();
            return match realize_source_sink(&current) {
                Some(leaf) => {
                    arcs.extend_from_slice(leaf.arcs());
                    SolveReport {
                        outcome: Outcome::Realizable,
                        witness: Some(Dag::new(seq.n(), arcs)),
                        stream_order,
                        stats: SolveStats {
                            nodes_expanded: nodes,
                            max_depth: depth,
                            strategy,
                            seed,
                            trials: 1,
                        },
                    }
                }
                None => {
                    let mut report = SolveReport::failure(strategy, nodes, depth);
                    report.stats.seed = seed;
                    report
                }
            };
        }
        let k = current.num_sources() as u32;
        let q = current.num_sources();
        let s = current.num_sinks();
        let candidates: Vec<crate::seq::Entry> = current.entries()[q..current.n() - s]
            .iter()
            .filter(|e| e.tuple.a <= k)
            .copied()
            .collect();
        if candidates.is_empty() {
            let mut report = SolveReport::failure(strategy, nodes, stream_order.len());
            report.stats.seed = seed;
            return report;
        }
        let choice = match picker {
            ForestPicker::First => candidates.iter().min_by_key(|e| e.label).copied().unwrap(),
            ForestPicker::Lexmax => candidates
                .iter()
                .max_by(|x, y| x.tuple.cmp(&y.tuple).then(y.label.cmp(&x.label)))
                .copied()
                .unwrap(),
            ForestPicker::Random { .. } => {
                let rng = rng.as_mut().expect("rng present for random picker");
                candidates[rng.random_range(0..candidates.len())]
            }
        };
        let (reduced, mut step_arcs) = reduce_by_tuple(&current, choice.label);
        arcs.append(&mut step_arcs);
        stream_order.push(choice.label);
        current = reduced;
    }
}

// ---- forest realization via digraph realization plus cycle-breaking ----

fn weak_components(n: usize, arcs: &[(u32, u32)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for &(u, v) in arcs {
        let (ru, rv) = (find(&mut parent, u as usize - 1), find(&mut parent, v as usize - 1));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

fn find_directed_cycle_arc(n: usize, arcs: &[(u32, u32)]) -> Option<(u32, u32)> {
    // iterative coloring DFS; returns an arc lying on some directed cycle
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in arcs {
        adj[u as usize - 1].push(v);
    }
    let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for start in 1..=n as u32 {
        if state[start as usize - 1] != 0 {
            continue;
        }
        stack.push((start, 0));
        state[start as usize - 1] = 1;
        while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
            let ui = u as usize - 1;
            if *idx < adj[ui].len() {
                let v = adj[ui][*idx];
                *idx += 1;
                let vi = v as usize - 1;
                match state[vi] {
                    0 => {
                        state[vi] = 1;
                        stack.push((v, 0));
                    }
                    1 => return Some((u, v)),
                    _ => {}
                }
            } else {
                state[ui] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Realizes a forest sequence by first building an (arbitrary, possibly
/// cyclic) digraph realization, then breaking each directed cycle with a
/// two-arc swap against an acyclic weak component. Exact for forest
/// sequences.
///
/// Panics if the sequence is not a forest sequence, or if a cycle is found
/// without a second weak component to swap against (impossible for forest
/// sequences).
pub fn solve_forest_via_swaps(seq: &Sequence) -> SolveReport {
    assert!(seq.is_forest(), "solve_forest_via_swaps requires total indegree <= n - 1");
    debug_assert!(seq.is_balanced() && seq.is_zero_free(), "contract: validated, zero-free");
    let strategy = Strategy::ForestSwaps;
    let n = seq.n();
    let mut nodes = 1u64;

    // digraph realization, largest outdegree first: connect each processed
    // vertex to the vertices with largest residual indegree, self excluded
    let mut order: Vec<&crate::seq::Entry> = seq.entries().iter().collect();
    order.sort_by(|x, y| y.tuple.b.cmp(&x.tuple.b).then(x.label.cmp(&y.label)));
    let mut residual_a = vec![0u32; n + 1];
    let mut pool: BTreeSet<(u32, Reverse<u32>)> = BTreeSet::new();
    for e in seq.entries() {
        residual_a[e.label as usize] = e.tuple.a;
        if e.tuple.a > 0 {
            pool.insert((e.tuple.a, Reverse(e.label)));
        }
    }
    let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(seq.m() as usize);
    for e in order {
        if e.tuple.b == 0 {
            break;
        }
        nodes += 1;
        let own = (residual_a[e.label as usize], Reverse(e.label));
        let self_present = pool.remove(&own);
        if pool.len() < e.tuple.b as usize {
            return SolveReport::failure(strategy, nodes, 0);
        }
        let mut taken = Vec::with_capacity(e.tuple.b as usize);
        for _ in 0..e.tuple.b {
            let top = *pool.iter().next_back().unwrap();
            pool.remove(&top);
            taken.push(top);
        }
        for &(a, Reverse(label)) in &taken {
            arcs.push((e.label, label));
            residual_a[label as usize] = a - 1;
            if a > 1 {
                pool.insert((a - 1, Reverse(label)));
            }
        }
        if self_present {
            pool.insert(own);
        }
    }
    if !pool.is_empty() {
        return SolveReport::failure(strategy, nodes, 0);
    }

    // break directed cycles; each swap merges the cycle component with an
    // acyclic one, so at most n swaps happen
    let mut swaps = 0usize;
    while let Some((u, v)) = find_directed_cycle_arc(n, &arcs) {
        assert!(swaps <= n, "cycle breaking exceeded the swap bound");
        let comps = weak_components(n, &arcs);
        let cycle_comp = comps[u as usize - 1];
        let donor = arcs
            .iter()
            .copied()
            .filter(|&(x, _)| comps[x as usize - 1] != cycle_comp)
            .find(|&(x, _)| {
                // prefer an arc from a component without directed cycles
                let comp = comps[x as usize - 1];
                let sub: Vec<(u32, u32)> = arcs
                    .iter()
                    .copied()
                    .filter(|&(p, _)| comps[p as usize - 1] == comp)
                    .collect();
                find_directed_cycle_arc(n, &sub).is_none()
            });
        let (x, y) = donor.expect("forest sequences always leave an acyclic component");
        let pos_uv = arcs.iter().position(|&a| a == (u, v)).unwrap();
        arcs.swap_remove(pos_uv);
        let pos_xy = arcs.iter().position(|&a| a == (x, y)).unwrap();
        arcs.swap_remove(pos_xy);
        arcs.push((u, y));
        arcs.push((x, v));
        swaps += 1;
        nodes += 1;
    }

    SolveReport {
        outcome: Outcome::Realizable,
        witness: Some(Dag::new(n, arcs)),
        stream_order: Vec::new(),
        stats: SolveStats {
            nodes_expanded: nodes,
            max_depth: swaps,
            strategy,
            seed: None,
            trials: 1,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::parse_sequence;
    use crate::topo::verify_realization;

    fn seq(tuples: &[(u32, u32)]) -> Sequence {
        Sequence::from_tuples(tuples.iter().map(|&(a, b)| DegreeTuple::new(a, b)))
    }

    fn t(a: u32, b: u32) -> DegreeTuple {
        DegreeTuple::new(a, b)
    }

    fn example1() -> Sequence {
        parse_sequence("0 3\n0 1\n1 2\n2 3\n4 4\n1 1\n1 0\n2 0\n3 0").unwrap()
    }

    fn example2_s1() -> Sequence {
        seq(&[
            (0, 5), (0, 5), (0, 5), (0, 2), (0, 2),
            (5, 5), (5, 5), (2, 2), (2, 2),
            (1, 0), (1, 0), (2, 0), (6, 0), (9, 0),
        ])
    }

    fn example2_s2() -> Sequence {
        seq(&[
            (0, 5), (0, 5), (0, 5), (0, 2), (0, 2),
            (5, 5), (5, 5), (2, 2), (2, 2),
            (6, 0), (6, 0), (7, 0),
        ])
    }

    #[test]
    fn opposed_relation_examples() {
        assert!(opposed_leq(t(1, 3), t(2, 2)));
        assert!(!opposed_leq(t(2, 2), t(3, 3)));
        assert!(!opposed_leq(t(3, 3), t(2, 2)));
        assert!(opposed_leq(t(2, 2), t(2, 2)));
        assert!(!opposed_lt(t(2, 2), t(2, 2)));
    }

    #[test]
    fn vmin_example1_root() {
        let vmin = compute_vmin(&example1());
        assert_eq!(vmin.values(), vec![t(2, 3), t(1, 2)]);
    }

    #[test]
    fn vmin_single_candidate_worked_reduction() {
        let s = seq(&[(0, 3), (0, 3), (2, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        let vmin = compute_vmin(&s);
        assert_eq!(vmin.values(), vec![t(2, 2)]);
        assert_eq!(vmin.len(), 1);
    }

    #[test]
    fn vmin_example2_root() {
        let vmin = compute_vmin(&example2_s2().canonical_sort());
        assert_eq!(vmin.values(), vec![t(5, 5), t(2, 2)]);
    }

    #[test]
    fn reduce_worked_example_first_step() {
        let s = seq(&[(0, 3), (0, 3), (2, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        let label = compute_vmin(&s).members()[0].label;
        let (reduced, arcs) = reduce_by_tuple(&s, label);
        let expected = seq(&[(0, 2), (0, 2), (0, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        assert_eq!(reduced.value_key(), expected.value_key());
        assert_eq!(arcs.len(), 2);
    }

    #[test]
    fn reduce_worked_example_second_step() {
        let s = seq(&[(0, 2), (0, 2), (0, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        let label = compute_vmin(&s).members()[0].label;
        let (reduced, _) = reduce_by_tuple(&s, label);
        let expected = seq(&[(0, 1), (0, 1), (0, 1), (0, 3), (1, 0), (2, 0), (3, 0)]);
        assert_eq!(reduced.value_key(), expected.value_key());
        assert!(reduced.is_source_sink());
    }

    #[test]
    fn reduce_strips_spent_source() {
        let s = seq(&[(0, 1), (1, 1)]);
        let (reduced, arcs) = reduce_by_tuple(&s, 2);
        assert_eq!(reduced.n(), 1);
        assert_eq!(reduced.entries()[0].tuple, t(0, 1));
        assert_eq!(reduced.entries()[0].label, 2);
        assert_eq!(arcs, vec![(1, 2)]);
    }

    #[test]
    fn exact_example1_realizable_lexmax_branch_fails_first() {
        let s = example1();
        let report = solve_exact(&s, ChildOrder::LexmaxFirst, None);
        assert_eq!(report.outcome, Outcome::Realizable);
        let witness = report.witness.as_ref().unwrap();
        assert!(verify_realization(witness, &s));
        // the first stream placed on the successful path is (1|2), label 3:
        // the lexmax-first branch (2|3) was explored and exhausted before it
        let first = report.stream_order[0];
        assert_eq!(s.entry_by_label(first).unwrap().tuple, t(1, 2));
        assert!(report.stats.nodes_expanded > report.stream_order.len() as u64 + 1);
    }

    #[test]
    fn exact_empty_sequence() {
        let report = solve_exact(&Sequence::empty(), ChildOrder::LexmaxFirst, None);
        assert_eq!(report.outcome, Outcome::Realizable);
        assert_eq!(report.witness.unwrap().arcs().len(), 0);
    }

    #[test]
    fn exact_example2_both_realizable() {
        for s in [example2_s1(), example2_s2()] {
            let report = solve_exact(&s, ChildOrder::LexmaxFirst, None);
            assert_eq!(report.outcome, Outcome::Realizable);
            assert!(verify_realization(report.witness.as_ref().unwrap(), &s));
        }
    }

    #[test]
    fn exact_budget_exhaustion_reported() {
        let report = solve_exact(&example1(), ChildOrder::LexmaxFirst, Some(2));
        assert_eq!(report.outcome, Outcome::BudgetExhausted);
        assert!(report.witness.is_none());
    }

    #[test]
    fn lexmax_example1_fails() {
        assert_eq!(solve_lexmax(&example1()).outcome, Outcome::Unrealizable);
    }

    #[test]
    fn lexmax_example2_separates_s1_s2() {
        assert_eq!(solve_lexmax(&example2_s2()).outcome, Outcome::Realizable);
        assert_eq!(solve_lexmax(&example2_s1()).outcome, Outcome::Unrealizable);
        let s2 = example2_s2();
        let report = solve_lexmax(&s2);
        assert!(verify_realization(report.witness.as_ref().unwrap(), &s2));
    }

    #[test]
    fn lexmax_worked_reduction_sequence() {
        let s = seq(&[(0, 3), (0, 3), (2, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        let report = solve_lexmax(&s);
        assert_eq!(report.outcome, Outcome::Realizable);
        assert!(verify_realization(report.witness.as_ref().unwrap(), &s));
    }

    #[test]
    fn opposed_sequence_detection() {
        let not_opposed = seq(&[(0, 3), (0, 3), (2, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        assert!(!is_opposed_sequence(&not_opposed));
        // constant outdegree two among streams
        let obdd_like = seq(&[(0, 2), (0, 2), (1, 2), (2, 2), (3, 0), (2, 0), (1, 0)]);
        assert!(is_opposed_sequence(&obdd_like));
        assert!(is_opposed_sequence(&seq(&[(0, 1), (1, 1), (1, 0)])));
        assert!(is_opposed_sequence(&seq(&[(0, 1), (1, 0)])));
    }

    #[test]
    fn forest_three_vertex_path() {
        let s = seq(&[(0, 1), (1, 1), (1, 0)]);
        for picker in [ForestPicker::First, ForestPicker::Lexmax, ForestPicker::Random { seed: 7 }] {
            let report = solve_forest(&s, picker);
            assert_eq!(report.outcome, Outcome::Realizable);
            let dag = report.witness.unwrap();
            assert_eq!(dag.sorted_arcs(), vec![(1, 2), (2, 3)]);
        }
    }

    #[test]
    #[should_panic(expected = "forest")]
    fn forest_guard_rejects_dense() {
        let _ = solve_forest(&seq(&[(0, 2), (1, 1), (1, 1), (2, 0)]), ForestPicker::First);
    }

    #[test]
    #[should_panic(expected = "forest")]
    fn forest_swaps_guard_rejects_two_cycle_demand() {
        let _ = solve_forest_via_swaps(&seq(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn forest_swaps_path_without_swap() {
        let s = seq(&[(0, 1), (1, 1), (1, 0)]);
        let report = solve_forest_via_swaps(&s);
        assert_eq!(report.outcome, Outcome::Realizable);
        assert!(verify_realization(report.witness.as_ref().unwrap(), &s));
    }
}

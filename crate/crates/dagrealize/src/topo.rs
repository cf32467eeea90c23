//! Realization with a prescribed topological order, realization of
//! source-sink sequences, and witness verification.
//!
//! Both realizers are exact for their respective inputs: an ordered sequence
//! is realizable with that topological order if and only if the greedy here
//! succeeds, and a source-sink sequence is realizable if and only if the
//! largest-first pairing succeeds.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::seq::{Dag, Entry, Sequence};

/// A sequence whose entry order declares the intended topological order.
///
/// On construction zero tuples are dropped and all sources are moved to the
/// front, sorted by non-increasing outdegree; a realization honoring a given
/// order exists iff one exists with its sources fronted this way.
#[derive(Clone, Debug)]
pub struct OrderedSequence {
    seq: Sequence,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum OrderError {
    #[error("order is not a permutation of the sequence labels")]
    NotAPermutation,
}

impl OrderedSequence {
    /// Takes the entry order of `seq` as the intended topological order.
    pub fn from_arrangement(seq: &Sequence) -> Self {
        let mut sources: Vec<Entry> = Vec::with_capacity(seq.num_sources());
        let mut rest: Vec<Entry> = Vec::with_capacity(seq.n());
        for e in seq.entries() {
            if e.tuple.is_zero() {
                continue;
            }
            if e.tuple.is_source() {
                sources.push(*e);
            } else {
                rest.push(*e);
            }
        }
        sources.sort_by(|x, y| y.tuple.b.cmp(&x.tuple.b));
        sources.append(&mut rest);
        OrderedSequence { seq: Sequence::from_entries(sources) }
    }

    /// Arranges `seq` by the given labels (a bijection on its labels), then
    /// normalizes as in [`OrderedSequence::from_arrangement`].
    pub fn from_labels(seq: &Sequence, order: &[u32]) -> Result<Self, OrderError> {
        if order.len() != seq.n() {
            return Err(OrderError::NotAPermutation);
        }
        let mut entries = Vec::with_capacity(order.len());
        let mut seen = std::collections::HashSet::with_capacity(order.len());
        for &label in order {
            if !seen.insert(label) {
                return Err(OrderError::NotAPermutation);
            }
            let e = seq.entry_by_label(label).ok_or(OrderError::NotAPermutation)?;
            entries.push(*e);
        }
        Ok(Self::from_arrangement(&Sequence::from_entries(entries)))
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }
}

// Active sources keyed for "largest residual b, ties by smaller position":
// the set's last element is the one to take.
type SourcePool = BTreeSet<(u32, Reverse<u32>)>;

fn take_largest(pool: &mut SourcePool, count: usize, out: &mut Vec<(u32, Reverse<u32>)>) -> bool {
    if pool.len() < count {
        return false;
    }
    out.clear();
    for _ in 0..count {
        let top = *pool.iter().next_back().expect("size checked");
        pool.remove(&top);
        out.push(top);
    }
    true
}

/// Realizes the sequence with its prescribed topological order, or reports
/// that no realization with this order exists. The witness uses the input
/// labels; a returned dag always has the prescribed order as a topological
/// order.
pub fn realize_with_order(ordered: &OrderedSequence) -> Option<Dag> {
    let seq = &ordered.seq;
    debug_assert!(seq.is_balanced(), "contract: balanced sequence");
    let n = seq.n();
    let max_label = seq.entries().iter().map(|e| e.label).max().unwrap_or(0) as usize;
    let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(seq.m() as usize);

    // positions of sources currently holding residual out-demand, keyed by
    // (residual b, position); labels looked up on use
    let mut pool: SourcePool = BTreeSet::new();
    let mut label_at = vec![0u32; n];
    for (pos, e) in seq.entries().iter().enumerate() {
        label_at[pos] = e.label;
    }
    let mut taken = Vec::new();

    let entries = seq.entries();
    let mut next = 0usize;
    // fronted source block
    while next < n && entries[next].tuple.is_source() {
        pool.insert((entries[next].tuple.b, Reverse(next as u32)));
        next += 1;
    }
    for pos in next..n {
        let e = entries[pos];
        let demand = e.tuple.a as usize;
        if !take_largest(&mut pool, demand, &mut taken) {
            return None;
        }
        for &(b, Reverse(src_pos)) in &taken {
            arcs.push((label_at[src_pos as usize], e.label));
            if b > 1 {
                pool.insert((b - 1, Reverse(src_pos)));
            }
        }
        // the opened vertex becomes a source carrying its out-demand
        if e.tuple.b > 0 {
            pool.insert((e.tuple.b, Reverse(pos as u32)));
        }
    }
    // Balance forces all residual out-demand to be zero once every
    // in-demand has been served.
    debug_assert!(pool.is_empty() || !seq.is_balanced() || pool.iter().all(|&(b, _)| b == 0));
    if pool.iter().any(|&(b, _)| b > 0) {
        return None;
    }
    Some(Dag::new(max_label.max(n), arcs))
}

/// Realizes a sequence of source and sink tuples only: repeatedly pairs the
/// largest source with the largest residual sinks. Exact for such
/// sequences.
///
/// Panics if a stream tuple is present.
pub fn realize_source_sink(seq: &Sequence) -> Option<Dag> {
    assert!(
        seq.num_streams() == 0,
        "realize_source_sink requires a source-sink sequence"
    );
    debug_assert!(seq.is_balanced(), "contract: balanced sequence");
    let max_label = seq.entries().iter().map(|e| e.label).max().unwrap_or(0) as usize;
    let mut sources: Vec<Entry> = seq
        .entries()
        .iter()
        .copied()
        .filter(|e| e.tuple.is_source())
        .collect();
    // largest outdegree first, ties by smaller label
    sources.sort_by(|x, y| y.tuple.b.cmp(&x.tuple.b).then(x.label.cmp(&y.label)));

    let mut sinks: BTreeSet<(u32, Reverse<u32>)> = seq
        .entries()
        .iter()
        .filter(|e| e.tuple.is_sink())
        .map(|e| (e.tuple.a, Reverse(e.label)))
        .collect();

    let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(seq.m() as usize);
    let mut taken = Vec::new();
    for src in sources {
        if !take_largest(&mut sinks, src.tuple.b as usize, &mut taken) {
            return None;
        }
        for &(a, Reverse(label)) in &taken {
            arcs.push((src.label, label));
            if a > 1 {
                sinks.insert((a - 1, Reverse(label)));
            }
        }
    }
    if !sinks.is_empty() {
        return None;
    }
    Some(Dag::new(max_label.max(seq.n()), arcs))
}

/// True iff `dag` is a simple acyclic realization of `seq`: the labels
/// coincide and every vertex has exactly the demanded in- and outdegree.
pub fn verify_realization(dag: &Dag, seq: &Sequence) -> bool {
    if dag.n_vertices() != seq.n() || !seq.labels_are_compact() {
        return false;
    }
    if !dag.is_simple() || !dag.is_acyclic() {
        return false;
    }
    let (indeg, outdeg) = dag.degrees();
    seq.entries().iter().all(|e| {
        let i = e.label as usize - 1;
        indeg[i] == e.tuple.a && outdeg[i] == e.tuple.b
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{parse_sequence, DegreeTuple};

    fn seq(tuples: &[(u32, u32)]) -> Sequence {
        Sequence::from_tuples(tuples.iter().map(|&(a, b)| DegreeTuple::new(a, b)))
    }

    fn example1() -> Sequence {
        parse_sequence("0 3\n0 1\n1 2\n2 3\n4 4\n1 1\n1 0\n2 0\n3 0").unwrap()
    }

    // Example-1 labels: 1:(0|3) 2:(0|1) 3:(1|2) 4:(2|3) 5:(4|4) 6:(1|1)
    // 7:(1|0) 8:(2|0) 9:(3|0)

    #[test]
    fn prescribed_order_realizable_variant() {
        let s = example1();
        let order = [1, 2, 3, 4, 5, 6, 7, 8, 9];
        let ordered = OrderedSequence::from_labels(&s, &order).unwrap();
        let dag = realize_with_order(&ordered).expect("realizable for this order");
        assert!(verify_realization(&dag, &s));
    }

    #[test]
    fn prescribed_order_unrealizable_variant() {
        let s = example1();
        // stream order (1|1),(1|2),(4|4),(2|3)
        let order = [1, 2, 6, 3, 5, 4, 7, 8, 9];
        let ordered = OrderedSequence::from_labels(&s, &order).unwrap();
        assert!(realize_with_order(&ordered).is_none());
    }

    #[test]
    fn order_normalization_fronts_sources() {
        let s = seq(&[(1, 0), (0, 1), (0, 2), (1, 1)]);
        let ordered = OrderedSequence::from_arrangement(&s);
        let tuples: Vec<_> = ordered.sequence().tuples().collect();
        assert_eq!(tuples[0], DegreeTuple::new(0, 2));
        assert_eq!(tuples[1], DegreeTuple::new(0, 1));
    }

    #[test]
    fn empty_after_strip_realizes_trivially() {
        let (stripped, _) = seq(&[(0, 0)]).strip_zero_tuples();
        let ordered = OrderedSequence::from_arrangement(&stripped);
        let dag = realize_with_order(&ordered).unwrap();
        assert_eq!(dag.arcs().len(), 0);
    }

    #[test]
    fn source_sink_known_realizable() {
        let s = seq(&[(0, 1), (0, 1), (0, 1), (0, 3), (1, 0), (2, 0), (3, 0)]);
        let dag = realize_source_sink(&s).expect("realizable");
        assert!(verify_realization(&dag, &s));
    }

    #[test]
    fn source_sink_parallel_arc_needed() {
        assert!(realize_source_sink(&seq(&[(0, 2), (2, 0)])).is_none());
    }

    #[test]
    fn source_sink_unique_realization() {
        let s = seq(&[(0, 2), (1, 0), (1, 0)]);
        let dag = realize_source_sink(&s).unwrap();
        assert_eq!(dag.sorted_arcs(), vec![(1, 2), (1, 3)]);
        assert!(verify_realization(&dag, &s));
    }

    #[test]
    #[should_panic(expected = "source-sink")]
    fn source_sink_rejects_streams() {
        let _ = realize_source_sink(&seq(&[(0, 1), (1, 1), (1, 0)]));
    }

    #[test]
    fn verify_rejects_loop_and_empty_matches() {
        let empty = Sequence::empty();
        assert!(verify_realization(&Dag::new(0, vec![]), &empty));
        let s = seq(&[(1, 1)]);
        assert!(!verify_realization(&Dag::new(1, vec![(1, 1)]), &s));
    }

    #[test]
    fn verify_checks_degrees() {
        let s = seq(&[(0, 2), (1, 0), (1, 0)]);
        assert!(verify_realization(&Dag::new(3, vec![(1, 2), (1, 3)]), &s));
        assert!(!verify_realization(&Dag::new(3, vec![(1, 2)]), &s));
    }
}

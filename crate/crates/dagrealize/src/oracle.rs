//! Brute-force reference deciders for small instances, built solely on the
//! prescribed-order realizer. They stay independent of the recursive exact
//! solver so the two can check each other.

use crate::seq::{DegreeTuple, Sequence};
use crate::topo::{realize_with_order, OrderedSequence};

// next lexicographic permutation of a slice of labels keyed by tuple value
fn next_multiset_permutation(labels: &mut [u32], key: impl Fn(u32) -> DegreeTuple) -> bool {
    let n = labels.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && key(labels[i - 1]) >= key(labels[i]) {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while key(labels[j]) <= key(labels[i - 1]) {
        j -= 1;
    }
    labels.swap(i - 1, j);
    labels[i..].reverse();
    true
}

fn try_orders(seq: &Sequence, interleave_sinks: bool) -> bool {
    let canonical = seq.canonical_sort();
    let key = |label: u32| canonical.entry_by_label(label).expect("label").tuple;
    let q = canonical.num_sources();
    let s = canonical.num_sinks();
    let n = canonical.n();
    let source_labels: Vec<u32> = canonical.entries()[..q].iter().map(|e| e.label).collect();
    let mut movable: Vec<u32> = if interleave_sinks {
        canonical.entries()[q..].iter().map(|e| e.label).collect()
    } else {
        canonical.entries()[q..n - s].iter().map(|e| e.label).collect()
    };
    let sink_labels: Vec<u32> = if interleave_sinks {
        Vec::new()
    } else {
        canonical.entries()[n - s..].iter().map(|e| e.label).collect()
    };
    movable.sort_by_key(|&l| key(l));
    loop {
        let order: Vec<u32> = source_labels
            .iter()
            .chain(movable.iter())
            .chain(sink_labels.iter())
            .copied()
            .collect();
        let ordered = OrderedSequence::from_labels(&canonical, &order).expect("permutation");
        if realize_with_order(&ordered).is_some() {
            return true;
        }
        if !next_multiset_permutation(&mut movable, key) {
            return false;
        }
    }
}

/// True iff some stream-tuple order (sinks appended last) realizes the
/// sequence. Exact for every balanced zero-free sequence: any realization
/// admits a topological order with its sinks moved to the end, and distinct
/// value orders are tried exhaustively.
pub fn is_realizable_bruteforce(seq: &Sequence) -> bool {
    try_orders(seq, false)
}

/// Exhaustive variant that also interleaves sink tuples between streams;
/// slower, used to cross-check the reduced oracle on tiny instances.
pub fn is_realizable_bruteforce_interleaved(seq: &Sequence) -> bool {
    try_orders(seq, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::parse_sequence;

    fn seq(tuples: &[(u32, u32)]) -> Sequence {
        Sequence::from_tuples(tuples.iter().map(|&(a, b)| DegreeTuple::new(a, b)))
    }

    #[test]
    fn oracle_agrees_on_known_instances() {
        let example1 =
            parse_sequence("0 3\n0 1\n1 2\n2 3\n4 4\n1 1\n1 0\n2 0\n3 0").unwrap();
        assert!(is_realizable_bruteforce(&example1));
        assert!(!is_realizable_bruteforce(&seq(&[(0, 2), (2, 0)])));
        assert!(is_realizable_bruteforce(&seq(&[(0, 1), (1, 1), (1, 0)])));
        assert!(is_realizable_bruteforce(&Sequence::empty()));
    }

    #[test]
    fn mirror_symmetry_on_examples() {
        let example1 =
            parse_sequence("0 3\n0 1\n1 2\n2 3\n4 4\n1 1\n1 0\n2 0\n3 0").unwrap();
        assert_eq!(
            is_realizable_bruteforce(&example1),
            is_realizable_bruteforce(&example1.mirror())
        );
    }
}

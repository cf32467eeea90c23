//! Instance sources: exhaustive enumeration of balanced tuple multisets for
//! small n, random dag sequences obtained by arc deletion from the complete
//! dag, and ingestion of edge lists from real networks.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use thiserror::Error;

use crate::seq::{DegreeTuple, Entry, Sequence};

/// Hard cap on the enumeration size; the multiset space explodes beyond it.
pub const ENUMERATION_MAX_N: usize = 10;

/// What to enumerate: all balanced zero-free multisets of `n` tuples with
/// degree sums `m`, optionally restricted to non-trivial sequences (at
/// least two stream tuples).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumerationSpec {
    pub n: usize,
    pub m: u64,
    pub non_trivial_only: bool,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("enumeration supports n <= {ENUMERATION_MAX_N}, got {0}")]
    CapExceeded(usize),
    #[error("m = {m} exceeds the arc capacity {max} of a simple dag on {n} vertices")]
    TooManyArcs { n: usize, m: u64, max: u64 },
}

/// A resume point: the last multiset already emitted, as its descending
/// tuple list. Tokens round-trip through [`Cursor::to_token`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cursor(pub Vec<DegreeTuple>);

#[derive(Error, Debug, PartialEq, Eq)]
#[error("malformed cursor token")]
pub struct CursorError;

impl Cursor {
    pub fn to_token(&self) -> String {
        self.0
            .iter()
            .map(|t| format!("{}:{}", t.a, t.b))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_token(token: &str) -> Result<Cursor, CursorError> {
        let mut tuples = Vec::new();
        for part in token.split(',') {
            let (a, b) = part.split_once(':').ok_or(CursorError)?;
            let a = a.parse().map_err(|_| CursorError)?;
            let b = b.parse().map_err(|_| CursorError)?;
            tuples.push(DegreeTuple::new(a, b));
        }
        Ok(Cursor(tuples))
    }
}

/// Arranges a tuple multiset into the canonical sequence shape (sources by
/// falling outdegree, streams, sinks by rising indegree) and labels it
/// `1..=n`. Stream order follows the input order.
pub fn canonical_sequence_from_multiset(tuples: &[DegreeTuple]) -> Sequence {
    let mut sources: Vec<DegreeTuple> = tuples.iter().copied().filter(|t| t.is_source()).collect();
    let streams: Vec<DegreeTuple> = tuples.iter().copied().filter(|t| t.is_stream()).collect();
    let mut sinks: Vec<DegreeTuple> = tuples.iter().copied().filter(|t| t.is_sink()).collect();
    sources.sort_by(|x, y| y.b.cmp(&x.b));
    sinks.sort_by(|x, y| x.a.cmp(&y.a));
    Sequence::from_tuples(sources.into_iter().chain(streams).chain(sinks))
}

fn check_spec(spec: &EnumerationSpec) -> Result<(), EnumerationError> {
    if spec.n > ENUMERATION_MAX_N {
        return Err(EnumerationError::CapExceeded(spec.n));
    }
    let max_arcs = spec.n as u64 * (spec.n as u64).saturating_sub(1) / 2;
    if spec.m > max_arcs {
        return Err(EnumerationError::TooManyArcs { n: spec.n, m: spec.m, max: max_arcs });
    }
    Ok(())
}

fn ceil_div(x: u64, y: u64) -> u64 {
    (x + y - 1) / y
}

// Depth-first over non-increasing tuple lists; the a/b ranges below are
// exactly the values for which the remaining demand can still be packed
// into the remaining slots under the per-tuple ordering constraints.
// `on_cursor` marks that the prefix still equals the cursor's; descents
// start at the cursor tuple there, and the cursor multiset itself is
// skipped.
#[allow(clippy::too_many_arguments)]
fn descend(
    chosen: &mut Vec<DegreeTuple>,
    max_tuple: DegreeTuple,
    rem_a: u64,
    rem_b: u64,
    n: usize,
    cap: u32,
    min_streams: usize,
    cursor: Option<&[DegreeTuple]>,
    on_cursor: bool,
    emit: &mut impl FnMut(&[DegreeTuple]),
) {
    let depth = chosen.len();
    if depth == n {
        debug_assert!(rem_a == 0 && rem_b == 0);
        if on_cursor {
            return; // the cursor multiset was already emitted earlier
        }
        if min_streams > 0 && chosen.iter().filter(|t| t.is_stream()).count() < min_streams {
            return;
        }
        emit(chosen);
        return;
    }
    let r = (n - depth - 1) as u64; // slots after this one
    let start = if on_cursor { cursor.unwrap()[depth] } else { max_tuple };
    // future tuples have a' <= a, so rem_a must fit into (r + 1) * a
    let a_lo = ceil_div(rem_a, r + 1);
    let a_hi = u64::from(start.a).min(rem_a).min(u64::from(cap));
    if a_lo > a_hi {
        return;
    }
    for a in (a_lo..=a_hi).rev() {
        let rem_after_a = rem_a - a;
        // every future tuple is nonzero: rem_after_a + rem_after_b >= r
        let sum = rem_after_a + rem_b;
        if sum < r {
            continue;
        }
        let slot_hi = if a == u64::from(start.a) { u64::from(start.b) } else { u64::from(cap) };
        let b_hi = slot_hi.min(rem_b).min(sum - r);
        let b_lo = if a == 0 {
            // only sources (0|b') with 1 <= b' <= b may follow
            ceil_div(rem_b, r + 1).max(1)
        } else {
            rem_b.saturating_sub(r * u64::from(cap))
        };
        if b_lo > b_hi {
            continue;
        }
        for b in (b_lo..=b_hi).rev() {
            let tuple = DegreeTuple::new(a as u32, b as u32);
            let still_on_cursor = on_cursor && tuple == cursor.unwrap()[depth];
            chosen.push(tuple);
            descend(
                chosen,
                tuple,
                rem_after_a,
                rem_b - b,
                n,
                cap,
                min_streams,
                cursor,
                still_on_cursor,
                emit,
            );
            chosen.pop();
        }
    }
}

/// Streams every matching multiset exactly once as a slice in
/// non-increasing lexicographic tuple order, without allocating per
/// emission. With a cursor the stream resumes strictly after the cursor's
/// multiset.
pub fn enumerate_multisets_from(
    spec: &EnumerationSpec,
    cursor: Option<&Cursor>,
    mut emit: impl FnMut(&[DegreeTuple]),
) -> Result<(), EnumerationError> {
    check_spec(spec)?;
    let n = spec.n;
    if n == 0 {
        if spec.m == 0 && !spec.non_trivial_only && cursor.is_none() {
            emit(&[]);
        }
        return Ok(());
    }
    let cap = (n - 1) as u32;
    let mut chosen: Vec<DegreeTuple> = Vec::with_capacity(n);
    descend(
        &mut chosen,
        DegreeTuple::new(cap, cap),
        spec.m,
        spec.m,
        n,
        cap,
        if spec.non_trivial_only { 2 } else { 0 },
        cursor.map(|c| c.0.as_slice()),
        cursor.is_some(),
        &mut emit,
    );
    Ok(())
}

/// The feasible first (largest) tuples of the enumeration; the streams
/// under distinct first tuples partition the multiset space, which gives a
/// deterministic parallel split.
pub fn first_tuples(spec: &EnumerationSpec) -> Result<Vec<DegreeTuple>, EnumerationError> {
    check_spec(spec)?;
    let n = spec.n;
    let mut firsts = Vec::new();
    if n == 0 {
        return Ok(firsts);
    }
    let cap = (n - 1) as u32;
    let r = (n - 1) as u64;
    let a_lo = ceil_div(spec.m, r + 1);
    let a_hi = spec.m.min(u64::from(cap));
    let mut a = a_hi;
    while a >= a_lo {
        let rem_after_a = spec.m - a;
        let sum = rem_after_a + spec.m;
        if sum >= r {
            let b_hi = u64::from(cap).min(spec.m).min(sum - r);
            let b_lo = if a == 0 {
                ceil_div(spec.m, r + 1).max(1)
            } else {
                spec.m.saturating_sub(r * u64::from(cap))
            };
            let mut b = b_hi;
            while b >= b_lo {
                firsts.push(DegreeTuple::new(a as u32, b as u32));
                if b == 0 {
                    break;
                }
                b -= 1;
            }
        }
        if a == 0 {
            break;
        }
        a -= 1;
    }
    Ok(firsts)
}

/// Streams the multisets whose largest tuple equals `first`.
pub fn enumerate_multisets_with_first(
    spec: &EnumerationSpec,
    first: DegreeTuple,
    mut emit: impl FnMut(&[DegreeTuple]),
) -> Result<(), EnumerationError> {
    check_spec(spec)?;
    let n = spec.n;
    if n == 0 {
        return Ok(());
    }
    assert!(
        u64::from(first.a) <= spec.m && u64::from(first.b) <= spec.m && !first.is_zero(),
        "infeasible first tuple"
    );
    let cap = (n - 1) as u32;
    let mut chosen = Vec::with_capacity(n);
    chosen.push(first);
    descend(
        &mut chosen,
        first,
        spec.m - u64::from(first.a),
        spec.m - u64::from(first.b),
        n,
        cap,
        if spec.non_trivial_only { 2 } else { 0 },
        None,
        false,
        &mut emit,
    );
    Ok(())
}

/// As [`enumerate_multisets_from`], but emits canonical [`Sequence`]s.
pub fn enumerate_sequences_from(
    spec: &EnumerationSpec,
    cursor: Option<&Cursor>,
    mut emit: impl FnMut(&Sequence),
) -> Result<(), EnumerationError> {
    enumerate_multisets_from(spec, cursor, |tuples| {
        emit(&canonical_sequence_from_multiset(tuples))
    })
}

/// Streams every matching multiset exactly once from the beginning.
pub fn enumerate_sequences(
    spec: &EnumerationSpec,
    emit: impl FnMut(&Sequence),
) -> Result<(), EnumerationError> {
    enumerate_sequences_from(spec, None, emit)
}

fn complete_dag_arc_count(n: usize) -> u64 {
    n as u64 * (n as u64 - 1) / 2
}

// arcs of the complete dag indexed lexicographically by (i, j), i < j,
// both 0-based; row i starts at i*(n-1) - i*(i-1)/2
fn arc_from_index(n: usize, idx: u64) -> (usize, usize) {
    let row_start = |i: u64| i * (n as u64 - 1) - i * i.saturating_sub(1) / 2;
    let mut lo = 0u64;
    let mut hi = n as u64 - 1;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if row_start(mid) <= idx {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let i = lo as usize;
    let j = i + 1 + (idx - row_start(lo)) as usize;
    (i, j)
}

/// Samples `count` distinct values from `0..total` in O(count) memory.
fn sample_distinct(total: u64, count: u64, rng: &mut impl Rng) -> HashSet<u64> {
    debug_assert!(count <= total);
    let mut chosen = HashSet::with_capacity(count as usize);
    for j in total - count..total {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen
}

/// Deletes a uniform subset of arcs from the complete dag on `n` vertices
/// so that `m` arcs remain, and reads off the degree sequence in
/// topological position order. Always a realizable sequence.
pub fn random_dag_sequence(n: usize, m: u64, rng: &mut impl Rng) -> Sequence {
    let total = complete_dag_arc_count(n);
    assert!(m <= total, "m exceeds the complete dag arc count");
    let mut indeg = vec![0u32; n];
    let mut outdeg = vec![0u32; n];
    if m <= total - m {
        // sample the kept arcs directly
        for &idx in &sample_distinct(total, m, rng) {
            let (i, j) = arc_from_index(n, idx);
            outdeg[i] += 1;
            indeg[j] += 1;
        }
    } else {
        // start from the complete dag and subtract the deleted arcs
        for (p, (id, od)) in indeg.iter_mut().zip(outdeg.iter_mut()).enumerate() {
            *id = p as u32;
            *od = (n - 1 - p) as u32;
        }
        for &idx in &sample_distinct(total, total - m, rng) {
            let (i, j) = arc_from_index(n, idx);
            outdeg[i] -= 1;
            indeg[j] -= 1;
        }
    }
    Sequence::from_tuples((0..n).map(|p| DegreeTuple::new(indeg[p], outdeg[p])))
}

/// Result of reading an edge list: the induced degree sequence, whether the
/// source graph was acyclic, vertex names in label order, and how many
/// zero tuples were dropped.
#[derive(Clone, Debug)]
pub struct Ingested {
    pub seq: Sequence,
    pub was_acyclic: bool,
    pub vertex_names: Vec<String>,
    pub zero_tuples_stripped: usize,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum IngestError {
    #[error("line {line}: expected two whitespace-separated vertex ids, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: self-loop at vertex {vertex:?}")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: duplicate arc {from:?} -> {to:?}")]
    DuplicateArc { line: usize, from: String, to: String },
}

/// Reads `u v` arc lines (arbitrary tokens, `#` comments) into a degree
/// sequence; vertices are labeled in order of first appearance.
pub fn ingest_edge_list(text: &str) -> Result<Ingested, IngestError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(IngestError::Malformed { line, content: raw.to_string() }),
        };
        if u == v {
            return Err(IngestError::SelfLoop { line, vertex: u.to_string() });
        }
        let mut intern = |token: &str| -> usize {
            *index.entry(token.to_string()).or_insert_with(|| {
                names.push(token.to_string());
                names.len() - 1
            })
        };
        let (ui, vi) = (intern(u), intern(v));
        if !seen.insert((ui, vi)) {
            return Err(IngestError::DuplicateArc {
                line,
                from: u.to_string(),
                to: v.to_string(),
            });
        }
        arcs.push((ui, vi));
    }

    let n = names.len();
    let mut indeg = vec![0u32; n];
    let mut outdeg = vec![0u32; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &arcs {
        outdeg[u] += 1;
        indeg[v] += 1;
        adj[u].push(v);
    }
    // Kahn peeling for acyclicity of the source graph
    let mut residual: Vec<u32> = indeg.clone();
    let mut queue: Vec<usize> = (0..n).filter(|&v| residual[v] == 0).collect();
    let mut peeled = 0usize;
    while let Some(u) = queue.pop() {
        peeled += 1;
        for &v in &adj[u] {
            residual[v] -= 1;
            if residual[v] == 0 {
                queue.push(v);
            }
        }
    }

    let entries: Vec<Entry> = (0..n)
        .map(|p| Entry { label: p as u32 + 1, tuple: DegreeTuple::new(indeg[p], outdeg[p]) })
        .collect();
    let raw = Sequence::from_entries(entries);
    let zero_tuples_stripped = raw.num_zero_tuples();
    let (seq, _) = raw.strip_zero_tuples();
    Ok(Ingested { seq, was_acyclic: peeled == n, vertex_names: names, zero_tuples_stripped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn count(spec: &EnumerationSpec) -> u64 {
        let mut c = 0;
        enumerate_sequences(spec, |_| c += 1).unwrap();
        c
    }

    #[test]
    fn enumerate_n2_m1_is_single_trivial_pair() {
        let spec = EnumerationSpec { n: 2, m: 1, non_trivial_only: false };
        let mut seqs = Vec::new();
        enumerate_sequences(&spec, |s| seqs.push(s.clone())).unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].value_key(), vec![DegreeTuple::new(0, 1), DegreeTuple::new(1, 0)]);
        // filtered out as trivial
        assert_eq!(count(&EnumerationSpec { n: 2, m: 1, non_trivial_only: true }), 0);
    }

    #[test]
    fn enumerate_n3_m2_contains_the_path() {
        let spec = EnumerationSpec { n: 3, m: 2, non_trivial_only: false };
        let mut found = 0;
        let path = Sequence::from_tuples([
            DegreeTuple::new(0, 1),
            DegreeTuple::new(1, 1),
            DegreeTuple::new(1, 0),
        ])
        .value_key();
        enumerate_sequences(&spec, |s| {
            if s.value_key() == path {
                found += 1;
            }
        })
        .unwrap();
        assert_eq!(found, 1);
    }

    #[test]
    fn enumerate_emits_unique_balanced_multisets() {
        let spec = EnumerationSpec { n: 5, m: 6, non_trivial_only: false };
        let mut keys = HashSet::new();
        let mut total = 0u64;
        enumerate_sequences(&spec, |s| {
            total += 1;
            assert!(s.is_balanced());
            assert!(s.is_zero_free());
            assert_eq!(s.m(), 6);
            assert_eq!(s.n(), 5);
            assert!(s.is_canonical());
            assert!(keys.insert(s.value_key()));
        })
        .unwrap();
        assert_eq!(total, keys.len() as u64);
        assert!(total > 0);
    }

    #[test]
    fn enumerate_cap_errors() {
        let spec = EnumerationSpec { n: 11, m: 3, non_trivial_only: false };
        assert!(matches!(enumerate_sequences(&spec, |_| ()), Err(EnumerationError::CapExceeded(11))));
        let spec = EnumerationSpec { n: 3, m: 4, non_trivial_only: false };
        assert!(matches!(
            enumerate_sequences(&spec, |_| ()),
            Err(EnumerationError::TooManyArcs { n: 3, m: 4, max: 3 })
        ));
    }

    #[test]
    fn enumerate_resume_partitions_the_stream() {
        let spec = EnumerationSpec { n: 5, m: 5, non_trivial_only: false };
        let mut all = Vec::new();
        enumerate_sequences(&spec, |s| all.push(s.value_key())).unwrap();
        let split = all.len() / 2;
        // cursor = descending tuple list of the multiset at the split point
        let mut cursor_tuples = all[split - 1].clone();
        cursor_tuples.sort_by(|x, y| y.cmp(x));
        let cursor = Cursor(cursor_tuples);
        let round = Cursor::from_token(&cursor.to_token()).unwrap();
        assert_eq!(round, cursor);
        let mut rest = Vec::new();
        enumerate_sequences_from(&spec, Some(&round), |s| rest.push(s.value_key())).unwrap();
        assert_eq!(rest, all[split..].to_vec());
    }

    #[test]
    fn first_tuple_split_partitions_the_stream() {
        let spec = EnumerationSpec { n: 6, m: 7, non_trivial_only: false };
        let mut full = Vec::new();
        enumerate_multisets_from(&spec, None, |t| full.push(t.to_vec())).unwrap();
        let mut split = Vec::new();
        for first in first_tuples(&spec).unwrap() {
            enumerate_multisets_with_first(&spec, first, |t| split.push(t.to_vec())).unwrap();
        }
        assert_eq!(full, split);
        assert!(!full.is_empty());
    }

    #[test]
    fn random_complete_dag_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_dag_sequence(5, 10, &mut rng);
        let tuples: Vec<DegreeTuple> = s.tuples().collect();
        assert_eq!(
            tuples,
            vec![
                DegreeTuple::new(0, 4),
                DegreeTuple::new(1, 3),
                DegreeTuple::new(2, 2),
                DegreeTuple::new(3, 1),
                DegreeTuple::new(4, 0)
            ]
        );
    }

    #[test]
    fn random_dag_sequence_is_balanced_with_requested_m() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for m in [0u64, 7, 50, 114, 150, 190] {
            let s = random_dag_sequence(20, m, &mut rng);
            assert_eq!(s.m(), m);
            assert!(s.is_balanced());
            assert_eq!(s.n() , 20);
        }
    }

    #[test]
    fn ingest_chain() {
        let ingested = ingest_edge_list("a b\nb c").unwrap();
        assert!(ingested.was_acyclic);
        assert_eq!(ingested.zero_tuples_stripped, 0);
        let tuples: Vec<DegreeTuple> = ingested.seq.tuples().collect();
        assert_eq!(
            tuples,
            vec![DegreeTuple::new(0, 1), DegreeTuple::new(1, 1), DegreeTuple::new(1, 0)]
        );
    }

    #[test]
    fn ingest_two_cycle_reports_cyclic() {
        let ingested = ingest_edge_list("a b\nb a").unwrap();
        assert!(!ingested.was_acyclic);
        let tuples: Vec<DegreeTuple> = ingested.seq.tuples().collect();
        assert_eq!(tuples, vec![DegreeTuple::new(1, 1), DegreeTuple::new(1, 1)]);
    }

    #[test]
    fn ingest_rejects_duplicates_and_loops() {
        assert!(matches!(
            ingest_edge_list("a b\na b"),
            Err(IngestError::DuplicateArc { line: 2, .. })
        ));
        assert!(matches!(ingest_edge_list("a a"), Err(IngestError::SelfLoop { line: 1, .. })));
        assert!(matches!(ingest_edge_list("a"), Err(IngestError::Malformed { line: 1, .. })));
    }

    #[test]
    fn ingest_degree_sums_equal_arc_count() {
        let text = "a b\nb c\nc d\na c\nb d";
        let ingested = ingest_edge_list(text).unwrap();
        assert_eq!(ingested.seq.sum_indegrees(), 5);
        assert_eq!(ingested.seq.sum_outdegrees(), 5);
    }
}

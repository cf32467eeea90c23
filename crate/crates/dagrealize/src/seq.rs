//! Domain types shared by all solvers: degree tuples, sequences, dags,
//! parsing, validation and canonical sorting.

use std::fmt;

use thiserror::Error;

/// One `(indegree | outdegree)` demand pair.
///
/// The derived `Ord` is lexicographic with the indegree as the major key;
/// this is the order used whenever a "lexicographically largest" tuple is
/// selected.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DegreeTuple {
    pub a: u32,
    pub b: u32,
}

/// Classification of a tuple by which demands are positive.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    Source,
    Sink,
    Stream,
    Zero,
}

impl DegreeTuple {
    pub const fn new(a: u32, b: u32) -> Self {
        DegreeTuple { a, b }
    }

    pub fn role(self) -> Role {
        match (self.a, self.b) {
            (0, 0) => Role::Zero,
            (0, _) => Role::Source,
            (_, 0) => Role::Sink,
            _ => Role::Stream,
        }
    }

    pub fn is_source(self) -> bool {
        self.a == 0 && self.b > 0
    }

    pub fn is_sink(self) -> bool {
        self.a > 0 && self.b == 0
    }

    pub fn is_stream(self) -> bool {
        self.a > 0 && self.b > 0
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Swaps the two demands; realizations correspond under arc reversal.
    pub fn mirrored(self) -> Self {
        DegreeTuple { a: self.b, b: self.a }
    }
}

impl fmt::Display for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.a, self.b)
    }
}

/// A tuple together with its vertex label. Labels are 1-based and survive
/// reordering and reduction steps, so witness arcs can always be reported in
/// the caller's labeling.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Entry {
    pub label: u32,
    pub tuple: DegreeTuple,
}

/// An ordered list of labeled degree tuples plus cached bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sequence {
    entries: Vec<Entry>,
    sum_a: u64,
    sum_b: u64,
    sources: usize,
    sinks: usize,
    streams: usize,
    zeros: usize,
    canonical: bool,
}

impl Sequence {
    /// Builds a sequence labeling the tuples `1..=n` in the given order.
    pub fn from_tuples<I: IntoIterator<Item = DegreeTuple>>(tuples: I) -> Self {
        let entries = tuples
            .into_iter()
            .enumerate()
            .map(|(i, tuple)| Entry { label: i as u32 + 1, tuple })
            .collect();
        Self::from_entries(entries)
    }

    /// Builds a sequence from pre-labeled entries.
    pub fn from_entries(entries: Vec<Entry>) -> Self {
        let mut seq = Sequence {
            entries,
            sum_a: 0,
            sum_b: 0,
            sources: 0,
            sinks: 0,
            streams: 0,
            zeros: 0,
            canonical: false,
        };
        seq.recompute();
        seq
    }

    pub fn empty() -> Self {
        Self::from_entries(Vec::new())
    }

    fn recompute(&mut self) {
        self.sum_a = 0;
        self.sum_b = 0;
        self.sources = 0;
        self.sinks = 0;
        self.streams = 0;
        self.zeros = 0;
        for e in &self.entries {
            self.sum_a += u64::from(e.tuple.a);
            self.sum_b += u64::from(e.tuple.b);
            match e.tuple.role() {
                Role::Source => self.sources += 1,
                Role::Sink => self.sinks += 1,
                Role::Stream => self.streams += 1,
                Role::Zero => self.zeros += 1,
            }
        }
        self.canonical = self.check_canonical();
    }

    // Canonically sorted: sources first with non-increasing b, sinks last
    // with non-decreasing a, streams in between, no zero tuples.
    fn check_canonical(&self) -> bool {
        if self.zeros > 0 {
            return false;
        }
        let n = self.entries.len();
        let q = self.sources;
        let s = self.sinks;
        for (i, e) in self.entries.iter().enumerate() {
            let ok = if i < q {
                e.tuple.is_source()
            } else if i >= n - s {
                e.tuple.is_sink()
            } else {
                e.tuple.is_stream()
            };
            if !ok {
                return false;
            }
        }
        let src_sorted = self.entries[..q].windows(2).all(|w| w[0].tuple.b >= w[1].tuple.b);
        let sink_sorted = self.entries[n - s..].windows(2).all(|w| w[0].tuple.a <= w[1].tuple.a);
        src_sorted && sink_sorted
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Total indegree demand; equals the arc count of any realization when
    /// the sequence is balanced.
    pub fn m(&self) -> u64 {
        self.sum_a
    }

    pub fn sum_indegrees(&self) -> u64 {
        self.sum_a
    }

    pub fn sum_outdegrees(&self) -> u64 {
        self.sum_b
    }

    pub fn num_sources(&self) -> usize {
        self.sources
    }

    pub fn num_sinks(&self) -> usize {
        self.sinks
    }

    pub fn num_streams(&self) -> usize {
        self.streams
    }

    pub fn num_zero_tuples(&self) -> usize {
        self.zeros
    }

    pub fn is_balanced(&self) -> bool {
        self.sum_a == self.sum_b
    }

    pub fn is_zero_free(&self) -> bool {
        self.zeros == 0
    }

    /// True when the sequence consists of source and sink tuples only.
    pub fn is_source_sink(&self) -> bool {
        self.streams == 0 && self.zeros == 0
    }

    /// Sparse sequences with total indegree at most `n - 1`.
    pub fn is_forest(&self) -> bool {
        self.sum_a <= self.entries.len().saturating_sub(1) as u64
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn tuples(&self) -> impl Iterator<Item = DegreeTuple> + '_ {
        self.entries.iter().map(|e| e.tuple)
    }

    /// New-position-to-label view of the current arrangement.
    pub fn labels(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.label).collect()
    }

    pub fn entry_by_label(&self, label: u32) -> Option<&Entry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// Sources first (non-increasing b), sinks last (non-decreasing a),
    /// stream tuples in between in their current relative order. Stable, so
    /// ties keep the original arrangement and the operation is idempotent.
    pub fn canonical_sort(&self) -> Sequence {
        let mut sources: Vec<Entry> = Vec::with_capacity(self.sources);
        let mut streams: Vec<Entry> = Vec::with_capacity(self.streams);
        let mut sinks: Vec<Entry> = Vec::with_capacity(self.sinks);
        let mut zeros: Vec<Entry> = Vec::new();
        for e in &self.entries {
            match e.tuple.role() {
                Role::Source => sources.push(*e),
                Role::Stream => streams.push(*e),
                Role::Sink => sinks.push(*e),
                Role::Zero => zeros.push(*e),
            }
        }
        sources.sort_by(|x, y| y.tuple.b.cmp(&x.tuple.b));
        sinks.sort_by(|x, y| x.tuple.a.cmp(&y.tuple.a));
        let mut entries = sources;
        entries.append(&mut streams);
        entries.append(&mut sinks);
        entries.append(&mut zeros);
        Sequence::from_entries(entries)
    }

    /// Removes all `(0|0)` tuples and relabels `1..=n'`. The provenance map
    /// sends each new label (as index `new_label - 1`) to the old label.
    pub fn strip_zero_tuples(&self) -> (Sequence, Vec<u32>) {
        let mut provenance = Vec::with_capacity(self.entries.len() - self.zeros);
        let mut entries = Vec::with_capacity(self.entries.len() - self.zeros);
        for e in &self.entries {
            if !e.tuple.is_zero() {
                provenance.push(e.label);
                entries.push(Entry { label: entries.len() as u32 + 1, tuple: e.tuple });
            }
        }
        (Sequence::from_entries(entries), provenance)
    }

    /// Swaps in- and outdegrees tuple-wise. An involution; realizability is
    /// invariant under it because arc reversal maps realizations across.
    pub fn mirror(&self) -> Sequence {
        let entries = self
            .entries
            .iter()
            .map(|e| Entry { label: e.label, tuple: e.tuple.mirrored() })
            .collect();
        Sequence::from_entries(entries)
    }

    /// Canonical text form: one `a b` line per tuple, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{} {}\n", e.tuple.a, e.tuple.b));
        }
        out
    }

    /// The tuple multiset as a sorted list, usable as a labeling-independent
    /// key.
    pub fn value_key(&self) -> Vec<DegreeTuple> {
        let mut values: Vec<DegreeTuple> = self.tuples().collect();
        values.sort_unstable();
        values
    }

    /// True when the labels are exactly `1..=n` in some order.
    pub fn labels_are_compact(&self) -> bool {
        let n = self.entries.len();
        let mut seen = vec![false; n];
        for e in &self.entries {
            let l = e.label as usize;
            if l == 0 || l > n || seen[l - 1] {
                return false;
            }
            seen[l - 1] = true;
        }
        true
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", e.tuple)?;
            first = false;
        }
        Ok(())
    }
}

/// Errors produced while parsing the `a b`-per-line text format.
#[derive(Error, Debug, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected two whitespace-separated integers, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: negative degree {value}")]
    Negative { line: usize, value: i64 },
    #[error("line {line}: degree {value} out of range")]
    OutOfRange { line: usize, value: i64 },
}

/// Parses the line-oriented sequence format. `#` starts a comment line and
/// blank lines are skipped; tuples are labeled `1..=n` in file order.
pub fn parse_sequence(text: &str) -> Result<Sequence, ParseError> {
    let mut tuples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(ParseError::Malformed { line, content: raw.to_string() }),
        };
        let parse_one = |token: &str| -> Result<u32, ParseError> {
            let value: i64 = token
                .parse()
                .map_err(|_| ParseError::Malformed { line, content: raw.to_string() })?;
            if value < 0 {
                return Err(ParseError::Negative { line, value });
            }
            u32::try_from(value).map_err(|_| ParseError::OutOfRange { line, value })
        };
        tuples.push(DegreeTuple::new(parse_one(a)?, parse_one(b)?));
    }
    Ok(Sequence::from_tuples(tuples))
}

/// One reason a sequence cannot have a realization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    Unbalanced { sum_in: u64, sum_out: u64 },
    DegreeTooLarge { label: u32, tuple: DegreeTuple, max: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unbalanced { sum_in, sum_out } => {
                write!(f, "indegree sum {sum_in} != outdegree sum {sum_out}")
            }
            Violation::DegreeTooLarge { label, tuple, max } => {
                write!(f, "tuple {tuple} at label {label} exceeds the simple-dag bound {max}")
            }
        }
    }
}

/// Outcome of the cheap necessary checks run before any solver.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks balance and the per-vertex degree bound `n - 1`. Solvers refuse
/// sequences that do not pass.
pub fn validate(seq: &Sequence) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !seq.is_balanced() {
        report.violations.push(Violation::Unbalanced {
            sum_in: seq.sum_indegrees(),
            sum_out: seq.sum_outdegrees(),
        });
    }
    let max = seq.n().saturating_sub(1) as u32;
    for e in seq.entries() {
        if e.tuple.a > max || e.tuple.b > max {
            report.violations.push(Violation::DegreeTooLarge { label: e.label, tuple: e.tuple, max });
        }
    }
    report
}

/// A labeled simple directed graph given as an arc list over vertices
/// `1..=n_vertices`; the witness form returned by every solver.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dag {
    n_vertices: usize,
    arcs: Vec<(u32, u32)>,
}

impl Dag {
    pub fn new(n_vertices: usize, arcs: Vec<(u32, u32)>) -> Self {
        Dag { n_vertices, arcs }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn sorted_arcs(&self) -> Vec<(u32, u32)> {
        let mut arcs = self.arcs.clone();
        arcs.sort_unstable();
        arcs
    }

    /// In- and outdegree per vertex, indexed by `label - 1`.
    pub fn degrees(&self) -> (Vec<u32>, Vec<u32>) {
        let mut indeg = vec![0u32; self.n_vertices];
        let mut outdeg = vec![0u32; self.n_vertices];
        for &(u, v) in &self.arcs {
            outdeg[u as usize - 1] += 1;
            indeg[v as usize - 1] += 1;
        }
        (indeg, outdeg)
    }

    /// No self-loops, no parallel arcs, all endpoints in range.
    pub fn is_simple(&self) -> bool {
        let n = self.n_vertices as u32;
        let in_range = self.arcs.iter().all(|&(u, v)| u != v && (1..=n).contains(&u) && (1..=n).contains(&v));
        if !in_range {
            return false;
        }
        let mut sorted = self.arcs.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Kahn peeling; true when no directed cycle remains.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n_vertices;
        let mut indeg = vec![0usize; n];
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in &self.arcs {
            indeg[v as usize - 1] += 1;
            adj[u as usize - 1].push(v);
        }
        let mut queue: Vec<u32> = (1..=n as u32).filter(|&v| indeg[v as usize - 1] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop() {
            seen += 1;
            for &v in &adj[u as usize - 1] {
                indeg[v as usize - 1] -= 1;
                if indeg[v as usize - 1] == 0 {
                    queue.push(v);
                }
            }
        }
        seen == n
    }

    /// Rewrites every vertex through `map` (indexed by `label - 1`) and
    /// resizes the vertex set; used to lift witnesses back to the labels of
    /// a pre-strip sequence.
    pub fn relabel(&self, map: &[u32], n_vertices: usize) -> Dag {
        let arcs = self
            .arcs
            .iter()
            .map(|&(u, v)| (map[u as usize - 1], map[v as usize - 1]))
            .collect();
        Dag { n_vertices, arcs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(tuples: &[(u32, u32)]) -> Sequence {
        Sequence::from_tuples(tuples.iter().map(|&(a, b)| DegreeTuple::new(a, b)))
    }

    pub(crate) fn example1() -> Sequence {
        seq(&[(0, 3), (0, 1), (1, 2), (2, 3), (4, 4), (1, 1), (1, 0), (2, 0), (3, 0)])
    }

    #[test]
    fn parse_example_sequence() {
        let s = parse_sequence("0 3\n0 1\n1 2\n2 3\n4 4\n1 1\n1 0\n2 0\n3 0").unwrap();
        assert_eq!(s.n(), 9);
        assert_eq!(s.m(), 14);
        assert_eq!(s.num_sources(), 2);
        assert_eq!(s.num_sinks(), 3);
        assert_eq!(s, example1());
    }

    #[test]
    fn parse_empty_input() {
        let s = parse_sequence("").unwrap();
        assert_eq!(s.n(), 0);
        assert_eq!(s.m(), 0);
        assert!(s.is_source_sink());
    }

    #[test]
    fn parse_rejects_negative() {
        assert!(matches!(parse_sequence("1 -1"), Err(ParseError::Negative { line: 1, value: -1 })));
    }

    #[test]
    fn parse_rejects_wrong_arity_with_line_number() {
        let err = parse_sequence("0 1\n2\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
        let err = parse_sequence("0 1\nx y\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
    }

    #[test]
    fn parse_skips_comments_and_blanks() {
        let s = parse_sequence("# header\n\n0 1\n  # indented comment\n1 0\n").unwrap();
        assert_eq!(s.n(), 2);
    }

    #[test]
    fn roundtrip_parse_serialize() {
        let s = example1();
        let text = s.to_text();
        assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
        assert_eq!(parse_sequence(&text).unwrap(), s);
    }

    #[test]
    fn validate_example1_passes() {
        assert!(validate(&example1()).passes());
    }

    #[test]
    fn validate_balanced_three_tuple() {
        assert!(validate(&seq(&[(0, 2), (2, 0), (1, 1)])).passes());
    }

    #[test]
    fn validate_rejects_degree_beyond_bound() {
        let report = validate(&seq(&[(0, 3), (3, 0)]));
        assert!(!report.passes());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DegreeTooLarge { label: 1, .. })));
    }

    #[test]
    fn validate_rejects_unbalanced() {
        let report = validate(&seq(&[(0, 2), (1, 0)]));
        assert!(matches!(report.violations[0], Violation::Unbalanced { sum_in: 1, sum_out: 2 }));
    }

    #[test]
    fn canonical_sort_orders_blocks() {
        let s = seq(&[(1, 0), (0, 2), (1, 1), (0, 1)]);
        let sorted = s.canonical_sort();
        let tuples: Vec<_> = sorted.tuples().collect();
        assert_eq!(
            tuples,
            vec![
                DegreeTuple::new(0, 2),
                DegreeTuple::new(0, 1),
                DegreeTuple::new(1, 1),
                DegreeTuple::new(1, 0)
            ]
        );
        assert_eq!(sorted.labels(), vec![2, 4, 3, 1]);
        assert!(sorted.is_canonical());
        assert_eq!(sorted.canonical_sort(), sorted);
    }

    #[test]
    fn canonical_sort_keeps_already_canonical() {
        let s = example1();
        assert!(s.is_canonical());
        assert_eq!(s.canonical_sort().labels(), s.labels());
    }

    #[test]
    fn canonical_sort_all_stream_is_identity() {
        let s = seq(&[(1, 1), (2, 2)]);
        assert_eq!(s.canonical_sort(), s);
    }

    #[test]
    fn strip_zero_tuples_relabels_with_provenance() {
        let s = seq(&[(0, 0), (1, 1), (0, 0)]);
        let (stripped, provenance) = s.strip_zero_tuples();
        assert_eq!(stripped.n(), 1);
        assert_eq!(stripped.entries()[0].tuple, DegreeTuple::new(1, 1));
        assert_eq!(stripped.entries()[0].label, 1);
        assert_eq!(provenance, vec![2]);
    }

    #[test]
    fn strip_zero_tuples_identity_when_clean() {
        let s = seq(&[(0, 1), (1, 0)]);
        let (stripped, provenance) = s.strip_zero_tuples();
        assert_eq!(stripped, s);
        assert_eq!(provenance, vec![1, 2]);
    }

    #[test]
    fn strip_zero_tuples_to_empty() {
        let (stripped, provenance) = seq(&[(0, 0), (0, 0)]).strip_zero_tuples();
        assert_eq!(stripped.n(), 0);
        assert!(provenance.is_empty());
    }

    #[test]
    fn mirror_swaps_and_is_involutive() {
        let s = seq(&[(0, 3), (2, 1)]);
        let m = s.mirror();
        let tuples: Vec<_> = m.tuples().collect();
        assert_eq!(tuples, vec![DegreeTuple::new(3, 0), DegreeTuple::new(1, 2)]);
        assert_eq!(m.mirror(), s);
        assert_eq!(seq(&[(2, 2)]).mirror(), seq(&[(2, 2)]));
    }

    #[test]
    fn dag_simple_and_acyclic_checks() {
        let dag = Dag::new(3, vec![(1, 2), (2, 3)]);
        assert!(dag.is_simple());
        assert!(dag.is_acyclic());
        assert!(!Dag::new(2, vec![(1, 1)]).is_simple());
        assert!(!Dag::new(2, vec![(1, 2), (2, 1)]).is_acyclic());
        assert!(!Dag::new(2, vec![(1, 2), (1, 2)]).is_simple());
    }
}

//! Per-sequence characteristics: dag density, distance to the nearest
//! opposed arrangement, and a classifier bundling the labels used by the
//! experiment harness.

use crate::exact::{
    is_opposed_sequence, opposed_leq, solve_exact, solve_lexmax, ChildOrder, Outcome,
};
use crate::reduce::{reduce_fixpoint, solve_lexmax_with_rules};
use crate::seq::{DegreeTuple, Sequence};

/// An exact nonnegative rational, kept reduced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Rational { num: num / g, den: den / g }
    }

    pub fn zero() -> Self {
        Rational { num: 0, den: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Presentation rounding to two decimals, half away from zero.
    pub fn two_decimals(&self) -> String {
        let scaled = 200 * self.num + self.den; // num/den * 200 + 1, i.e. +0.005
        format!("{}.{:02}", scaled / (200 * self.den), scaled / (2 * self.den) % 100)
    }
}

/// Arc count over the number of vertex pairs, `m / C(n, 2)`.
pub fn dag_density(n: usize, m: u64) -> Rational {
    assert!(n >= 2, "density needs at least two vertices");
    let pairs = n as u64 * (n as u64 - 1) / 2;
    Rational::new(m, pairs)
}

/// Renumbers the stream tuples along the exact solver's lexmax-first
/// solution order and counts incomparable pairs in the opposed order.
/// Absent when the sequence is unrealizable.
pub fn distance_to_opposed(seq: &Sequence) -> Option<u64> {
    let report = solve_exact(seq, ChildOrder::LexmaxFirst, None);
    if report.outcome != Outcome::Realizable {
        return None;
    }
    let tuples: Vec<DegreeTuple> = report
        .stream_order
        .iter()
        .map(|&label| seq.entry_by_label(label).expect("stream label").tuple)
        .collect();
    Some(incomparable_pairs(&tuples))
}

pub(crate) fn incomparable_pairs(tuples: &[DegreeTuple]) -> u64 {
    let mut count = 0;
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            if !opposed_leq(tuples[i], tuples[j]) && !opposed_leq(tuples[j], tuples[i]) {
                count += 1;
            }
        }
    }
    count
}

/// `d(S)` normalized by the pair count of the stream tuples; in `[0, 1]`,
/// zero when at most one stream tuple exists.
pub fn normalized_distance(seq: &Sequence) -> Option<Rational> {
    let d = distance_to_opposed(seq)?;
    let b = seq.num_streams() as u64;
    if b <= 1 {
        return Some(Rational::zero());
    }
    Some(Rational::new(d, b * (b - 1) / 2))
}

/// How much work [`profile`] invests.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProfileDepth {
    /// Structural fields plus the deterministic strategies.
    Cheap,
    /// Additionally runs the exact solver and the opposed distance.
    Full,
}

/// The classification bundle for one sequence.
#[derive(Clone, PartialEq, Debug)]
pub struct SequenceProfile {
    pub n: usize,
    pub m: u64,
    pub sources: usize,
    pub sinks: usize,
    pub streams: usize,
    /// Absent for `n < 2`.
    pub density: Option<Rational>,
    pub is_opposed: bool,
    pub is_forest: bool,
    pub is_source_sink: bool,
    /// Source-sink or at most one stream tuple: decidable directly.
    pub is_trivial: bool,
    pub lexmax_solvable: bool,
    pub reducible_then_lexmax_solvable: bool,
    /// Whether the reduction rules make any progress on the sequence.
    pub reducible: bool,
    pub exact_realizable: Option<bool>,
    pub distance_to_opposed: Option<u64>,
    pub normalized_distance: Option<Rational>,
}

impl SequenceProfile {
    /// The hard residue class: the rule-assisted lexmax pipeline fails and
    /// the rules alone make no progress on the original sequence.
    pub fn non_reducible_non_lexmax(&self) -> bool {
        !self.reducible_then_lexmax_solvable && !self.reducible
    }
}

/// Classifies a validated sequence.
pub fn profile(seq: &Sequence, depth: ProfileDepth) -> SequenceProfile {
    let (stripped, _) = seq.strip_zero_tuples();
    let lexmax = solve_lexmax(&stripped);
    let with_rules = solve_lexmax_with_rules(&stripped);
    let trace = reduce_fixpoint(&stripped);
    let (exact_realizable, d, nd) = match depth {
        ProfileDepth::Cheap => (None, None, None),
        ProfileDepth::Full => {
            let exact = solve_exact(&stripped, ChildOrder::LexmaxFirst, None);
            (
                Some(exact.outcome == Outcome::Realizable),
                distance_to_opposed(&stripped),
                normalized_distance(&stripped),
            )
        }
    };
    SequenceProfile {
        n: seq.n(),
        m: seq.m(),
        sources: stripped.num_sources(),
        sinks: stripped.num_sinks(),
        streams: stripped.num_streams(),
        density: (seq.n() >= 2).then(|| dag_density(seq.n(), seq.m())),
        is_opposed: is_opposed_sequence(&stripped),
        is_forest: stripped.is_forest(),
        is_source_sink: stripped.is_source_sink(),
        is_trivial: stripped.num_streams() <= 1,
        lexmax_solvable: lexmax.outcome == Outcome::Realizable,
        reducible_then_lexmax_solvable: with_rules.outcome == Outcome::Realizable,
        reducible: trace.made_progress(),
        exact_realizable,
        distance_to_opposed: d,
        normalized_distance: nd,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::parse_sequence;

    fn seq(tuples: &[(u32, u32)]) -> Sequence {
        Sequence::from_tuples(tuples.iter().map(|&(a, b)| DegreeTuple::new(a, b)))
    }

    fn example1() -> Sequence {
        parse_sequence("0 3\n0 1\n1 2\n2 3\n4 4\n1 1\n1 0\n2 0\n3 0").unwrap()
    }

    #[test]
    fn density_rounds_like_the_reference_instances() {
        assert_eq!(dag_density(142, 770).two_decimals(), "0.08");
        assert_eq!(dag_density(85, 559).two_decimals(), "0.16");
        assert_eq!(dag_density(128, 2137).two_decimals(), "0.26");
        assert_eq!(dag_density(24, 82).two_decimals(), "0.30");
        assert_eq!(dag_density(20, 53).two_decimals(), "0.28");
        assert_eq!(dag_density(5, 0).two_decimals(), "0.00");
    }

    #[test]
    #[should_panic(expected = "two vertices")]
    fn density_needs_two_vertices() {
        let _ = dag_density(1, 0);
    }

    #[test]
    fn distance_zero_for_opposed() {
        let s = seq(&[(0, 2), (0, 2), (1, 2), (2, 2), (3, 0), (2, 0)]);
        assert_eq!(distance_to_opposed(&s), Some(0));
        assert_eq!(normalized_distance(&s).unwrap(), Rational::zero());
    }

    #[test]
    fn distance_one_for_single_incomparable_pair() {
        let s = seq(&[(0, 3), (0, 3), (2, 2), (3, 3), (1, 0), (2, 0), (3, 0)]);
        assert_eq!(distance_to_opposed(&s), Some(1));
        let nd = normalized_distance(&s).unwrap();
        assert_eq!((nd.numer(), nd.denom()), (1, 1));
    }

    #[test]
    fn profile_example1_labels() {
        let p = profile(&example1(), ProfileDepth::Full);
        assert!(!p.lexmax_solvable);
        assert_eq!(p.exact_realizable, Some(true));
        assert!(!p.is_trivial);
        assert!(!p.is_opposed);
    }

    #[test]
    fn profile_source_sink_is_trivial() {
        let p = profile(&seq(&[(0, 2), (1, 0), (1, 0)]), ProfileDepth::Cheap);
        assert!(p.is_trivial && p.is_source_sink);
        assert!(p.lexmax_solvable);
    }

    #[test]
    fn profile_opposed_is_lexmax_solvable() {
        let s = seq(&[(0, 2), (0, 2), (1, 2), (2, 2), (3, 0), (2, 0)]);
        let p = profile(&s, ProfileDepth::Full);
        assert!(p.is_opposed);
        assert!(p.lexmax_solvable);
        assert_eq!(p.exact_realizable, Some(true));
    }

    #[test]
    fn normalized_distance_in_unit_interval() {
        for s in [example1(), seq(&[(0, 3), (0, 3), (2, 2), (3, 3), (1, 0), (2, 0), (3, 0)])] {
            let nd = normalized_distance(&s).unwrap();
            assert!(nd.as_f64() >= 0.0 && nd.as_f64() <= 1.0);
        }
    }
}

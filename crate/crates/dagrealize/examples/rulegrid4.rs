//! Dev harness round 4: sticky-orientation pipelines. When a rule fires on
//! the mirrored side, continue the run in that orientation instead of
//! flipping back.

use dagrealize::exact::{
    compute_vmin, reduce_by_tuple, solve_exact, solve_lexmax, ChildOrder, Outcome,
};
use dagrealize::generate::{enumerate_sequences, EnumerationSpec};
use dagrealize::seq::{Entry, Sequence};
use dagrealize::topo::realize_source_sink;

fn vmin_len_lexmax(seq: &Sequence) -> (usize, Option<u32>) {
    if seq.num_streams() == 0 || seq.num_sources() == 0 {
        return (0, None);
    }
    let v = compute_vmin(seq);
    (v.len(), v.lexmax().map(|m| m.label))
}

fn rule2_once(seq: &Sequence) -> Option<Sequence> {
    let non_sources = seq.entries().iter().filter(|e| e.tuple.a > 0).count();
    let mut pivots: Vec<&Entry> = seq.entries().iter().filter(|e| e.tuple.b > 0).collect();
    pivots.sort_by_key(|e| e.label);
    for e in pivots {
        let avail = non_sources - usize::from(e.tuple.a > 0);
        if avail == 0 || e.tuple.b as usize != avail {
            continue;
        }
        let mut entries = Vec::new();
        for o in seq.entries() {
            let mut t = o.tuple;
            if o.label != e.label && t.a > 0 {
                t.a -= 1;
            }
            if o.label == e.label {
                t.b = 0;
            }
            if !t.is_zero() {
                entries.push(Entry { label: o.label, tuple: t });
            }
        }
        return Some(Sequence::from_entries(entries).canonical_sort());
    }
    None
}

/// rules with sticky orientation: returns the (possibly mirrored) reduced
/// sequence; `use_rule2` toggles the dominance rule.
fn apply_rule_sticky(cur: &Sequence, use_rule2: bool) -> Option<Sequence> {
    let (len, label) = vmin_len_lexmax(cur);
    if len == 1 {
        return Some(reduce_by_tuple(cur, label.unwrap()).0);
    }
    let mirror = cur.mirror().canonical_sort();
    let (len, label) = vmin_len_lexmax(&mirror);
    if len == 1 {
        // continue in the mirrored orientation
        return Some(reduce_by_tuple(&mirror, label.unwrap()).0);
    }
    if use_rule2 {
        if let Some(r) = rule2_once(cur) {
            return Some(r);
        }
        if let Some(r) = rule2_once(&mirror) {
            return Some(r);
        }
    }
    None
}

fn pipeline_sticky(seq: &Sequence, use_rule2: bool) -> bool {
    let mut cur = seq.canonical_sort();
    loop {
        if cur.is_source_sink() {
            return realize_source_sink(&cur).is_some();
        }
        if let Some(next) = apply_rule_sticky(&cur, use_rule2) {
            cur = next;
            continue;
        }
        if cur.num_sources() == 0 {
            return false;
        }
        let (len, label) = vmin_len_lexmax(&cur);
        if len == 0 {
            return false;
        }
        cur = reduce_by_tuple(&cur, label.unwrap()).0;
    }
}

fn main() {
    let ms = [11u64, 12, 13];
    for &m in &ms {
        let spec = EnumerationSpec { n: 9, m, non_trivial_only: true };
        let mut corpus = Vec::new();
        enumerate_sequences(&spec, |s| {
            if solve_exact(s, ChildOrder::LexmaxFirst, None).outcome == Outcome::Realizable
                && solve_lexmax(s).outcome != Outcome::Realizable
            {
                corpus.push(s.clone());
            }
        })
        .unwrap();
        for use_rule2 in [true, false] {
            let fails: Vec<&Sequence> =
                corpus.iter().filter(|s| !pipeline_sticky(s, use_rule2)).collect();
            println!("m={m} rule2={use_rule2} sticky fails={}", fails.len());
            if fails.len() <= 15 {
                for s in fails {
                    println!("   hard: {s}");
                }
            }
        }
    }
}

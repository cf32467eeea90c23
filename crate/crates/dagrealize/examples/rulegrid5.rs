//! Dev harness round 5: raw per-basis failure counts and an exhaustive
//! union search against the target failure counts (0, 1, 12).

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

/// interleaved pipeline; rule1_mirror / rule2 / rule2_mirror configurable
fn pipe(seq: &Sequence, rule1_mirror: bool, rule2: bool, rule2_mirror: bool) -> bool {
    let mut cur = seq.canonical_sort();
    loop {
        if cur.is_source_sink() {
            return realize_source_sink(&cur).is_some();
        }
        let (len, label) = vmin_len_lexmax(&cur);
        if len == 1 {
            cur = reduce_by_tuple(&cur, label.unwrap()).0;
            continue;
        }
        if rule1_mirror {
            let m = cur.mirror().canonical_sort();
            let (lm, lab) = vmin_len_lexmax(&m);
            if lm == 1 {
                cur = reduce_by_tuple(&m, lab.unwrap()).0.mirror().canonical_sort();
                continue;
            }
        }
        if rule2 {
            if let Some(r) = rule2_once(&cur) {
                cur = r;
                continue;
            }
            if rule2_mirror {
                let m = cur.mirror().canonical_sort();
                if let Some(r) = rule2_once(&m) {
                    cur = r.mirror().canonical_sort();
                    continue;
                }
            }
        }
        if cur.num_sources() == 0 || len == 0 {
            return false;
        }
        cur = reduce_by_tuple(&cur, label.unwrap()).0;
    }
}

fn main() {
    let ms = [11u64, 12, 13];
    let targets = [0usize, 1, 12];
    let names = [
        "lexmax_mir",            // 0: pure lexmax on mirror
        "int_full",              // 1: interleaved full rules, primal
        "int_full_mir",          // 2: ... started mirrored
        "int_r1only",            // 3: rule1 both sides only, primal
        "int_r1only_mir",        // 4
        "int_r1primal",          // 5: rule1 primal only
        "int_r1primal_mir",      // 6
        "int_r1m_r2p",           // 7: rule1 both, rule2 primal only
        "int_r1m_r2p_mir",       // 8
    ];
    let mut masks: Vec<Vec<u32>> = Vec::new();
    for &m in &ms {
        let mut corpus_masks = Vec::new();
        let spec = EnumerationSpec { n: 9, m, non_trivial_only: true };
        enumerate_sequences(&spec, |s| {
            if solve_exact(s, ChildOrder::LexmaxFirst, None).outcome != Outcome::Realizable
                || solve_lexmax(s).outcome == Outcome::Realizable
            {
                return;
            }
            let mir = s.mirror();
            let mut mask = 0u32;
            let bits: [bool; 9] = [
                solve_lexmax(&mir).outcome == Outcome::Realizable,
                pipe(s, true, true, true),
                pipe(&mir, true, true, true),
                pipe(s, true, false, false),
                pipe(&mir, true, false, false),
                pipe(s, false, false, false),
                pipe(&mir, false, false, false),
                pipe(s, true, true, false),
                pipe(&mir, true, true, false),
            ];
            for (i, b) in bits.iter().enumerate() {
                if *b {
                    mask |= 1 << i;
                }
            }
            corpus_masks.push(mask);
        })
        .unwrap();
        masks.push(corpus_masks);
    }

    println!("single-basis failure counts (m=11,12,13):");
    for (i, name) in names.iter().enumerate() {
        let fails: Vec<usize> = masks
            .iter()
            .map(|c| c.iter().filter(|&&x| x & (1 << i) == 0).count())
            .collect();
        println!("  {name}: {fails:?}");
    }
    for union in 1u32..(1 << names.len()) {
        let fails: Vec<usize> = masks
            .iter()
            .map(|c| c.iter().filter(|&&x| x & union == 0).count())
            .collect();
        if fails == targets {
            let sel: Vec<&str> = (0..names.len())
                .filter(|&b| union & (1 << b) != 0)
                .map(|b| names[b])
                .collect();
            println!("*** HIT union {sel:?}");
        }
    }
    println!("done");
}

//! Dev harness: grid-search rule-pipeline variants against known count
//! targets for n = 9, m in {11, 12, 13}.

use dagrealize::exact::{
    compute_vmin, reduce_by_tuple, solve_exact, solve_lexmax, ChildOrder, Outcome,
};
use dagrealize::generate::{enumerate_sequences, EnumerationSpec};
use dagrealize::seq::{Entry, Sequence};
use dagrealize::topo::realize_source_sink;

#[derive(Clone, Copy, Debug)]
struct Config {
    rule1_mirror: bool,
    rule2: bool,
    rule2_mirror: bool,
    rule3: u8, // 0 off, 1 narrow guard (a<=q, b<=s), 2 broad (no guard)
    retry_mirror: bool,
}

fn vmin_len_and_lexmax(seq: &Sequence) -> (usize, Option<u32>) {
    if seq.num_streams() == 0 || seq.num_sources() == 0 {
        return (0, None);
    }
    let v = compute_vmin(seq);
    (v.len(), v.lexmax().map(|m| m.label))
}

fn rule1(seq: &Sequence, mirror: bool) -> Option<Sequence> {
    let (len, label) = vmin_len_and_lexmax(seq);
    if len == 1 {
        return Some(reduce_by_tuple(seq, label.unwrap()).0);
    }
    if mirror {
        let m = seq.mirror().canonical_sort();
        let (len, label) = vmin_len_and_lexmax(&m);
        if len == 1 {
            return Some(reduce_by_tuple(&m, label.unwrap()).0.mirror().canonical_sort());
        }
    }
    None
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

fn rule2(seq: &Sequence, mirror: bool) -> Option<Sequence> {
    if let Some(r) = rule2_once(seq) {
        return Some(r);
    }
    if mirror {
        let m = seq.mirror().canonical_sort();
        if let Some(r) = rule2_once(&m) {
            return Some(r.mirror().canonical_sort());
        }
    }
    None
}

fn rule3(seq: &Sequence, mode: u8) -> Option<Sequence> {
    if mode == 0 || seq.n() == 0 {
        return None;
    }
    let n = seq.n() as u32;
    let q = seq.num_sources() as u32;
    let s = seq.num_sinks() as u32;
    let mut pivots: Vec<&Entry> = seq.entries().iter().filter(|e| e.tuple.is_stream()).collect();
    pivots.sort_by_key(|e| e.label);
    for e in pivots {
        if e.tuple.a + e.tuple.b != n - 1 {
            continue;
        }
        if mode == 1 && (e.tuple.a > q || e.tuple.b > s) {
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
        if feeders.len() as u32 > e.tuple.a || drains.len() as u32 > e.tuple.b {
            continue; // would overshoot the pivot's demand: unrealizable anyway
        }
        if feeders.is_empty() && drains.is_empty() {
            continue;
        }
        let mut entries = Vec::new();
        for o in seq.entries() {
            if feeders.contains(&o.label) || drains.contains(&o.label) {
                continue;
            }
            let mut t = o.tuple;
            if o.label == e.label {
                t.a -= feeders.len() as u32;
                t.b -= drains.len() as u32;
            }
            if !t.is_zero() {
                entries.push(Entry { label: o.label, tuple: t });
            }
        }
        return Some(Sequence::from_entries(entries).canonical_sort());
    }
    None
}

fn pipeline_once(seq: &Sequence, cfg: Config) -> bool {
    let mut cur = seq.canonical_sort();
    loop {
        if cur.is_source_sink() {
            return realize_source_sink(&cur).is_some();
        }
        if let Some(next) = rule1(&cur, cfg.rule1_mirror) {
            cur = next;
            continue;
        }
        if cfg.rule2 {
            if let Some(next) = rule2(&cur, cfg.rule2_mirror) {
                cur = next;
                continue;
            }
        }
        if let Some(next) = rule3(&cur, cfg.rule3) {
            cur = next;
            continue;
        }
        if cur.num_sources() == 0 {
            return false;
        }
        let (len, label) = vmin_len_and_lexmax(&cur);
        if len == 0 {
            return false;
        }
        cur = reduce_by_tuple(&cur, label.unwrap()).0;
    }
}

fn pipeline(seq: &Sequence, cfg: Config) -> bool {
    if pipeline_once(seq, cfg) {
        return true;
    }
    cfg.retry_mirror && pipeline_once(&seq.mirror(), cfg)
}

fn main() {
    let ms = [11u64, 12, 13];
    let targets = [0u64, 1, 12];
    // collect the non-lexmax realizable sequences once per m
    let mut corpora: Vec<Vec<Sequence>> = Vec::new();
    for &m in &ms {
        let mut corpus = Vec::new();
        let spec = EnumerationSpec { n: 9, m, non_trivial_only: true };
        enumerate_sequences(&spec, |s| {
            if solve_exact(s, ChildOrder::LexmaxFirst, None).outcome == Outcome::Realizable
                && solve_lexmax(s).outcome != Outcome::Realizable
            {
                corpus.push(s.clone());
            }
        })
        .unwrap();
        corpus.shrink_to_fit();
        corpora.push(corpus);
    }
    println!(
        "nonlexmax corpora sizes: {:?} (want 22,106,418)",
        corpora.iter().map(|c| c.len()).collect::<Vec<_>>()
    );

    for rule1_mirror in [true, false] {
        for rule2 in [true, false] {
            for rule2_mirror in [true, false] {
                if !rule2 && rule2_mirror {
                    continue;
                }
                for rule3 in [0u8, 1, 2] {
                    for retry_mirror in [true, false] {
                        let cfg = Config { rule1_mirror, rule2, rule2_mirror, rule3, retry_mirror };
                        let fails: Vec<u64> = corpora
                            .iter()
                            .map(|c| c.iter().filter(|s| !pipeline(s, cfg)).count() as u64)
                            .collect();
                        let hit = fails == targets;
                        println!("{}{cfg:?} -> {fails:?}", if hit { "*** " } else { "" });
                    }
                }
            }
        }
    }
}

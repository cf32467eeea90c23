//! Dev harness round 6: pipeline failure counts over the FULL non-trivial
//! dag corpus (not intersected with lexmax failures). Targets (0, 1, 12)
//! for m = 11, 12, 13.

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
    let names = [
        "lexmax",                 // sanity: should be 22,106,418
        "lexmax_mir",             // pure lexmax mirrored
        "int_full",               // interleaved full rules
        "int_full_mir",
        "int_r1only",
        "int_r1only_mir",
        "int_r1m_r2p",
        "int_r1m_r2p_mir",
        "lexmax||int_full",       // sequential composition
        "lexmax||int_full_mir",
        "lexmax||lexmax_mir",
        "int_full||int_full_mir",
    ];
    let k = names.len();
    let mut fails = vec![[0usize; 3]; k];
    for (mi, &m) in ms.iter().enumerate() {
        let spec = EnumerationSpec { n: 9, m, non_trivial_only: true };
        enumerate_sequences(&spec, |s| {
            if solve_exact(s, ChildOrder::LexmaxFirst, None).outcome != Outcome::Realizable {
                return;
            }
            let mir = s.mirror();
            let lex = solve_lexmax(s).outcome == Outcome::Realizable;
            let lex_m = solve_lexmax(&mir).outcome == Outcome::Realizable;
            let f = pipe(s, true, true, true);
            let f_m = pipe(&mir, true, true, true);
            let r1 = pipe(s, true, false, false);
            let r1_m = pipe(&mir, true, false, false);
            let r2p = pipe(s, true, true, false);
            let r2p_m = pipe(&mir, true, true, false);
            let solved = [
                lex,
                lex_m,
                f,
                f_m,
                r1,
                r1_m,
                r2p,
                r2p_m,
                lex || f,
                lex || f_m,
                lex || lex_m,
                f || f_m,
            ];
            for (i, ok) in solved.iter().enumerate() {
                if !ok {
                    fails[i][mi] += 1;
                }
            }
        })
        .unwrap();
    }
    for (i, name) in names.iter().enumerate() {
        let hit = fails[i] == [0, 1, 12];
        println!("{}{name}: {:?}", if hit { "*** HIT " } else { "" }, fails[i]);
    }
}

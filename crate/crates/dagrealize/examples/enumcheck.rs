use dagrealize::generate::{enumerate_sequences, EnumerationSpec};
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    for arg in &args {
        let m: u64 = arg.parse().unwrap();
        let spec = EnumerationSpec { n: 9, m, non_trivial_only: false };
        let t0 = Instant::now();
        let mut c = 0u64;
        enumerate_sequences(&spec, |_| c += 1).unwrap();
        println!("m={m} candidates={c} elapsed={:?}", t0.elapsed());
    }
}

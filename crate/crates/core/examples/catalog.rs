//! Enumerates the hyperbolic diagrams and writes the symmetrizable ones as JSON lines.
use std::time::Instant;

use pisys::catalog;

fn main() {
    let t = Instant::now();
    let all = catalog::enumerate_hyperbolic(3, 10, false).unwrap();
    let mut per_rank = vec![(0, 0); 11];
    for e in &all {
        per_rank[e.rank].0 += 1;
        if e.symmetrizable {
            per_rank[e.rank].1 += 1;
        }
    }
    for (r, (n, s)) in per_rank.iter().enumerate().skip(3) {
        println!("rank {r:>2}: {n:>3} hyperbolic, {s:>3} symmetrizable");
    }
    println!("total {} / {} in {:.1?}", all.len(), all.iter().filter(|e| e.symmetrizable).count(), t.elapsed());

    let cat = catalog::standard_catalog();
    let path = std::env::temp_dir().join("hyperbolic.jsonl");
    catalog::write_jsonl(&cat, std::fs::File::create(&path).unwrap()).unwrap();
    let named: Vec<String> = cat.iter().filter(|e| e.serial.is_some()).map(|e| e.label()).collect();
    println!("wrote {} entries to {}; with serials: {}", cat.len(), path.display(), named.join(" "));
}

use pisys::catalog::enumerate_hyperbolic;

#[test]
fn catalog_totals() {
    let t = std::time::Instant::now();
    let all = enumerate_hyperbolic(3, 10, false).unwrap();
    let sym = all.iter().filter(|e| e.symmetrizable).count();
    let mut per_rank = [0usize; 11];
    for e in &all {
        per_rank[e.rank] += 1;
    }
    eprintln!("{:?} {:?} {}", per_rank, t.elapsed(), sym);
    assert_eq!(all.len(), 238);
    assert_eq!(sym, 142);
}

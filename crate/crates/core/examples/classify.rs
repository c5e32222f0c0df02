//! Kind, determinant and signature of a few diagrams.
use pisys::families;
use pisys::Gcm;

fn main() {
    let mut list: Vec<(String, Gcm)> = ["G2", "F4", "E8^(1)", "D4^(3)", "A7++", "D8++", "E10", "E11", "HG2^(1)"]
        .iter()
        .map(|n| (n.to_string(), families::by_name(n).unwrap()))
        .collect();
    // a non-symmetrizable cycle
    list.push(("cycle".into(), Gcm::new(vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]]).unwrap()));
    for (name, g) in list {
        let c = match g.classify() {
            Ok(c) => c,
            Err(e) => {
                println!("{name:>8}: {e}");
                continue;
            }
        };
        println!(
            "{name:>8}: rank {:>2}  {:<10} det {:>4}  signature {:?}  hyperbolic {}  symmetrizable {}",
            g.rank(),
            c.kind.to_string(),
            c.det,
            c.signature,
            c.hyperbolic,
            g.is_symmetrizable()
        );
    }
}

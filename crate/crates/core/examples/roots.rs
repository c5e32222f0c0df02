//! Real roots of E10 by height, membership tests and descent to a simple root.
use pisys::families;
use pisys::roots::{height, RootContext};

fn main() {
    let ctx = RootContext::new(families::e_series(10).unwrap()).unwrap();
    let roots = ctx.real_roots_bounded(Some(12)).unwrap();
    let mut per_height = vec![0; 13];
    for r in &roots {
        per_height[height(r) as usize] += 1;
    }
    println!("positive real roots of E10 by height: {:?}", &per_height[1..]);

    // a real root, the null root of the E8^(1) inside, twice it, and a mixed vector
    let delta = vec![2, 4, 6, 5, 4, 3, 2, 1, 0, 3];
    let two_delta: Vec<i64> = delta.iter().map(|x| 2 * x).collect();
    for v in [vec![1, 2, 3, 2, 2, 1, 0, 0, 0, 1], delta, two_delta, vec![1, -1, 0, 0, 0, 0, 0, 0, 0, 0]] {
        println!("{v:?}: {:?}, norm {}", ctx.is_root(&v).unwrap(), ctx.norm(&v));
    }

    let beta = roots.last().unwrap();
    let (word, p, sign) = ctx.descend_to_simple(beta).unwrap();
    println!("{beta:?} = w({sign} alpha_{p}) with w = {word:?}");
}

use std::time::Instant;

use pisys::families;
use pisys::search::{self, SearchOutcome};

fn main() {
    let e10 = families::e_series(10).unwrap();
    for b in [families::overextended('A', 8).unwrap(), families::overextended('D', 8).unwrap()] {
        let t = Instant::now();
        let out = search::find_pisystem_default(&e10, &b).unwrap();
        match out {
            SearchOutcome::Found(c) => {
                println!("found in {:.1?}: ok={}", t.elapsed(), search::verify(&c).ok);
                for r in &c.roots {
                    println!("  {r:?}");
                }
            }
            other => println!("{other:?} after {:.1?}", t.elapsed()),
        }
    }
}

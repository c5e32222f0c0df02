//! Refutations by determinant, signature, root lengths and mod-d obstructions.
use pisys::catalog::serial_gcm;
use pisys::criteria::{forbidden_check, necessary_checks};
use pisys::families;

fn main() {
    for n in [8, 12, 15, 16, 20] {
        let r = necessary_checks(&families::e_series(n + 2).unwrap(), &families::overextended('A', n).unwrap()).unwrap();
        println!("A{n}++ in E{}: {:?} {:?}", n + 2, r.verdict, r.reasons);
    }
    let r = necessary_checks(&families::f4(), &families::g2()).unwrap();
    println!("G2 in F4: {:?} {:?}", r.verdict, r.reasons);
    for (x, b) in [(219, 163), (218, 162), (219, 207)] {
        let r = forbidden_check(&serial_gcm(x).unwrap(), &serial_gcm(b).unwrap()).unwrap();
        println!("G{b} in G{x}: {:?}", r.verdict);
        for reason in r.reasons {
            println!("  {}", serde_json::to_string(&reason).unwrap());
        }
    }
}

//! Chaining certificates: B8++ ⪰ B7++ ⪰ B6++ ⪰ B5++ by contraction.
use pisys::families;
use pisys::principles;
use pisys::search::{compose, verify, Certificate};

fn main() {
    let mut cert = Certificate::identity(&families::overextended('B', 8).unwrap());
    for _ in 0..3 {
        let step = Certificate::from_principle(&principles::apply_c(&cert.target, &[4, 5]).unwrap());
        cert = compose(&cert, &step).unwrap();
        println!("rank {} -> {}: verified {}", cert.ambient.rank(), cert.target.rank(), verify(&cert).ok);
    }
    println!("{}", cert.how());
    println!("B5++ ≅ type: {}", cert.target.is_isomorphic(&families::overextended('B', 5).unwrap()).unwrap());
    for r in &cert.roots {
        println!("  {r:?}");
    }
}

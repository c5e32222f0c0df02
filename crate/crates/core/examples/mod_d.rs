//! Mod-d realizability and bar reduction.
use pisys::criteria::{bar_reduce, mod_d_realizable};
use pisys::families::{self, from_edges};
use pisys::roots::RootContext;
use pisys::Gcm;

fn main() {
    let a1 = families::a(1).unwrap();
    let a2 = families::a(2).unwrap();
    let cases = [
        ("A2 in A1 mod 2", &a1, 2, a2.rows()),
        ("A2 x A1 in A2 mod 2", &a2, 2, from_edges(3, &[(0, 1, -1, -1)]).rows()),
        ("A1 x A1 in A1 mod 3", &a1, 3, Gcm::identity_type(2).rows()),
        ("A2 in A2 mod 2", &a2, 2, a2.rows()),
    ];
    for (what, y, d, m) in cases {
        println!("{what}: {}", mod_d_realizable(y, d, &m).unwrap());
    }

    // C3: the long root alpha_2 pairs evenly with the rest, so bar reduction
    // onto Y = {2} keeps pairings mod 2
    let c3 = RootContext::new(families::c(3).unwrap()).unwrap();
    let sigma = vec![vec![2, 2, 1], vec![0, 2, 1], vec![0, 0, -1]];
    let bar = bar_reduce(&c3, &[2], 2, &sigma).unwrap();
    println!("reduced roots {:?}, pairings {:?}", bar.roots, bar.matrix);
}

//! Checking proposed π-systems.
use pisys::families;
use pisys::pisystem;
use pisys::roots::RootContext;

fn main() {
    // G2 with alpha_0 long: the long roots alpha_0 and alpha_0 + 3 alpha_1 form an A2
    let g2 = RootContext::new(families::g2()).unwrap();
    let rep = pisystem::check(&g2, &[vec![1, 0], vec![1, 3]]).unwrap();
    println!("G2 long roots: valid {} type {:?}", rep.valid, rep.type_matrix.map(|g| g.rows()));

    // alpha_1 and alpha_1 + alpha_2 in A2 differ by a root
    let a2 = RootContext::new(families::a(2).unwrap()).unwrap();
    let rep = pisystem::check(&a2, &[vec![1, 0], vec![1, 1]]).unwrap();
    println!("A2: valid {} violations {:?}", rep.valid, rep.violations);

    // four orthogonal long roots of D4
    let d4 = RootContext::new(families::d(4).unwrap()).unwrap();
    let sigma = vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 2, 1, 1]];
    let rep = pisystem::check(&d4, &sigma).unwrap();
    println!("D4: valid {} independent {} pairings {:?}", rep.valid, rep.linearly_independent, rep.pairings);
}

//! DOT and text renderings.
use pisys::catalog::serial_gcm;
use pisys::io;

fn main() {
    let g = serial_gcm(219).unwrap();
    print!("{}", io::to_dot(&g, "G219"));
    print!("{}", io::to_text(&serial_gcm(159).unwrap()));
    println!("{}", io::diagram_json(&pisys::families::e_series(10).unwrap()));
}

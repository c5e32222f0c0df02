//! Bounded search for B ⪯ A, with the criteria consulted first.
use pisys::catalog::serial_gcm;
use pisys::families;
use pisys::search::{find_pisystem, SearchOutcome};

fn main() {
    let pairs = [
        ("E10", families::e_series(10).unwrap(), "D8++", families::overextended('D', 8).unwrap()),
        ("G223", serial_gcm(223).unwrap(), "G212", serial_gcm(212).unwrap()),
        ("G160", serial_gcm(160).unwrap(), "G130", serial_gcm(130).unwrap()),
        ("E18", families::e_series(18).unwrap(), "A16++", families::overextended('A', 16).unwrap()),
        ("A2", families::a(2).unwrap(), "A1xA1", pisys::Gcm::identity_type(2)),
    ];
    for (na, a, nb, b) in pairs {
        let out = find_pisystem(&a, &b, 12, 10_000_000);
        let verdict = match out {
            Ok(SearchOutcome::Found(c)) => format!("certified: {:?}", c.roots),
            Ok(SearchOutcome::Refuted(r)) => format!("refuted: {:?}", r.reasons),
            Ok(other) => format!("{other:?}"),
            Err(e) => format!("error: {e}"),
        };
        println!("{nb} in {na}: {verdict}");
    }
}

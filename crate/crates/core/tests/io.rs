use pisys::catalog::{self, builtin_serial_diagrams};
use pisys::io;

#[test]
fn catalog_entries_round_trip_through_json() {
    let entries = catalog::enumerate_hyperbolic(3, 10, false).unwrap();
    for e in &entries {
        let text = io::diagram_json(&e.gcm).to_string();
        let back = io::parse_diagram(&text).unwrap();
        assert!(back.is_isomorphic(&e.gcm).unwrap());
    }
    let mut buf = Vec::new();
    catalog::write_jsonl(&entries, &mut buf).unwrap();
    let again = catalog::read_jsonl(&buf[..]).unwrap();
    assert_eq!(again.len(), entries.len());
    for (a, b) in entries.iter().zip(&again) {
        assert_eq!(a.canonical, b.canonical);
        assert_eq!(a.det, b.det);
    }
}

#[test]
fn shipped_serials_are_consistent() {
    let cat = catalog::standard_catalog();
    let diagrams = builtin_serial_diagrams();
    assert_eq!(diagrams.len(), 27);
    for (s, _, g) in &diagrams {
        let c = g.classify().unwrap();
        assert!(c.hyperbolic && g.is_symmetrizable(), "G{s}");
        let e = cat.iter().find(|e| e.serial == Some(*s)).unwrap_or_else(|| panic!("G{s} not attached"));
        assert_eq!(e.canonical, g.canonical_key().unwrap());
    }
    // transposed pairs
    let get = |s| catalog::serial_gcm(s).unwrap();
    for (a, b) in [(159, 160), (162, 163), (218, 219), (236, 237), (129, 130)] {
        assert!(get(a).transpose().is_isomorphic(&get(b)).unwrap(), "G{a} G{b}");
    }
}

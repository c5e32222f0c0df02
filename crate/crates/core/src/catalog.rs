//! Enumeration of hyperbolic Dynkin diagrams of ranks 3 to 10, and the
//! catalog file format.
//!
//! Every hyperbolic diagram H has a vertex whose removal leaves a connected
//! diagram, which is then of finite or affine type. So H is found by adding
//! one vertex to a connected finite/affine diagram of rank one less. The
//! connected finite/affine diagrams are grown the same way.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families;
use crate::gcm::{self, Gcm, Kind};

/// Non-edges plus the eight edge types with a_ij a_ji ≤ 4.
const EDGES: [(i64, i64); 9] =
    [(0, 0), (-1, -1), (-1, -2), (-2, -1), (-1, -3), (-3, -1), (-1, -4), (-4, -1), (-2, -2)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Matrix in canonical form.
    pub gcm: Gcm,
    pub canonical: Vec<u8>,
    pub rank: usize,
    pub det: i64,
    pub symmetrizable: bool,
    pub serial: Option<u32>,
    pub names: Vec<String>,
    /// Position in the enumeration order (rank, then canonical key).
    pub id: usize,
}

impl CatalogEntry {
    pub fn label(&self) -> String {
        match self.serial {
            Some(s) => format!("G{s}"),
            None => format!("#{}", self.id),
        }
    }
}

/// Connected diagrams of finite or affine type of each rank up to `max`.
/// Index `k` holds rank `k` (index 0 is empty).
pub fn connected_fa(max: usize) -> Vec<Vec<Gcm>> {
    let mut levels: Vec<Vec<Gcm>> = vec![Vec::new(), vec![Gcm::identity_type(1)]];
    for n in 2..=max {
        let prev = &levels[n - 1];
        let found: Vec<Gcm> = prev
            .par_iter()
            .flat_map_iter(|g| extensions(g, false))
            .collect();
        levels.push(dedup(found));
    }
    levels.truncate(max + 1);
    levels
}

fn dedup(list: Vec<Gcm>) -> Vec<Gcm> {
    let mut by_key: BTreeMap<Vec<u8>, Gcm> = BTreeMap::new();
    for g in list {
        let c = g.canonical_form().expect("rank within limits");
        by_key.entry(c.canonical_key().expect("rank within limits")).or_insert(c);
    }
    by_key.into_values().collect()
}

/// All one-vertex extensions of `base` (the new vertex is last) that are
/// hyperbolic (`hyperbolic = true`) or connected finite/affine (`false`).
fn extensions(base: &Gcm, hyperbolic: bool) -> Vec<Gcm> {
    let m = base.rank();
    let n = m + 1;
    let mut a = vec![0i64; n * n];
    for i in 0..m {
        for j in 0..m {
            a[i * n + j] = base.get(i, j);
        }
    }
    a[m * n + m] = 2;
    let mut out = Vec::new();
    grow(&mut a, n, 0, false, hyperbolic, &mut out);
    out
}

fn grow(a: &mut Vec<i64>, n: usize, k: usize, any_edge: bool, hyp: bool, out: &mut Vec<Gcm>) {
    let v = n - 1;
    if k == v {
        if !any_edge {
            return;
        }
        let ok = if hyp {
            gcm::is_hyperbolic(n, a)
        } else {
            gcm::connected_kind(n, a) != Kind::Indefinite
        };
        if ok {
            out.push(Gcm::from_flat(n, a.clone()).expect("valid by construction"));
        }
        return;
    }
    for &(x, y) in &EDGES {
        a[v * n + k] = x;
        a[k * n + v] = y;
        if x != 0 && !prefix_ok(a, n, k) {
            continue;
        }
        grow(a, n, k + 1, any_edge || x != 0, hyp, out);
    }
    a[v * n + k] = 0;
    a[k * n + v] = 0;
}

/// The component of the new vertex inside {0..=k, new} must be finite or
/// affine unless it could still become the whole diagram.
fn prefix_ok(a: &[i64], n: usize, k: usize) -> bool {
    let v = n - 1;
    let mut verts: Vec<usize> = (0..=k).collect();
    verts.push(v);
    // component of v restricted to verts
    let mut comp = vec![v];
    let mut i = 0;
    while i < comp.len() {
        let x = comp[i];
        i += 1;
        for &u in &verts {
            if !comp.contains(&u) && a[x * n + u] != 0 {
                comp.push(u);
            }
        }
    }
    if comp.len() == n {
        return true;
    }
    let sub: Vec<i64> = comp.iter().flat_map(|&p| comp.iter().map(move |&q| a[p * n + q])).collect();
    gcm::connected_kind(comp.len(), &sub) != Kind::Indefinite
}

/// All hyperbolic diagrams with rank in `rank_min..=rank_max`, up to
/// isomorphism, sorted by rank and canonical key.
pub fn enumerate_hyperbolic(rank_min: usize, rank_max: usize, symmetrizable_only: bool) -> Result<Vec<CatalogEntry>> {
    if rank_min < 3 || rank_max > 10 || rank_min > rank_max {
        return Err(Error::RankOutOfRange(rank_min, rank_max));
    }
    let fa = connected_fa(rank_max - 1);
    let mut entries = Vec::new();
    for n in rank_min..=rank_max {
        let found: Vec<Gcm> = fa[n - 1].par_iter().flat_map_iter(|g| extensions(g, true)).collect();
        for g in dedup(found) {
            let symmetrizable = g.is_symmetrizable();
            if symmetrizable_only && !symmetrizable {
                continue;
            }
            entries.push(make_entry(g, symmetrizable));
        }
    }
    for (i, e) in entries.iter_mut().enumerate() {
        e.id = i;
    }
    Ok(entries)
}

fn make_entry(g: Gcm, symmetrizable: bool) -> CatalogEntry {
    let canonical = g.canonical_key().expect("rank within limits");
    let det = i64::try_from(g.det()).expect("determinant fits");
    let names = families::describe(&g).into_iter().collect();
    CatalogEntry { rank: g.rank(), gcm: g, canonical, det, symmetrizable, serial: None, names, id: 0 }
}

/// Serial numbers for some catalog entries, keyed by canonical key.
#[derive(Clone, Debug, Default)]
pub struct SerialMap {
    pub by_key: HashMap<Vec<u8>, (u32, Option<String>)>,
}

#[derive(Serialize, Deserialize)]
struct SerialRecord {
    serial: u32,
    key: String,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    entries: Option<Vec<Vec<i64>>>,
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn unhex(s: &str) -> Option<Vec<u8>> {
    if s.len() % 2 != 0 {
        return None;
    }
    (0..s.len()).step_by(2).map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok()).collect()
}

/// The serial file shipped with the crate.
pub const BUILTIN_SERIALS: &str = include_str!("../data/serials.json");

pub fn parse_serial_map(text: &str) -> Result<SerialMap> {
    let records: Vec<SerialRecord> =
        serde_json::from_str(text).map_err(|e| Error::BadParameter(format!("serial file: {e}")))?;
    let mut map = SerialMap::default();
    let mut seen = std::collections::HashSet::new();
    for r in records {
        if !seen.insert(r.serial) {
            return Err(Error::DuplicateSerial(r.serial));
        }
        let key = unhex(&r.key).ok_or_else(|| Error::UnknownCanonicalKey(r.key.clone()))?;
        if map.by_key.insert(key, (r.serial, r.name)).is_some() {
            return Err(Error::UnknownCanonicalKey(r.key));
        }
    }
    Ok(map)
}

pub fn load_serial_map(path: &Path) -> Result<SerialMap> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::BadParameter(e.to_string()))?;
    parse_serial_map(&text)
}

/// Serial, name and matrix of every shipped serial record.
pub fn builtin_serial_diagrams() -> Vec<(u32, Option<String>, Gcm)> {
    let records: Vec<SerialRecord> = serde_json::from_str(BUILTIN_SERIALS).expect("shipped serial file parses");
    records
        .into_iter()
        .filter_map(|r| Some((r.serial, r.name, Gcm::new(r.entries?).ok()?)))
        .collect()
}

pub fn serial_gcm(serial: u32) -> Option<Gcm> {
    builtin_serial_diagrams().into_iter().find(|d| d.0 == serial).map(|d| d.2)
}

pub fn builtin_serials() -> SerialMap {
    parse_serial_map(BUILTIN_SERIALS).expect("shipped serial file parses")
}

/// Annotates entries; returns the serials that matched nothing.
pub fn attach_serials(entries: &mut [CatalogEntry], map: &SerialMap) -> Vec<u32> {
    let mut used = std::collections::HashSet::new();
    for e in entries.iter_mut() {
        if let Some((s, name)) = map.by_key.get(&e.canonical) {
            e.serial = Some(*s);
            used.insert(*s);
            if let Some(n) = name {
                if !e.names.contains(n) {
                    e.names.push(n.clone());
                }
            }
        }
    }
    let mut missing: Vec<u32> = map.by_key.values().map(|v| v.0).filter(|s| !used.contains(s)).collect();
    missing.sort_unstable();
    missing
}

/// One line of the JSON-lines catalog file.
#[derive(Serialize, Deserialize)]
struct EntryRecord {
    id: usize,
    rank: usize,
    entries: Vec<Vec<i64>>,
    key: String,
    det: i64,
    symmetrizable: bool,
    #[serde(default)]
    serial: Option<u32>,
    #[serde(default)]
    names: Vec<String>,
}

pub fn write_jsonl<W: Write>(entries: &[CatalogEntry], mut w: W) -> std::io::Result<()> {
    for e in entries {
        let rec = EntryRecord {
            id: e.id,
            rank: e.rank,
            entries: e.gcm.rows(),
            key: hex(&e.canonical),
            det: e.det,
            symmetrizable: e.symmetrizable,
            serial: e.serial,
            names: e.names.clone(),
        };
        serde_json::to_writer(&mut w, &rec)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line.map_err(|e| Error::BadParameter(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: EntryRecord =
            serde_json::from_str(&line).map_err(|e| Error::BadParameter(format!("catalog line: {e}")))?;
        let g = Gcm::new(rec.entries)?;
        let canonical = g.canonical_key()?;
        out.push(CatalogEntry {
            rank: g.rank(),
            gcm: g,
            canonical,
            det: rec.det,
            symmetrizable: rec.symmetrizable,
            serial: rec.serial,
            names: rec.names,
            id: rec.id,
        });
    }
    Ok(out)
}

/// The symmetrizable catalog of ranks 3 to 10 with the shipped serials.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let mut v = enumerate_hyperbolic(3, 10, true).expect("valid range");
    attach_serials(&mut v, &builtin_serials());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fa_counts() {
        let fa = connected_fa(3);
        // rank 2: A2, B2, G2, A1^(1), A2^(2)
        assert_eq!(fa[2].len(), 5);
        // rank 3: A3, B3, C3 and A2^(1), C2^(1), D3^(2), A4^(2), G2^(1), D4^(3)
        assert_eq!(fa[3].len(), 9);
    }

    #[test]
    fn hex_round_trip() {
        let k = vec![3u8, 2, 255, 0];
        assert_eq!(unhex(&hex(&k)).unwrap(), k);
    }
}

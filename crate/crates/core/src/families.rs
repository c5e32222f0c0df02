//! Named families of Cartan matrices: finite and affine types, the
//! overextended diagrams A_n^{++}, D_n^{++} and the series E_n.
//!
//! Finite types follow Bourbaki numbering shifted to 0-based indices. Affine
//! types put α_0 at index 0.

use std::collections::HashMap;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::gcm::{Gcm, Kind, MAX_CANON_RANK};

/// Builds a matrix from a list of edges `(i, j, a_ij, a_ji)`.
pub fn from_edges(n: usize, edges: &[(usize, usize, i64, i64)]) -> Gcm {
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        a[i * n + i] = 2;
    }
    for &(i, j, x, y) in edges {
        a[i * n + j] = x;
        a[j * n + i] = y;
    }
    Gcm::from_flat(n, a).expect("edge list describes a GCM")
}

fn chain(n: usize) -> Vec<(usize, usize, i64, i64)> {
    (1..n).map(|i| (i - 1, i, -1, -1)).collect()
}

fn bad(msg: &str) -> Error {
    Error::BadParameter(msg.to_string())
}

pub fn a(n: usize) -> Result<Gcm> {
    if n == 0 {
        return Err(bad("A_n needs n >= 1"));
    }
    Ok(from_edges(n, &chain(n)))
}

/// B_n with α_n short.
pub fn b(n: usize) -> Result<Gcm> {
    if n < 2 {
        return Err(bad("B_n needs n >= 2"));
    }
    let mut e = chain(n - 1);
    e.push((n - 2, n - 1, -1, -2));
    Ok(from_edges(n, &e))
}

pub fn c(n: usize) -> Result<Gcm> {
    Ok(b(n)?.transpose())
}

pub fn d(n: usize) -> Result<Gcm> {
    if n < 4 {
        return Err(bad("D_n needs n >= 4"));
    }
    let mut e = chain(n - 1);
    e.push((n - 3, n - 1, -1, -1));
    Ok(from_edges(n, &e))
}

pub fn e(n: usize) -> Result<Gcm> {
    if !(6..=8).contains(&n) {
        return Err(bad("E_n is finite only for n = 6, 7, 8"));
    }
    // α1 - α3 - α4 - ... - αn, α2 on α4
    let mut ed = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
    for i in 3..n {
        ed.push((i - 1, i, -1, -1));
    }
    Ok(from_edges(n, &ed))
}

/// α1 - α2 ⇒ α3 - α4 with α3, α4 short.
pub fn f4() -> Gcm {
    from_edges(4, &[(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)])
}

/// α1 long, α2 short.
pub fn g2() -> Gcm {
    from_edges(2, &[(0, 1, -1, -3)])
}

/// Parses names such as `A3`, `B4`, `E8`, `G2`.
pub fn finite(name: &str) -> Result<Gcm> {
    let (letter, n) = split_name(name)?;
    match letter {
        'A' => a(n),
        'B' => b(n),
        'C' => c(n),
        'D' => d(n),
        'E' => e(n),
        'F' if n == 4 => Ok(f4()),
        'G' if n == 2 => Ok(g2()),
        _ => Err(bad(name)),
    }
}

fn split_name(name: &str) -> Result<(char, usize)> {
    let mut it = name.chars();
    let letter = it.next().ok_or_else(|| bad("empty name"))?;
    let n: usize = it.as_str().parse().map_err(|_| bad(name))?;
    Ok((letter.to_ascii_uppercase(), n))
}

/// Untwisted affine X_l^{(1)}.
pub fn untwisted(letter: char, l: usize) -> Result<Gcm> {
    let shift = |e: Vec<(usize, usize, i64, i64)>| -> Vec<(usize, usize, i64, i64)> {
        e.into_iter().map(|(i, j, x, y)| (i + 1, j + 1, x, y)).collect()
    };
    let g = match letter {
        'A' if l == 1 => from_edges(2, &[(0, 1, -2, -2)]),
        'A' if l >= 2 => {
            let mut e = chain(l + 1);
            e.push((l, 0, -1, -1));
            from_edges(l + 1, &e)
        }
        'B' if l >= 3 => {
            let mut e = shift(b(l)?.edge_list());
            e.push((0, 2, -1, -1));
            from_edges(l + 1, &e)
        }
        'C' if l >= 2 => {
            let mut e = shift(c(l)?.edge_list());
            e.push((0, 1, -1, -2));
            from_edges(l + 1, &e)
        }
        'D' if l >= 4 => {
            let mut e = shift(d(l)?.edge_list());
            e.push((0, 2, -1, -1));
            from_edges(l + 1, &e)
        }
        'E' if (6..=8).contains(&l) => {
            let mut e = shift(self::e(l)?.edge_list());
            let attach = match l {
                6 => 2,
                7 => 1,
                _ => 8,
            };
            e.push((0, attach, -1, -1));
            from_edges(l + 1, &e)
        }
        'F' if l == 4 => {
            let mut e = shift(f4().edge_list());
            e.push((0, 1, -1, -1));
            from_edges(5, &e)
        }
        'G' if l == 2 => {
            let mut e = shift(g2().edge_list());
            e.push((0, 1, -1, -1));
            from_edges(3, &e)
        }
        _ => return Err(bad("no such untwisted affine type")),
    };
    Ok(g)
}

/// Twisted affine types by name: `A2l^(2)`, `A(2l-1)^(2)`, `D(l+1)^(2)`,
/// `E6^(2)`, `D4^(3)`. Here α_0 is the short end node.
pub fn twisted(letter: char, m: usize, r: u8) -> Result<Gcm> {
    match (letter, m, r) {
        ('A', 2, 2) => Ok(from_edges(2, &[(0, 1, -4, -1)])),
        ('A', m, 2) if m % 2 == 0 && m >= 4 => {
            let l = m / 2;
            let mut e = chain(l + 1);
            e[0] = (0, 1, -2, -1);
            e[l - 1] = (l - 1, l, -2, -1);
            Ok(from_edges(l + 1, &e))
        }
        ('A', m, 2) if m % 2 == 1 && m >= 5 => Ok(untwisted('B', m.div_ceil(2))?.transpose()),
        ('D', m, 2) if m >= 3 => Ok(untwisted('C', m - 1)?.transpose()),
        ('E', 6, 2) => Ok(untwisted('F', 4)?.transpose()),
        ('D', 4, 3) => Ok(untwisted('G', 2)?.transpose()),
        _ => Err(bad("no such twisted affine type")),
    }
}

/// Parses `X_l^(r)` style names, e.g. `A1^(1)`, `D4^(3)`, `A4^(2)`.
pub fn affine(name: &str) -> Result<Gcm> {
    let (base, r) = name.split_once("^(").ok_or_else(|| bad(name))?;
    let r: u8 = r.trim_end_matches(')').parse().map_err(|_| bad(name))?;
    let (letter, l) = split_name(base)?;
    if r == 1 {
        untwisted(letter, l)
    } else {
        twisted(letter, l, r)
    }
}

/// A_n^{++}: the affine cycle A_n^{(1)} with an extra node joined to α_0.
/// The extra node comes first.
pub fn overextended(series: char, n: usize) -> Result<Gcm> {
    let aff = match series.to_ascii_uppercase() {
        'A' if n >= 1 => untwisted('A', n)?,
        'D' if n >= 4 => untwisted('D', n)?,
        'B' if n >= 3 => untwisted('B', n)?,
        _ => return Err(bad("overextension needs A (n>=1), B (n>=3) or D (n>=4)")),
    };
    Ok(extend_at(&aff, 0))
}

/// Adds a new node (placed first) joined by a single edge to `node`.
pub fn extend_at(g: &Gcm, node: usize) -> Gcm {
    let n = g.rank();
    let mut e: Vec<_> = g.edge_list().into_iter().map(|(i, j, x, y)| (i + 1, j + 1, x, y)).collect();
    e.push((0, node + 1, -1, -1));
    from_edges(n + 1, &e)
}

/// E_n: a chain v_1 … v_{n-1} with an extra node u on v_3 (isolated when
/// n = 3). E_6, E_7, E_8 are the finite types; E_9 = E_8^{(1)}, E_10 is
/// hyperbolic. The extra node is the last index.
pub fn e_series(n: usize) -> Result<Gcm> {
    if n < 3 {
        return Err(bad("E_n needs n >= 3"));
    }
    let mut e = chain(n - 1);
    if n >= 4 {
        e.push((2, n - 1, -1, -1));
    }
    Ok(from_edges(n, &e))
}

impl Gcm {
    /// Edges `(i, j, a_ij, a_ji)` with `i < j`.
    pub fn edge_list(&self) -> Vec<(usize, usize, i64, i64)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.get(i, j) != 0 {
                    out.push((i, j, self.get(i, j), self.get(j, i)));
                }
            }
        }
        out
    }
}

/// What is known about a named connected type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeInfo {
    pub name: String,
    pub kind: Kind,
    /// 1 untwisted, 3 for D4^(3), 2 other twisted types.
    pub twist: Option<u8>,
    /// Set for the twisted types A_{2l}^{(2)}.
    pub a_even_twisted: bool,
}

static TABLE: Lazy<HashMap<Vec<u8>, TypeInfo>> = Lazy::new(build_table);

fn build_table() -> HashMap<Vec<u8>, TypeInfo> {
    let mut t: HashMap<Vec<u8>, TypeInfo> = HashMap::new();
    let mut put = |g: Gcm, name: String, kind: Kind, twist: Option<u8>, even: bool| {
        if g.rank() > MAX_CANON_RANK {
            return;
        }
        let key = g.canonical_key().unwrap();
        t.entry(key).or_insert(TypeInfo { name, kind, twist, a_even_twisted: even });
    };
    let max = MAX_CANON_RANK;
    for n in 1..=max {
        put(a(n).unwrap(), format!("A{n}"), Kind::Finite, None, false);
    }
    for n in 2..=max {
        put(b(n).unwrap(), format!("B{n}"), Kind::Finite, None, false);
        put(c(n).unwrap(), format!("C{n}"), Kind::Finite, None, false);
    }
    for n in 4..=max {
        put(d(n).unwrap(), format!("D{n}"), Kind::Finite, None, false);
    }
    for n in 6..=8 {
        put(e(n).unwrap(), format!("E{n}"), Kind::Finite, None, false);
    }
    put(f4(), "F4".into(), Kind::Finite, None, false);
    put(g2(), "G2".into(), Kind::Finite, None, false);
    let untw: Vec<(char, usize)> = (1..max)
        .map(|l| ('A', l))
        .chain((3..max).map(|l| ('B', l)))
        .chain((2..max).map(|l| ('C', l)))
        .chain((4..max).map(|l| ('D', l)))
        .chain([('E', 6), ('E', 7), ('E', 8), ('F', 4), ('G', 2)])
        .collect();
    for (x, l) in untw {
        put(untwisted(x, l).unwrap(), format!("{x}{l}^(1)"), Kind::Affine, Some(1), false);
    }
    for m in (2..2 * max).step_by(2) {
        if let Ok(g) = twisted('A', m, 2) {
            put(g, format!("A{m}^(2)"), Kind::Affine, Some(2), true);
        }
    }
    for m in (5..2 * max).step_by(2) {
        if let Ok(g) = twisted('A', m, 2) {
            put(g, format!("A{m}^(2)"), Kind::Affine, Some(2), false);
        }
    }
    for m in 3..=max {
        put(twisted('D', m, 2).unwrap(), format!("D{m}^(2)"), Kind::Affine, Some(2), false);
    }
    put(twisted('E', 6, 2).unwrap(), "E6^(2)".into(), Kind::Affine, Some(2), false);
    put(twisted('D', 4, 3).unwrap(), "D4^(3)".into(), Kind::Affine, Some(3), false);
    t
}

/// Name and data of a connected finite or affine type, if recognised.
pub fn identify(g: &Gcm) -> Option<TypeInfo> {
    if g.rank() > MAX_CANON_RANK {
        return None;
    }
    TABLE.get(&g.canonical_key().ok()?).cloned()
}

pub(crate) fn affine_twist(g: &Gcm) -> Option<u8> {
    identify(g).and_then(|t| t.twist)
}

/// A short descriptive name: finite/affine type names joined by `x` for
/// decomposable matrices, `E10`-style names for the E series, `A8++` for
/// overextended diagrams, `H<affine>` for an affine diagram with one extra
/// node on α_0.
pub fn describe(g: &Gcm) -> Option<String> {
    let comps = g.components();
    if comps.len() > 1 {
        let parts: Option<Vec<String>> =
            comps.iter().map(|c| identify(&g.sub_unchecked(c)).map(|t| t.name)).collect();
        return parts.map(|p| p.join("x"));
    }
    if let Some(t) = identify(g) {
        return Some(t.name);
    }
    if g.rank() > MAX_CANON_RANK {
        return None;
    }
    let key = g.canonical_key().ok()?;
    EXTENDED.get(&key).cloned()
}

static EXTENDED: Lazy<HashMap<Vec<u8>, String>> = Lazy::new(|| {
    let mut t = HashMap::new();
    for n in 9..=MAX_CANON_RANK {
        t.insert(e_series(n).unwrap().canonical_key().unwrap(), format!("E{n}"));
    }
    for n in 1..=MAX_CANON_RANK - 2 {
        t.entry(overextended('A', n).unwrap().canonical_key().unwrap())
            .or_insert(format!("A{n}++"));
    }
    for n in 3..=MAX_CANON_RANK - 2 {
        t.entry(overextended('B', n).unwrap().canonical_key().unwrap())
            .or_insert(format!("B{n}++"));
    }
    for n in 4..=MAX_CANON_RANK - 2 {
        t.entry(overextended('D', n).unwrap().canonical_key().unwrap())
            .or_insert(format!("D{n}++"));
    }
    // H-extensions of affine types at α_0
    let mut add = |g: Gcm, name: String| {
        if g.rank() < MAX_CANON_RANK {
            t.entry(extend_at(&g, 0).canonical_key().unwrap()).or_insert(format!("H{name}"));
        }
    };
    let mut names: Vec<&String> =
        TABLE.values().filter(|i| i.kind == Kind::Affine).map(|i| &i.name).collect();
    names.sort();
    for name in names {
        add(affine(name).unwrap(), name.clone());
    }
    t
});

/// Looks up any of the names understood by this module: finite (`F4`),
/// affine (`G2^(1)`), `E10`, `A8++`, `D8++`, `B8++`, and `H<affine>`.
pub fn by_name(name: &str) -> Result<Gcm> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix('H') {
        return Ok(extend_at(&affine(rest)?, 0));
    }
    if let Some(base) = name.strip_suffix("++") {
        let (letter, n) = split_name(base)?;
        return overextended(letter, n);
    }
    if name.contains("^(") {
        return affine(name);
    }
    let (letter, n) = split_name(name)?;
    if letter == 'E' && !(6..=8).contains(&n) {
        return e_series(n);
    }
    finite(name)
}

//! Diagram JSON, name lookup and DOT rendering.
//!
//! A diagram file holds either the bare matrix `[[2,-1],[-1,2]]` or an
//! object with the matrix under `entries` (optionally with a `name`), or an
//! object `{"name": "E10"}` naming a known diagram.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::families;
use crate::gcm::{DiagramClass, Gcm};

#[derive(Deserialize)]
#[serde(untagged)]
enum DiagramFile {
    Rows(Vec<Vec<i64>>),
    Object {
        #[serde(alias = "gcm", alias = "matrix")]
        entries: Option<Vec<Vec<i64>>>,
        name: Option<String>,
    },
}

pub fn parse_diagram(text: &str) -> Result<Gcm> {
    let f: DiagramFile =
        serde_json::from_str(text).map_err(|e| Error::BadParameter(format!("diagram JSON: {e}")))?;
    match f {
        DiagramFile::Rows(rows) => Gcm::new(rows),
        DiagramFile::Object { entries: Some(rows), .. } => Gcm::new(rows),
        DiagramFile::Object { entries: None, name: Some(n) } => by_name(&n),
        DiagramFile::Object { .. } => Err(Error::BadParameter("diagram needs `entries` or `name`".into())),
    }
}

/// `G219`-style serials from the shipped serial file, otherwise the family
/// names understood by [`families::by_name`] (so `G2` is the finite type).
pub fn by_name(name: &str) -> Result<Gcm> {
    let t = name.trim();
    if let Some(num) = t.strip_prefix('G').or_else(|| t.strip_prefix('Γ')) {
        if let Ok(s) = num.parse::<u32>() {
            if let Some(g) = catalog::serial_gcm(s) {
                return Ok(g);
            }
            if t.starts_with('Γ') || s != 2 {
                return Err(Error::BadParameter(format!("no diagram with serial {s}")));
            }
        }
    }
    families::by_name(t)
}

pub fn diagram_json(g: &Gcm) -> Value {
    let mut v = json!({ "rank": g.rank(), "entries": g.rows() });
    if let Some(n) = families::describe(g) {
        v["name"] = json!(n);
    }
    v
}

pub fn class_json(c: &DiagramClass) -> Value {
    json!({
        "kind": c.kind.to_string(),
        "hyperbolic": c.hyperbolic,
        "connected": c.connected,
        "det": c.det.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| json!(c.det.to_string())),
        "signature": [c.signature.0, c.signature.1, c.signature.2],
        "affine_twist": c.affine_twist,
    })
}

/// Graphviz rendering. Multiple edges carry their multiplicity as a label
/// and an arrow pointing at the shorter root; edges that are not of the
/// usual Dynkin shapes are labelled `a_ij,a_ji`.
pub fn to_dot(g: &Gcm, title: &str) -> String {
    let norms = g.symmetrize().map(|s| s.norms()).ok();
    let mut s = format!("graph \"{}\" {{\n  node [shape=circle];\n", title.replace('"', "'"));
    for i in 0..g.rank() {
        match &norms {
            Some(n) => s += &format!("  {i} [label=\"{i}\\n{}\"];\n", n[i]),
            None => s += &format!("  {i};\n"),
        }
    }
    for (i, j, x, y) in g.edge_list() {
        let line = match (x, y) {
            (-1, -1) => format!("  {i} -- {j};\n"),
            (-1, m) if (2..=4).contains(&-m) => format!("  {i} -- {j} [label=\"{}\", dir=forward];\n", -m),
            (m, -1) if (2..=4).contains(&-m) => format!("  {j} -- {i} [label=\"{}\", dir=forward];\n", -m),
            _ => format!("  {i} -- {j} [label=\"{x},{y}\"];\n"),
        };
        s += &line;
    }
    s += "}\n";
    s
}

/// Plain-text rendering: the matrix, then one line per edge.
pub fn to_text(g: &Gcm) -> String {
    let mut s = String::new();
    for row in g.rows() {
        s += &row.iter().map(|x| format!("{x:>3}")).collect::<String>();
        s.push('\n');
    }
    for (i, j, x, y) in g.edge_list() {
        s += &format!("{i} - {j}: ({x}, {y})\n");
    }
    s
}

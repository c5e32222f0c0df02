//! Maximality of catalog diagrams under the order `B ⪯ A`.
//!
//! Phase 1 applies the constructive principles to every diagram (chaining
//! through non-hyperbolic intermediate types) and records witnesses. The
//! survivors are then compared pairwise: a survivor is maximal once every
//! other survivor of rank at least its own is refuted by the criteria, and a
//! pair left open is searched. Newly found witnesses shrink the survivor set
//! and the comparison is repeated until nothing changes.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::criteria::{self, Ruling};
use crate::gcm::{Gcm, Kind};
use crate::principles::{self, StarCase};
use crate::roots::DEFAULT_HEIGHT;
use crate::search::{self, Certificate, SearchOutcome, DEFAULT_BUDGET};

#[derive(Clone, Debug, Serialize)]
pub struct Budgets {
    /// Height bound and node budget for each search.
    pub height: u64,
    pub budget: u64,
    /// Maximal number of principle applications chained through
    /// intermediate types that are not hyperbolic.
    pub depth: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { height: DEFAULT_HEIGHT, budget: DEFAULT_BUDGET / 10, depth: 2 }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status")]
pub enum Status {
    NonMaximal { above: usize, witness: Certificate },
    MaximalProved { refutations: Vec<(usize, Ruling)> },
    Undecided { missing: Vec<usize> },
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryStatus {
    pub id: usize,
    pub label: String,
    pub rank: usize,
    pub det: i64,
    pub status: Status,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RankSummary {
    pub total: usize,
    pub non_maximal: usize,
    pub maximal: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub entries: Vec<EntryStatus>,
    pub summary: BTreeMap<usize, RankSummary>,
}

impl OrderReport {
    pub fn maximal_ids(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| matches!(e.status, Status::MaximalProved { .. })).map(|e| e.id).collect()
    }

    pub fn undecided(&self) -> usize {
        self.summary.values().map(|s| s.undecided).sum()
    }

    pub fn table(&self) -> String {
        let mut s = String::from("rank  total  non-maximal  maximal  undecided\n");
        for (r, x) in &self.summary {
            s += &format!("{r:>4}  {:>5}  {:>11}  {:>7}  {:>9}\n", x.total, x.non_maximal, x.maximal, x.undecided);
        }
        let t = |f: fn(&RankSummary) -> usize| self.summary.values().map(f).sum::<usize>();
        s += &format!(
            " all  {:>5}  {:>11}  {:>7}  {:>9}\n",
            t(|x| x.total),
            t(|x| x.non_maximal),
            t(|x| x.maximal),
            t(|x| x.undecided)
        );
        s
    }
}

/// Every certificate obtained from `x` by one principle application.
pub fn principle_moves(x: &Gcm) -> Vec<Certificate> {
    let n = x.rank();
    let mut out = Vec::new();
    let mut push = |r: crate::Result<principles::PrincipleApplication>| {
        if let Ok(app) = r {
            out.push(Certificate::from_principle(&app));
        }
    };
    for z in 0..n {
        for t in 0..n {
            if z != t && x.get(z, t) == -1 && x.get(t, z) == -1 {
                push(principles::apply_a(x, z, t));
            }
            if z != t && x.get(t, z) == -1 && x.get(z, t) < -1 {
                push(principles::apply_e(x, z, t));
            }
        }
    }
    let subsets = connected_subsets(x);
    for s in &subsets {
        let sub = x.sub_unchecked(s);
        match sub.kind() {
            Kind::Affine => {
                for &p in s {
                    let b = principles::apply_b_at(x, s, p);
                    if b.is_err() {
                        // retry with one deletion inside Y
                        if let Some(k) = b_multipliers(x, s, p) {
                            for &v in s.iter().filter(|&&v| v != p) {
                                push(principles::apply_b_then_d(x, s, &k, &[v]));
                            }
                        }
                    }
                    push(b);
                }
            }
            Kind::Finite if s.len() >= 2 => push(principles::apply_c(x, s)),
            _ => {}
        }
    }
    for case in StarCase::ALL {
        push(principles::apply_star(x, case));
    }
    out
}

fn b_multipliers(x: &Gcm, y: &[usize], p: usize) -> Option<Vec<i64>> {
    let sub = x.sub_unchecked(y);
    let info = crate::families::identify(&sub)?;
    let twist = info.twist? as i64;
    let norms = x.symmetrize().ok()?.norms();
    let long = y.iter().map(|&i| norms[i]).max()?;
    let idx = y.iter().position(|&v| v == p)?;
    let mut k = vec![0; y.len()];
    k[idx] = if norms[p] == long { twist } else { 1 };
    Some(k)
}

fn connected_subsets(x: &Gcm) -> Vec<Vec<usize>> {
    let n = x.rank();
    (1u32..(1 << n))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.len() < n && x.sub_unchecked(s).is_connected())
        .collect()
}

/// Single-vertex deletions, used on intermediate types.
fn deletions(x: &Gcm) -> Vec<Certificate> {
    (0..x.rank()).filter_map(|v| principles::apply_d(x, &[v]).ok()).map(|a| Certificate::from_principle(&a)).collect()
}

/// Catalog witnesses reachable from `x` by chains of principles:
/// `(index of the smaller diagram, certificate in x)`.
fn witnesses_from(x: &Gcm, self_key: &[u8], index: &HashMap<Vec<u8>, usize>, depth: usize) -> Vec<(usize, Certificate)> {
    let mut found = Vec::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(self_key.to_vec());
    let mut frontier: Vec<Certificate> = vec![Certificate::identity(x)];
    for level in 0..depth {
        let mut next = Vec::new();
        for cur in &frontier {
            let mut moves = principle_moves(&cur.target);
            if level > 0 {
                moves.extend(deletions(&cur.target));
            }
            for m in moves {
                let Ok(key) = m.target.canonical_key() else { continue };
                if !seen.insert(key.clone()) {
                    continue;
                }
                if m.target.kind() != Kind::Indefinite {
                    continue;
                }
                let hyp = m.target.is_connected() && m.target.is_hyperbolic();
                let cert = if level == 0 { Some(m) } else { search::compose(cur, &m).ok() };
                let Some(cert) = cert else { continue };
                if hyp {
                    if let Some(&j) = index.get(&key) {
                        found.push((j, cert));
                    }
                } else {
                    next.push(cert);
                }
            }
        }
        frontier = next;
    }
    found
}

pub fn order_report(catalog: &[CatalogEntry], budgets: &Budgets) -> OrderReport {
    let index: HashMap<Vec<u8>, usize> = catalog.iter().enumerate().map(|(i, e)| (e.canonical.clone(), i)).collect();

    // phase 1
    let per_ambient: Vec<Vec<(usize, Certificate)>> = catalog
        .par_iter()
        .map(|e| witnesses_from(&e.gcm, &e.canonical, &index, budgets.depth))
        .collect();
    let mut witness: Vec<Option<(usize, Certificate)>> = vec![None; catalog.len()];
    for (amb, list) in per_ambient.into_iter().enumerate() {
        for (j, cert) in list {
            if j != amb && witness[j].is_none() {
                witness[j] = Some((amb, cert));
            }
        }
    }

    // phases 2 and 3
    let mut rulings: HashMap<(usize, usize), Ruling> = HashMap::new();
    let mut searched: HashSet<(usize, usize)> = HashSet::new();
    loop {
        let survivors: Vec<usize> = (0..catalog.len()).filter(|&i| witness[i].is_none()).collect();
        let pairs: Vec<(usize, usize)> = survivors
            .iter()
            .flat_map(|&i| survivors.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| i != j && catalog[j].rank >= catalog[i].rank && !rulings.contains_key(&(i, j)))
            .collect();
        let new: Vec<((usize, usize), Ruling)> = pairs
            .par_iter()
            .map(|&(i, j)| ((i, j), refute(&catalog[j].gcm, &catalog[i].gcm)))
            .collect();
        rulings.extend(new);
        let open: Vec<(usize, usize)> = survivors
            .iter()
            .flat_map(|&i| survivors.iter().map(move |&j| (i, j)))
            .filter(|p| rulings.get(p).is_some_and(|r| !r.is_refuted()) && !searched.contains(p))
            .collect();
        if open.is_empty() {
            break;
        }
        let results: Vec<((usize, usize), Option<Certificate>)> = open
            .par_iter()
            .map(|&(i, j)| {
                let out = search::find_pisystem(&catalog[j].gcm, &catalog[i].gcm, budgets.height, budgets.budget);
                ((i, j), out.ok().and_then(SearchOutcome::certificate))
            })
            .collect();
        let mut progress = false;
        for ((i, j), c) in results {
            searched.insert((i, j));
            if let Some(c) = c {
                if witness[i].is_none() {
                    witness[i] = Some((j, c));
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }

    let survivors: Vec<usize> = (0..catalog.len()).filter(|&i| witness[i].is_none()).collect();
    let mut entries = Vec::with_capacity(catalog.len());
    let mut summary: BTreeMap<usize, RankSummary> = BTreeMap::new();
    for (i, e) in catalog.iter().enumerate() {
        let s = summary.entry(e.rank).or_default();
        s.total += 1;
        let status = match witness[i].take() {
            Some((above, w)) => {
                s.non_maximal += 1;
                Status::NonMaximal { above, witness: w }
            }
            None => {
                let mut refutations = Vec::new();
                let mut missing = Vec::new();
                for &j in survivors.iter().filter(|&&j| j != i && catalog[j].rank >= e.rank) {
                    let r = rulings[&(i, j)].clone();
                    if r.is_refuted() {
                        refutations.push((j, r));
                    } else {
                        missing.push(j);
                    }
                }
                if missing.is_empty() {
                    s.maximal += 1;
                    Status::MaximalProved { refutations }
                } else {
                    s.undecided += 1;
                    Status::Undecided { missing }
                }
            }
        };
        entries.push(EntryStatus { id: i, label: e.label(), rank: e.rank, det: e.det, status });
    }
    OrderReport { entries, summary }
}

/// `necessary_checks` and then `forbidden_check` for `b ⪯ a`.
pub fn refute(a: &Gcm, b: &Gcm) -> Ruling {
    match criteria::necessary_checks(a, b) {
        Ok(r) if r.is_refuted() => r,
        _ => criteria::forbidden_check(a, b).unwrap_or_else(|_| Ruling::possible()),
    }
}

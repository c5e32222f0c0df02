//! Bounded search for π-systems of a given type, certificates of `B ⪯ A`,
//! their verification and composition.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{self, Ruling};
use crate::error::{Error, Result};
use crate::gcm::Gcm;
use crate::linalg::Echelon;
use crate::pisystem;
use crate::principles::{self, Params, Principle, PrincipleApplication};
use crate::roots::{self, RootContext, RootVec, DEFAULT_HEIGHT};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum Provenance {
    Principle { principle: Principle, params: Params },
    Search { height: u64, budget: u64 },
    Composed { outer: Box<Certificate>, inner: Box<Certificate> },
    Manual,
}

/// A π-system `roots` of type `target` inside `ambient`; `roots[i]` is the
/// image of the i-th simple root of `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub ambient: Gcm,
    pub target: Gcm,
    pub roots: Vec<RootVec>,
    pub provenance: Provenance,
}

impl Certificate {
    /// The simple system of `a` as a certificate of `a ⪯ a`.
    pub fn identity(a: &Gcm) -> Certificate {
        let n = a.rank();
        let roots = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Certificate { ambient: a.clone(), target: a.clone(), roots, provenance: Provenance::Manual }
    }

    pub fn from_principle(app: &PrincipleApplication) -> Certificate {
        Certificate {
            ambient: app.ambient.clone(),
            target: app.predicted.clone(),
            roots: app.sigma.clone(),
            provenance: Provenance::Principle { principle: app.principle, params: app.params.clone() },
        }
    }

    /// Short description of how the certificate was obtained.
    pub fn how(&self) -> String {
        match &self.provenance {
            Provenance::Principle { principle, .. } => format!("principle {principle:?}"),
            Provenance::Search { height, .. } => format!("search (height {height})"),
            Provenance::Composed { outer, inner } => format!("{} after {}", inner.how(), outer.how()),
            Provenance::Manual => "manual".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Re-checks a certificate from scratch.
pub fn verify(cert: &Certificate) -> Verification {
    let mut reasons = Vec::new();
    let n = cert.ambient.rank();
    if cert.roots.len() != cert.target.rank() {
        reasons.push(format!("{} roots for a target of rank {}", cert.roots.len(), cert.target.rank()));
    }
    if let Some(i) = cert.roots.iter().position(|r| r.len() != n) {
        reasons.push(format!("root {i} has the wrong length"));
    }
    if !reasons.is_empty() {
        return Verification { ok: false, reasons };
    }
    let ctx = match RootContext::new(cert.ambient.clone()) {
        Ok(c) => c,
        Err(e) => return Verification { ok: false, reasons: vec![format!("ambient: {e}")] },
    };
    let ty = if ctx.is_supported() {
        match pisystem::check(&ctx, &cert.roots) {
            Ok(rep) => {
                for (i, j, _) in &rep.violations {
                    reasons.push(format!("difference of roots {i} and {j} is a root"));
                }
                if rep.type_matrix.is_none() {
                    reasons.push("pairing matrix is not a GCM".into());
                }
                rep.type_matrix
            }
            Err(e) => {
                reasons.push(e.to_string());
                None
            }
        }
    } else {
        match pisystem::gcm_of(&ctx, &cert.roots) {
            Ok(g) => Some(g),
            Err(e) => {
                reasons.push(e.to_string());
                None
            }
        }
    };
    if let Some(t) = ty {
        if t != cert.target && !matches!(t.is_isomorphic(&cert.target), Ok(true)) {
            reasons.push("type of the roots differs from the target".into());
        }
    }
    if !pisystem::is_linearly_independent(&cert.roots) {
        reasons.push("roots are linearly dependent".into());
    }
    Verification { ok: reasons.is_empty(), reasons }
}

/// From `B ⪯ A` (outer) and `C ⪯ B` (inner) builds `C ⪯ A`.
pub fn compose(outer: &Certificate, inner: &Certificate) -> Result<Certificate> {
    let f = inner.ambient.isomorphism_to(&outer.target)?.ok_or(Error::AmbientMismatch)?;
    let basis: Vec<RootVec> = f.iter().map(|&j| outer.roots[j].clone()).collect();
    let roots = principles::substitute(&basis, &inner.roots);
    let cert = Certificate {
        ambient: outer.ambient.clone(),
        target: inner.target.clone(),
        roots,
        provenance: Provenance::Composed { outer: Box::new(outer.clone()), inner: Box::new(inner.clone()) },
    };
    if !verify(&cert).ok {
        return Err(Error::CompositionFailedVerification);
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum SearchOutcome {
    Found(Certificate),
    NotFoundWithinBounds,
    BudgetExhausted,
    Refuted(Ruling),
}

impl SearchOutcome {
    pub fn certificate(self) -> Option<Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Search for a linearly independent π-system of type `b` among the real
/// roots of `a` of height at most `height` (both signs). Pairs refuted by
/// [`criteria::necessary_checks`] or [`criteria::forbidden_check`] are
/// answered without searching, even when `a` is outside the range of the
/// root membership test.
pub fn find_pisystem(a: &Gcm, b: &Gcm, height: u64, budget: u64) -> Result<SearchOutcome> {
    let ctx = RootContext::new(a.clone())?;
    let r = criteria::necessary_checks(a, b)?;
    if r.is_refuted() {
        return Ok(SearchOutcome::Refuted(r));
    }
    let r = criteria::forbidden_check(a, b)?;
    if r.is_refuted() {
        return Ok(SearchOutcome::Refuted(r));
    }
    if !ctx.is_supported() {
        return Err(Error::UnsupportedKind);
    }
    search_raw(&ctx, b, height, budget)
}

pub fn find_pisystem_default(a: &Gcm, b: &Gcm) -> Result<SearchOutcome> {
    find_pisystem(a, b, DEFAULT_HEIGHT, DEFAULT_BUDGET)
}

/// The backtracking search itself, without the criteria shortcut.
pub fn search_raw(ctx: &RootContext, b: &Gcm, height: u64, budget: u64) -> Result<SearchOutcome> {
    if !ctx.is_supported() {
        return Err(Error::UnsupportedKind);
    }
    let m = b.rank();
    b.symmetrize()?;
    if m > ctx.rank() {
        return Ok(SearchOutcome::NotFoundWithinBounds);
    }
    let s = Searcher::new(ctx, b, height, budget)?;
    let outcome = s.run()?;
    Ok(match outcome {
        Some(idx) => {
            let mut roots = vec![Vec::new(); m];
            for (t, &c) in idx.iter().enumerate() {
                roots[s.order[t]] = s.cand[c as usize].clone();
            }
            let cert =
                Certificate { ambient: ctx.gcm().clone(), target: b.clone(), roots, provenance: Provenance::Search { height, budget } };
            debug_assert!(verify(&cert).ok);
            SearchOutcome::Found(cert)
        }
        None if s.exhausted.load(Ordering::Relaxed) => SearchOutcome::BudgetExhausted,
        None => SearchOutcome::NotFoundWithinBounds,
    })
}

struct Searcher<'a> {
    ctx: &'a RootContext,
    b: &'a Gcm,
    /// Vertices of B in search order.
    order: Vec<usize>,
    cand: Vec<RootVec>,
    cnorm: Vec<i64>,
    /// Candidate indices allowed as β_1.
    first: Vec<u32>,
    budget: u64,
    nodes: AtomicU64,
    exhausted: AtomicBool,
    best: AtomicUsize,
}

type Domains = Vec<Vec<u32>>;

impl<'a> Searcher<'a> {
    fn new(ctx: &'a RootContext, b: &'a Gcm, height: u64, budget: u64) -> Result<Searcher<'a>> {
        let pos = ctx.real_roots_bounded(Some(height))?;
        let mut cand = Vec::with_capacity(2 * pos.len());
        let mut i = 0;
        while i < pos.len() {
            let h = roots::height(&pos[i]);
            let mut j = i;
            while j < pos.len() && roots::height(&pos[j]) == h {
                j += 1;
            }
            cand.extend(pos[i..j].iter().cloned());
            cand.extend(pos[i..j].iter().map(|r| roots::negate(r)));
            i = j;
        }
        let cnorm = cand.iter().map(|r| ctx.norm(r)).collect();
        let reps = orbit_reps(ctx.gcm());
        let first = cand
            .iter()
            .enumerate()
            .filter(|(_, r)| reps.iter().any(|&p| r.iter().enumerate().all(|(k, &x)| x == (k == p) as i64)))
            .map(|(i, _)| i as u32)
            .collect();
        Ok(Searcher {
            ctx,
            b,
            order: search_order(b),
            cand,
            cnorm,
            first,
            budget,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            best: AtomicUsize::new(usize::MAX),
        })
    }

    /// `g` with `(r, x) = g · x`.
    fn gvec(&self, r: &[i64]) -> Vec<i64> {
        let n = self.ctx.rank();
        let d = &self.ctx.symmetrizer().d;
        let g = self.ctx.gcm();
        (0..n).map(|i| d[i] * (0..n).map(|j| g.get(i, j) * r[j]).sum::<i64>()).collect()
    }

    /// Narrows the domains of positions after `t` once position `t` holds
    /// candidate `c`. None if some domain becomes empty.
    fn narrow(&self, t: usize, c: u32, doms: &[Vec<u32>]) -> Option<Domains> {
        let r = &self.cand[c as usize];
        let g = self.gvec(r);
        let nr = self.cnorm[c as usize];
        let vt = self.order[t];
        let mut out = Vec::with_capacity(doms.len());
        for (k, dom) in doms.iter().enumerate() {
            let vs = self.order[t + 1 + k];
            let (bts, bst) = (self.b.get(vt, vs), self.b.get(vs, vt));
            let keep: Vec<u32> = dom
                .iter()
                .copied()
                .filter(|&s| {
                    let x = &self.cand[s as usize];
                    let ip2 = 2 * g.iter().zip(x).map(|(p, q)| p * q).sum::<i64>();
                    ip2 == bts * nr && ip2 == bst * self.cnorm[s as usize]
                })
                .collect();
            if keep.is_empty() {
                return None;
            }
            out.push(keep);
        }
        Some(out)
    }

    fn compatible(&self, c: u32, chosen: &[u32]) -> bool {
        let r = &self.cand[c as usize];
        chosen.iter().all(|&o| {
            let q = &self.cand[o as usize];
            let diff: RootVec = r.iter().zip(q).map(|(x, y)| x - y).collect();
            !matches!(self.ctx.is_root(&diff), Ok(st) if st.is_root())
        })
    }

    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn run(&self) -> Result<Option<Vec<u32>>> {
        let m = self.order.len();
        let all: Vec<u32> = (0..self.cand.len() as u32).collect();
        // level 1: β_1 among the orbit representatives
        let mut tasks: Vec<(u32, u32, std::sync::Arc<Domains>)> = Vec::new();
        for &c in &self.first {
            if m == 1 {
                return Ok(Some(vec![c]));
            }
            let doms: Domains = vec![all.clone(); m - 1];
            let Some(d) = self.narrow(0, c, &doms) else { continue };
            let d = std::sync::Arc::new(d);
            for &c2 in &d[0] {
                tasks.push((c, c2, d.clone()));
            }
        }
        let found = tasks.par_iter().enumerate().find_map_first(|(k, (c1, c2, d))| {
            if self.best.load(Ordering::Relaxed) < k || self.exhausted.load(Ordering::Relaxed) {
                return None;
            }
            let res = self.start(*c1, *c2, d, k);
            if res.is_some() {
                self.best.fetch_min(k, Ordering::Relaxed);
            }
            res
        });
        Ok(found)
    }

    fn start(&self, c1: u32, c2: u32, d: &Domains, task: usize) -> Option<Vec<u32>> {
        let m = self.order.len();
        if !self.tick() || !self.compatible(c2, &[c1]) {
            return None;
        }
        let mut ech = Echelon::new(self.ctx.rank());
        ech.insert(&self.cand[c1 as usize]);
        if !ech.insert(&self.cand[c2 as usize]) {
            return None;
        }
        let mut chosen = vec![c1, c2];
        if m == 2 {
            return Some(chosen);
        }
        let doms = self.narrow(1, c2, &d[1..])?;
        if self.dfs(2, &mut chosen, &ech, &doms, task) {
            Some(chosen)
        } else {
            None
        }
    }

    fn dfs(&self, t: usize, chosen: &mut Vec<u32>, ech: &Echelon, doms: &[Vec<u32>], task: usize) -> bool {
        let m = self.order.len();
        for &c in &doms[0] {
            if !self.tick() || self.best.load(Ordering::Relaxed) < task {
                return false;
            }
            if !self.compatible(c, chosen) {
                continue;
            }
            let mut e2 = ech.clone();
            if !e2.insert(&self.cand[c as usize]) {
                continue;
            }
            chosen.push(c);
            if t + 1 == m {
                return true;
            }
            if let Some(next) = self.narrow(t, c, &doms[1..]) {
                if self.dfs(t + 1, chosen, &e2, &next, task) {
                    return true;
                }
            }
            chosen.pop();
        }
        false
    }
}

/// One simple root per class of the relation "joined by a path of single
/// edges"; these classes are the W-orbits of simple roots.
fn orbit_reps(a: &Gcm) -> Vec<usize> {
    let n = a.rank();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        reps.push(s);
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for u in 0..n {
                if !seen[u] && a.get(u, v) == -1 && a.get(v, u) == -1 {
                    seen[u] = true;
                    q.push_back(u);
                }
            }
        }
    }
    reps
}

/// Vertices of `b` component by component (largest first), each in BFS
/// order from a vertex of largest degree.
fn search_order(b: &Gcm) -> Vec<usize> {
    let mut comps = b.components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::new();
    for c in comps {
        let start = *c.iter().max_by_key(|&&v| (b.neighbours(v).count(), std::cmp::Reverse(v))).unwrap();
        let mut q = VecDeque::from([start]);
        let mut seen = vec![start];
        while let Some(v) = q.pop_front() {
            order.push(v);
            let mut nb: Vec<usize> = b.neighbours(v).filter(|u| !seen.contains(u)).collect();
            nb.sort_unstable();
            for u in nb {
                seen.push(u);
                q.push_back(u);
            }
        }
    }
    order
}

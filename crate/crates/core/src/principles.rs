//! Explicit constructions of π-systems.
//!
//! Each `apply_*` function builds Σ in the ambient, predicts its type by the
//! closed formula of the construction, and then computes the type from Σ.
//! A disagreement between the two is reported as
//! [`Error::PredictionMismatch`].
//!
//! Unless stated otherwise Σ is indexed like the ambient: `sigma[i]` is the
//! root that replaces `α_i`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families;
use crate::gcm::{Gcm, Kind};
use crate::pisystem;
use crate::roots::{self, RootContext, RootVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Principle {
    General,
    A,
    B,
    C,
    D,
    E1,
    E2,
    E3,
    Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StarCase {
    /// Rank 4 ambient with a chain of double edges, Σ of rank 3.
    I,
    /// Rank 5 ambient, Σ of rank 4.
    II,
    /// The overextension of D4^(3), Σ of rank 4.
    III,
    /// The overextension of E6^(2), Σ of rank 6.
    IV,
}

impl StarCase {
    pub const ALL: [StarCase; 4] = [StarCase::I, StarCase::II, StarCase::III, StarCase::IV];

    pub fn parse(s: &str) -> Result<StarCase> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(StarCase::I),
            "ii" | "2" => Ok(StarCase::II),
            "iii" | "3" => Ok(StarCase::III),
            "iv" | "4" => Ok(StarCase::IV),
            _ => Err(Error::BadParameter(format!("unknown star case {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Params {
    General { lambda: Vec<usize> },
    A { zero_node: usize, attach_node: usize },
    B { y: Vec<usize>, k: Vec<i64> },
    BThenD { y: Vec<usize>, k: Vec<i64>, remove: Vec<usize> },
    C { i: Vec<usize> },
    D { remove: Vec<usize> },
    E { p: usize, q: usize },
    Star { case: StarCase },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipleApplication {
    pub principle: Principle,
    pub ambient: Gcm,
    pub params: Params,
    pub sigma: Vec<RootVec>,
    pub predicted: Gcm,
    /// False when the ambient is outside the range of the root membership
    /// test; only the pairings were then compared.
    pub checked_in_ambient: bool,
}

fn finish(
    principle: Principle,
    ctx: &RootContext,
    params: Params,
    sigma: Vec<RootVec>,
    predicted: Gcm,
) -> Result<PrincipleApplication> {
    let checked = ctx.is_supported();
    let computed = if checked {
        let rep = pisystem::check(ctx, &sigma)?;
        if !rep.valid {
            return Err(Error::NotAPiSystem);
        }
        rep.type_matrix.expect("valid report has a type")
    } else {
        pisystem::gcm_of(ctx, &sigma)?
    };
    if computed != predicted {
        return Err(Error::PredictionMismatch);
    }
    Ok(PrincipleApplication {
        principle,
        ambient: ctx.gcm().clone(),
        params,
        sigma,
        predicted,
        checked_in_ambient: checked,
    })
}

fn check_indices(n: usize, idx: &[usize]) -> Result<()> {
    match idx.iter().find(|&&i| i >= n) {
        Some(&i) => Err(Error::IndexOutOfRange(i)),
        None => Ok(()),
    }
}

fn sorted_unique(idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn simples(n: usize) -> Vec<RootVec> {
    (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect()
}

fn rows_to_gcm(rows: Vec<Vec<i64>>) -> Result<Gcm> {
    Gcm::new(rows).map_err(|_| Error::NotAGcm)
}

/// Union of a π-system supported on `lambda` and one supported on the
/// complement, both made of positive real roots. Σ is `inner` followed by
/// `outer`.
pub fn apply_general(
    ambient: &Gcm,
    lambda: &[usize],
    inner: &[RootVec],
    outer: &[RootVec],
) -> Result<PrincipleApplication> {
    let n = ambient.rank();
    check_indices(n, lambda)?;
    let lambda = sorted_unique(lambda);
    if lambda.is_empty() || lambda.len() == n {
        return Err(Error::BadParameter("Λ must be a proper nonempty subset".into()));
    }
    let ctx = RootContext::new(ambient.clone())?;
    for (part, inside) in [(inner, true), (outer, false)] {
        for r in part {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            if !roots::is_positive(r) {
                return Err(Error::NotPositive);
            }
            if (0..n).any(|i| r[i] != 0 && lambda.contains(&i) != inside) {
                return Err(Error::MixedSupport);
            }
        }
        if ctx.is_supported() && !part.is_empty() {
            let ok = pisystem::check(&ctx, part).map(|r| r.valid).unwrap_or(false);
            if !ok {
                return Err(Error::InnerNotPiSystem);
            }
        }
    }
    let sigma: Vec<RootVec> = inner.iter().chain(outer).cloned().collect();
    let predicted = pisystem::gcm_of(&ctx, &sigma)?;
    finish(Principle::General, &ctx, Params::General { lambda }, sigma, predicted)
}

/// Affine component Y of the ambient minus `attach`, with `zero` in Y.
fn affine_component(g: &Gcm, attach: usize, zero: usize) -> Result<Vec<usize>> {
    let rest: Vec<usize> = (0..g.rank()).filter(|&i| i != attach).collect();
    let sub = g.sub_unchecked(&rest);
    let comp = sub
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|k| rest[k]).collect::<Vec<_>>())
        .find(|c| c.contains(&zero))
        .ok_or(Error::BadAttachment)?;
    if g.sub_unchecked(&comp).kind() != Kind::Affine {
        return Err(Error::NotAffineComplement);
    }
    Ok(comp)
}

/// Reflects the affine component through its zero node and moves the
/// attached vertex onto the neighbours of that node.
pub fn apply_a(ambient: &Gcm, zero_node: usize, attach_node: usize) -> Result<PrincipleApplication> {
    let n = ambient.rank();
    check_indices(n, &[zero_node, attach_node])?;
    let (z, t) = (zero_node, attach_node);
    if z == t || ambient.get(z, t) != -1 || ambient.get(t, z) != -1 {
        return Err(Error::BadAttachment);
    }
    let y = affine_component(ambient, t, z)?;
    let ctx = RootContext::new(ambient.clone())?;
    let yctx = RootContext::new(ambient.sub_unchecked(&y))?;
    let yd = yctx.affine_data()?;
    if yd.a_even_twisted {
        return Err(Error::TwistedA2lEven);
    }
    let zk = y.iter().position(|&v| v == z).expect("z lies in Y");
    let mut g0 = yd.delta.clone();
    g0[zk] += 1;
    if yd.delta[zk] != 1 || !yctx.is_real_root(&g0)? {
        return Err(Error::BadAttachment);
    }
    let lift = |v: &RootVec| {
        let mut out = vec![0; n];
        for (k, &i) in y.iter().enumerate() {
            out[i] = v[k];
        }
        out
    };
    let mut sigma = simples(n);
    for (k, &i) in y.iter().enumerate() {
        let gamma = if i == z { g0.clone() } else { yctx.simple(k) };
        sigma[i] = lift(&yctx.reflect(zk, &gamma));
    }
    let mut b = ambient.rows();
    b[z][t] = 0;
    b[t][z] = 0;
    for &j in &y {
        if j != z {
            b[j][t] = ambient.get(j, z);
            b[t][j] = ambient.get(z, j);
        }
    }
    let predicted = rows_to_gcm(b)?;
    finish(Principle::A, &ctx, Params::A { zero_node: z, attach_node: t }, sigma, predicted)
}

/// Squared lengths counted as long for the divisibility rule: the largest
/// length present in Y.
fn long_norm(ctx: &RootContext, y: &[usize]) -> i64 {
    let norms = ctx.norms();
    y.iter().map(|&i| norms[i]).max().unwrap_or(0)
}

/// Replaces `α_p` by `α_p + k_p δ_Y` for each `p` in the affine subdiagram Y.
pub fn apply_b(ambient: &Gcm, y: &[usize], k: &[i64]) -> Result<PrincipleApplication> {
    let (ctx, sigma, predicted) = draft_b(ambient, y, k)?;
    finish(Principle::B, &ctx, Params::B { y: y.to_vec(), k: k.to_vec() }, sigma, predicted)
}

/// Principle B followed by the deletion of `remove`; only the final system
/// is required to be a π-system.
///
/// With a twisted Y and a multiplier on a short root, `α_p + δ_Y − α_0` can
/// be a root, so Σ fails on Y itself; deleting `α_0` (or whichever simple
/// root causes the failure) may repair it.
pub fn apply_b_then_d(ambient: &Gcm, y: &[usize], k: &[i64], remove: &[usize]) -> Result<PrincipleApplication> {
    check_indices(ambient.rank(), remove)?;
    let (ctx, sigma, predicted) = draft_b(ambient, y, k)?;
    let remove = sorted_unique(remove);
    let keep: Vec<usize> = (0..ambient.rank()).filter(|v| !remove.contains(v)).collect();
    if keep.is_empty() {
        return Err(Error::RemovesEverything);
    }
    let sigma = keep.iter().map(|&v| sigma[v].clone()).collect();
    let predicted = predicted.sub_unchecked(&keep);
    let params = Params::BThenD { y: y.to_vec(), k: k.to_vec(), remove };
    finish(Principle::B, &ctx, params, sigma, predicted)
}

fn draft_b(ambient: &Gcm, y: &[usize], k: &[i64]) -> Result<(RootContext, Vec<RootVec>, Gcm)> {
    let n = ambient.rank();
    check_indices(n, y)?;
    if y.len() != k.len() {
        return Err(Error::BadParameter("one multiplier per vertex of Y is required".into()));
    }
    if k.iter().any(|&x| x < 0) {
        return Err(Error::BadParameter("multipliers must be non-negative".into()));
    }
    if sorted_unique(y).len() != y.len() {
        return Err(Error::BadParameter("repeated vertex in Y".into()));
    }
    let sub = ambient.sub_unchecked(y);
    if !sub.is_connected() || sub.kind() != Kind::Affine {
        return Err(Error::NotAffineSubdiagram);
    }
    let ctx = RootContext::new(ambient.clone())?;
    let ad = ctx.affine_data_of(y)?;
    let norms = ctx.norms();
    let long = long_norm(&ctx, y);
    let r = ad.twist as i64;
    for (idx, &p) in y.iter().enumerate() {
        if norms[p] == long && k[idx] % r != 0 {
            return Err(Error::DivisibilityViolation(p));
        }
    }
    let mut sigma = simples(n);
    for (idx, &p) in y.iter().enumerate() {
        for i in 0..n {
            sigma[p][i] += k[idx] * ad.delta[i];
        }
    }
    let mut b = ambient.rows();
    for (idx, &p) in y.iter().enumerate() {
        if k[idx] == 0 {
            continue;
        }
        for q in (0..n).filter(|q| !y.contains(q)) {
            let dq = 2 * k[idx] * ctx.inner(&ad.delta, &ctx.simple(q));
            let (x1, r1) = dq.div_rem(&norms[p]);
            let (x2, r2) = dq.div_rem(&norms[q]);
            if r1 != 0 || r2 != 0 {
                return Err(Error::NotAGcm);
            }
            b[p][q] += x1;
            b[q][p] += x2;
        }
    }
    Ok((ctx, sigma, rows_to_gcm(b)?))
}

/// Principle B with a single nonzero multiplier at `p`: the twist `r` when
/// `α_p` is long in Y, and 1 otherwise.
pub fn apply_b_at(ambient: &Gcm, y: &[usize], p: usize) -> Result<PrincipleApplication> {
    let idx = y.iter().position(|&v| v == p).ok_or(Error::IndexOutOfRange(p))?;
    check_indices(ambient.rank(), y)?;
    let sub = ambient.sub_unchecked(y);
    if !sub.is_connected() || sub.kind() != Kind::Affine {
        return Err(Error::NotAffineSubdiagram);
    }
    let ctx = RootContext::new(ambient.clone())?;
    let twist = families::affine_twist(&sub).ok_or(Error::NotAffineSubdiagram)? as i64;
    let mut k = vec![0; y.len()];
    k[idx] = if ctx.norms()[p] == long_norm(&ctx, y) { twist } else { 1 };
    apply_b(ambient, y, &k)
}

/// Contracts the connected finite-type set `i` to the single root
/// `Σ_{i∈I} α_i`. The new vertex takes the place of the smallest index of
/// I; the other vertices keep their relative order.
pub fn apply_c(ambient: &Gcm, i: &[usize]) -> Result<PrincipleApplication> {
    let n = ambient.rank();
    check_indices(n, i)?;
    let set = sorted_unique(i);
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let sub = ambient.sub_unchecked(&set);
    if !sub.is_connected() {
        return Err(Error::NotConnected);
    }
    if sub.kind() != Kind::Finite {
        return Err(Error::NotFiniteType);
    }
    let ctx = RootContext::new(ambient.clone())?;
    let mut fat = vec![0; n];
    for &v in &set {
        fat[v] = 1;
    }
    let fat_norm = ctx.norm(&fat);
    let norms = ctx.norms();
    let first = set[0];
    let order: Vec<Option<usize>> = (0..n)
        .filter(|v| *v == first || !set.contains(v))
        .map(|v| if v == first { None } else { Some(v) })
        .collect();
    let sigma: Vec<RootVec> = order
        .iter()
        .map(|o| match o {
            None => fat.clone(),
            Some(v) => ctx.simple(*v),
        })
        .collect();
    let m = order.len();
    let mut b = vec![vec![0i64; m]; m];
    for (x, ox) in order.iter().enumerate() {
        for (w, ow) in order.iter().enumerate() {
            b[x][w] = match (ox, ow) {
                (None, None) => 2,
                (Some(u), Some(v)) => ambient.get(*u, *v),
                (Some(j), None) => set.iter().map(|&s| ambient.get(*j, s)).sum(),
                (None, Some(j)) => {
                    // Σ k_i a_ij with k_i = |α_i|² / |β|²
                    let num: i64 = set.iter().map(|&s| norms[s] * ambient.get(s, *j)).sum();
                    if num % fat_norm != 0 {
                        return Err(Error::NotAGcm);
                    }
                    num / fat_norm
                }
            };
        }
    }
    let predicted = rows_to_gcm(b)?;
    finish(Principle::C, &ctx, Params::C { i: set }, sigma, predicted)
}

/// Keeps the simple roots outside `remove`, in order.
pub fn apply_d(ambient: &Gcm, remove: &[usize]) -> Result<PrincipleApplication> {
    let n = ambient.rank();
    check_indices(n, remove)?;
    let remove = sorted_unique(remove);
    let keep: Vec<usize> = (0..n).filter(|v| !remove.contains(v)).collect();
    if keep.is_empty() {
        return Err(Error::RemovesEverything);
    }
    let ctx = RootContext::new(ambient.clone())?;
    let sigma = keep.iter().map(|&v| ctx.simple(v)).collect();
    let predicted = ambient.sub_unchecked(&keep);
    finish(Principle::D, &ctx, Params::D { remove }, sigma, predicted)
}

/// Replaces `α_p` by `s_p(α_q)` where `a_pq = −m`, `a_qp = −1`, m ∈ {2,3,4}.
pub fn apply_e(ambient: &Gcm, p: usize, q: usize) -> Result<PrincipleApplication> {
    let n = ambient.rank();
    check_indices(n, &[p, q])?;
    if p == q || ambient.get(q, p) != -1 {
        return Err(Error::NotApplicableEdge);
    }
    let m = -ambient.get(p, q);
    let principle = match m {
        2 => Principle::E1,
        3 => Principle::E2,
        4 => Principle::E3,
        _ => return Err(Error::NotApplicableEdge),
    };
    let ctx = RootContext::new(ambient.clone())?;
    let mut sigma = simples(n);
    sigma[p] = ctx.reflect(p, &ctx.simple(q));
    let mut b = ambient.rows();
    for j in (0..n).filter(|&j| j != p && j != q) {
        b[j][p] = ambient.get(j, q) + m * ambient.get(j, p);
        b[p][j] = ambient.get(q, j) + ambient.get(p, j);
    }
    b[p][q] = 2 - m;
    b[q][p] = 2 - m;
    let predicted = rows_to_gcm(b)?;
    finish(principle, &ctx, Params::E { p, q }, sigma, predicted)
}

/// Reference ambient of a star case, the roots of Σ in its coordinates, and
/// the type of Σ.
pub fn star_data(case: StarCase) -> (Gcm, Vec<RootVec>, Gcm) {
    let g = |rows: &[&[i64]]| Gcm::new(rows.iter().map(|r| r.to_vec()).collect()).expect("valid");
    match case {
        StarCase::I => (
            g(&[&[2, -2, 0, 0], &[-1, 2, -2, -1], &[0, -1, 2, 0], &[0, -2, 0, 2]]),
            vec![vec![1, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 1, 0, 2]],
            g(&[&[2, -4, -2], &[-1, 2, -1], &[-2, -4, 2]]),
        ),
        StarCase::II => (
            g(&[
                &[2, -1, 0, 0, 0],
                &[-2, 2, -1, 0, -1],
                &[0, -1, 2, -1, 0],
                &[0, 0, -2, 2, 0],
                &[0, -1, 0, 0, 2],
            ]),
            vec![vec![1, 0, 0, 0, 0], vec![1, 2, 0, 0, 0], vec![0, 1, 1, 0, 1], vec![0, 0, 0, 1, 0]],
            g(&[&[2, 0, -1, 0], &[0, 2, -1, 0], &[-2, -2, 2, -1], &[0, 0, -2, 2]]),
        ),
        StarCase::III => (
            g(&[&[2, -1, 0, 0], &[-1, 2, -1, 0], &[0, -1, 2, -3], &[0, 0, -1, 2]]),
            vec![vec![1, 1, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 3, 1], vec![0, 1, 0, 0]],
            g(&[&[2, -3, 0, 0], &[-1, 2, -1, 0], &[0, -1, 2, -1], &[0, 0, -3, 2]]),
        ),
        StarCase::IV => (
            g(&[
                &[2, -1, 0, 0, 0, 0],
                &[-1, 2, -1, 0, 0, 0],
                &[0, -1, 2, -1, 0, 0],
                &[0, 0, -1, 2, -2, 0],
                &[0, 0, 0, -1, 2, -1],
                &[0, 0, 0, 0, -1, 2],
            ]),
            vec![
                vec![1, 0, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 2, 2, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 1, 0, 0],
            ],
            g(&[
                &[2, -1, 0, 0, 0, 0],
                &[-1, 2, -2, 0, 0, 0],
                &[0, -1, 2, -1, 0, 0],
                &[0, 0, -1, 2, -1, 0],
                &[0, 0, 0, -1, 2, -1],
                &[0, 0, 0, 0, -2, 2],
            ]),
        ),
    }
}

/// One of the four sporadic constructions, transported to `ambient` along
/// an isomorphism with the reference diagram.
pub fn apply_star(ambient: &Gcm, case: StarCase) -> Result<PrincipleApplication> {
    let (reference, sigma_ref, predicted) = star_data(case);
    if ambient.rank() != reference.rank() {
        return Err(Error::AmbientMismatch);
    }
    let f = reference.isomorphism_to(ambient)?.ok_or(Error::AmbientMismatch)?;
    let sigma = sigma_ref
        .iter()
        .map(|r| {
            let mut out = vec![0; r.len()];
            for (i, &c) in r.iter().enumerate() {
                out[f[i]] = c;
            }
            out
        })
        .collect();
    let ctx = RootContext::new(ambient.clone())?;
    finish(Principle::Star, &ctx, Params::Star { case }, sigma, predicted)
}

/// Re-expresses roots given in the basis `basis` (a π-system of the
/// ambient) in simple-root coordinates of the ambient.
pub fn substitute(basis: &[RootVec], roots: &[RootVec]) -> Vec<RootVec> {
    let n = basis.first().map_or(0, |b| b.len());
    roots
        .iter()
        .map(|r| {
            let mut out = vec![0; n];
            for (c, b) in r.iter().zip(basis) {
                for (o, x) in out.iter_mut().zip(b) {
                    *o += c * x;
                }
            }
            out
        })
        .collect()
}

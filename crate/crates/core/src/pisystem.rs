//! π-systems: checking, the type matrix M(Σ) and linear independence.

use crate::error::{Error, Result};
use crate::gcm::{DiagramClass, Gcm};
use crate::linalg;
use crate::roots::{RootContext, RootStatus, RootVec};

#[derive(Clone, Debug)]
pub struct PiSystemReport {
    pub valid: bool,
    /// Pairs `(i, j)` with `β_i − β_j` a root, and the kind of that root.
    pub violations: Vec<(usize, usize, RootStatus)>,
    /// Matrix of pairings `⟨β_i^∨, β_j⟩`.
    pub pairings: Vec<Vec<i64>>,
    /// The pairing matrix as a GCM, when it is one.
    pub type_matrix: Option<Gcm>,
    pub type_class: Option<DiagramClass>,
    pub linearly_independent: bool,
}

/// Full check of a proposed π-system in a finite, affine or hyperbolic
/// ambient (or a product of such).
pub fn check(ctx: &RootContext, roots: &[RootVec]) -> Result<PiSystemReport> {
    if !ctx.is_supported() {
        return Err(Error::UnsupportedKind);
    }
    for (i, b) in roots.iter().enumerate() {
        if !ctx.is_real_root(b)? {
            return Err(Error::NotRealRootAt(i));
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i] == roots[j] {
                return Err(Error::DuplicateRoot(i, j));
            }
        }
    }
    let mut violations = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let diff: RootVec = roots[i].iter().zip(&roots[j]).map(|(x, y)| x - y).collect();
            let st = ctx.is_root(&diff)?;
            if st.is_root() {
                violations.push((i, j, st));
            }
        }
    }
    let pairings = pairing_matrix(ctx, roots)?;
    let type_matrix = Gcm::new(pairings.clone()).ok();
    let type_class = type_matrix.as_ref().and_then(|g| g.classify().ok());
    Ok(PiSystemReport {
        valid: violations.is_empty() && type_matrix.is_some(),
        violations,
        pairings,
        type_matrix,
        type_class,
        linearly_independent: is_linearly_independent(roots),
    })
}

/// `[⟨β_i^∨, β_j⟩]` without any root-membership test; every β_i must have
/// positive norm and all pairings must be integers.
pub fn pairing_matrix(ctx: &RootContext, roots: &[RootVec]) -> Result<Vec<Vec<i64>>> {
    roots
        .iter()
        .map(|b| roots.iter().map(|c| ctx.pairing(b, c)).collect::<Result<Vec<i64>>>())
        .collect()
}

/// The type M(Σ) of a π-system.
pub fn gcm_of(ctx: &RootContext, roots: &[RootVec]) -> Result<Gcm> {
    if ctx.is_supported() {
        for (i, b) in roots.iter().enumerate() {
            if !ctx.is_real_root(b)? {
                return Err(Error::NotRealRootAt(i));
            }
        }
    }
    Gcm::new(pairing_matrix(ctx, roots)?).map_err(|_| Error::NotAGcm)
}

pub fn is_linearly_independent(roots: &[RootVec]) -> bool {
    linalg::rank(roots) == roots.len()
}

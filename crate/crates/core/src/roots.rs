//! Root lattice arithmetic for a fixed ambient matrix: the invariant form,
//! coroot pairings, simple reflections, root membership and bounded
//! enumeration of real roots.

use std::collections::{HashSet, VecDeque};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::families;
use crate::gcm::{DiagramClass, Gcm, Kind, Symmetrizer};
use crate::linalg;

/// Coordinates in the basis of simple roots.
pub type RootVec = Vec<i64>;

/// Default height bound for enumeration and search.
pub const DEFAULT_HEIGHT: u64 = 12;
/// Hard cap on the number of enumerated roots.
pub const ROOT_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootStatus {
    RealRoot,
    ImaginaryRoot,
    NotRoot,
}

impl RootStatus {
    pub fn is_root(self) -> bool {
        self != RootStatus::NotRoot
    }
}

/// How a connected component is treated by the membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CompKind {
    Finite,
    Affine,
    Hyperbolic,
    Other,
}

/// An ambient matrix together with its symmetrizer and classification.
#[derive(Clone, Debug)]
pub struct RootContext {
    gcm: Gcm,
    sym: Symmetrizer,
    class: DiagramClass,
    comp_of: Vec<usize>,
    comp_kind: Vec<CompKind>,
}

/// Structural data of a connected affine diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineData {
    /// Null root; its coefficients are the marks.
    pub delta: RootVec,
    pub twist: u8,
    pub zero_node: usize,
    /// δ − a_0 α_0.
    pub theta: RootVec,
    /// True for the twisted types A_{2l}^{(2)}.
    pub a_even_twisted: bool,
}

impl RootContext {
    pub fn new(gcm: Gcm) -> Result<RootContext> {
        let sym = gcm.symmetrize()?;
        let class = gcm.classify()?;
        let comps = gcm.components();
        let mut comp_of = vec![0; gcm.rank()];
        let mut comp_kind = Vec::new();
        for (k, c) in comps.iter().enumerate() {
            for &i in c {
                comp_of[i] = k;
            }
            let sub = gcm.sub_unchecked(c);
            comp_kind.push(match sub.kind() {
                Kind::Finite => CompKind::Finite,
                Kind::Affine => CompKind::Affine,
                Kind::Indefinite if sub.is_hyperbolic() => CompKind::Hyperbolic,
                Kind::Indefinite => CompKind::Other,
            });
        }
        Ok(RootContext { gcm, sym, class, comp_of, comp_kind })
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    pub fn symmetrizer(&self) -> &Symmetrizer {
        &self.sym
    }

    pub fn class(&self) -> &DiagramClass {
        &self.class
    }

    /// Squared lengths `|α_i|² = 2 d_i`.
    pub fn norms(&self) -> Vec<i64> {
        self.sym.norms()
    }

    /// True when every component is finite, affine or hyperbolic, which is
    /// what root membership needs.
    pub fn is_supported(&self) -> bool {
        !self.comp_kind.contains(&CompKind::Other)
    }

    fn check_len(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: x.len() });
        }
        Ok(())
    }

    /// `(x, y) = Σ x_i d_i a_ij y_j`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut s: i128 = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row += self.gcm.get(i, j) as i128 * y[j] as i128;
            }
            s += x[i] as i128 * self.sym.d[i] as i128 * row;
        }
        s.try_into().expect("inner product overflows i64")
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.inner(x, x)
    }

    /// `⟨β^∨, γ⟩ = 2(β, γ)/(β, β)`.
    pub fn pairing(&self, beta: &[i64], gamma: &[i64]) -> Result<i64> {
        self.check_len(beta)?;
        self.check_len(gamma)?;
        let nb = self.norm(beta);
        if nb == 0 {
            return Err(Error::ZeroNorm);
        }
        let num = 2 * self.inner(beta, gamma);
        if num % nb != 0 {
            return Err(Error::NonIntegralPairing);
        }
        Ok(num / nb)
    }

    /// `⟨α_i^∨, x⟩ = Σ_j a_ij x_j`.
    #[inline]
    pub fn coroot(&self, i: usize, x: &[i64]) -> i64 {
        let n = self.rank();
        (0..n).map(|j| self.gcm.get(i, j) * x[j]).sum()
    }

    pub fn reflect(&self, i: usize, x: &[i64]) -> RootVec {
        let mut y = x.to_vec();
        y[i] -= self.coroot(i, x);
        y
    }

    pub fn simple(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn is_root(&self, x: &[i64]) -> Result<RootStatus> {
        self.check_len(x)?;
        if !self.is_supported() {
            return Err(Error::UnsupportedKind);
        }
        let supp: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0).collect();
        let Some(&first) = supp.first() else {
            return Ok(RootStatus::NotRoot);
        };
        let comp = self.comp_of[first];
        if supp.iter().any(|&i| self.comp_of[i] != comp) {
            return Ok(RootStatus::NotRoot);
        }
        if self.comp_kind[comp] != CompKind::Hyperbolic {
            let pos = supp.iter().all(|&i| x[i] > 0);
            let neg = supp.iter().all(|&i| x[i] < 0);
            if !(pos || neg) || !self.support_connected(&supp) {
                return Ok(RootStatus::NotRoot);
            }
        }
        let nx = self.norm(x);
        if nx <= 0 {
            return Ok(RootStatus::ImaginaryRoot);
        }
        let norms = self.norms();
        let integral = supp.iter().all(|&j| (x[j] * norms[j]) % nx == 0);
        Ok(if integral { RootStatus::RealRoot } else { RootStatus::NotRoot })
    }

    fn support_connected(&self, supp: &[usize]) -> bool {
        let mut seen = vec![supp[0]];
        let mut k = 0;
        while k < seen.len() {
            let v = seen[k];
            k += 1;
            for &u in supp {
                if !seen.contains(&u) && self.gcm.get(v, u) != 0 {
                    seen.push(u);
                }
            }
        }
        seen.len() == supp.len()
    }

    pub fn is_real_root(&self, x: &[i64]) -> Result<bool> {
        Ok(self.is_root(x)? == RootStatus::RealRoot)
    }

    /// All positive real roots of height at most `bound`, sorted by height
    /// and then lexicographically. `None` asks for the whole positive system
    /// and is only accepted for finite type.
    pub fn real_roots_bounded(&self, bound: Option<u64>) -> Result<Vec<RootVec>> {
        self.real_roots_capped(bound, ROOT_CAP)
    }

    pub fn real_roots_capped(&self, bound: Option<u64>, cap: usize) -> Result<Vec<RootVec>> {
        if !self.is_supported() {
            return Err(Error::UnsupportedKind);
        }
        if bound.is_none() && self.class.kind != Kind::Finite {
            return Err(Error::BadParameter("an unbounded enumeration needs a finite type".into()));
        }
        let limit = bound.map_or(i64::MAX, |b| b.min(i64::MAX as u64) as i64);
        let n = self.rank();
        let mut seen: HashSet<RootVec> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let s = self.simple(i);
            seen.insert(s.clone());
            queue.push_back((s, 1i64));
        }
        while let Some((beta, h)) = queue.pop_front() {
            for i in 0..n {
                let c = self.coroot(i, &beta);
                if c >= 0 {
                    continue;
                }
                let h2 = h - c;
                if h2 > limit {
                    continue;
                }
                let mut g = beta.clone();
                g[i] -= c;
                if seen.insert(g.clone()) {
                    if seen.len() > cap {
                        return Err(Error::BoundTooLargeForMemory(cap));
                    }
                    queue.push_back((g, h2));
                }
            }
        }
        let mut out: Vec<RootVec> = seen.into_iter().collect();
        sort_roots(&mut out);
        Ok(out)
    }

    /// Writes a real root as `w · (sign α_p)`. Applying the reflections of
    /// `word` from left to right to `sign · α_p` gives back `beta`.
    pub fn descend_to_simple(&self, beta: &[i64]) -> Result<(Vec<usize>, usize, i64)> {
        if !self.is_real_root(beta)? {
            return Err(Error::NotRealRoot);
        }
        let sign = if beta.iter().all(|&x| x >= 0) { 1 } else { -1 };
        let mut g: RootVec = beta.iter().map(|&x| sign * x).collect();
        let mut word = Vec::new();
        loop {
            if let Some(p) = simple_index(&g) {
                word.reverse();
                return Ok((word, p, sign));
            }
            let i = (0..self.rank())
                .find(|&i| self.coroot(i, &g) > 0)
                .expect("a positive real root above a simple root has a descent");
            g = self.reflect(i, &g);
            word.push(i);
        }
    }

    /// Applies the reflections of `word` left to right.
    pub fn apply_word(&self, word: &[usize], x: &[i64]) -> RootVec {
        word.iter().fold(x.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn affine_data(&self) -> Result<AffineData> {
        if self.class.kind != Kind::Affine || !self.class.connected {
            return Err(Error::NotAffine);
        }
        let n = self.rank();
        let ker = linalg::kernel(n, n, self.gcm.entries());
        if ker.len() != 1 {
            return Err(Error::NotAffine);
        }
        let mut delta: RootVec =
            ker[0].iter().map(|x| x.to_i64().expect("mark fits")).collect();
        if delta.iter().any(|&x| x < 0) {
            delta.iter_mut().for_each(|x| *x = -*x);
        }
        let info = families::identify(&self.gcm).ok_or(Error::RankTooLarge(n))?;
        let twist = info.twist.ok_or(Error::NotAffine)?;
        let norms = self.norms();
        let pick = |want_max: bool, mark: i64| -> usize {
            let target = if want_max {
                *norms.iter().max().unwrap()
            } else {
                *norms.iter().min().unwrap()
            };
            (0..n)
                .find(|&i| norms[i] == target && delta[i] == mark)
                .expect("a node of the required length and mark")
        };
        let zero_node = if info.a_even_twisted {
            pick(false, 2)
        } else if twist == 1 {
            pick(true, 1)
        } else {
            pick(false, 1)
        };
        let mut theta = delta.clone();
        theta[zero_node] -= delta[zero_node];
        Ok(AffineData { delta, twist, zero_node, theta, a_even_twisted: info.a_even_twisted })
    }

    /// Affine data of the subdiagram on `y`, expressed in the coordinates of
    /// this ambient (the zero node is an ambient index).
    pub fn affine_data_of(&self, y: &[usize]) -> Result<AffineData> {
        let sub = RootContext::new(self.gcm.subdiagram(y)?)?;
        let ad = sub.affine_data()?;
        let lift = |v: &RootVec| {
            let mut out = vec![0; self.rank()];
            for (k, &i) in y.iter().enumerate() {
                out[i] = v[k];
            }
            out
        };
        Ok(AffineData {
            delta: lift(&ad.delta),
            theta: lift(&ad.theta),
            zero_node: y[ad.zero_node],
            twist: ad.twist,
            a_even_twisted: ad.a_even_twisted,
        })
    }
}

pub fn height(x: &[i64]) -> i64 {
    x.iter().sum()
}

fn simple_index(x: &[i64]) -> Option<usize> {
    let mut idx = None;
    for (i, &v) in x.iter().enumerate() {
        match v {
            0 => {}
            1 if idx.is_none() => idx = Some(i),
            _ => return None,
        }
    }
    idx
}

/// Sorts by height, then lexicographically.
pub fn sort_roots(v: &mut [RootVec]) {
    v.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)));
}

pub fn is_positive(x: &[i64]) -> bool {
    x.iter().all(|&v| v >= 0) && x.iter().any(|&v| v > 0)
}

pub fn negate(x: &[i64]) -> RootVec {
    x.iter().map(|v| -v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn ctx(rows: &[&[i64]]) -> RootContext {
        RootContext::new(Gcm::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()).unwrap()
    }

    #[test]
    fn pairings() {
        let a2 = ctx(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a2.pairing(&[1, 0], &[0, 1]).unwrap(), -1);
        let g2 = ctx(&[&[2, -1], &[-3, 2]]);
        assert_eq!(g2.pairing(&[1, 3], &[1, 0]).unwrap(), -1);
        let a11 = ctx(&[&[2, -2], &[-2, 2]]);
        assert_eq!(a11.inner(&[1, 1], &[1, 0]), 0);
        assert_eq!(a11.pairing(&[1, 1], &[1, 0]), Err(Error::ZeroNorm));
    }

    #[test]
    fn membership() {
        let a11 = ctx(&[&[2, -2], &[-2, 2]]);
        assert_eq!(a11.is_root(&[1, 2]).unwrap(), RootStatus::RealRoot);
        assert_eq!(a11.is_root(&[1, 1]).unwrap(), RootStatus::ImaginaryRoot);
        assert_eq!(a11.is_root(&[1, -1]).unwrap(), RootStatus::NotRoot);
        let a2 = ctx(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a2.is_root(&[1, -1]).unwrap(), RootStatus::NotRoot);
        assert_eq!(a2.is_root(&[0, 0]).unwrap(), RootStatus::NotRoot);
    }

    #[test]
    fn reflections() {
        let a2 = ctx(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a2.reflect(0, &[0, 1]), vec![1, 1]);
        assert_eq!(a2.reflect(1, &[0, 1]), vec![0, -1]);
        let b2 = ctx(&[&[2, -2], &[-1, 2]]);
        assert_eq!(b2.reflect(0, &[0, 1]), vec![2, 1]);
    }

    #[test]
    fn bounded_enumeration() {
        let a2 = ctx(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a2.real_roots_bounded(None).unwrap().len(), 3);
        let a11 = ctx(&[&[2, -2], &[-2, 2]]);
        let r = a11.real_roots_bounded(Some(5)).unwrap();
        assert_eq!(
            r,
            vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1], vec![2, 3], vec![3, 2]]
        );
        assert!(a11.real_roots_bounded(None).is_err());
        let c4 = RootContext::new(families::c(4).unwrap()).unwrap();
        assert_eq!(c4.real_roots_bounded(None).unwrap().len(), 16);
    }

    #[test]
    fn descent() {
        let a2 = ctx(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a2.descend_to_simple(&[1, 1]).unwrap(), (vec![0], 1, 1));
        assert_eq!(a2.descend_to_simple(&[0, 1]).unwrap(), (vec![], 1, 1));
        let a11 = ctx(&[&[2, -2], &[-2, 2]]);
        assert_eq!(a11.descend_to_simple(&[1, 2]).unwrap(), (vec![1], 0, 1));
        let (w, p, s) = a11.descend_to_simple(&[-3, -2]).unwrap();
        let mut start = a11.simple(p);
        start.iter_mut().for_each(|x| *x *= s);
        assert_eq!(a11.apply_word(&w, &start), vec![-3, -2]);
    }

    #[test]
    fn affine_structure() {
        let a11 = ctx(&[&[2, -2], &[-2, 2]]);
        let ad = a11.affine_data().unwrap();
        assert_eq!(ad.delta, vec![1, 1]);
        assert_eq!(ad.twist, 1);
        let a22 = ctx(&[&[2, -4], &[-1, 2]]);
        let ad = a22.affine_data().unwrap();
        assert_eq!(ad.delta, vec![2, 1]);
        assert_eq!(ad.twist, 2);
        assert_eq!(ad.zero_node, 0);
        let d43 = RootContext::new(families::affine("D4^(3)").unwrap()).unwrap();
        let ad = d43.affine_data().unwrap();
        assert_eq!(ad.twist, 3);
        assert_eq!(ad.zero_node, 0);
        assert_eq!(ad.delta, vec![1, 2, 1]);
        let e8 = RootContext::new(families::affine("E8^(1)").unwrap()).unwrap();
        let ad = e8.affine_data().unwrap();
        assert_eq!(ad.zero_node, 0);
        assert_eq!(e8.norm(&ad.delta), 0);
    }
}

//! Necessary conditions for `B ⪯ A`: size, determinant, signature and root
//! lengths, and the mod-d obstructions for doubly- and triply-laced
//! ambients.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;
use crate::gcm::{Gcm, Kind};
use crate::roots::{RootContext, RootVec};

/// Largest matrix accepted by [`mod_d_realizable`].
pub const MOD_D_MAX_SIZE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Possible,
    Refuted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Short,
    Long,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "tag")]
pub enum Reason {
    SizeExceeded { m: usize, n: usize },
    DetNotMultiple { det_a: i64, det_b: i64 },
    DetMultipleTooSmall { k: i64 },
    SignatureMismatch { a: (usize, usize, usize), b: (usize, usize, usize) },
    RootLengthRatio,
    ForbiddenSubdiagram { name: String },
    ModDObstruction { y: String, d: i64, side: Side, m: Vec<Vec<i64>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ruling {
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
}

impl Ruling {
    fn from_reasons(reasons: Vec<Reason>) -> Ruling {
        let verdict = if reasons.is_empty() { Verdict::Possible } else { Verdict::Refuted };
        Ruling { verdict, reasons }
    }

    pub fn possible() -> Ruling {
        Ruling { verdict: Verdict::Possible, reasons: Vec::new() }
    }

    pub fn is_refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().unwrap_or(if x.sign() == num_bigint::Sign::Minus { i64::MIN } else { i64::MAX })
}

/// Size, determinant, signature and root-length tests.
pub fn necessary_checks(a: &Gcm, b: &Gcm) -> Result<Ruling> {
    let (n, m) = (a.rank(), b.rank());
    let mut reasons = Vec::new();
    if m > n {
        reasons.push(Reason::SizeExceeded { m, n });
    }
    if m == n {
        let ca = a.classify()?;
        let cb = b.classify()?;
        let (da, db) = (&ca.det, &cb.det);
        let multiple = if da.is_zero() {
            db.is_zero().then(BigInt::zero)
        } else if (db % da).is_zero() && db / da >= BigInt::from(1) {
            Some(db / da)
        } else {
            None
        };
        match multiple {
            None => reasons.push(Reason::DetNotMultiple { det_a: small(da), det_b: small(db) }),
            Some(k) if k == BigInt::from(1) && ca.hyperbolic && cb.hyperbolic && !a.is_isomorphic(b)? => {
                reasons.push(Reason::DetMultipleTooSmall { k: 1 })
            }
            _ => {}
        }
        if ca.signature != cb.signature {
            reasons.push(Reason::SignatureMismatch { a: ca.signature, b: cb.signature });
        }
    }
    if length_scales(a, b)?.is_none() {
        reasons.push(Reason::RootLengthRatio);
    }
    Ok(Ruling::from_reasons(reasons))
}

/// For every component of B, the scale factors `c` such that `c` times its
/// simple-root norms all occur among the simple-root norms of a single
/// component of A. `None` if some component of B admits no scale.
fn length_scales(a: &Gcm, b: &Gcm) -> Result<Option<Vec<Vec<(usize, Rational64)>>>> {
    let na = a.symmetrize()?.norms();
    let nb = b.symmetrize()?.norms();
    let a_sets: Vec<BTreeSet<i64>> =
        a.components().iter().map(|c| c.iter().map(|&i| na[i]).collect()).collect();
    let mut out = Vec::new();
    for comp in b.components() {
        let bs: BTreeSet<i64> = comp.iter().map(|&i| nb[i]).collect();
        let b0 = *bs.iter().next().expect("nonempty component");
        let mut scales = Vec::new();
        for (k, set) in a_sets.iter().enumerate() {
            for &x in set {
                let c = Rational64::new(x, b0);
                let fits = bs.iter().all(|&y| {
                    let v = c * Rational64::from_integer(y);
                    v.is_integer() && set.contains(&v.to_integer())
                });
                if fits && !scales.contains(&(k, c)) {
                    scales.push((k, c));
                }
            }
        }
        if scales.is_empty() {
            return Ok(None);
        }
        out.push(scales);
    }
    Ok(Some(out))
}

/// 2 for doubly-laced, 3 for triply-laced, `None` otherwise.
pub fn lacing(x: &Gcm) -> Option<i64> {
    let mut d = None;
    for i in 0..x.rank() {
        for j in 0..x.rank() {
            if i == j {
                continue;
            }
            let (p, q) = (x.get(i, j), x.get(j, i));
            match (p, q) {
                (0, 0) | (-1, -1) => {}
                (-1, m) | (m, -1) if m == -2 || m == -3 => {
                    if d.is_some_and(|v| v != -m) {
                        return None;
                    }
                    d = Some(-m);
                }
                _ => return None,
            }
        }
    }
    d
}

/// Vertices of shortest (`Side::Short`) or longest simple roots.
pub fn extreme_vertices(x: &Gcm, side: Side) -> Result<Vec<usize>> {
    let norms = x.symmetrize()?.norms();
    let target = match side {
        Side::Short => *norms.iter().min().unwrap_or(&0),
        Side::Long => *norms.iter().max().unwrap_or(&0),
    };
    Ok((0..x.rank()).filter(|&i| norms[i] == target).collect())
}

/// Tests whether `B` avoids the configurations that cannot occur among the
/// short or long real roots of a doubly- or triply-laced ambient `X`.
/// Always `Possible` when X is not laced in that sense.
pub fn forbidden_check(x: &Gcm, b: &Gcm) -> Result<Ruling> {
    let Some(d) = lacing(x) else {
        return Ok(Ruling::possible());
    };
    let Some(scales) = length_scales(x, b)? else {
        return Ok(Ruling::from_reasons(vec![Reason::RootLengthRatio]));
    };
    let nx = x.symmetrize()?.norms();
    let nb = b.symmetrize()?.norms();
    let (short_n, long_n) = (*nx.iter().min().unwrap(), *nx.iter().max().unwrap());
    let comps = b.components();
    let fah = x.components().iter().all(|c| {
        let s = x.sub_unchecked(c);
        s.kind() != Kind::Indefinite || s.is_hyperbolic()
    });
    let xs = extreme_vertices(x, Side::Short)?;
    let xl = extreme_vertices(x, Side::Long)?;
    let xs_type = x.sub_unchecked(&xs);
    let xl_type = x.sub_unchecked(&xl);
    let ys = ShortLongPart::new(&xs_type, d)?;
    let yl = ShortLongPart::new(&xl_type, d)?;

    let total: usize = scales.iter().map(|s| s.len()).product();
    if total > 4096 {
        return Ok(Ruling::possible());
    }
    let mut all_reasons: BTreeSet<Reason> = BTreeSet::new();
    for code in 0..total {
        // pick one scale per component
        let mut rest = code;
        let mut short = Vec::new();
        let mut long = Vec::new();
        for (comp, options) in comps.iter().zip(&scales) {
            let (_, c) = options[rest % options.len()];
            rest /= options.len();
            for &v in comp {
                let norm = (c * Rational64::from_integer(nb[v])).to_integer();
                if norm == short_n {
                    short.push(v);
                }
                if norm == long_n {
                    long.push(v);
                }
            }
        }
        short.sort_unstable();
        long.sort_unstable();
        let mut reasons = Vec::new();
        if let Some(r) = ys.obstruction(b, &short, Side::Short)? {
            reasons.push(r);
        }
        if let Some(r) = yl.obstruction(b, &long, Side::Long)? {
            reasons.push(r);
        }
        if fah {
            let pair = |pred: &dyn Fn(i64, i64) -> bool| {
                short.iter().any(|&i| short.iter().any(|&j| i < j && pred(b.get(i, j), b.get(j, i))))
            };
            if d == 3 && xs.len() == 1 && pair(&|p, q| p == -1 && q == -1) {
                reasons.push(Reason::ForbiddenSubdiagram { name: "A2 among short roots".into() });
            }
            let xs_ok = xs.len() == 1 || (xs.len() == 2 && xs_type.get(0, 1) == -1 && xs_type.get(1, 0) == -1);
            if d == 2 && xs_ok && pair(&|p, _| p == 0) {
                reasons.push(Reason::ForbiddenSubdiagram { name: "A1xA1 among short roots".into() });
            }
        }
        if reasons.is_empty() {
            return Ok(Ruling::possible());
        }
        all_reasons.extend(reasons);
    }
    Ok(Ruling::from_reasons(all_reasons.into_iter().collect()))
}

/// The short or long part Y of a laced ambient, prepared for the mod-d test.
struct ShortLongPart {
    name: String,
    d: i64,
    table: Option<ModDTable>,
}

impl ShortLongPart {
    fn new(y: &Gcm, d: i64) -> Result<ShortLongPart> {
        let name = families::describe(y).unwrap_or_else(|| format!("rank {} subdiagram", y.rank()));
        let table = if y.kind() == Kind::Finite { Some(ModDTable::new(y, d)?) } else { None };
        Ok(ShortLongPart { name, d, table })
    }

    fn obstruction(&self, b: &Gcm, verts: &[usize], side: Side) -> Result<Option<Reason>> {
        let Some(table) = &self.table else {
            return Ok(None);
        };
        if verts.len() < 2 {
            return Ok(None);
        }
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        if verts.len() <= MOD_D_MAX_SIZE {
            subsets.push(verts.to_vec());
        } else {
            for i in 0..verts.len() {
                for j in i + 1..verts.len() {
                    subsets.push(vec![verts[i], verts[j]]);
                    for k in j + 1..verts.len() {
                        subsets.push(vec![verts[i], verts[j], verts[k]]);
                    }
                }
            }
        }
        for s in subsets {
            let m: Vec<Vec<i64>> = s.iter().map(|&i| s.iter().map(|&j| b.get(i, j)).collect()).collect();
            if !table.realizable(&m) {
                return Ok(Some(Reason::ModDObstruction { y: self.name.clone(), d: self.d, side, m }));
            }
        }
        Ok(None)
    }
}

/// Pairings modulo d between all real roots of a finite type, with one
/// representative per Weyl group orbit.
struct ModDTable {
    d: i64,
    pair: Vec<Vec<i64>>,
    reps: Vec<usize>,
}

impl ModDTable {
    fn new(y: &Gcm, d: i64) -> Result<ModDTable> {
        let ctx = RootContext::new(y.clone())?;
        let pos = ctx.real_roots_bounded(None)?;
        let roots: Vec<RootVec> = pos.iter().cloned().chain(pos.iter().map(|r| r.iter().map(|x| -x).collect())).collect();
        let mut pair = vec![vec![0; roots.len()]; roots.len()];
        for (i, r) in roots.iter().enumerate() {
            for (j, s) in roots.iter().enumerate() {
                pair[i][j] = ctx.pairing(r, s)?.rem_euclid(d);
            }
        }
        // orbits under simple reflections
        let index = |v: &RootVec| roots.iter().position(|r| r == v).expect("closed under W");
        let mut orbit = vec![usize::MAX; roots.len()];
        let mut reps = Vec::new();
        for start in 0..roots.len() {
            if orbit[start] != usize::MAX {
                continue;
            }
            orbit[start] = reps.len();
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                for i in 0..y.rank() {
                    let t = index(&ctx.reflect(i, &roots[k]));
                    if orbit[t] == usize::MAX {
                        orbit[t] = reps.len();
                        stack.push(t);
                    }
                }
            }
            reps.push(start);
        }
        Ok(ModDTable { d, pair, reps })
    }

    fn realizable(&self, m: &[Vec<i64>]) -> bool {
        let k = m.len();
        if (0..k).any(|i| (m[i][i] - 2).rem_euclid(self.d) != 0) {
            return false;
        }
        if k == 0 {
            return true;
        }
        let target: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(self.d)).collect()).collect();
        let mut chosen = Vec::with_capacity(k);
        self.reps.iter().any(|&r| {
            chosen.clear();
            chosen.push(r);
            self.extend(&target, &mut chosen)
        })
    }

    fn extend(&self, target: &[Vec<i64>], chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == target.len() {
            return true;
        }
        for cand in 0..self.pair.len() {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(j, &c)| self.pair[c][cand] == target[j][i] && self.pair[cand][c] == target[i][j]);
            if ok {
                chosen.push(cand);
                if self.extend(target, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// Whether some multiset of real roots of the finite type `y` has pairing
/// matrix congruent to `m` modulo `d`.
pub fn mod_d_realizable(y: &Gcm, d: i64, m: &[Vec<i64>]) -> Result<bool> {
    if !(d == 2 || d == 3) {
        return Err(Error::BadParameter(format!("d must be 2 or 3, got {d}")));
    }
    if y.kind() != Kind::Finite {
        return Err(Error::UnsupportedKind);
    }
    if m.len() > MOD_D_MAX_SIZE {
        return Err(Error::TooLarge);
    }
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(Error::NotSquare);
    }
    Ok(ModDTable::new(y, d)?.realizable(m))
}

/// Bar reduction of a multiset of roots from the Weyl orbit of the real
/// roots of Y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarReduction {
    /// Reduced roots, all supported on Y (ambient coordinates).
    pub roots: Vec<RootVec>,
    /// Their pairing matrix, congruent to that of the input modulo d.
    pub matrix: Vec<Vec<i64>>,
}

/// Checks that d divides `a_ji` for all i in Y, j outside (or the
/// transposed condition).
pub fn divisibility_hypothesis(x: &Gcm, y: &[usize], d: i64) -> Result<()> {
    let outside: Vec<usize> = (0..x.rank()).filter(|j| !y.contains(j)).collect();
    let holds = |f: &dyn Fn(usize, usize) -> i64| -> Option<(usize, usize)> {
        for &i in y {
            for &j in &outside {
                if f(i, j) % d != 0 {
                    return Some((i, j));
                }
            }
        }
        None
    };
    let first = holds(&|i, j| x.get(j, i));
    if first.is_none() || holds(&|i, j| x.get(i, j)).is_none() {
        return Ok(());
    }
    let (i, j) = first.expect("checked");
    Err(Error::HypothesisFails { d, i, j })
}

/// Maps each `β = w·(±α_p)` (p in Y) to `w̄·(±α_p)`, where `w̄` drops the
/// reflections outside Y.
pub fn bar_reduce(ctx: &RootContext, y: &[usize], d: i64, sigma: &[RootVec]) -> Result<BarReduction> {
    if d < 2 {
        return Err(Error::BadParameter("d must be at least 2".into()));
    }
    if let Some(&bad) = y.iter().find(|&&i| i >= ctx.rank()) {
        return Err(Error::IndexOutOfRange(bad));
    }
    divisibility_hypothesis(ctx.gcm(), y, d)?;
    let mut roots = Vec::with_capacity(sigma.len());
    for beta in sigma {
        let (word, p, sign) = ctx.descend_to_simple(beta)?;
        if !y.contains(&p) {
            return Err(Error::NotInOrbitOfY);
        }
        let bar: Vec<usize> = word.into_iter().filter(|i| y.contains(i)).collect();
        let start: RootVec = ctx.simple(p).iter().map(|x| sign * x).collect();
        roots.push(ctx.apply_word(&bar, &start));
    }
    let matrix = roots
        .iter()
        .map(|r| roots.iter().map(|s| ctx.pairing(r, s)).collect::<Result<Vec<i64>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(BarReduction { roots, matrix })
}

//! Generalized Cartan matrices: validation, symmetrization, classification
//! and isomorphism.

use std::fmt;


use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::canon;
use crate::error::{Error, Result};
use crate::linalg;

/// Largest rank accepted by the canonical labelling.
pub const MAX_CANON_RANK: usize = 12;

/// A validated generalized Cartan matrix, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gcm {
    n: usize,
    a: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Finite => "Finite",
            Kind::Affine => "Affine",
            Kind::Indefinite => "Indefinite",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramClass {
    pub kind: Kind,
    pub hyperbolic: bool,
    pub connected: bool,
    pub det: BigInt,
    /// (positive, negative, zero) counts of the symmetrized form.
    pub signature: (usize, usize, usize),
    pub affine_twist: Option<u8>,
}

/// Diagonal of a symmetrizing matrix D with DA symmetric. Entries are
/// positive integers with gcd 1 on every connected component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symmetrizer {
    pub d: Vec<i64>,
}

impl Symmetrizer {
    /// Squared lengths of the simple roots, `2 d_i`.
    pub fn norms(&self) -> Vec<i64> {
        self.d.iter().map(|x| 2 * x).collect()
    }
}

/// Checks the three axioms and returns the matrix as a [`Gcm`].
pub fn validate_gcm(rows: &[Vec<i64>]) -> Result<Gcm> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    let a: Vec<i64> = rows.iter().flatten().copied().collect();
    Gcm::from_flat(n, a)
}

impl Gcm {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Gcm> {
        validate_gcm(&rows)
    }

    pub fn from_flat(n: usize, a: Vec<i64>) -> Result<Gcm> {
        if a.len() != n * n {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            if a[i * n + i] != 2 {
                return Err(Error::DiagonalNotTwo(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let x = a[i * n + j];
                if x > 0 {
                    return Err(Error::PositiveOffDiagonal(i, j));
                }
                if x == 0 && a[j * n + i] != 0 {
                    return Err(Error::AsymmetricZero(i, j));
                }
            }
        }
        Ok(Gcm { n, a })
    }

    /// Diagonal matrix with 2 on the diagonal: `n` copies of A1.
    pub fn identity_type(n: usize) -> Gcm {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 2;
        }
        Gcm { n, a }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.a
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.a.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn transpose(&self) -> Gcm {
        let n = self.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.a[i * n + j];
            }
        }
        Gcm { n, a }
    }

    /// The matrix with rows and columns reordered: entry (k, l) of the result
    /// is entry (order[k], order[l]) of `self`.
    pub fn permuted(&self, order: &[usize]) -> Gcm {
        let n = self.n;
        assert_eq!(order.len(), n);
        let a = order
            .iter()
            .flat_map(|&i| order.iter().map(move |&j| self.a[i * n + j]))
            .collect();
        Gcm { n, a }
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && self.get(i, j) != 0)
    }

    /// Connected components, each sorted, in order of smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        canon::components(self.n, &self.a)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Principal submatrix on the given indices (kept in the given order).
    pub fn subdiagram(&self, s: &[usize]) -> Result<Gcm> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(&bad) = s.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange(bad));
        }
        Ok(self.sub_unchecked(s))
    }

    pub(crate) fn sub_unchecked(&self, s: &[usize]) -> Gcm {
        let n = self.n;
        let a = s
            .iter()
            .flat_map(|&i| s.iter().map(move |&j| self.a[i * n + j]))
            .collect();
        Gcm { n: s.len(), a }
    }

    pub fn det(&self) -> BigInt {
        linalg::det(self.n, &self.a)
    }

    pub fn symmetrize(&self) -> Result<Symmetrizer> {
        symmetrizer_of(self.n, &self.a)
            .map(|d| Symmetrizer { d })
            .map_err(|cycle| Error::NotSymmetrizable { cycle })
    }

    pub fn is_symmetrizable(&self) -> bool {
        symmetrizer_of(self.n, &self.a).is_ok()
    }

    /// Finite / affine / indefinite type. Works for non-symmetrizable
    /// matrices too, which are always indefinite.
    pub fn kind(&self) -> Kind {
        let comps = self.components();
        if comps.len() == 1 {
            return connected_kind(self.n, &self.a);
        }
        let mut affine = false;
        for c in &comps {
            match self.sub_unchecked(c).kind() {
                Kind::Indefinite => return Kind::Indefinite,
                Kind::Affine => affine = true,
                Kind::Finite => {}
            }
        }
        if affine {
            Kind::Affine
        } else {
            Kind::Finite
        }
    }

    /// Connected, indefinite, and every proper connected subdiagram is of
    /// finite or affine type.
    pub fn is_hyperbolic(&self) -> bool {
        is_hyperbolic(self.n, &self.a)
    }

    pub fn classify(&self) -> Result<DiagramClass> {
        let sym = self.symmetrize()?;
        let n = self.n;
        let s: Vec<BigRational> = (0..n * n)
            .map(|k| BigRational::from_integer(BigInt::from(sym.d[k / n] * self.a[k])))
            .collect();
        let signature = linalg::signature(n, &s);
        let comps = self.components();
        let connected = comps.len() == 1;
        // Kind from the signature, component by component.
        let mut kinds = Vec::new();
        for c in &comps {
            let m = c.len();
            let sub: Vec<BigRational> = c
                .iter()
                .flat_map(|&i| c.iter().map(move |&j| (i, j)))
                .map(|(i, j)| BigRational::from_integer(BigInt::from(sym.d[i] * self.get(i, j))))
                .collect();
            let (p, q, z) = linalg::signature(m, &sub);
            kinds.push(if p == m {
                Kind::Finite
            } else if q == 0 && z == 1 {
                Kind::Affine
            } else {
                Kind::Indefinite
            });
        }
        let kind = if kinds.contains(&Kind::Indefinite) {
            Kind::Indefinite
        } else if kinds.contains(&Kind::Affine) {
            Kind::Affine
        } else {
            Kind::Finite
        };
        let hyperbolic = kind == Kind::Indefinite && self.is_hyperbolic();
        let affine_twist = if kind == Kind::Affine && connected {
            crate::families::affine_twist(self)
        } else {
            None
        };
        Ok(DiagramClass {
            kind,
            hyperbolic,
            connected,
            det: self.det(),
            signature,
            affine_twist,
        })
    }

    /// Canonical form under simultaneous row/column permutation.
    pub fn canonical_key(&self) -> Result<Vec<u8>> {
        Ok(key_bytes(self.n, &self.canonical_labelling()?.matrix))
    }

    pub(crate) fn canonical_labelling(&self) -> Result<canon::Labelling> {
        if self.n > MAX_CANON_RANK {
            return Err(Error::RankTooLarge(self.n));
        }
        Ok(canon::canonical_labelling(self.n, &self.a))
    }

    pub fn canonical_form(&self) -> Result<Gcm> {
        let l = self.canonical_labelling()?;
        Ok(Gcm { n: self.n, a: l.matrix })
    }

    pub fn is_isomorphic(&self, other: &Gcm) -> Result<bool> {
        if self.n != other.n {
            return Ok(false);
        }
        Ok(self.canonical_labelling()?.matrix == other.canonical_labelling()?.matrix)
    }

    /// An explicit isomorphism `f` with `self[i][j] == other[f[i]][f[j]]`.
    pub fn isomorphism_to(&self, other: &Gcm) -> Result<Option<Vec<usize>>> {
        if self.n != other.n {
            return Ok(None);
        }
        let l1 = self.canonical_labelling()?;
        let l2 = other.canonical_labelling()?;
        if l1.matrix != l2.matrix {
            return Ok(None);
        }
        let mut f = vec![0; self.n];
        for k in 0..self.n {
            f[l1.order[k]] = l2.order[k];
        }
        Ok(Some(f))
    }

    /// Hex form of the canonical key, convenient for files and logs.
    pub fn key_hex(&self) -> Result<String> {
        Ok(self.canonical_key()?.iter().map(|b| format!("{b:02x}")).collect())
    }
}

impl fmt::Debug for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gcm{:?}", self.rows())
    }
}

/// Serialized as its list of rows.
impl serde::Serialize for Gcm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Gcm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Gcm, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        Gcm::new(rows).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
            write!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

pub(crate) fn key_bytes(n: usize, m: &[i64]) -> Vec<u8> {
    // entries of a GCM of interest fit comfortably in a signed byte; larger
    // values fall back to a wider encoding so keys stay injective.
    let mut out = Vec::with_capacity(1 + m.len());
    out.push(n as u8);
    for &x in m {
        if (-127..=127).contains(&x) {
            out.push(x as i8 as u8);
        } else {
            out.push(0x80);
            out.extend_from_slice(&x.to_be_bytes());
        }
    }
    out
}

/// Symmetrizer by propagation along a spanning forest. On failure returns a
/// cycle whose products of entries differ in the two directions.
pub(crate) fn symmetrizer_of(n: usize, a: &[i64]) -> std::result::Result<Vec<i64>, Vec<usize>> {
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut out = vec![0i64; n];
    for s in 0..n {
        if d[s].is_some() {
            continue;
        }
        d[s] = Some(BigRational::one());
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            k += 1;
            for u in 0..n {
                if u == v || a[v * n + u] == 0 {
                    continue;
                }
                let dv = d[v].clone().unwrap();
                let want = dv * BigRational::new(a[v * n + u].into(), a[u * n + v].into());
                match &d[u] {
                    None => {
                        d[u] = Some(want);
                        parent[u] = Some(v);
                        depth[u] = depth[v] + 1;
                        comp.push(u);
                    }
                    Some(du) if *du == want => {}
                    Some(_) => return Err(cycle_witness(v, u, &parent, &depth)),
                }
            }
        }
        // clear denominators, then divide by the gcd
        let mut l = BigInt::one();
        for &i in &comp {
            l = l.lcm(d[i].as_ref().unwrap().denom());
        }
        let ints: Vec<BigInt> = comp
            .iter()
            .map(|&i| (d[i].as_ref().unwrap() * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        for (idx, &i) in comp.iter().enumerate() {
            out[i] = (&ints[idx] / &g).abs().to_i64().expect("symmetrizer entry fits in i64");
        }
    }
    Ok(out)
}

fn cycle_witness(v: usize, u: usize, parent: &[Option<usize>], depth: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (v, u);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x].unwrap();
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y].unwrap();
        right.push(y);
    }
    while x != y {
        x = parent[x].unwrap();
        y = parent[y].unwrap();
        left.push(x);
        right.push(y);
    }
    right.pop();
    // lca .. v, then u .. (child of lca); the edge v - u closes the cycle
    let mut cyc: Vec<usize> = left.into_iter().rev().collect();
    cyc.extend(right);
    cyc
}

/// Finite/affine/indefinite for a connected matrix via leading principal
/// minors of A (their signs agree with those of DA).
pub(crate) fn connected_kind(n: usize, a: &[i64]) -> Kind {
    if symmetrizer_of(n, a).is_err() {
        return Kind::Indefinite;
    }
    let minors = linalg::leading_minors_until_nonpositive(n, a);
    if minors.len() == n && minors[n - 1].is_positive() {
        return Kind::Finite;
    }
    if minors.len() == n && minors[n - 1].is_zero() {
        return Kind::Affine;
    }
    Kind::Indefinite
}

/// True when every connected component of the matrix is finite or affine.
pub(crate) fn all_components_fa(n: usize, a: &[i64]) -> bool {
    canon::components(n, a).iter().all(|c| {
        let m = c.len();
        let sub: Vec<i64> = c.iter().flat_map(|&i| c.iter().map(move |&j| a[i * n + j])).collect();
        connected_kind(m, &sub) != Kind::Indefinite
    })
}

pub(crate) fn is_hyperbolic(n: usize, a: &[i64]) -> bool {
    if n == 0 || canon::components(n, a).len() != 1 {
        return false;
    }
    if connected_kind(n, a) != Kind::Indefinite {
        return false;
    }
    (0..n).all(|u| {
        let rest: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        let sub: Vec<i64> = rest
            .iter()
            .flat_map(|&i| rest.iter().map(move |&j| a[i * n + j]))
            .collect();
        all_components_fa(n - 1, &sub)
    })
}

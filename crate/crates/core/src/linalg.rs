//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here is fraction-free or works over `BigRational`; there is no
//! floating point. Matrices are row-major `n × n` slices unless noted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Determinant by Bareiss elimination with row pivoting.
///
/// Runs in checked `i128` first and redoes the computation over `BigInt` if
/// any intermediate would overflow.
pub fn det(n: usize, a: &[i64]) -> BigInt {
    debug_assert_eq!(a.len(), n * n);
    match det_i128(n, a) {
        Some(d) => BigInt::from(d),
        None => det_big(n, a),
    }
}

fn det_i128(n: usize, a: &[i64]) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                return Some(0);
            };
            for c in 0..n {
                m.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(m[i * n + k].checked_mul(m[k * n + j])?)?;
                m[i * n + j] = t / prev;
            }
        }
        prev = pivot;
    }
    Some(sign * m[n * n - 1])
}

fn det_big(n: usize, a: &[i64]) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(swap) => {
                    for c in 0..n {
                        m.swap(k * n + c, swap * n + c);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = m[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i * n + j] * &pivot - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = t / &prev;
            }
        }
        prev = pivot;
    }
    let d = m[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Leading principal minors `Δ_1, …, Δ_n` by pivot-free Bareiss.
///
/// Stops early (returning the prefix computed so far, whose last entry is
/// non-positive) as soon as a minor before the last one is `≤ 0`; callers
/// only use these to decide positivity patterns.
pub fn leading_minors_until_nonpositive(n: usize, a: &[i64]) -> Vec<BigInt> {
    if let Some(v) = leading_minors_i128(n, a) {
        return v.into_iter().map(BigInt::from).collect();
    }
    let mut m: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = m[k * n + k].clone();
        out.push(pivot.clone());
        if k + 1 == n || !pivot.is_positive() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i * n + j] * &pivot - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = t / &prev;
            }
        }
        prev = pivot;
    }
    out
}

fn leading_minors_i128(n: usize, a: &[i64]) -> Option<Vec<i128>> {
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut out = Vec::with_capacity(n);
    let mut prev = 1i128;
    for k in 0..n {
        let pivot = m[k * n + k];
        out.push(pivot);
        if k + 1 == n || pivot <= 0 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(m[i * n + k].checked_mul(m[k * n + j])?)?;
                m[i * n + j] = t / prev;
            }
        }
        prev = pivot;
    }
    Some(out)
}

/// Signature `(n_pos, n_neg, n_zero)` of a symmetric rational matrix by
/// congruence diagonalisation.
///
/// Pivot rule: the first remaining nonzero diagonal entry; if every remaining
/// diagonal entry is zero but some off-diagonal entry `s_ij` is not, row and
/// column `i` are replaced by `i + j`, which puts `2 s_ij` on the diagonal.
pub fn signature(n: usize, s: &[BigRational]) -> (usize, usize, usize) {
    let mut m = s.to_vec();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let piv = (k..n).find(|&i| !m[i * n + i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let off = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i * n + j].is_zero());
                match off {
                    None => break,
                    Some((i, j)) => {
                        // row_i += row_j, then col_i += col_j
                        for c in 0..n {
                            let v = m[j * n + c].clone();
                            m[i * n + c] += v;
                        }
                        for r in 0..n {
                            let v = m[r * n + j].clone();
                            m[r * n + i] += v;
                        }
                        i
                    }
                }
            }
        };
        if piv != k {
            for c in 0..n {
                m.swap(k * n + c, piv * n + c);
            }
            for r in 0..n {
                m.swap(r * n + k, r * n + piv);
            }
        }
        let p = m[k * n + k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = &m[i * n + k] / &p;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &f * &m[k * n + j];
                m[i * n + j] -= v;
            }
        }
        for j in k + 1..n {
            m[k * n + j] = BigRational::zero();
            m[j * n + k] = BigRational::zero();
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

/// Rank over ℚ of a list of integer row vectors.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut ech = Echelon::new(rows.first().map_or(0, Vec::len));
    rows.iter().filter(|r| ech.insert(r)).count()
}

/// Incrementally maintained row echelon basis over ℤ (rows kept primitive).
///
/// `insert` returns whether the vector was independent of everything inserted
/// before; dependent vectors leave the basis untouched.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i128> {
        debug_assert_eq!(v.len(), self.dim);
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (lead, row) in &self.rows {
            let c = w[*lead];
            if c == 0 {
                continue;
            }
            let p = row[*lead];
            let g = c.gcd(&p);
            let (mul_w, mul_r) = (p / g, c / g);
            for (x, y) in w.iter_mut().zip(row) {
                *x = *x * mul_w - *y * mul_r;
            }
            primitive(&mut w);
        }
        w
    }

    pub fn is_independent(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().any(|&x| x != 0)
    }

    pub fn insert(&mut self, v: &[i64]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|&x| x != 0) {
            None => false,
            Some(lead) => {
                self.rows.push((lead, w));
                true
            }
        }
    }
}

fn primitive(w: &mut [i128]) {
    let g = w.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in w.iter_mut() {
            *x /= g;
        }
    }
}

/// Basis of the right kernel `{x : A x = 0}` of an integer `rows × cols`
/// matrix, each basis vector scaled to a primitive integer vector.
pub fn kernel(rows: usize, cols: usize, a: &[i64]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<BigRational> = a.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            m.swap(r * cols + j, p * cols + j);
        }
        let inv = m[r * cols + c].recip();
        for j in 0..cols {
            m[r * cols + j] = &m[r * cols + j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i * cols + c].is_zero() {
                let f = m[i * cols + c].clone();
                for j in 0..cols {
                    let v = &f * &m[r * cols + j];
                    m[i * cols + j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row * cols + f].clone();
            }
            let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            ints.into_iter().map(|x| x / &g).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(2, &[2, -1, -1, 2]), BigInt::from(3));
        assert_eq!(det(2, &[0, 1, 1, 0]), BigInt::from(-1));
        assert_eq!(det(3, &[1, 2, 3, 2, 4, 6, 0, 0, 1]), BigInt::zero());
        assert_eq!(det(0, &[]), BigInt::one());
    }

    #[test]
    fn det_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let a = [big, 1, 1, big];
        let expect = BigInt::from(big) * BigInt::from(big) - BigInt::one();
        assert_eq!(det(2, &a), expect);
    }

    #[test]
    fn signature_needs_hyperbolic_step() {
        // [[0,1],[1,0]] has signature (1,1,0) and a zero diagonal.
        assert_eq!(signature(2, &rat(&[0, 1, 1, 0])), (1, 1, 0));
        assert_eq!(signature(2, &rat(&[2, -2, -2, 2])), (1, 0, 1));
        assert_eq!(signature(3, &rat(&[0, 0, 0, 0, 0, 0, 0, 0, 0])), (0, 0, 3));
    }

    #[test]
    fn kernel_of_affine_a1() {
        let k = kernel(2, 2, &[2, -2, -2, 2]);
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = k[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == vec![1, 1] || v == vec![-1, -1]);
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[1, 2, 0]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[2, 5, 1]));
        assert!(e.insert(&[0, 0, 3]));
        assert_eq!(rank(&[vec![1, 1], vec![2, 2]]), 1);
    }
}

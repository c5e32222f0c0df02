//! Oracles written independently of the library algorithms.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_rational::Ratio;
use pisys::Gcm;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Integers d_i with d_i a_ij = d_j a_ji, found by propagation along edges.
pub fn symmetrizer(a: &Gcm) -> Option<Vec<i64>> {
    let n = a.rank();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for s in 0..n {
        if d[s].is_some() {
            continue;
        }
        d[s] = Some(Ratio::from_integer(1));
        let mut q = VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            for j in 0..n {
                if i == j || a.get(i, j) == 0 {
                    continue;
                }
                let dj = d[i].unwrap() * Ratio::new(a.get(i, j), a.get(j, i));
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        q.push_back(j);
                    }
                    Some(x) if x != dj => return None,
                    _ => {}
                }
            }
        }
    }
    let l = d.iter().fold(1i64, |acc, x| acc.lcm(x.unwrap().denom()));
    Some(d.iter().map(|x| (x.unwrap() * l).to_integer()).collect())
}

pub struct Form {
    pub a: Gcm,
    pub d: Vec<i64>,
}

impl Form {
    pub fn new(a: &Gcm) -> Form {
        Form { a: a.clone(), d: symmetrizer(a).expect("symmetrizable") }
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.a.rank();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * self.d[i] * self.a.get(i, j) * y[j];
            }
        }
        s
    }

    /// ⟨β^∨, γ⟩ = 2(β, γ)/(β, β), `None` when not an integer.
    pub fn pairing(&self, b: &[i64], g: &[i64]) -> Option<i64> {
        let num = 2 * self.inner(b, g);
        let den = self.inner(b, b);
        (den != 0 && num % den == 0).then(|| num / den)
    }

    pub fn matrix(&self, roots: &[Vec<i64>]) -> Vec<Vec<i64>> {
        roots.iter().map(|b| roots.iter().map(|g| self.pairing(b, g).expect("integral pairing")).collect()).collect()
    }
}

fn coroot_pair(a: &Gcm, i: usize, x: &[i64]) -> i64 {
    (0..a.rank()).map(|j| a.get(i, j) * x[j]).sum()
}

fn connected_support(a: &Gcm, x: &[i64]) -> bool {
    let supp: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0).collect();
    if supp.is_empty() {
        return false;
    }
    let mut seen = vec![supp[0]];
    let mut k = 0;
    while k < seen.len() {
        let v = seen[k];
        k += 1;
        for &u in &supp {
            if !seen.contains(&u) && a.get(v, u) != 0 {
                seen.push(u);
            }
        }
    }
    seen.len() == supp.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Real,
    Imaginary,
    Not,
}

/// Root membership by descent: reflect a positive vector down while some
/// coroot pairing is positive; it is a real root iff it reaches a simple
/// root and an imaginary root iff it reaches the fundamental chamber with
/// connected support.
pub fn classify_vector(a: &Gcm, x: &[i64]) -> Class {
    let pos = x.iter().all(|&c| c >= 0);
    let neg = x.iter().all(|&c| c <= 0);
    if x.iter().all(|&c| c == 0) || !(pos || neg) {
        return Class::Not;
    }
    let mut v: Vec<i64> = x.iter().map(|c| c.abs()).collect();
    loop {
        if v.iter().any(|&c| c < 0) {
            return Class::Not;
        }
        let supp: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        if supp.len() == 1 {
            return if v[supp[0]] == 1 { Class::Real } else { Class::Not };
        }
        match (0..a.rank()).find(|&i| coroot_pair(a, i, &v) > 0) {
            Some(i) => {
                let c = coroot_pair(a, i, &v);
                v[i] -= c;
            }
            None => return if connected_support(a, &v) { Class::Imaginary } else { Class::Not },
        }
    }
}

/// Positive real roots of height at most `h`, by climbing from the simple
/// roots with reflections that raise the height.
pub fn real_roots_upto(a: &Gcm, h: i64) -> HashSet<Vec<i64>> {
    let n = a.rank();
    let mut seen = HashSet::new();
    let mut q = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        q.push_back(e);
    }
    while let Some(v) = q.pop_front() {
        for i in 0..n {
            let c = coroot_pair(a, i, &v);
            if c < 0 {
                let mut w = v.clone();
                w[i] -= c;
                if w.iter().sum::<i64>() <= h && seen.insert(w.clone()) {
                    q.push_back(w);
                }
            }
        }
    }
    seen
}

/// All real roots (both signs) of a finite type.
pub fn all_real_roots(a: &Gcm) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = real_roots_upto(a, 1000).into_iter().collect();
    v.sort();
    let neg: Vec<Vec<i64>> = v.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    v.extend(neg);
    v
}

/// Exhaustive mod-d realizability over all m-tuples of real roots.
pub fn naive_mod_d(y: &Gcm, d: i64, m: &[Vec<i64>]) -> bool {
    let roots = all_real_roots(y);
    let f = Form::new(y);
    let k = m.len();
    let pair: Vec<Vec<i64>> =
        roots.iter().map(|b| roots.iter().map(|g| f.pairing(b, g).unwrap().rem_euclid(d)).collect()).collect();
    let mut idx = vec![0usize; k];
    loop {
        let ok = (0..k).all(|i| (0..k).all(|j| pair[idx[i]][idx[j]] == m[i][j].rem_euclid(d)));
        if ok {
            return true;
        }
        let mut p = 0;
        loop {
            if p == k {
                return false;
            }
            idx[p] += 1;
            if idx[p] < roots.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Ratio<i128>>> =
        rows.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != Ratio::from_integer(0)) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != Ratio::from_integer(0) {
                let f = m[i][c] / m[r][c];
                for k in c..cols {
                    let t = m[r][k] * f;
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn reflect(a: &Gcm, i: usize, x: &[i64]) -> Vec<i64> {
    let mut v = x.to_vec();
    v[i] -= coroot_pair(a, i, x);
    v
}

pub fn random_word(r: &mut StdRng, n: usize, max_len: usize) -> Vec<usize> {
    let len = r.gen_range(0..=max_len);
    (0..len).map(|_| r.gen_range(0..n)).collect()
}

pub fn apply_word(a: &Gcm, w: &[usize], x: &[i64]) -> Vec<i64> {
    w.iter().fold(x.to_vec(), |acc, &i| reflect(a, i, &acc))
}

/// π-system test from the definition, using the descent oracle.
pub fn is_pi_system(a: &Gcm, roots: &[Vec<i64>]) -> bool {
    let distinct: HashSet<&Vec<i64>> = roots.iter().collect();
    if distinct.len() != roots.len() || roots.iter().any(|r| classify_vector(a, r) != Class::Real) {
        return false;
    }
    roots.iter().enumerate().all(|(i, b)| {
        roots.iter().enumerate().all(|(j, g)| {
            i == j || classify_vector(a, &b.iter().zip(g).map(|(x, y)| x - y).collect::<Vec<_>>()) == Class::Not
        })
    })
}

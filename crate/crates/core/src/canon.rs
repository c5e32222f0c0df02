//! Canonical labelling of integer matrices under simultaneous row/column
//! permutation.
//!
//! Colour refinement with individualisation: vertices are split by the
//! multiset of (neighbour colour, a_vu, a_uv) until stable, then the first
//! non-singleton cell is individualised vertex by vertex. Every discrete leaf
//! yields an ordering; the lexicographically smallest permuted matrix is the
//! canonical form.

/// Result of canonical labelling: `order[k]` is the original vertex placed at
/// canonical position `k`, and `matrix` is the permuted row-major matrix.
#[derive(Clone, Debug)]
pub(crate) struct Labelling {
    pub order: Vec<usize>,
    pub matrix: Vec<i64>,
}

pub(crate) fn canonical_labelling(n: usize, a: &[i64]) -> Labelling {
    if n == 0 {
        return Labelling { order: vec![], matrix: vec![] };
    }
    let comps = components(n, a);
    if comps.len() > 1 {
        // Canonicalise each component on its own and sort the pieces; this
        // avoids the factorial blow-up of permuting isomorphic components.
        let mut parts: Vec<(usize, Vec<i64>, Vec<usize>)> = comps
            .iter()
            .map(|c| {
                let k = c.len();
                let sub: Vec<i64> = c
                    .iter()
                    .flat_map(|&i| c.iter().map(move |&j| a[i * n + j]))
                    .collect();
                let l = connected_labelling(k, &sub);
                (k, l.matrix, l.order.iter().map(|&x| c[x]).collect())
            })
            .collect();
        parts.sort();
        let order: Vec<usize> = parts.into_iter().flat_map(|p| p.2).collect();
        let matrix = order
            .iter()
            .flat_map(|&i| order.iter().map(move |&j| a[i * n + j]))
            .collect();
        return Labelling { order, matrix };
    }
    connected_labelling(n, a)
}

pub(crate) fn components(n: usize, a: &[i64]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            k += 1;
            for u in 0..n {
                if !seen[u] && (a[v * n + u] != 0 || a[u * n + v] != 0) {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn connected_labelling(n: usize, a: &[i64]) -> Labelling {
    let diag: Vec<i64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut colours = vec![0u32; n];
    // Seed with the diagonal so that non-GCM inputs are still handled.
    relabel(&mut colours, |v| vec![diag[v]]);
    refine(n, a, &mut colours);
    let mut best: Option<Labelling> = None;
    search(n, a, colours, &mut best);
    best.expect("at least one leaf")
}

fn relabel(colours: &mut [u32], sig: impl Fn(usize) -> Vec<i64>) {
    let n = colours.len();
    let sigs: Vec<(u32, Vec<i64>)> = (0..n).map(|v| (colours[v], sig(v))).collect();
    let mut uniq = sigs.clone();
    uniq.sort();
    uniq.dedup();
    for v in 0..n {
        colours[v] = uniq.binary_search(&sigs[v]).unwrap() as u32;
    }
}

fn count(colours: &[u32]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn refine(n: usize, a: &[i64], colours: &mut [u32]) {
    let mut cells = count(colours);
    loop {
        let snapshot = colours.to_vec();
        relabel(colours, |v| {
            let mut nb: Vec<[i64; 3]> = (0..n)
                .filter(|&u| u != v && (a[v * n + u] != 0 || a[u * n + v] != 0))
                .map(|u| [snapshot[u] as i64, a[v * n + u], a[u * n + v]])
                .collect();
            nb.sort_unstable();
            nb.into_iter().flatten().collect()
        });
        let now = count(colours);
        if now == cells {
            return;
        }
        cells = now;
    }
}

fn search(n: usize, a: &[i64], colours: Vec<u32>, best: &mut Option<Labelling>) {
    // first (lowest colour) non-singleton cell
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c as usize] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1);
    match target {
        None => {
            let mut order = vec![0usize; n];
            for (v, &c) in colours.iter().enumerate() {
                order[c as usize] = v;
            }
            let matrix: Vec<i64> = order
                .iter()
                .flat_map(|&i| order.iter().map(move |&j| a[i * n + j]))
                .collect();
            let better = best.as_ref().is_none_or(|b| matrix < b.matrix);
            if better {
                *best = Some(Labelling { order, matrix });
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| colours[v] as usize == cell) {
                let mut next: Vec<u32> = colours.iter().map(|&c| 2 * c + 1).collect();
                next[v] = 2 * colours[v];
                relabel(&mut next, |_| Vec::new());
                refine(n, a, &mut next);
                search(n, a, next, best);
            }
        }
    }
}

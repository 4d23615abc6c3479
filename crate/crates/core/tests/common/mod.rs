//! Independent brute-force oracles shared by the integration tests. Nothing
//! here calls the canonical-form or enumeration code it is used to check.

#![allow(dead_code)]

use itertools::Itertools;
use posetpow::FinitePoset;
use rand::seq::SliceRandom;
use rand::Rng;

/// Any order-isomorphism `p → q`, by trying every permutation.
pub fn brute_iso(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let n = p.len();
    (0..n).permutations(n).find(|phi| (0..n).all(|i| (0..n).all(|j| p.leq(i, j) == q.leq(phi[i], phi[j]))))
}

/// Lexicographically least relation encoding over all relabelings.
pub fn brute_canonical(matrix: &[Vec<bool>]) -> Vec<bool> {
    let n = matrix.len();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let mut at = vec![0; n];
            for (v, &pos) in perm.iter().enumerate() {
                at[pos] = v;
            }
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| matrix[at[a]][at[b]])
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Every labeled partial order on `n` points, straight from the axioms.
pub fn all_labeled_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << off.len()) {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in off.iter().enumerate() {
            if mask >> k & 1 == 1 {
                m[i][j] = true;
            }
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(m[i][j] && m[j][i])));
        if !antisymmetric {
            continue;
        }
        let transitive = (0..n).all(|i| (0..n).all(|j| !m[i][j] || (0..n).all(|k| !m[j][k] || m[i][k])));
        if transitive {
            out.push(m);
        }
    }
    out
}

/// Number of unlabeled posets on `n` points, by brute force with dedup.
pub fn brute_class_count(n: usize) -> usize {
    let mut classes: Vec<Vec<bool>> = all_labeled_orders(n).iter().map(|m| brute_canonical(m)).collect();
    classes.sort();
    classes.dedup();
    classes.len()
}

/// Every function `x → e` that preserves order, by filtering all functions.
pub fn brute_monotone_maps(e: &FinitePoset, x: &FinitePoset) -> Vec<Vec<usize>> {
    if x.is_empty() {
        return vec![Vec::new()];
    }
    (0..x.len())
        .map(|_| 0..e.len())
        .multi_cartesian_product()
        .filter(|t| (0..x.len()).all(|a| (0..x.len()).all(|b| !x.leq(a, b) || e.leq(t[a], t[b]))))
        .collect()
}

pub fn pointwise_leq(e: &FinitePoset, f: &[usize], g: &[usize]) -> bool {
    f.iter().zip(g).all(|(&a, &b)| e.leq(a, b))
}

/// Poset on explicit elements under an explicit order predicate.
pub fn poset_from<T>(items: &[T], leq: impl Fn(&T, &T) -> bool) -> FinitePoset {
    let m: Vec<Vec<bool>> = items.iter().map(|a| items.iter().map(|b| leq(a, b)).collect()).collect();
    FinitePoset::validate(&m).expect("oracle built a non-order")
}

pub fn shuffle<R: Rng>(p: &FinitePoset, rng: &mut R) -> (FinitePoset, Vec<usize>) {
    let mut perm: Vec<usize> = (0..p.len()).collect();
    perm.shuffle(rng);
    (p.relabel(&perm), perm)
}

/// Union-find over comparable pairs; returns the number of classes.
pub fn naive_component_count(p: &FinitePoset) -> usize {
    let n = p.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            v = parent[v];
        }
        v
    }
    for i in 0..n {
        for j in 0..n {
            if p.leq(i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

/// Random poset: relation drawn over a random linear order, then closed.
pub fn random_poset<R: Rng>(n: usize, density: f64, rng: &mut R) -> FinitePoset {
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                covers.push((i, j));
            }
        }
    }
    let p = FinitePoset::from_covers(n, &covers).expect("upper-triangular edges are acyclic");
    shuffle(&p, rng).0
}

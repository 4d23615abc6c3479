//! Canonical labeling and isomorphism of finite posets.
//!
//! Colour refinement on strict up/down neighbourhoods, then individualize
//! and refine, keeping the lexicographically least relabeled order matrix.
//! Automorphisms found at equal leaves, together with twin transpositions
//! (incomparable elements with identical strict up- and down-sets), prune
//! sibling branches that lie in the same orbit of the current stabilizer.

use std::collections::HashMap;

use crate::bits;
use crate::poset::FinitePoset;

/// Relabeling-invariant certificate of a poset plus the labeling that
/// produces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// Element count (4 bytes, little endian) followed by the relabeled
    /// order matrix, row-major, one bit per entry, LSB first.
    pub certificate: Vec<u8>,
    /// `labeling[v]` is the canonical position of element `v`.
    pub labeling: Vec<usize>,
}

impl CanonicalForm {
    /// The poset relabeled into canonical position.
    pub fn canonical_poset(&self, p: &FinitePoset) -> FinitePoset {
        p.relabel(&self.labeling)
    }
}

pub fn canonical_form(p: &FinitePoset) -> CanonicalForm {
    let n = p.len();
    if n == 0 {
        return CanonicalForm { certificate: encode(p, &[]), labeling: Vec::new() };
    }
    let mut colors: Vec<u32> = {
        let keys: Vec<(usize, usize)> = (0..n).map(|v| (p.down_degree(v), p.up_degree(v))).collect();
        rank(&keys)
    };
    refine(p, &mut colors);

    let mut search = Search { p, twins: twin_classes(p), best: None, automorphisms: Vec::new() };
    let mut prefix = Vec::new();
    search.descend(colors, &mut prefix);
    let (certificate, labeling) = search.best.expect("search reaches at least one leaf");
    CanonicalForm { certificate, labeling }
}

pub fn certificate(p: &FinitePoset) -> Vec<u8> {
    canonical_form(p).certificate
}

/// An order-isomorphism `P → Q` (`phi[i]` is the image of `i`), if one
/// exists. Every returned bijection has passed [`verify_isomorphism`].
pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.relation_size() != q.relation_size() {
        return None;
    }
    let cp = canonical_form(p);
    let cq = canonical_form(q);
    isomorphism_from_forms(p, &cp, q, &cq)
}

/// Builds the isomorphism from two precomputed canonical forms.
pub fn isomorphism_from_forms(
    p: &FinitePoset,
    cp: &CanonicalForm,
    q: &FinitePoset,
    cq: &CanonicalForm,
) -> Option<Vec<usize>> {
    if cp.certificate != cq.certificate {
        return None;
    }
    let mut q_at = vec![0; q.len()];
    for (v, &pos) in cq.labeling.iter().enumerate() {
        q_at[pos] = v;
    }
    let phi: Vec<usize> = cp.labeling.iter().map(|&pos| q_at[pos]).collect();
    verify_isomorphism(p, q, &phi).then_some(phi)
}

/// `phi` is a bijection `P → Q` with `i ≤ j ⇔ phi(i) ≤ phi(j)`.
pub fn verify_isomorphism(p: &FinitePoset, q: &FinitePoset, phi: &[usize]) -> bool {
    if p.len() != q.len() || phi.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &v in phi {
        if v >= q.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..p.len()).all(|i| (0..p.len()).all(|j| p.leq(i, j) == q.leq(phi[i], phi[j])))
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("key present") as u32).collect()
}

fn cell_count(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Splits colour classes until every element of a class sees the same
/// multiset of colours strictly below and strictly above it.
fn refine(p: &FinitePoset, colors: &mut Vec<u32>) {
    let n = p.len();
    let mut cells = cell_count(colors);
    while cells < n {
        let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut below: Vec<u32> = p.down_set(v).filter(|&u| u != v).map(|u| colors[u]).collect();
                let mut above: Vec<u32> = p.up_set(v).filter(|&u| u != v).map(|u| colors[u]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colors[v], below, above)
            })
            .collect();
        let next = rank(&keys);
        let next_cells = cell_count(&next);
        *colors = next;
        if next_cells == cells {
            break;
        }
        cells = next_cells;
    }
}

fn twin_classes(p: &FinitePoset) -> Vec<usize> {
    let mut ids: HashMap<(Vec<u64>, Vec<u64>), usize> = HashMap::new();
    (0..p.len())
        .map(|v| {
            let mut up = p.up_row(v).to_vec();
            let mut down = p.down_row(v).to_vec();
            bits::clear(&mut up, v);
            bits::clear(&mut down, v);
            let next = ids.len();
            *ids.entry((down, up)).or_insert(next)
        })
        .collect()
}

fn encode(p: &FinitePoset, labeling: &[usize]) -> Vec<u8> {
    let n = p.len();
    let mut at = vec![0; n];
    for (v, &pos) in labeling.iter().enumerate() {
        at[pos] = v;
    }
    let mut out = Vec::with_capacity(4 + (n * n).div_ceil(8));
    out.extend_from_slice(&(n as u32).to_le_bytes());
    let mut byte = 0u8;
    let mut filled = 0;
    for a in 0..n {
        for b in 0..n {
            if p.leq(at[a], at[b]) {
                byte |= 1 << filled;
            }
            filled += 1;
            if filled == 8 {
                out.push(byte);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(byte);
    }
    out
}

struct Search<'a> {
    p: &'a FinitePoset,
    twins: Vec<usize>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
        let n = self.p.len();
        if cell_count(&colors) == n {
            self.leaf(colors.iter().map(|&c| c as usize).collect());
            return;
        }
        let mut sizes = vec![0usize; cell_count(&colors)];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete partition") as u32;
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();

        // orbit partition of the prefix stabilizer, rebuilt only when a new
        // automorphism turns up
        let mut orbits: Option<(usize, Vec<usize>, Vec<bool>)> = None;
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(known, _, _)| *known != self.automorphisms.len());
                if stale {
                    let roots = self.orbit_roots(&cell, prefix);
                    let mut seen = vec![false; n];
                    for &u in &explored {
                        seen[roots[u]] = true;
                    }
                    orbits = Some((self.automorphisms.len(), roots, seen));
                }
                let (_, roots, seen) = orbits.as_ref().expect("just built");
                if seen[roots[v]] {
                    continue;
                }
            }
            let mut child = colors.clone();
            for (u, c) in child.iter_mut().enumerate() {
                if u != v && *c >= target {
                    *c += 1;
                }
            }
            refine(self.p, &mut child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
            if let Some((_, roots, seen)) = orbits.as_mut() {
                seen[roots[v]] = true;
            }
        }
    }

    /// Root of each element's orbit under twin transpositions within `cell`
    /// and the known automorphisms that fix `prefix` pointwise.
    fn orbit_roots(&self, cell: &[usize], prefix: &[usize]) -> Vec<usize> {
        let n = self.p.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        fn union(parent: &mut [usize], a: usize, b: usize) {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        // twin transpositions fix everything outside the pair
        let mut first_twin: HashMap<usize, usize> = HashMap::new();
        for &a in cell {
            let b = *first_twin.entry(self.twins[a]).or_insert(a);
            union(&mut parent, a, b);
        }
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&u| gamma[u] == u) {
                for (x, &y) in gamma.iter().enumerate() {
                    union(&mut parent, x, y);
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    fn leaf(&mut self, labeling: Vec<usize>) {
        let cert = encode(self.p, &labeling);
        match &self.best {
            None => self.best = Some((cert, labeling)),
            Some((best_cert, best_labeling)) => {
                if cert < *best_cert {
                    self.best = Some((cert, labeling));
                } else if cert == *best_cert {
                    let mut best_at = vec![0; labeling.len()];
                    for (v, &pos) in best_labeling.iter().enumerate() {
                        best_at[pos] = v;
                    }
                    let gamma: Vec<usize> = labeling.iter().map(|&pos| best_at[pos]).collect();
                    if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                        self.automorphisms.push(gamma);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, standard, StandardKind};

    #[test]
    fn chain_and_antichain_differ() {
        assert_ne!(certificate(&chain(2)), certificate(&antichain(2)));
        assert!(are_isomorphic(&chain(3), &antichain(3)).is_none());
    }

    #[test]
    fn crown_is_self_dual() {
        let crown = standard(StandardKind::Crown(4)).unwrap();
        assert_eq!(certificate(&crown), certificate(&crown.dual()));
        let phi = are_isomorphic(&crown, &crown.dual()).unwrap();
        assert!(verify_isomorphism(&crown, &crown.dual(), &phi));
    }

    #[test]
    fn large_antichain_is_fast() {
        // twin pruning keeps this linear in depth
        let a = antichain(200);
        let cf = canonical_form(&a);
        assert_eq!(cf.canonical_poset(&a), a);
    }

    #[test]
    fn canonical_poset_is_a_fixed_point() {
        let fence = standard(StandardKind::Fence(7)).unwrap();
        let cf = canonical_form(&fence);
        let canon = cf.canonical_poset(&fence);
        let again = canonical_form(&canon);
        assert_eq!(again.certificate, cf.certificate);
        assert_eq!(again.canonical_poset(&canon), canon);
    }

    #[test]
    fn verify_rejects_non_bijections() {
        let c = chain(3);
        assert!(verify_isomorphism(&c, &c, &[0, 1, 2]));
        assert!(!verify_isomorphism(&c, &c, &[0, 0, 2]));
        assert!(!verify_isomorphism(&c, &c, &[2, 1, 0]));
        assert!(!verify_isomorphism(&c, &c, &[0, 1]));
        assert!(!verify_isomorphism(&c, &c, &[0, 1, 3]));
    }

    #[test]
    fn empty_poset_has_a_certificate() {
        let e = FinitePoset::empty();
        assert_eq!(certificate(&e), vec![0, 0, 0, 0]);
        assert_eq!(are_isomorphic(&e, &e), Some(vec![]));
    }
}

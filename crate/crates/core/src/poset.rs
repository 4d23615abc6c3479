//! Finite posets stored as reflexive-transitive bit matrices.
//!
//! Elements are the indices `0..n`. Every poset keeps both the up-set row
//! (`i ≤ j`) and the down-set row (`j ≤ i`) of each element, so comparability
//! tests and bound intersections are single word operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Axiom, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    stride: usize,
    up: Vec<u64>,
    down: Vec<u64>,
}

/// Transitive reduction of a poset: `(i, j)` means `j` covers `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverList {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
}

/// Partition of a poset into zigzag-connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Component id per element; ids are numbered by smallest member.
    pub labels: Vec<usize>,
    pub count: usize,
}

impl ComponentPartition {
    pub fn members(&self, component: usize) -> impl Iterator<Item = usize> + '_ {
        self.labels.iter().enumerate().filter(move |&(_, &l)| l == component).map(|(i, _)| i)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.count];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l].push(i);
        }
        blocks
    }
}

/// The named families produced by [`standard`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    /// `0 < 1 < … < n-1`.
    Chain(usize),
    /// `n` pairwise incomparable elements.
    Antichain(usize),
    /// Crown on `2k` elements, `k ≥ 2`: minimal elements `0..k`, maximal
    /// elements `k..2k`, with `i < k + i` and `i < k + (i + 1) mod k`. For
    /// `2k = 4` this is `{0,1} < {2,3}`.
    Crown(usize),
    /// Zigzag `0 < 1 > 2 < 3 > …`: even indices are minimal, each odd index
    /// covers its two neighbours.
    Fence(usize),
    Singleton,
}

impl FinitePoset {
    pub fn empty() -> Self {
        FinitePoset { n: 0, stride: 0, up: Vec::new(), down: Vec::new() }
    }

    /// Builds a poset from rows that are already reflexive, antisymmetric
    /// and transitive. `up[i]` holds every `j` with `i ≤ j`.
    pub(crate) fn from_up_rows(n: usize, up: Vec<u64>) -> Self {
        let stride = bits::words_for(n);
        debug_assert_eq!(up.len(), n * stride);
        let mut down = vec![0u64; n * stride];
        for i in 0..n {
            for j in bits::ones(&up[i * stride..(i + 1) * stride]) {
                bits::set(&mut down[j * stride..(j + 1) * stride], i);
            }
        }
        FinitePoset { n, stride, up, down }
    }

    /// Builds a poset from an ordering predicate, checking nothing.
    pub(crate) fn from_fn_unchecked(n: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Self {
        let stride = bits::words_for(n);
        let mut up = vec![0u64; n * stride];
        for i in 0..n {
            let row = &mut up[i * stride..(i + 1) * stride];
            for j in 0..n {
                if leq(i, j) {
                    bits::set(row, j);
                }
            }
        }
        Self::from_up_rows(n, up)
    }

    /// Reflexive-transitive closure of a cover (or any acyclic edge) list.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in covers {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::Index { index, n });
                }
            }
            if a == b {
                return Err(Error::Cycle(a));
            }
            succ[a].push(b);
            indegree[b] += 1;
        }

        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(Error::Cycle(stuck));
        }

        let stride = bits::words_for(n);
        let mut up = vec![0u64; n * stride];
        for &v in order.iter().rev() {
            let mut row = vec![0u64; stride];
            bits::set(&mut row, v);
            for &w in &succ[v] {
                bits::or_into(&mut row, &up[w * stride..(w + 1) * stride]);
            }
            up[v * stride..(v + 1) * stride].copy_from_slice(&row);
        }
        Ok(Self::from_up_rows(n, up))
    }

    pub fn from_cover_list(covers: &CoverList) -> Result<Self> {
        Self::from_covers(covers.n, &covers.covers)
    }

    /// Accepts a full `≤` matrix if it satisfies the order axioms.
    pub fn validate(matrix: &[Vec<bool>]) -> Result<Self> {
        let n = matrix.len();
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), n });
            }
        }
        if let Some(i) = (0..n).find(|&i| !matrix[i][i]) {
            return Err(Error::Axiom { axiom: Axiom::Reflexivity, witness: vec![i] });
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, &above) in row.iter().enumerate().skip(i + 1) {
                if above && matrix[j][i] {
                    return Err(Error::Axiom { axiom: Axiom::Antisymmetry, witness: vec![i, j] });
                }
            }
        }
        let poset = Self::from_fn_unchecked(n, |i, j| matrix[i][j]);
        for i in 0..n {
            for j in poset.up_set(i) {
                let reach = poset.up_row(j);
                let mine = poset.up_row(i);
                if let Some(k) = reach.iter().zip(mine).enumerate().find_map(|(w, (&r, &m))| {
                    let missing = r & !m;
                    (missing != 0).then(|| w * 64 + missing.trailing_zeros() as usize)
                }) {
                    return Err(Error::Axiom { axiom: Axiom::Transitivity, witness: vec![i, j, k] });
                }
            }
        }
        Ok(poset)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        bits::get(self.up_row(i), j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Bit row of `{ j : i ≤ j }`.
    #[inline]
    pub fn up_row(&self, i: usize) -> &[u64] {
        &self.up[i * self.stride..(i + 1) * self.stride]
    }

    /// Bit row of `{ j : j ≤ i }`.
    #[inline]
    pub fn down_row(&self, i: usize) -> &[u64] {
        &self.down[i * self.stride..(i + 1) * self.stride]
    }

    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.up_row(i))
    }

    pub fn down_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.down_row(i))
    }

    pub fn up_degree(&self, i: usize) -> usize {
        bits::count(self.up_row(i))
    }

    pub fn down_degree(&self, i: usize) -> usize {
        bits::count(self.down_row(i))
    }

    /// Number of pairs `i ≤ j`, reflexive ones included.
    pub fn relation_size(&self) -> usize {
        bits::count(&self.up)
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.leq(i, j)).collect()).collect()
    }

    /// Pairs `(i, j)` where `j` covers `i`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut between = vec![0u64; self.stride];
        for i in 0..self.n {
            for j in self.up_set(i) {
                if j == i {
                    continue;
                }
                between.copy_from_slice(self.up_row(i));
                bits::and_into(&mut between, self.down_row(j));
                if bits::count(&between) == 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn cover_relation(&self) -> CoverList {
        CoverList { n: self.n, covers: self.covers() }
    }

    pub fn components(&self) -> ComponentPartition {
        let mut labels = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for w in self.up_set(v).chain(self.down_set(v)) {
                    if labels[w] == usize::MAX {
                        labels[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        ComponentPartition { labels, count }
    }

    /// Non-empty with a single component. The empty poset is not connected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().count == 1
    }

    /// Elements sorted by down-set size, ties by index. Any `i < j` has a
    /// strictly smaller down-set than `j`, so this is a linear extension.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&i| (self.down_degree(i), i));
        order
    }

    pub fn dual(&self) -> Self {
        FinitePoset { n: self.n, stride: self.stride, up: self.down.clone(), down: self.up.clone() }
    }

    /// `self + other`: `self`'s elements keep their indices, `other`'s are
    /// shifted by `self.len()`. No cross comparabilities.
    pub fn disjoint_sum(&self, other: &Self) -> Self {
        let offset = self.n;
        Self::from_fn_unchecked(self.n + other.n, |i, j| match (i < offset, j < offset) {
            (true, true) => self.leq(i, j),
            (false, false) => other.leq(i - offset, j - offset),
            _ => false,
        })
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut inverse = vec![usize::MAX; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        Self::from_fn_unchecked(self.n, |a, b| self.leq(inverse[a], inverse[b]))
    }

    /// Induced subposet on `elements`; new index `k` is `elements[k]`.
    pub fn induced(&self, elements: &[usize]) -> Self {
        Self::from_fn_unchecked(elements.len(), |a, b| self.leq(elements[a], elements[b]))
    }

    /// Whether `map` (a table over `self`'s elements) preserves order into
    /// `target`. Checking covers is enough.
    pub fn is_monotone_into(&self, target: &FinitePoset, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&v| v < target.len())
            && self.covers().iter().all(|&(a, b)| target.leq(map[a], map[b]))
    }

    /// Flips one bit of the relation without restoring the order axioms.
    /// Exists for mutation tests of the verifiers.
    #[doc(hidden)]
    pub fn flip_relation_bit(&mut self, i: usize, j: usize) {
        bits::flip(&mut self.up[i * self.stride..(i + 1) * self.stride], j);
        bits::flip(&mut self.down[j * self.stride..(j + 1) * self.stride], i);
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset").field("n", &self.n).field("covers", &self.covers()).finish()
    }
}

pub fn standard(kind: StandardKind) -> Result<FinitePoset> {
    match kind {
        StandardKind::Chain(n) => Ok(FinitePoset::from_fn_unchecked(n, |i, j| i <= j)),
        StandardKind::Antichain(n) => Ok(FinitePoset::from_fn_unchecked(n, |i, j| i == j)),
        StandardKind::Singleton => Ok(FinitePoset::from_fn_unchecked(1, |_, _| true)),
        StandardKind::Crown(size) => {
            if size < 4 || size % 2 != 0 {
                return Err(Error::Size(format!("crown needs an even element count >= 4, got {size}")));
            }
            let k = size / 2;
            let mut covers = Vec::new();
            for i in 0..k {
                covers.push((i, k + i));
                covers.push((i, k + (i + 1) % k));
            }
            FinitePoset::from_covers(size, &covers)
        }
        StandardKind::Fence(n) => {
            if n == 0 {
                return Err(Error::Size("fence needs at least one element".into()));
            }
            let covers: Vec<_> = (1..n).map(|j| if j % 2 == 1 { (j - 1, j) } else { (j, j - 1) }).collect();
            FinitePoset::from_covers(n, &covers)
        }
    }
}

pub fn chain(n: usize) -> FinitePoset {
    FinitePoset::from_fn_unchecked(n, |i, j| i <= j)
}

pub fn antichain(n: usize) -> FinitePoset {
    FinitePoset::from_fn_unchecked(n, |i, j| i == j)
}

pub fn singleton() -> FinitePoset {
    chain(1)
}

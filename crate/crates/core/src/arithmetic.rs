//! Products, exponents `E^X`, the subsets `D(E^X)` and `C(E^X)`, and the
//! currying and distributivity isomorphisms.

use std::cmp::Ordering;

use crate::bits;
use crate::canon::verify_isomorphism;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Size limits for anything that can blow up combinatorially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    /// Most monotone maps (or search nodes) a single enumeration may produce.
    pub max_maps: usize,
    /// Largest poset whose full `n × n` order matrix may be materialized.
    pub max_dense: usize,
}

impl Guard {
    pub const DEFAULT_MAX_MAPS: usize = 1_000_000;
    pub const DEFAULT_MAX_DENSE: usize = 20_000;

    pub fn with_max_maps(max_maps: usize) -> Self {
        Guard { max_maps, ..Guard::default() }
    }

    fn check_dense(&self, n: usize, what: &str) -> Result<()> {
        if n > self.max_dense {
            return Err(Error::Cap { what: format!("{what} has {n} elements"), limit: self.max_dense });
        }
        Ok(())
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard { max_maps: Self::DEFAULT_MAX_MAPS, max_dense: Self::DEFAULT_MAX_DENSE }
    }
}

/// `P × Q` together with the pair codec; `(p, q)` lives at `p * |Q| + q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub poset: FinitePoset,
    left: usize,
    right: usize,
}

impl Product {
    #[inline]
    pub fn encode(&self, p: usize, q: usize) -> usize {
        debug_assert!(p < self.left && q < self.right);
        p * self.right + q
    }

    #[inline]
    pub fn decode(&self, flat: usize) -> (usize, usize) {
        (flat / self.right, flat % self.right)
    }

    pub fn factor_sizes(&self) -> (usize, usize) {
        (self.left, self.right)
    }
}

pub fn product(p: &FinitePoset, q: &FinitePoset, guard: &Guard) -> Result<Product> {
    let n = p.len().saturating_mul(q.len());
    guard.check_dense(n, "product")?;
    let right = q.len();
    let poset =
        FinitePoset::from_fn_unchecked(n, |a, b| p.leq(a / right, b / right) && q.leq(a % right, b % right));
    Ok(Product { poset, left: p.len(), right })
}

/// A total order-preserving function `dom → cod`, stored as a table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    pub table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: &FinitePoset, cod: &FinitePoset, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::Precondition(format!(
                "map table has {} entries for a domain of {}",
                table.len(),
                dom.len()
            )));
        }
        if let Some(&index) = table.iter().find(|&&v| v >= cod.len()) {
            return Err(Error::Index { index, n: cod.len() });
        }
        if !dom.is_monotone_into(cod, &table) {
            return Err(Error::Precondition("map is not order-preserving".into()));
        }
        Ok(MonotoneMap { table })
    }

    pub fn compose(&self, outer: &MonotoneMap) -> MonotoneMap {
        MonotoneMap { table: self.table.iter().map(|&v| outer.table[v]).collect() }
    }
}

/// Every monotone map `X → E`, in lexicographic order of the tables read
/// along a fixed linear extension of `X`.
#[derive(Debug, Clone)]
pub struct MonotoneMaps {
    base: FinitePoset,
    exponent: FinitePoset,
    order: Vec<usize>,
    tables: Vec<u32>,
    count: usize,
}

impl MonotoneMaps {
    pub fn enumerate(base: &FinitePoset, exponent: &FinitePoset, guard: &Guard) -> Result<Self> {
        let width = exponent.len();
        let order = exponent.linear_extension();
        let lower_covers: Vec<Vec<usize>> = {
            let mut lc = vec![Vec::new(); width];
            for (a, b) in exponent.covers() {
                lc[b].push(a);
            }
            lc
        };

        let mut tables = Vec::new();
        let mut count = 0usize;
        if width == 0 {
            tables.clear();
            count = 1;
        } else if !base.is_empty() {
            let stride = bits::words_for(base.len());
            let full = bits::full(base.len());
            let mut current = vec![0u32; width];
            // candidates[k]: remaining admissible values at depth k, as a bit row
            let mut candidates = vec![0u64; width * stride];
            let mut depth = 0usize;
            let fill = |depth: usize, current: &[u32], candidates: &mut [u64]| {
                let row = &mut candidates[depth * stride..(depth + 1) * stride];
                row.copy_from_slice(&full);
                for &p in &lower_covers[order[depth]] {
                    bits::and_into(row, base.up_row(current[p] as usize));
                }
            };
            fill(0, &current, &mut candidates);
            loop {
                let row = &mut candidates[depth * stride..(depth + 1) * stride];
                match bits::first(row) {
                    None => {
                        if depth == 0 {
                            break;
                        }
                        depth -= 1;
                    }
                    Some(v) => {
                        bits::clear(row, v);
                        current[order[depth]] = v as u32;
                        if depth + 1 == width {
                            count += 1;
                            if count > guard.max_maps {
                                return Err(Error::Cap {
                                    what: format!(
                                        "more than {} monotone maps from a {}-element poset into a {}-element poset",
                                        guard.max_maps,
                                        width,
                                        base.len()
                                    ),
                                    limit: guard.max_maps,
                                });
                            }
                            tables.extend_from_slice(&current);
                        } else {
                            depth += 1;
                            fill(depth, &current, &mut candidates);
                        }
                    }
                }
            }
        }

        Ok(MonotoneMaps { base: base.clone(), exponent: exponent.clone(), order, tables, count })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn exponent(&self) -> &FinitePoset {
        &self.exponent
    }

    /// Table of map `i`, indexed by elements of the exponent poset.
    #[inline]
    pub fn table(&self, i: usize) -> &[u32] {
        let w = self.exponent.len();
        &self.tables[i * w..(i + 1) * w]
    }

    pub fn map(&self, i: usize) -> MonotoneMap {
        MonotoneMap { table: self.table(i).iter().map(|&v| v as usize).collect() }
    }

    fn cmp_key(&self, a: &[u32], b: &[u32]) -> Ordering {
        for &x in &self.order {
            match a[x].cmp(&b[x]) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// Index of the map with the given table, if it is monotone.
    pub fn index_of(&self, table: &[u32]) -> Option<usize> {
        if table.len() != self.exponent.len() {
            return None;
        }
        let (mut lo, mut hi) = (0, self.count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.cmp_key(self.table(mid), table) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn index_of_usize(&self, table: &[usize]) -> Option<usize> {
        let t: Vec<u32> = table.iter().map(|&v| v as u32).collect();
        self.index_of(&t)
    }

    /// Pointwise comparison of two maps.
    pub fn leq(&self, f: usize, g: usize) -> bool {
        self.table(f).iter().zip(self.table(g)).all(|(&a, &b)| self.base.leq(a as usize, b as usize))
    }

    /// Pairs `f < g` where `g` raises one coordinate of `f` to a cover of
    /// its value. Their transitive closure is the whole pointwise order.
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        let x = &self.exponent;
        let upper_covers: Vec<Vec<usize>> = {
            let mut uc = vec![Vec::new(); x.len()];
            for (a, b) in x.covers() {
                uc[a].push(b);
            }
            uc
        };
        let base_upper: Vec<Vec<usize>> = {
            let mut uc = vec![Vec::new(); self.base.len()];
            for (a, b) in self.base.covers() {
                uc[a].push(b);
            }
            uc
        };
        let mut pairs = Vec::new();
        let mut scratch = vec![0u32; x.len()];
        for f in 0..self.count {
            scratch.copy_from_slice(self.table(f));
            for point in 0..x.len() {
                let old = scratch[point];
                for &v in &base_upper[old as usize] {
                    if upper_covers[point].iter().all(|&s| self.base.leq(v, scratch[s] as usize)) {
                        scratch[point] = v as u32;
                        if let Some(g) = self.index_of(&scratch) {
                            pairs.push((f, g));
                        }
                        scratch[point] = old;
                    }
                }
            }
        }
        pairs
    }

    /// Connected components of `E^X` without building the order matrix.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut parent: Vec<usize> = (0..self.count).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for (f, g) in self.generating_pairs() {
            let (a, b) = (find(&mut parent, f), find(&mut parent, g));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut labels = vec![usize::MAX; self.count];
        let mut next = 0;
        for v in 0..self.count {
            let root = find(&mut parent, v);
            if labels[root] == usize::MAX {
                labels[root] = next;
                next += 1;
            }
            labels[v] = labels[root];
        }
        (labels, next)
    }

    pub fn is_connected(&self) -> bool {
        self.count > 0 && self.component_labels().1 == 1
    }

    /// Indices of maps constant on every component of the exponent poset.
    pub fn diagonal(&self) -> Vec<usize> {
        let parts = self.exponent.components();
        (0..self.count)
            .filter(|&f| {
                let t = self.table(f);
                let mut first = vec![u32::MAX; parts.count];
                t.iter().zip(&parts.labels).all(|(&v, &c)| {
                    if first[c] == u32::MAX {
                        first[c] = v;
                    }
                    first[c] == v
                })
            })
            .collect()
    }

    /// Indices in the union of components that meet the diagonal.
    pub fn component_c_indices(&self) -> Result<Vec<usize>> {
        if self.exponent.is_empty() {
            return Err(Error::EmptyExponent);
        }
        let (labels, count) = self.component_labels();
        let mut hit = vec![false; count];
        for f in self.diagonal() {
            hit[labels[f]] = true;
        }
        Ok((0..self.count).filter(|&f| hit[labels[f]]).collect())
    }

    pub fn constant(&self, e: usize) -> Result<usize> {
        if self.exponent.is_empty() {
            return Err(Error::EmptyExponent);
        }
        if e >= self.base.len() {
            return Err(Error::Index { index: e, n: self.base.len() });
        }
        let table = vec![e as u32; self.exponent.len()];
        Ok(self.index_of(&table).expect("constant maps are monotone"))
    }

    /// Dense pointwise order over the enumerated maps.
    pub fn into_exponent(self, guard: &Guard) -> Result<ExponentPoset> {
        guard.check_dense(self.count, "exponent")?;
        let n = self.count;
        let stride = bits::words_for(n);
        let width = self.exponent.len();
        let e = self.base.len();
        // at_least[x * e + v]: maps g with v ≤ g(x)
        let mut at_least = vec![0u64; width * e * stride];
        for g in 0..n {
            for (x, &gv) in self.table(g).iter().enumerate() {
                for v in self.base.down_set(gv as usize) {
                    let base = (x * e + v) * stride;
                    bits::set(&mut at_least[base..base + stride], g);
                }
            }
        }
        let full = bits::full(n);
        let mut up = vec![0u64; n * stride];
        for f in 0..n {
            let row = &mut up[f * stride..(f + 1) * stride];
            row.copy_from_slice(&full);
            for (x, &fv) in self.table(f).iter().enumerate() {
                let base = (x * e + fv as usize) * stride;
                bits::and_into(row, &at_least[base..base + stride]);
            }
        }
        let poset = FinitePoset::from_up_rows(n, up);
        Ok(ExponentPoset { maps: self, poset })
    }
}

/// `E^X`: the monotone maps `X → E` under the pointwise order.
#[derive(Debug, Clone)]
pub struct ExponentPoset {
    pub maps: MonotoneMaps,
    pub poset: FinitePoset,
}

/// An induced subposet with its inclusion into the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subposet {
    pub poset: FinitePoset,
    /// `inclusion[k]` is the parent index of local element `k`; ascending.
    pub inclusion: Vec<usize>,
}

impl Subposet {
    pub fn local_index(&self, parent: usize) -> Option<usize> {
        self.inclusion.binary_search(&parent).ok()
    }
}

impl ExponentPoset {
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn base(&self) -> &FinitePoset {
        self.maps.base()
    }

    pub fn exponent(&self) -> &FinitePoset {
        self.maps.exponent()
    }

    pub fn table(&self, i: usize) -> &[u32] {
        self.maps.table(i)
    }

    pub fn index_of(&self, table: &[u32]) -> Option<usize> {
        self.maps.index_of(table)
    }

    /// Recomputes the pointwise order pair by pair and compares it with the
    /// stored matrix.
    pub fn order_is_pointwise(&self) -> bool {
        let n = self.len();
        (0..n).all(|f| (0..n).all(|g| self.poset.leq(f, g) == self.maps.leq(f, g)))
    }

    /// Mutation hook for verifier tests.
    #[doc(hidden)]
    pub fn flip_order_bit(&mut self, f: usize, g: usize) {
        self.poset.flip_relation_bit(f, g);
    }
}

pub fn exponent(base: &FinitePoset, exp: &FinitePoset, guard: &Guard) -> Result<ExponentPoset> {
    MonotoneMaps::enumerate(base, exp, guard)?.into_exponent(guard)
}

/// `D(E^X)`: maps constant on each connected component of `X`.
pub fn diagonal_d(ex: &ExponentPoset) -> Vec<usize> {
    ex.maps.diagonal()
}

/// `C(E^X)`: the components of `E^X` meeting `D(E^X)`, as an induced
/// subposet. Undefined (an error) for empty `X`.
pub fn component_c(ex: &ExponentPoset) -> Result<Subposet> {
    let inclusion = ex.maps.component_c_indices()?;
    Ok(Subposet { poset: ex.poset.induced(&inclusion), inclusion })
}

/// Index of the constant map `⟨e⟩`.
pub fn constant_embed(ex: &ExponentPoset, e: usize) -> Result<usize> {
    ex.maps.constant(e)
}

/// The currying bijection `(E^X)^Y → E^{X×Y}`, `g ↦ ((x, y) ↦ g(y)(x))`.
#[derive(Debug, Clone)]
pub struct CurryIso {
    pub inner: ExponentPoset,
    pub outer: ExponentPoset,
    pub pairs: Product,
    pub flat: ExponentPoset,
    /// `forward[g]` is the index in `flat` of the uncurried `g`.
    pub forward: Vec<usize>,
    pub verified: bool,
}

pub fn curry_iso(e: &FinitePoset, x: &FinitePoset, y: &FinitePoset, guard: &Guard) -> Result<CurryIso> {
    let inner = exponent(e, x, guard)?;
    let outer = exponent(&inner.poset, y, guard)?;
    let pairs = product(x, y, guard)?;
    let flat = exponent(e, &pairs.poset, guard)?;

    let mut forward = Vec::with_capacity(outer.len());
    let mut table = vec![0u32; pairs.poset.len()];
    let mut total = true;
    for g in 0..outer.len() {
        let g_table = outer.table(g);
        for xi in 0..x.len() {
            for yi in 0..y.len() {
                table[pairs.encode(xi, yi)] = inner.table(g_table[yi] as usize)[xi];
            }
        }
        match flat.index_of(&table) {
            Some(idx) => forward.push(idx),
            None => {
                total = false;
                forward.push(usize::MAX);
            }
        }
    }
    let verified = total && verify_isomorphism(&outer.poset, &flat.poset, &forward);
    Ok(CurryIso { inner, outer, pairs, flat, forward, verified })
}

/// Given an isomorphism `tau: D1 → D2`, the induced isomorphism
/// `E^{D2} → E^{D1}`, `f ↦ f ∘ tau`. Entries are `usize::MAX` where the
/// composite is not found.
pub fn precompose(from: &ExponentPoset, to: &ExponentPoset, tau: &[usize]) -> Vec<usize> {
    let mut table = vec![0u32; tau.len()];
    (0..from.len())
        .map(|f| {
            let ft = from.table(f);
            for (d, &t) in tau.iter().enumerate() {
                table[d] = ft[t];
            }
            to.index_of(&table).unwrap_or(usize::MAX)
        })
        .collect()
}

/// `(U + S)^A` against `U^A + S^A`, with the explicit isomorphism
/// `U^A + S^A → (U + S)^A`.
#[derive(Debug, Clone)]
pub struct Distributivity {
    pub sum_power: ExponentPoset,
    pub left_power: ExponentPoset,
    pub right_power: ExponentPoset,
    pub power_sum: FinitePoset,
    pub iso: Vec<usize>,
    pub verified: bool,
}

pub fn distributivity_check(
    u: &FinitePoset,
    s: &FinitePoset,
    a: &FinitePoset,
    guard: &Guard,
) -> Result<Distributivity> {
    if !a.is_connected() {
        return Err(Error::Precondition("distributivity needs a connected, non-empty exponent".into()));
    }
    let sum = u.disjoint_sum(s);
    let sum_power = exponent(&sum, a, guard)?;
    let left_power = exponent(u, a, guard)?;
    let right_power = exponent(s, a, guard)?;
    let power_sum = left_power.poset.disjoint_sum(&right_power.poset);

    let shift = u.len() as u32;
    let mut iso = Vec::with_capacity(power_sum.len());
    for f in 0..left_power.len() {
        iso.push(sum_power.index_of(left_power.table(f)).unwrap_or(usize::MAX));
    }
    for g in 0..right_power.len() {
        let shifted: Vec<u32> = right_power.table(g).iter().map(|&v| v + shift).collect();
        iso.push(sum_power.index_of(&shifted).unwrap_or(usize::MAX));
    }
    let verified = verify_isomorphism(&power_sum, &sum_power.poset, &iso);
    Ok(Distributivity { sum_power, left_power, right_power, power_sum, iso, verified })
}

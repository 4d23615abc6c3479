//! One representative per isomorphism class of small posets.
//!
//! Every poset on `n` elements arises from one on `n - 1` elements by adding
//! a maximal element above some down-set, so classes are grown size by size
//! and deduplicated by certificate.

use std::collections::BTreeMap;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

pub const DEFAULT_CATALOG_CAP: usize = 6;

/// A catalog representative, stored in canonical labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub poset: FinitePoset,
    pub certificate: Vec<u8>,
    pub connected: bool,
}

/// Representatives of every size `0..=max`, each size sorted by
/// certificate.
#[derive(Debug, Clone)]
pub struct Catalog {
    by_size: Vec<Vec<Entry>>,
}

impl Catalog {
    pub fn new(max: usize) -> Result<Self> {
        Self::with_cap(max, DEFAULT_CATALOG_CAP)
    }

    pub fn with_cap(max: usize, cap: usize) -> Result<Self> {
        if max > cap {
            return Err(Error::Cap { what: format!("catalog of {max}-element posets"), limit: cap });
        }
        let empty = FinitePoset::empty();
        let mut by_size = vec![vec![Entry {
            certificate: canonical_form(&empty).certificate,
            poset: empty,
            connected: false,
        }]];
        for _ in 1..=max {
            let next = grow(by_size.last().expect("non-empty"));
            by_size.push(next);
        }
        Ok(Catalog { by_size })
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len() - 1
    }

    pub fn of_size(&self, n: usize) -> &[Entry] {
        self.by_size.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn connected_of_size(&self, n: usize) -> impl Iterator<Item = &Entry> {
        self.of_size(n).iter().filter(|e| e.connected)
    }

    /// Non-empty representatives of size at most `max`, ascending size.
    pub fn up_to(&self, max: usize) -> impl Iterator<Item = &Entry> {
        (1..=max.min(self.max_size())).flat_map(move |n| self.of_size(n).iter())
    }
}

fn grow(smaller: &[Entry]) -> Vec<Entry> {
    let mut found: BTreeMap<Vec<u8>, FinitePoset> = BTreeMap::new();
    for entry in smaller {
        let p = &entry.poset;
        let m = p.len();
        for mask in 0u64..(1u64 << m) {
            let inside = |i: usize| mask >> i & 1 == 1;
            let down_closed = (0..m).filter(|&i| inside(i)).all(|i| p.down_set(i).all(inside));
            if !down_closed {
                continue;
            }
            let grown = FinitePoset::from_fn_unchecked(m + 1, |i, j| match (i == m, j == m) {
                (false, false) => p.leq(i, j),
                (false, true) => inside(i),
                (true, false) => false,
                (true, true) => true,
            });
            let cf = canonical_form(&grown);
            found.entry(cf.certificate.clone()).or_insert_with(|| cf.canonical_poset(&grown));
        }
    }
    found
        .into_iter()
        .map(|(certificate, poset)| Entry { connected: poset.is_connected(), poset, certificate })
        .collect()
}

/// Isomorphism-class representatives of the `n`-element posets, in
/// certificate order. Refuses `n` above the default cap.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinitePoset>> {
    enumerate_posets_capped(n, DEFAULT_CATALOG_CAP)
}

pub fn enumerate_posets_capped(n: usize, cap: usize) -> Result<Vec<FinitePoset>> {
    let catalog = Catalog::with_cap(n, cap)?;
    Ok(catalog.of_size(n).iter().map(|e| e.poset.clone()).collect())
}

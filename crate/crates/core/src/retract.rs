//! Retractions: verification, exhaustive search, and the explicit
//! constructions onto the constant maps and through exponents.

use crate::arithmetic::{component_c, exponent, ExponentPoset, Guard, MonotoneMaps, Subposet};
use crate::bits;
use crate::canon::are_isomorphic;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// An idempotent order-preserving self-map together with its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    pub map: Vec<usize>,
    /// Fixed points of `map`, ascending.
    pub image: Vec<usize>,
}

impl Retraction {
    pub fn from_map(map: Vec<usize>) -> Self {
        let mut image: Vec<usize> = map.clone();
        image.sort_unstable();
        image.dedup();
        Retraction { map, image }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_map((0..n).collect())
    }

    pub fn image_poset(&self, p: &FinitePoset) -> FinitePoset {
        p.induced(&self.image)
    }
}

/// Monotone, and fixes every point of its image.
pub fn verify_retraction(p: &FinitePoset, rho: &[usize]) -> bool {
    rho.len() == p.len()
        && rho.iter().all(|&v| v < p.len())
        && rho.iter().all(|&v| rho[v] == v)
        && p.covers().iter().all(|&(a, b)| p.leq(rho[a], rho[b]))
}

/// Same check for a self-map of `E^X` given only the map list; monotonicity
/// is tested on the generating pairs of the pointwise order.
pub fn verify_retraction_on_maps(maps: &MonotoneMaps, sigma: &[usize]) -> bool {
    sigma.len() == maps.len()
        && sigma.iter().all(|&v| v < maps.len())
        && sigma.iter().all(|&v| sigma[v] == v)
        && maps.generating_pairs().iter().all(|&(f, g)| maps.leq(sigma[f], sigma[g]))
}

/// First retraction of `p` onto `subset` in index order, by backtracking
/// over the free elements along a linear extension. Search nodes count
/// against `guard.max_maps`.
pub fn find_retraction(p: &FinitePoset, subset: &[usize], guard: &Guard) -> Result<Option<Retraction>> {
    if subset.is_empty() {
        return Err(Error::Precondition("retraction target must be non-empty".into()));
    }
    let n = p.len();
    let stride = bits::words_for(n);
    let mut target = vec![0u64; stride];
    for &i in subset {
        if i >= n {
            return Err(Error::Index { index: i, n });
        }
        bits::set(&mut target, i);
    }

    let mut rho = vec![usize::MAX; n];
    for i in bits::ones(&target) {
        rho[i] = i;
    }
    let free: Vec<usize> = p.linear_extension().into_iter().filter(|&i| !bits::get(&target, i)).collect();

    let allowed = |x: usize, rho: &[usize], row: &mut [u64]| {
        row.copy_from_slice(&target);
        for y in p.down_set(x) {
            if rho[y] != usize::MAX && y != x {
                bits::and_into(row, p.up_row(rho[y]));
            }
        }
        for y in p.up_set(x) {
            if rho[y] != usize::MAX && y != x {
                bits::and_into(row, p.down_row(rho[y]));
            }
        }
    };

    let mut candidates = vec![0u64; free.len() * stride];
    let mut nodes = 0usize;
    let mut depth = 0usize;
    if free.is_empty() {
        return Ok(Some(Retraction::from_map(rho)));
    }
    allowed(free[0], &rho, &mut candidates[..stride]);
    loop {
        let row = &mut candidates[depth * stride..(depth + 1) * stride];
        match bits::first(row) {
            None => {
                rho[free[depth]] = usize::MAX;
                if depth == 0 {
                    return Ok(None);
                }
                depth -= 1;
            }
            Some(v) => {
                bits::clear(row, v);
                rho[free[depth]] = v;
                nodes += 1;
                if nodes > guard.max_maps {
                    return Err(Error::Cap { what: "retraction search nodes".into(), limit: guard.max_maps });
                }
                if depth + 1 == free.len() {
                    return Ok(Some(Retraction::from_map(rho)));
                }
                depth += 1;
                rho[free[depth]] = usize::MAX;
                let (_, rest) = candidates.split_at_mut(depth * stride);
                allowed(free[depth], &rho, &mut rest[..stride]);
            }
        }
    }
}

/// `f ↦ ⟨f(x0)⟩` on `C(E^X)`, in the local indices of the subposet.
#[derive(Debug, Clone)]
pub struct ConstantRetraction {
    pub c: Subposet,
    pub retraction: Retraction,
    pub x0: usize,
}

pub fn lemma1_retraction(ex: &ExponentPoset, x0: usize) -> Result<ConstantRetraction> {
    let x = ex.exponent();
    if x.is_empty() {
        return Err(Error::EmptyExponent);
    }
    if x0 >= x.len() {
        return Err(Error::Index { index: x0, n: x.len() });
    }
    let c = component_c(ex)?;
    let map = c
        .inclusion
        .iter()
        .map(|&f| {
            let e = ex.table(f)[x0] as usize;
            let constant = ex.maps.constant(e)?;
            Ok(c.local_index(constant).expect("constants lie in C"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstantRetraction { c, retraction: Retraction::from_map(map), x0 })
}

/// `σ(f) = ρ ∘ f` on `A^S`.
#[derive(Debug, Clone)]
pub struct LiftedRetraction {
    pub power: ExponentPoset,
    pub sigma: Retraction,
}

fn lift_tables(maps: &MonotoneMaps, rho: &[usize]) -> Vec<usize> {
    let mut scratch = vec![0u32; maps.exponent().len()];
    (0..maps.len())
        .map(|f| {
            for (slot, &v) in scratch.iter_mut().zip(maps.table(f)) {
                *slot = rho[v as usize] as u32;
            }
            maps.index_of(&scratch).unwrap_or(usize::MAX)
        })
        .collect()
}

pub fn lift_retraction(
    a: &FinitePoset,
    rho: &Retraction,
    s: &FinitePoset,
    guard: &Guard,
) -> Result<LiftedRetraction> {
    if rho.map.len() != a.len() {
        return Err(Error::Precondition("retraction does not match its poset".into()));
    }
    let power = exponent(a, s, guard)?;
    let sigma = Retraction::from_map(lift_tables(&power.maps, &rho.map));
    Ok(LiftedRetraction { power, sigma })
}

/// Indices of `A^S` whose values all lie in `image`.
pub fn image_power_indices(maps: &MonotoneMaps, image: &[usize]) -> Vec<usize> {
    (0..maps.len())
        .filter(|&f| maps.table(f).iter().all(|&v| image.binary_search(&(v as usize)).is_ok()))
        .collect()
}

/// Outcome of exhibiting `Q^S` as a retract of `P^S` for `P = C(Q^R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub p_size: usize,
    pub p_power_size: usize,
    pub q_power_size: usize,
    /// `σ = ρ ∘ −` is a retraction of `P^S`.
    pub retraction_verified: bool,
    /// The image of `σ` is order-isomorphic to `Q^S`.
    pub image_isomorphic: bool,
    pub p_power_connected: bool,
    pub q_power_connected: bool,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.retraction_verified
            && self.image_isomorphic
            && (!self.p_power_connected || self.q_power_connected)
    }
}

pub fn prop4_transfer(
    q: &FinitePoset,
    r: &FinitePoset,
    s: &FinitePoset,
    guard: &Guard,
) -> Result<TransferReport> {
    if q.is_empty() || r.is_empty() || s.is_empty() {
        return Err(Error::Precondition("Q, R and S must be non-empty".into()));
    }
    let qr = exponent(q, r, guard)?;
    let lemma1 = lemma1_retraction(&qr, 0)?;
    let p = &lemma1.c.poset;
    let rho = &lemma1.retraction;

    let p_power = MonotoneMaps::enumerate(p, s, guard)?;
    let sigma = lift_tables(&p_power, &rho.map);
    let retraction_verified = verify_retraction_on_maps(&p_power, &sigma);

    let image = Retraction::from_map(sigma).image;
    let image_poset = FinitePoset::from_fn_unchecked(image.len(), |a, b| p_power.leq(image[a], image[b]));
    let q_power = exponent(q, s, guard)?;
    let image_isomorphic = are_isomorphic(&image_poset, &q_power.poset).is_some();

    Ok(TransferReport {
        p_size: p.len(),
        p_power_size: p_power.len(),
        q_power_size: q_power.len(),
        retraction_verified,
        image_isomorphic,
        p_power_connected: p_power.is_connected(),
        q_power_connected: q_power.poset.is_connected(),
    })
}

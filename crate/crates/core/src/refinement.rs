//! Refinement witnesses for `A^C ≅ B^D`: posets `E, X, Y, Z` with
//! `A ≅ E^X`, `B ≅ E^Y`, `C ≅ Y × Z` and `D ≅ X × Z`, found by bounded
//! search and re-checked by an independent verifier.

use std::time::{Duration, Instant};

use crate::arithmetic::{curry_iso, exponent, precompose, product, ExponentPoset, Guard, MonotoneMaps};
use crate::canon::{
    are_isomorphic, canonical_form, isomorphism_from_forms, verify_isomorphism, CanonicalForm,
};
use crate::catalog::{Catalog, DEFAULT_CATALOG_CAP};
use crate::error::{Error, Result};
use crate::poset::{singleton, FinitePoset};

/// Outcome of checking `(E^X)^{Y×Z} ≅ E^{X×Y×Z} ≅ (E^Y)^{X×Z}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalLawReport {
    pub left_size: usize,
    pub middle_size: usize,
    pub right_size: usize,
    /// `(E^X)^{Y×Z} → E^{X×(Y×Z)}` is an order-isomorphism.
    pub left_curry: bool,
    /// `(E^Y)^{X×Z} → E^{Y×(X×Z)}` is an order-isomorphism.
    pub right_curry: bool,
    /// The composite `(E^Y)^{X×Z} → (E^X)^{Y×Z}` is an order-isomorphism.
    pub composite: bool,
    pub certificates_equal: bool,
}

impl NaturalLawReport {
    pub fn holds(&self) -> bool {
        (self.left_curry && self.right_curry && self.composite) || self.certificates_equal
    }
}

pub fn verify_natural_law(
    e: &FinitePoset,
    x: &FinitePoset,
    y: &FinitePoset,
    z: &FinitePoset,
    guard: &Guard,
) -> Result<NaturalLawReport> {
    let yz = product(y, z, guard)?;
    let xz = product(x, z, guard)?;
    let left = curry_iso(e, x, &yz.poset, guard)?;
    let right = curry_iso(e, y, &xz.poset, guard)?;

    // (x, (y, z)) ↦ (y, (x, z))
    let tau: Vec<usize> = (0..left.pairs.poset.len())
        .map(|flat| {
            let (xi, yz_i) = left.pairs.decode(flat);
            let (yi, zi) = yz.decode(yz_i);
            right.pairs.encode(yi, xz.encode(xi, zi))
        })
        .collect();
    let tau_ok = verify_isomorphism(&left.pairs.poset, &right.pairs.poset, &tau);
    let flat_to_flat = precompose(&right.flat, &left.flat, &tau);

    let mut left_back = vec![usize::MAX; left.flat.len()];
    if left.verified {
        for (g, &h) in left.forward.iter().enumerate() {
            left_back[h] = g;
        }
    }
    let composite: Vec<usize> = right
        .forward
        .iter()
        .map(|&h| flat_to_flat.get(h).and_then(|&k| left_back.get(k)).copied().unwrap_or(usize::MAX))
        .collect();
    let composite_ok = tau_ok
        && left.verified
        && right.verified
        && verify_isomorphism(&right.outer.poset, &left.outer.poset, &composite);

    let certificates_equal = {
        let l = canonical_form(&left.outer.poset).certificate;
        l == canonical_form(&left.flat.poset).certificate
            && l == canonical_form(&right.outer.poset).certificate
    };

    Ok(NaturalLawReport {
        left_size: left.outer.len(),
        middle_size: left.flat.len(),
        right_size: right.outer.len(),
        left_curry: left.verified,
        right_curry: right.verified,
        composite: composite_ok,
        certificates_equal,
    })
}

/// `P ≅ Y × Z`, with `iso[p]` the flat index `y * |Z| + z` of `p`'s image.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub y: FinitePoset,
    pub z: FinitePoset,
    pub iso: Vec<usize>,
}

/// All `(Y, Z)` with `Y × Z ≅ P` up to isomorphism, ascending `|Y|` and
/// then certificate order. Non-trivial factors come from `catalog`.
pub fn factorizations(p: &FinitePoset, catalog: &Catalog, guard: &Guard) -> Result<Vec<Factorization>> {
    let n = p.len();
    if n == 0 {
        return Err(Error::Precondition("cannot factor the empty poset".into()));
    }
    let identity: Vec<usize> = (0..n).collect();
    if n == 1 {
        return Ok(vec![Factorization { y: singleton(), z: singleton(), iso: identity }]);
    }
    if let Some(needed) = (2..n).filter(|d| n.is_multiple_of(*d)).max() {
        if needed > catalog.max_size() {
            return Err(Error::Cap { what: format!("factors of size {needed}"), limit: catalog.max_size() });
        }
    }
    let form_p = canonical_form(p);
    let connected = p.is_connected();
    let pairs = p.relation_size();

    let mut out = vec![Factorization { y: singleton(), z: p.clone(), iso: identity.clone() }];
    for d in (2..n).filter(|d| n.is_multiple_of(*d)) {
        for ye in catalog.of_size(d) {
            if connected && !ye.connected {
                continue;
            }
            for ze in catalog.of_size(n / d) {
                if (connected && !ze.connected)
                    || ye.poset.relation_size() * ze.poset.relation_size() != pairs
                {
                    continue;
                }
                let prod = product(&ye.poset, &ze.poset, guard)?;
                let form = canonical_form(&prod.poset);
                if let Some(iso) = isomorphism_from_forms(p, &form_p, &prod.poset, &form) {
                    out.push(Factorization { y: ye.poset.clone(), z: ze.poset.clone(), iso });
                }
            }
        }
    }
    out.push(Factorization { y: p.clone(), z: singleton(), iso: identity });
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SearchBounds {
    pub max_e: usize,
    pub max_x: usize,
    pub max_y: usize,
    pub max_z: usize,
    pub guard: Guard,
    pub timeout: Option<Duration>,
    /// Allow disconnected `E` as well.
    pub widen: bool,
    /// Restrict `|E| ≤ min(|A|, |B|)`. Sound because `E` is a retract of
    /// `C(E^X) ≅ A`; disable only for cross-checking.
    pub retract_bound: bool,
    /// Largest catalog size the search may build.
    pub catalog_cap: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_e: DEFAULT_CATALOG_CAP,
            max_x: DEFAULT_CATALOG_CAP,
            max_y: DEFAULT_CATALOG_CAP,
            max_z: DEFAULT_CATALOG_CAP,
            guard: Guard::default(),
            timeout: None,
            widen: false,
            retract_bound: true,
            catalog_cap: DEFAULT_CATALOG_CAP,
        }
    }
}

impl SearchBounds {
    fn validate(&self) -> Result<()> {
        if [self.max_e, self.max_x, self.max_y, self.max_z].contains(&0) {
            return Err(Error::Size("search bounds must be positive".into()));
        }
        Ok(())
    }
}

/// Isomorphisms map the left-hand poset into the constructed one:
/// `iso_a: A → E^X`, `iso_b: B → E^Y`, `iso_c: C → Y × Z`, `iso_d: D → X × Z`
/// (products use the flat pair index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementWitness {
    pub e: FinitePoset,
    pub x: FinitePoset,
    pub y: FinitePoset,
    pub z: FinitePoset,
    pub iso_a: Vec<usize>,
    pub iso_b: Vec<usize>,
    pub iso_c: Vec<usize>,
    pub iso_d: Vec<usize>,
}

impl RefinementWitness {
    pub fn all_connected(&self) -> bool {
        [&self.e, &self.x, &self.y, &self.z].iter().all(|p| p.is_connected())
    }
}

/// Recomputes `E^X`, `E^Y`, `Y × Z`, `X × Z` and checks the four stored
/// isomorphisms from scratch.
pub fn verify_witness(
    a: &FinitePoset,
    b: &FinitePoset,
    c: &FinitePoset,
    d: &FinitePoset,
    w: &RefinementWitness,
) -> bool {
    if [&w.e, &w.x, &w.y, &w.z].iter().any(|p| p.is_empty()) {
        return false;
    }
    let guard = Guard::default();
    let check = |lhs: &FinitePoset, rhs: Result<FinitePoset>, iso: &[usize]| {
        rhs.map(|r| verify_isomorphism(lhs, &r, iso)).unwrap_or(false)
    };
    check(a, exponent(&w.e, &w.x, &guard).map(|ex| ex.poset), &w.iso_a)
        && check(b, exponent(&w.e, &w.y, &guard).map(|ex| ex.poset), &w.iso_b)
        && check(c, product(&w.y, &w.z, &guard).map(|p| p.poset), &w.iso_c)
        && check(d, product(&w.x, &w.z, &guard).map(|p| p.poset), &w.iso_d)
}

struct Candidate {
    z: FinitePoset,
    z_cert: Vec<u8>,
    y: FinitePoset,
    y_cert: Vec<u8>,
    x: FinitePoset,
    x_cert: Vec<u8>,
    iso_c: Vec<usize>,
    iso_d: Vec<usize>,
}

fn candidates(
    c: &FinitePoset,
    d: &FinitePoset,
    catalog: &Catalog,
    bounds: &SearchBounds,
) -> Result<Vec<Candidate>> {
    let facts_c = factorizations(c, catalog, &bounds.guard)?;
    let facts_d = factorizations(d, catalog, &bounds.guard)?;
    let forms = |fs: &[Factorization]| -> Vec<(CanonicalForm, CanonicalForm)> {
        fs.iter().map(|f| (canonical_form(&f.y), canonical_form(&f.z))).collect()
    };
    let forms_c = forms(&facts_c);
    let forms_d = forms(&facts_d);

    let mut out = Vec::new();
    for (fc, (yc, zc)) in facts_c.iter().zip(&forms_c) {
        if fc.z.len() > bounds.max_z || fc.y.len() > bounds.max_y {
            continue;
        }
        for (fd, (xd, zd)) in facts_d.iter().zip(&forms_d) {
            if fd.y.len() > bounds.max_x {
                continue;
            }
            // re-express D's factorization over C's copy of Z
            let Some(tau) = isomorphism_from_forms(&fd.z, zd, &fc.z, zc) else {
                continue;
            };
            let nz = fc.z.len();
            let iso_d = fd.iso.iter().map(|&flat| (flat / nz) * nz + tau[flat % nz]).collect();
            out.push(Candidate {
                z: fc.z.clone(),
                z_cert: zc.certificate.clone(),
                y: fc.y.clone(),
                y_cert: yc.certificate.clone(),
                x: fd.y.clone(),
                x_cert: xd.certificate.clone(),
                iso_c: fc.iso.clone(),
                iso_d,
            });
        }
    }
    out.sort_by(|p, q| {
        (p.z.len(), &p.z_cert, p.y.len(), &p.y_cert, p.x.len(), &p.x_cert).cmp(&(
            q.z.len(),
            &q.z_cert,
            q.y.len(),
            &q.y_cert,
            q.x.len(),
            &q.x_cert,
        ))
    });
    Ok(out)
}

/// Checks the hypotheses for `A^C ≅ B^D` and returns the two powers.
fn check_hypotheses(
    a: &FinitePoset,
    b: &FinitePoset,
    c: &FinitePoset,
    d: &FinitePoset,
    guard: &Guard,
) -> Result<(ExponentPoset, ExponentPoset)> {
    if [a, b, c, d].iter().any(|p| p.is_empty()) {
        return Err(Error::Precondition("A, B, C and D must be non-empty".into()));
    }
    if !c.is_connected() || !d.is_connected() {
        return Err(Error::Precondition("C and D must be connected".into()));
    }
    let ac = exponent(a, c, guard)?;
    if !ac.poset.is_connected() {
        return Err(Error::Precondition("A^C must be connected".into()));
    }
    let bd = exponent(b, d, guard)?;
    if are_isomorphic(&ac.poset, &bd.poset).is_none() {
        return Err(Error::Precondition("A^C and B^D are not isomorphic".into()));
    }
    Ok((ac, bd))
}

/// Smallest refinement witness in search order, or [`Error::Exhausted`]
/// when none lies within `bounds`.
pub fn refine(
    a: &FinitePoset,
    b: &FinitePoset,
    c: &FinitePoset,
    d: &FinitePoset,
    bounds: &SearchBounds,
) -> Result<RefinementWitness> {
    bounds.validate()?;
    let start = Instant::now();
    let timed_out = || bounds.timeout.filter(|&t| start.elapsed() > t);
    check_hypotheses(a, b, c, d, &bounds.guard)?;

    let mut e_limit = bounds.max_e;
    if bounds.retract_bound {
        e_limit = e_limit.min(a.len()).min(b.len());
    }
    let factor_need =
        [c.len(), d.len()].iter().flat_map(|&n| (2..n).filter(move |k| n % k == 0)).max().unwrap_or(1);
    let catalog_size = e_limit.max(factor_need.min(bounds.catalog_cap));
    let catalog = Catalog::with_cap(catalog_size, bounds.catalog_cap)?;

    let form_a = canonical_form(a);
    let form_b = canonical_form(b);

    for cand in candidates(c, d, &catalog, bounds)? {
        for size in 1..=e_limit {
            for entry in catalog.of_size(size) {
                if let Some(t) = timed_out() {
                    return Err(Error::Timeout(t));
                }
                if !bounds.widen && !entry.connected {
                    continue;
                }
                let e = &entry.poset;
                let Some(iso_a) = match_power(e, &cand.x, a, &form_a, &bounds.guard)? else {
                    continue;
                };
                let Some(iso_b) = match_power(e, &cand.y, b, &form_b, &bounds.guard)? else {
                    continue;
                };
                let witness = RefinementWitness {
                    e: e.clone(),
                    x: cand.x.clone(),
                    y: cand.y.clone(),
                    z: cand.z.clone(),
                    iso_a,
                    iso_b,
                    iso_c: cand.iso_c.clone(),
                    iso_d: cand.iso_d.clone(),
                };
                if verify_witness(a, b, c, d, &witness) {
                    return Ok(witness);
                }
            }
        }
    }
    Err(Error::Exhausted)
}

/// Isomorphism `target → E^X` if there is one; bails out early when `E^X`
/// has more maps than `target` has elements.
fn match_power(
    e: &FinitePoset,
    x: &FinitePoset,
    target: &FinitePoset,
    target_form: &CanonicalForm,
    guard: &Guard,
) -> Result<Option<Vec<usize>>> {
    let capped = Guard { max_maps: target.len(), ..*guard };
    let maps = match MonotoneMaps::enumerate(e, x, &capped) {
        Ok(m) => m,
        Err(Error::Cap { .. }) => return Ok(None),
        Err(other) => return Err(other),
    };
    if maps.len() != target.len() {
        return Ok(None);
    }
    let power = maps.into_exponent(guard)?;
    if power.poset.relation_size() != target.relation_size() {
        return Ok(None);
    }
    let form = canonical_form(&power.poset);
    Ok(isomorphism_from_forms(target, target_form, &power.poset, &form))
}

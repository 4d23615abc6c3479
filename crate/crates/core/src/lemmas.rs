//! Exhaustive instantiation of the retract and connectivity lemmas over the
//! small-poset catalog.

use std::fmt;

use rayon::prelude::*;

use crate::arithmetic::{exponent, product, ExponentPoset, Guard, MonotoneMaps};
use crate::canon::{are_isomorphic, certificate};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::retract::{
    find_retraction, image_power_indices, lemma1_retraction, lift_retraction, prop4_transfer,
    verify_retraction, Retraction,
};

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub max_size: usize,
    pub guard: Guard,
    /// Mutation hook: flip one order bit between two constant maps of every
    /// exponent the retraction checks build, so the suite must report
    /// counterexamples.
    pub corrupt_exponent_order: bool,
}

impl SuiteOptions {
    pub fn new(max_size: usize) -> Self {
        SuiteOptions { max_size, guard: Guard::default(), corrupt_exponent_order: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub statement: &'static str,
    /// Instances evaluated.
    pub instances: usize,
    /// Instances whose hypothesis held (the rest are vacuously true).
    pub non_vacuous: usize,
    /// Instances skipped because an exponent exceeded the guard.
    pub skipped: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub max_size: usize,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn counterexamples(&self) -> usize {
        self.checks.iter().map(|c| c.counterexamples.len()).sum()
    }

    pub fn check(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lemma suite max_size={}", self.max_size)?;
        for c in &self.checks {
            writeln!(
                f,
                "{}: instances={} non_vacuous={} skipped={} counterexamples={}  # {}",
                c.name,
                c.instances,
                c.non_vacuous,
                c.skipped,
                c.counterexamples.len(),
                c.statement
            )?;
            for ce in &c.counterexamples {
                writeln!(f, "  counterexample: {ce}")?;
            }
        }
        write!(f, "{} counterexamples", self.counterexamples())
    }
}

enum Outcome {
    Holds { non_vacuous: bool },
    Fails(String),
    Skipped,
}

fn tally(name: &'static str, statement: &'static str, outcomes: Vec<Result<Outcome>>) -> Result<LemmaCheck> {
    let mut check =
        LemmaCheck { name, statement, instances: 0, non_vacuous: 0, skipped: 0, counterexamples: Vec::new() };
    for outcome in outcomes {
        match outcome? {
            Outcome::Holds { non_vacuous } => {
                check.instances += 1;
                check.non_vacuous += usize::from(non_vacuous);
            }
            Outcome::Fails(why) => {
                check.instances += 1;
                check.non_vacuous += 1;
                check.counterexamples.push(why);
            }
            Outcome::Skipped => check.skipped += 1,
        }
    }
    Ok(check)
}

/// Maps guard overruns to a skipped instance.
fn guarded(r: Result<Outcome>) -> Result<Outcome> {
    match r {
        Err(Error::Cap { .. }) => Ok(Outcome::Skipped),
        other => other,
    }
}

fn describe(p: &FinitePoset) -> String {
    format!("{}{:?}", p.len(), p.covers())
}

fn corrupt(ex: &mut ExponentPoset) {
    let base = ex.base().len();
    if ex.exponent().is_empty() || base < 2 {
        return;
    }
    let (Ok(a), Ok(b)) = (ex.maps.constant(0), ex.maps.constant(1)) else {
        return;
    };
    ex.flip_order_bit(a, b);
}

pub fn lemma_suite(max_size: usize) -> Result<LemmaReport> {
    lemma_suite_with(&SuiteOptions::new(max_size))
}

pub fn lemma_suite_with(opts: &SuiteOptions) -> Result<LemmaReport> {
    let catalog = Catalog::new(opts.max_size)?;
    let posets: Vec<&FinitePoset> = catalog.up_to(opts.max_size).map(|e| &e.poset).collect();
    let guard = &opts.guard;

    let pairs: Vec<(&FinitePoset, &FinitePoset)> =
        posets.iter().flat_map(|&a| posets.iter().map(move |&b| (a, b))).collect();
    let triples: Vec<(&FinitePoset, &FinitePoset, &FinitePoset)> =
        pairs.iter().flat_map(|&(a, b)| posets.iter().map(move |&c| (a, b, c))).collect();

    // constants: E is isomorphic to a retract of C(E^X), via f ↦ ⟨f(x0)⟩.
    let lemma1_instances: Vec<(&FinitePoset, &FinitePoset, usize)> =
        pairs.iter().flat_map(|&(e, x)| (0..x.len()).map(move |x0| (e, x, x0))).collect();
    let lemma1 = lemma1_instances
        .par_iter()
        .map(|&(e, x, x0)| {
            guarded((|| {
                let mut ex = exponent(e, x, guard)?;
                if opts.corrupt_exponent_order {
                    corrupt(&mut ex);
                }
                let l1 = lemma1_retraction(&ex, x0)?;
                let ok = verify_retraction(&l1.c.poset, &l1.retraction.map)
                    && are_isomorphic(&l1.retraction.image_poset(&l1.c.poset), e).is_some();
                Ok(if ok {
                    Outcome::Holds { non_vacuous: true }
                } else {
                    Outcome::Fails(format!("E={} X={} x0={x0}", describe(e), describe(x)))
                })
            })())
        })
        .collect();

    // components: if E^X is connected then C(E^X) = E^X. Bases are the catalog
    // posets and, in addition, every distinct power Q^R of them.
    let mut bases: Vec<FinitePoset> = posets.iter().map(|&p| p.clone()).collect();
    let mut seen: Vec<Vec<u8>> = bases.iter().map(certificate).collect();
    for &(q, r) in &pairs {
        if let Ok(qr) = exponent(q, r, guard) {
            let cert = certificate(&qr.poset);
            if !seen.contains(&cert) {
                seen.push(cert);
                bases.push(qr.poset);
            }
        }
    }
    let lemma2_instances: Vec<(&FinitePoset, &FinitePoset)> =
        bases.iter().flat_map(|e| posets.iter().map(move |&x| (e, x))).collect();
    let lemma2 = lemma2_instances
        .par_iter()
        .map(|&(e, x)| {
            guarded((|| {
                let maps = MonotoneMaps::enumerate(e, x, guard)?;
                if !maps.is_connected() {
                    return Ok(Outcome::Holds { non_vacuous: false });
                }
                let c = maps.component_c_indices()?;
                Ok(if c.len() == maps.len() {
                    Outcome::Holds { non_vacuous: true }
                } else {
                    Outcome::Fails(format!("E={} X={}", describe(e), describe(x)))
                })
            })())
        })
        .collect();

    // lifting: σ(f) = ρ ∘ f is a retraction of A^S onto I^S.
    let retractions: Vec<(&FinitePoset, Retraction)> = posets
        .iter()
        .flat_map(|&a| {
            (1u32..1 << a.len()).filter_map(move |mask| {
                let subset: Vec<usize> = (0..a.len()).filter(|&i| mask >> i & 1 == 1).collect();
                find_retraction(a, &subset, guard).ok().flatten().map(|r| (a, r))
            })
        })
        .collect();
    let lemma3_instances: Vec<(&FinitePoset, &Retraction, &FinitePoset)> =
        retractions.iter().flat_map(|(a, r)| posets.iter().map(move |&s| (*a, r, s))).collect();
    let lemma3 = lemma3_instances
        .par_iter()
        .map(|&(a, rho, s)| {
            guarded((|| {
                let mut lifted = lift_retraction(a, rho, s, guard)?;
                if opts.corrupt_exponent_order {
                    corrupt(&mut lifted.power);
                }
                let ok = verify_retraction(&lifted.power.poset, &lifted.sigma.map)
                    && lifted.sigma.image == image_power_indices(&lifted.power.maps, &rho.image)
                    && lifted.power.order_is_pointwise();
                Ok(if ok {
                    Outcome::Holds { non_vacuous: true }
                } else {
                    Outcome::Fails(format!("A={} I={:?} S={}", describe(a), rho.image, describe(s)))
                })
            })())
        })
        .collect();

    // transfer: Q^S is a retract of C(Q^R)^S, and connectivity transfers.
    let prop4 = triples
        .par_iter()
        .map(|&(q, r, s)| {
            guarded((|| {
                let report = prop4_transfer(q, r, s, guard)?;
                Ok(if report.holds() {
                    Outcome::Holds { non_vacuous: report.p_power_connected }
                } else {
                    Outcome::Fails(format!(
                        "Q={} R={} S={} {report:?}",
                        describe(q),
                        describe(r),
                        describe(s)
                    ))
                })
            })())
        })
        .collect();

    // exponent of a product: U^{S×A} connected implies U^S connected.
    let lemma5 = triples
        .par_iter()
        .map(|&(u, s, a)| {
            guarded((|| {
                let sa = product(s, a, guard)?;
                if !MonotoneMaps::enumerate(u, &sa.poset, guard)?.is_connected() {
                    return Ok(Outcome::Holds { non_vacuous: false });
                }
                Ok(if MonotoneMaps::enumerate(u, s, guard)?.is_connected() {
                    Outcome::Holds { non_vacuous: true }
                } else {
                    Outcome::Fails(format!("U={} S={} A={}", describe(u), describe(s), describe(a)))
                })
            })())
        })
        .collect();

    Ok(LemmaReport {
        max_size: opts.max_size,
        checks: vec![
            tally("lemma1", "E is order-isomorphic to a retract of C(E^X)", lemma1)?,
            tally("lemma2", "E^X connected implies C(E^X) = E^X", lemma2)?,
            tally("lemma3", "sigma(f) = rho . f is a retraction of A^S onto I^S", lemma3)?,
            tally("prop4", "Q^S is a retract of C(Q^R)^S; P^S connected implies Q^S connected", prop4)?,
            tally("lemma5", "U^(S x A) connected implies U^S connected", lemma5)?,
        ],
    })
}

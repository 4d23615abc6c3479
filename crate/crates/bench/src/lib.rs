//! Fixed workloads shared by the benchmarks.

use posetpow::{chain, exponent, product, standard, FinitePoset, Guard, StandardKind};

pub fn crown4() -> FinitePoset {
    standard(StandardKind::Crown(4)).expect("crown 4 is valid")
}

/// `2^n` as a poset: monotone maps from an `n`-antichain into a 2-chain.
pub fn boolean_lattice(n: usize) -> FinitePoset {
    exponent(&chain(2), &posetpow::antichain(n), &Guard::default()).expect("under guard").poset
}

/// `(E^X, E^Y, Y × Z, X × Z)` for the given seed.
pub fn refinement_instance(
    e: &FinitePoset,
    x: &FinitePoset,
    y: &FinitePoset,
    z: &FinitePoset,
) -> [FinitePoset; 4] {
    let g = Guard::default();
    [
        exponent(e, x, &g).expect("under guard").poset,
        exponent(e, y, &g).expect("under guard").poset,
        product(y, z, &g).expect("under guard").poset,
        product(x, z, &g).expect("under guard").poset,
    ]
}

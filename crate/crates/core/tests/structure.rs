mod common;

use posetpow::{
    are_isomorphic, canonical_form, certificate, chain, product, Catalog, CoverList, FinitePoset, Guard,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn catalog5() -> Catalog {
    Catalog::new(5).unwrap()
}

#[test]
fn catalog_posets_round_trip_through_matrix_and_covers() {
    for entry in catalog5().up_to(5) {
        let p = &entry.poset;
        assert_eq!(&FinitePoset::validate(&p.to_matrix()).unwrap(), p);
        assert_eq!(&FinitePoset::from_cover_list(&p.cover_relation()).unwrap(), p);
        assert_eq!(&p.dual().dual(), p);
    }
}

#[test]
fn components_agree_with_union_find() {
    for entry in catalog5().up_to(5) {
        let p = &entry.poset;
        let parts = p.components();
        assert_eq!(parts.count, common::naive_component_count(p));
        assert_eq!(entry.connected, parts.count == 1);
        for block in parts.blocks() {
            assert!(p.induced(&block).is_connected());
        }
    }
}

#[test]
fn catalog_has_no_isomorphic_duplicates() {
    let catalog = catalog5();
    for n in 1..=4 {
        let reps = catalog.of_size(n);
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(common::brute_iso(&a.poset, &b.poset).is_none());
            }
        }
    }
    let mut certs: Vec<_> = catalog.of_size(5).iter().map(|e| e.certificate.clone()).collect();
    certs.sort();
    certs.dedup();
    assert_eq!(certs.len(), 63);
}

#[test]
fn connected_counts() {
    let catalog = catalog5();
    let counts: Vec<usize> = (1..=5).map(|n| catalog.connected_of_size(n).count()).collect();
    assert_eq!(counts, [1, 1, 3, 10, 44]);
}

#[test]
fn sums_commute_and_associate_up_to_iso() {
    let catalog = Catalog::new(3).unwrap();
    let ps: Vec<_> = catalog.up_to(3).map(|e| e.poset.clone()).collect();
    for a in &ps {
        for b in &ps {
            assert!(are_isomorphic(&a.disjoint_sum(b), &b.disjoint_sum(a)).is_some());
            for c in ps.iter().step_by(3) {
                let left = a.disjoint_sum(b).disjoint_sum(c);
                let right = a.disjoint_sum(&b.disjoint_sum(c));
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn products_of_connected_posets_are_connected() {
    let catalog = Catalog::new(3).unwrap();
    let guard = Guard::default();
    for a in catalog.up_to(3) {
        for b in catalog.up_to(3) {
            let p = product(&a.poset, &b.poset, &guard).unwrap();
            assert_eq!(p.poset.is_connected(), a.connected && b.connected);
            assert_eq!(p.poset.len(), a.poset.len() * b.poset.len());
            for flat in 0..p.poset.len() {
                let (i, j) = p.decode(flat);
                assert_eq!(p.encode(i, j), flat);
            }
        }
    }
}

#[test]
fn canonical_form_is_invariant_under_shuffles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for entry in catalog5().up_to(5) {
        for _ in 0..100 {
            let (q, _) = common::shuffle(&entry.poset, &mut rng);
            assert_eq!(certificate(&q), entry.certificate);
        }
    }
}

#[test]
fn canonical_labeling_reproduces_the_canonical_poset() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let p = common::random_poset(9, 0.3, &mut rng);
        let (q, _) = common::shuffle(&p, &mut rng);
        let (fp, fq) = (canonical_form(&p), canonical_form(&q));
        assert_eq!(fp.canonical_poset(&p), fq.canonical_poset(&q));
    }
}

#[test]
fn larger_random_posets_match_brute_force_iso() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let p = common::random_poset(7, 0.35, &mut rng);
        let q = if rand::Rng::random_bool(&mut rng, 0.5) {
            common::shuffle(&p, &mut rng).0
        } else {
            common::random_poset(7, 0.35, &mut rng)
        };
        assert_eq!(are_isomorphic(&p, &q).is_some(), common::brute_iso(&p, &q).is_some());
    }
}

#[test]
fn cycles_and_bad_matrices_are_rejected() {
    assert!(FinitePoset::from_covers(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
    assert!(FinitePoset::from_covers(2, &[(0, 5)]).is_err());
    assert!(FinitePoset::validate(&[vec![true, true], vec![true, true]]).is_err());
    assert!(FinitePoset::validate(&[vec![false]]).is_err());
    assert!(FinitePoset::from_cover_list(&CoverList { n: 2, covers: vec![(1, 1)] }).is_err());
    assert_eq!(chain(4).covers(), [(0, 1), (1, 2), (2, 3)]);
}

proptest! {
    #[test]
    fn random_posets_satisfy_the_axioms(seed in any::<u64>(), n in 0usize..12, density in 0.0f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poset(n, density, &mut rng);
        let m = p.to_matrix();
        prop_assert_eq!(FinitePoset::validate(&m).unwrap(), p.clone());
        let ext = p.linear_extension();
        let mut pos = vec![0; n];
        for (k, &v) in ext.iter().enumerate() {
            pos[v] = k;
        }
        for (a, b) in p.covers() {
            prop_assert!(pos[a] < pos[b]);
            prop_assert!(p.lt(a, b));
            prop_assert!((0..n).all(|c| !(p.lt(a, c) && p.lt(c, b))));
        }
        prop_assert_eq!(FinitePoset::from_covers(n, &p.covers()).unwrap(), p);
    }

    #[test]
    fn relabeling_preserves_the_certificate(seed in any::<u64>(), n in 1usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poset(n, 0.3, &mut rng);
        let (q, perm) = common::shuffle(&p, &mut rng);
        prop_assert!(posetpow::verify_isomorphism(&p, &q, &perm));
        prop_assert_eq!(certificate(&p), certificate(&q));
        let phi = are_isomorphic(&p, &q).unwrap();
        prop_assert!(posetpow::verify_isomorphism(&p, &q, &phi));
    }
}

#[test]
fn highly_symmetric_powers_canonize_quickly() {
    let guard = Guard::default();
    let start = std::time::Instant::now();
    let flat = posetpow::exponent(&posetpow::antichain(2), &posetpow::antichain(9), &guard).unwrap();
    assert_eq!(certificate(&flat.poset), certificate(&posetpow::antichain(512)));
    let cube = posetpow::exponent(&chain(2), &posetpow::antichain(8), &guard).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (shuffled, _) = common::shuffle(&cube.poset, &mut rng);
    assert!(are_isomorphic(&cube.poset, &shuffled).is_some());
    assert!(start.elapsed() < std::time::Duration::from_secs(30));
}

use posetpow::io::{
    emit_poset, map_labels, parse_document, parse_poset, to_dot, ExponentDocument, PosetDocument,
    WitnessDocument,
};
use posetpow::{
    chain, exponent, product, refine, singleton, standard, Catalog, Error, Guard, SearchBounds, StandardKind,
};

#[test]
fn catalog_round_trips_through_json() {
    for entry in Catalog::new(5).unwrap().up_to(5) {
        let text = emit_poset(&entry.poset);
        assert_eq!(parse_poset(&text).unwrap(), entry.poset);
        let doc = parse_document(&text).unwrap();
        assert_eq!(doc, PosetDocument::from_poset(&entry.poset));
    }
}

#[test]
fn crown_document_is_stable() {
    let crown = standard(StandardKind::Crown(4)).unwrap();
    assert_eq!(emit_poset(&crown), r#"{"n":4,"covers":[[0,2],[0,3],[1,2],[1,3]]}"#);
}

#[test]
fn bad_documents_are_rejected() {
    assert!(matches!(parse_poset("{"), Err(Error::Parse(_))));
    assert!(parse_poset(r#"{"n":2,"covers":[[0,1],[1,0]]}"#).is_err());
    assert!(parse_poset(r#"{"n":2,"covers":[[0,3]]}"#).is_err());
}

#[test]
fn exponent_document_lists_maps() {
    let ex = exponent(&chain(3), &chain(2), &Guard::default()).unwrap();
    let doc = ExponentDocument::from_exponent(&ex);
    assert_eq!(doc.maps, [[0, 0], [0, 1], [0, 2], [1, 1], [1, 2], [2, 2]]);
    let text = serde_json::to_string(&doc).unwrap();
    assert_eq!(parse_poset(&text).unwrap(), ex.poset);
    assert_eq!(map_labels(&ex)[2], "(0,2)");
}

#[test]
fn witness_document_round_trips() {
    let g = Guard::default();
    let c2 = chain(2);
    let a = exponent(&c2, &c2, &g).unwrap().poset;
    let b = exponent(&c2, &singleton(), &g).unwrap().poset;
    let c = product(&singleton(), &c2, &g).unwrap().poset;
    let d = product(&c2, &c2, &g).unwrap().poset;
    let w = refine(&a, &b, &c, &d, &SearchBounds::default()).unwrap();
    let text = serde_json::to_string(&WitnessDocument::from_witness(&w)).unwrap();
    let back: WitnessDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_witness().unwrap(), w);
}

#[test]
fn dot_output_lists_nodes_and_covers() {
    let dot = to_dot(&chain(2), None);
    assert_eq!(dot, "digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  0 -> 1;\n}\n");
    let labels = vec!["lo".to_string(), "hi".to_string()];
    assert!(to_dot(&chain(2), Some(&labels)).contains("1 [label=\"hi\"]"));
}

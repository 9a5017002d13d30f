use std::collections::BTreeMap;

use proptest::prelude::*;
use sll_core::connect::connection_classes;
use sll_core::exactlin::{FieldDescriptor, Rationals};
use sll_core::iocli::generators::{example1, example1_cartan, example2, example2_cartan};
use sll_core::iocli::report::{analyze_report, check_report, split_report};
use sll_core::iocli::{fuzz_corpus, parse_field_flag, AlgebraDocument, AnyLoaded, DocumentError, Meta, Outcome};
use sll_core::splitdec::{split, CartanInput};
use sll_core::{Q, QRoot};

fn example1_doc() -> AlgebraDocument {
    let a = example1(Rationals);
    let h = example1_cartan(&a);
    AlgebraDocument::from_algebra(&a, Some(&h), Meta { name: Some("example1".into()), ..Meta::default() })
}

fn q_loaded(doc: &AlgebraDocument) -> sll_core::iocli::Loaded<Rationals> {
    match doc.load(None).unwrap() {
        AnyLoaded::Q(l) => l,
        AnyLoaded::Fp(_) => panic!("expected a rational document"),
    }
}

/// Root -> (even dim, odd dim).
fn root_table(doc: &AlgebraDocument) -> BTreeMap<QRoot, (usize, usize)> {
    let l = q_loaded(doc);
    let alg = l.algebra.validated().unwrap();
    let d = split(&alg, &CartanInput::new(l.cartan.unwrap())).unwrap();
    d.root_spaces().iter().map(|r| (r.root.clone(), (r.slot(sll_core::superalg::Parity::Even).dim(), r.slot(sll_core::superalg::Parity::Odd).dim()))).collect()
}

#[test]
fn example1_document_is_frozen() {
    let expected = concat!(
        r#"{"cartan":[["0","0","1","0","0"]],"dim":5,"field":"Q","#,
        r#""meta":{"basis":["u1","u2","u3","e1","e2"],"name":"example1"},"parity":[0,0,0,1,1],"#,
        r#""products":[[0,1,[[2,"1"]]],[0,2,[[0,"-2"]]],[1,0,[[2,"-1"]]],[1,2,[[1,"2"]]],"#,
        r#"[2,0,[[0,"2"]]],[2,1,[[1,"-2"]]],[3,1,[[4,"1"]]],[3,2,[[3,"-1"]]],[4,0,[[3,"1"]]],[4,2,[[4,"1"]]]]}"#,
        "\n"
    );
    assert_eq!(example1_doc().to_canonical_json(), expected);
}

#[test]
fn canonical_form_is_a_fixed_point() {
    let raw = r#"{"products":[[4,2,[[4,"2/2"]]],[0,1,[[2,"1"],[0,"0"]]]],"parity":[0,0,0,1,1],"field":"Q","dim":5}"#;
    let doc = AlgebraDocument::from_json(raw).unwrap();
    let once = doc.canonicalize().unwrap();
    assert_eq!(
        once.to_canonical_json(),
        "{\"dim\":5,\"field\":\"Q\",\"parity\":[0,0,0,1,1],\"products\":[[0,1,[[2,\"1\"]]],[4,2,[[4,\"1\"]]]]}\n"
    );
    let twice = AlgebraDocument::from_json(&once.to_canonical_json()).unwrap().canonicalize().unwrap();
    assert_eq!(once, twice);
}

#[test]
fn grading_violation_names_the_entry() {
    let raw = r#"{"dim":2,"field":"Q","parity":[0,1],"products":[[1,1,[[1,"3"]]]]}"#;
    let err = AlgebraDocument::from_json(raw).unwrap().load(None).unwrap_err();
    assert!(matches!(err, DocumentError::Grading { i: 1, j: 1, k: 1 }), "{err}");
}

#[test]
fn malformed_documents_are_rejected() {
    let cases = [
        r#"{"dim":2,"field":"Q","parity":[0],"products":[]}"#,
        r#"{"dim":1,"field":"Q","parity":[2],"products":[]}"#,
        r#"{"dim":1,"field":"Q","parity":[0],"products":[[0,0,[[1,"1"]]]]}"#,
        r#"{"dim":1,"field":"R","parity":[0],"products":[]}"#,
        r#"{"dim":1,"field":{"Fp":4},"parity":[0],"products":[]}"#,
        r#"{"dim":1,"field":"Q","parity":[0],"products":[[0,0,[[0,"1/0"]]]]}"#,
        r#"{"dim":1,"field":"Q","parity":[0],"products":[],"extra":1}"#,
        r#"{"dim":1,"field":"Q","parity":[0],"products":[],"cartan":[["1","0"]]}"#,
        "not json",
    ];
    for raw in cases {
        let res = AlgebraDocument::from_json(raw).and_then(|d| d.load(None));
        assert!(res.is_err(), "{raw} was accepted");
    }
}

#[test]
fn field_flag_overrides_document() {
    assert_eq!(parse_field_flag("Q").unwrap(), FieldDescriptor::Rationals);
    assert_eq!(parse_field_flag("Fp:7").unwrap(), FieldDescriptor::PrimeField(7));
    assert!(parse_field_flag("Fp:9").is_err());
    assert!(parse_field_flag("C").is_err());
    match example1_doc().load(Some(FieldDescriptor::PrimeField(7))).unwrap() {
        AnyLoaded::Fp(mut l) => {
            let r = split_report(&mut l.algebra, l.cartan.as_deref()).unwrap();
            assert_eq!(r.outcome, Outcome::Pass);
        }
        AnyLoaded::Q(_) => panic!("override ignored"),
    }
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let doc = example1_doc();
    let run = || {
        let mut l = q_loaded(&doc);
        analyze_report(&mut l.algebra, l.cartan.as_deref(), sll_core::iocli::AnalyzeOptions { oracle_bound: 1 << 20, expect_simple: true })
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.to_json_string(), b.to_json_string());
    let v = a.to_json();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["oracle"]["verdict"], "Simple");
    assert_eq!(v["theorem"]["verdict"], "Undetermined");
    assert_eq!(v["verdict"]["verdict"], "Simple");
    assert_eq!(v["classification"]["case"], "Case1_Simple");
    assert_eq!(a.outcome, Outcome::Pass);
    assert!(a.to_human().contains("verdict: Simple"));
}

#[test]
fn check_report_lists_identity_failures() {
    let mut doc = example1_doc();
    doc.products.retain(|p| (p.0, p.1) != (3, 1));
    let mut l = q_loaded(&doc);
    let r = check_report(&mut l.algebra);
    assert_eq!(r.outcome, Outcome::Fail);
    assert!(!r.to_json()["violations"].as_array().unwrap().is_empty());
}

#[test]
fn even_n_example2_is_not_split() {
    let a = example2(Rationals, 2);
    let h = example2_cartan(&a);
    let doc = AlgebraDocument::from_algebra(&a, Some(&h), Meta::default());
    let mut l = q_loaded(&doc);
    let r = split_report(&mut l.algebra, l.cartan.as_deref()).unwrap();
    assert_eq!(r.outcome, Outcome::Fail);
    let v = r.to_json();
    assert_eq!(v["error"]["kind"], "NotSplit");
    assert_eq!(v["error"]["extra_names"][0], "e1");
}

#[test]
fn fuzz_corpus_is_deterministic() {
    let a: Vec<String> = fuzz_corpus(7, 10).iter().map(|m| m.document.to_canonical_json()).collect();
    let b: Vec<String> = fuzz_corpus(7, 10).iter().map(|m| m.document.to_canonical_json()).collect();
    assert_eq!(a, b);
    let c: Vec<String> = fuzz_corpus(8, 10).iter().map(|m| m.document.to_canonical_json()).collect();
    assert_ne!(a, c);
}

#[test]
fn fuzz_members_are_valid_and_keep_their_roots() {
    for m in fuzz_corpus(2024, 25) {
        let json = m.document.to_canonical_json();
        let reread = AlgebraDocument::from_json(&json).unwrap();
        assert_eq!(reread, m.document);
        assert_eq!(reread.canonicalize().unwrap(), m.document, "{}", m.provenance);
        assert_eq!(root_table(&m.document), root_table(&m.base), "{}", m.provenance);
        let nonabelian = m.provenance.split(" + ").filter(|b| !b.starts_with("abelian")).count();
        if nonabelian == 2 {
            let l = q_loaded(&m.document);
            let alg = l.algebra.validated().unwrap();
            let d = split(&alg, &CartanInput::new(l.cartan.unwrap())).unwrap();
            assert!(connection_classes(&d).len() >= 2, "{}", m.provenance);
        }
    }
}

fn small_rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

proptest! {
    #[test]
    fn scalars_survive_the_round_trip(c in small_rational().prop_filter("nonzero", |c| *c != Q::from_integer(0.into()))) {
        let raw = format!(r#"{{"dim":1,"field":"Q","parity":[0],"products":[[0,0,[[0,"{c}"]]]]}}"#);
        let doc = AlgebraDocument::from_json(&raw).unwrap().canonicalize().unwrap();
        let again = AlgebraDocument::from_json(&doc.to_canonical_json()).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(again.products[0].2[0].1.parse::<String>().unwrap(), c.to_string());
    }
}

mod common;

use std::fs;

use bugsift::corpus::DiagnosticKind;
use bugsift::{extract_methods, load_corpus, save_corpus, LanguageProfile};
use common::fixture;

#[test]
fn extraction_matches_hand_counted_ranges() {
    let expected: Vec<(String, usize, usize)> = fs::read_to_string(fixture("extract/expected.tsv"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let c: Vec<&str> = l.split('\t').collect();
            (
                c[0].to_string(),
                c[1].parse().unwrap(),
                c[2].parse().unwrap(),
            )
        })
        .collect();
    let ex = extract_methods(&fixture("extract"), &LanguageProfile::java()).unwrap();
    assert!(ex.diagnostics.is_empty(), "{:?}", ex.diagnostics);
    let got: Vec<(String, usize, usize)> = ex
        .corpus
        .documents()
        .iter()
        .map(|d| (d.method_id.clone(), d.start_line, d.end_line))
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn ten_line_method_spans_nine() {
    let ex = extract_methods(&fixture("extract/Ten.java"), &LanguageProfile::java()).unwrap();
    let d = &ex.corpus.documents()[0];
    assert_eq!(d.end_line - d.start_line, 9);
    assert_eq!(d.body_text.lines().count(), 10);
    assert!(d.literals.contains(&"}}}".to_string()));
}

#[test]
fn comments_attach_and_literals_collected() {
    let ex = extract_methods(&fixture("extract"), &LanguageProfile::java()).unwrap();
    let ctor = ex
        .corpus
        .get("Inventory.java#Inventory.Inventory(0)")
        .unwrap();
    assert!(ctor.comments.contains("Creates an empty inventory"));
    let max = ex.corpus.get("Inventory.java#Inventory.max(1)").unwrap();
    assert_eq!(max.literals, ["empty"]);
}

#[test]
fn toy_fixture_has_three_constructors() {
    let ex = extract_methods(&fixture("toy/src"), &LanguageProfile::java()).unwrap();
    let names: Vec<&str> = ex
        .corpus
        .documents()
        .iter()
        .map(|d| d.method_name.as_str())
        .collect();
    assert_eq!(names, ["Card", "Deck", "Hand"]);
    let hand = ex.corpus.get("Toy.java#Hand(1)").unwrap();
    assert_eq!((hand.start_line, hand.end_line), (20, 33));
}

#[test]
fn unbalanced_file_skipped_with_diagnostic() {
    let ex = extract_methods(&fixture("broken"), &LanguageProfile::java()).unwrap();
    assert_eq!(ex.corpus.len(), 1);
    assert_eq!(ex.diagnostics.len(), 1);
    assert_eq!(ex.diagnostics[0].kind, DiagnosticKind::UnbalancedBraces);
    assert!(ex.diagnostics[0].path.ends_with("Broken.java"));
}

#[test]
fn jsonl_round_trip_and_stable_hash() {
    let a = extract_methods(&fixture("extract"), &LanguageProfile::java())
        .unwrap()
        .corpus;
    let b = extract_methods(&fixture("extract"), &LanguageProfile::java())
        .unwrap()
        .corpus;
    assert_eq!(a.content_hash(), b.content_hash());
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("corpus.jsonl");
    save_corpus(&a, &p).unwrap();
    let back = load_corpus(&p).unwrap();
    assert_eq!(back.documents(), a.documents());
    assert_eq!(back.content_hash(), a.content_hash());
}

#[test]
fn missing_root_is_an_error() {
    assert!(extract_methods(&fixture("does-not-exist"), &LanguageProfile::java()).is_err());
}

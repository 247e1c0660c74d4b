mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bugsift::pipeline::{locate_prepared, prepare_queries};
use bugsift::{
    build_index, extract_methods, load_bug_reports, load_gold_set, locate, preset, sweep,
    sweep_weights, BoostWeights, FilterLists, LanguageProfile, PipelineConfig,
};
use common::{fixture, oracle_scores, oracle_sift, random_instance, term_counts, OracleMode};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plain_bm25_equals_concatenated_text_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng);
        let lists = FilterLists::default();
        let index = build_index(&inst.corpus(), &lists);
        let loc = locate(&index, &inst.reports(), &lists, &preset("plain_bm25").unwrap()).unwrap();
        for bug in &inst.bugs {
            let all: Vec<String> = bug.title.iter().chain(&bug.description).chain(&bug.comments).cloned().collect();
            let scores = oracle_scores(&inst.docs, &term_counts(&all), 1.2, 0.75);
            let want: Vec<String> = oracle_sift(&inst.ids, &scores, &vec![0.0; scores.len()], OracleMode::Off)
                .into_iter()
                .map(|(m, _)| m)
                .collect();
            let got: Vec<String> = loc.results[&bug.id].method_ids().map(str::to_string).collect();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn bns_qb_lists_contain_boostnsift_lists(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng);
        let lists = FilterLists::default();
        let index = build_index(&inst.corpus(), &lists);
        let fields = prepare_queries(&inst.reports(), &lists);
        let sifted = locate_prepared(&index, &fields, &preset("boostnsift").unwrap()).unwrap();
        let plain = locate_prepared(&index, &fields, &preset("bns_qb").unwrap()).unwrap();
        for (bug, list) in &sifted.results {
            let sup: Vec<&str> = plain.results[bug].method_ids().collect();
            prop_assert!(list.method_ids().all(|m| sup.contains(&m)));
        }
    }

    #[test]
    fn scaling_weights_preserves_order(seed in any::<u64>(), c in 0.2f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng);
        let lists = FilterLists::default();
        let index = build_index(&inst.corpus(), &lists);
        let fields = prepare_queries(&inst.reports(), &lists);
        let base = preset("bns_qb").unwrap();
        let w = base.boost_weights;
        let scaled = PipelineConfig { boost_weights: BoostWeights::new(w.alpha * c, w.beta * c, w.gamma * c).unwrap(), ..base };
        let a = locate_prepared(&index, &fields, &base).unwrap();
        let b = locate_prepared(&index, &fields, &scaled).unwrap();
        for (bug, list) in &a.results {
            let x: Vec<f64> = list.entries.iter().map(|e| e.local_score).collect();
            let y: Vec<f64> = b.results[bug].entries.iter().map(|e| e.local_score).collect();
            prop_assert_eq!(x.len(), y.len());
            for (p, q) in x.iter().zip(&y) {
                prop_assert!((q - c * p).abs() <= 1e-9 * q.abs().max(1.0));
            }
        }
    }
}

#[test]
fn toy_sweep_row_count_is_cube() {
    let lists = FilterLists::default();
    let index = build_index(
        &extract_methods(&fixture("toy/src"), &LanguageProfile::java())
            .unwrap()
            .corpus,
        &lists,
    );
    let fields = prepare_queries(
        &load_bug_reports(&fixture("toy/bugs.jsonl")).unwrap(),
        &lists,
    );
    let gold = load_gold_set(&fixture("toy/gold.jsonl")).unwrap();
    let grid = sweep_weights(1.0, 2.0, 0.25).unwrap();
    let report = sweep(
        &index,
        &fields,
        &gold,
        &preset("boostnsift").unwrap(),
        &grid,
    )
    .unwrap();
    assert_eq!(report.rows.len(), 5usize.pow(3));
    assert!(report
        .rows
        .windows(2)
        .all(|w| w[0].mrr > w[1].mrr || (w[0].mrr == w[1].mrr && w[0].map >= w[1].map)));
}

#[test]
fn toy_default_run() {
    let lists = FilterLists::default();
    let index = build_index(
        &extract_methods(&fixture("toy/src"), &LanguageProfile::java())
            .unwrap()
            .corpus,
        &lists,
    );
    let bugs = load_bug_reports(&fixture("toy/bugs.jsonl")).unwrap();
    let loc = locate(&index, &bugs, &lists, &preset("boostnsift").unwrap()).unwrap();
    assert_eq!(loc.results.len(), 3);
    let firsts: BTreeMap<&str, Option<&str>> = loc
        .results
        .iter()
        .map(|(b, l)| (b.as_str(), l.method_ids().next()))
        .collect();
    assert_eq!(firsts["1"], Some("Toy.java#Deck(0)"));
    assert_eq!(firsts["2"], Some("Toy.java#Hand(1)"));
    for list in loc.results.values() {
        assert!(list.entries.iter().all(|e| e.local_score > 0.0));
    }
}

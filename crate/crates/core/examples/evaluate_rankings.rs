//! Compute MRR, MAP and Top-N for ranked lists against a gold set.
//!
//! `cargo run --example evaluate_rankings [-- <results.tsv> <gold.jsonl>]`

use std::collections::BTreeMap;
use std::path::PathBuf;

use bugsift::eval::{average_precision, DEFAULT_TOP_N};
use bugsift::sifter::read_results;
use bugsift::{evaluate, load_gold_set, GoldSet, RankedEntry, RankedList};

fn list(bug: &str, ids: &[&str]) -> RankedList {
    RankedList {
        bug_id: bug.into(),
        entries: ids
            .iter()
            .enumerate()
            .map(|(i, m)| RankedEntry {
                method_id: m.to_string(),
                rank_score: 1.0 / (i + 1) as f64,
                local_score: 1.0,
            })
            .collect(),
    }
}

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [results, gold] = args.as_slice() {
        let report = evaluate(
            &read_results(&PathBuf::from(results))?,
            &load_gold_set(&PathBuf::from(gold))?,
            &DEFAULT_TOP_N,
        )?;
        print!("{}", report.to_table("results"));
        return Ok(());
    }

    let mut gold = GoldSet::new();
    gold.insert("B1", ["A.f(0)", "A.g(1)"])?;
    gold.insert("B2", ["C.h(0)"])?;
    gold.insert("B3", ["D.k(2)"])?;

    let mut results = BTreeMap::new();
    // relevant at ranks 1 and 3: AP = (1/1 + 2/3) / 2 = 5/6
    results.insert(
        "B1".to_string(),
        list("B1", &["A.f(0)", "X.y(0)", "A.g(1)"]),
    );
    // first hit at rank 4: RR = 1/4
    results.insert(
        "B2".to_string(),
        list("B2", &["X.a(0)", "X.b(0)", "X.c(0)", "C.h(0)"]),
    );
    // B3 has no list at all and scores zero

    println!(
        "AP(B1) = {:.4}",
        average_precision(&results["B1"], gold.get("B1").unwrap())?
    );
    let report = evaluate(&results, &gold, &DEFAULT_TOP_N)?;
    for (bug, m) in &report.per_bug {
        println!(
            "{bug}: RR {:.3}  AP {:.3}  first hit {:?}",
            m.reciprocal_rank, m.average_precision, m.first_hit_rank
        );
    }
    println!();
    print!("{}", report.to_table("example"));
    Ok(())
}

//! The three-method card game: extract, index, boost the three bug reports,
//! build the grand query and sift.
//!
//! `cargo run --example toy_walkthrough`

use std::collections::HashMap;
use std::path::PathBuf;

use bugsift::query::FieldTerms;
use bugsift::{
    build_index, extract_methods, grand_query, load_bug_reports, sift, Bm25Params, BoostWeights,
    FilterLists, GrandMode, LanguageProfile, SiftMode,
};

fn main() -> anyhow::Result<()> {
    let toy = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/toy");
    let corpus = extract_methods(&toy.join("src"), &LanguageProfile::java())?.corpus;
    let lists = FilterLists::default();
    let index = build_index(&corpus, &lists);
    println!(
        "{} methods, {} terms, average length {:.1}",
        index.doc_count(),
        index.vocabulary_size(),
        index.avg_len()
    );

    let bugs = load_bug_reports(&toy.join("bugs.jsonl"))?;
    let weights = BoostWeights::default();
    let mut queries = Vec::new();
    for bug in &bugs {
        let q = FieldTerms::from_report(bug, &lists).weighted(weights)?;
        let terms: Vec<String> = q
            .weights()
            .iter()
            .map(|(t, w)| format!("{t}:{w}"))
            .collect();
        println!("bug {}: {}", bug.bug_id, terms.join(" "));
        queries.push(q);
    }

    let grand = grand_query(&queries, GrandMode::Mean)?;
    let params = Bm25Params::default();
    let global_hits = index.score(&grand, params);
    println!("\ngrand-query scores:");
    for h in &global_hits {
        println!("  {:<20} {:>8.3}", h.method_id, h.score);
    }
    let global: HashMap<String, f64> = global_hits
        .into_iter()
        .map(|h| (h.method_id, h.score))
        .collect();
    for (bug, q) in bugs.iter().zip(&queries) {
        let local = index.score(q, params);
        println!("\nbug {} `{}`", bug.bug_id, bug.title);
        for mode in [SiftMode::Off, SiftMode::Diff, SiftMode::Filter] {
            let ranked = sift(&bug.bug_id, &local, &global, mode);
            let rows: Vec<String> = ranked
                .entries
                .iter()
                .map(|e| format!("{} ({:+.3})", e.method_id, e.rank_score))
                .collect();
            println!(
                "  {mode:<6} {}",
                if rows.is_empty() {
                    "(nothing survives)".into()
                } else {
                    rows.join(", ")
                }
            );
        }
    }
    Ok(())
}

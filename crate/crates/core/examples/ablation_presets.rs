//! Run every preset on the toy fixture and compare list sizes and metrics.
//!
//! `cargo run --example ablation_presets`

use std::path::PathBuf;

use bugsift::eval::DEFAULT_TOP_N;
use bugsift::{
    build_index, evaluate, extract_methods, load_bug_reports, load_gold_set, locate, preset,
    FilterLists, LanguageProfile, PRESET_NAMES,
};

fn main() -> anyhow::Result<()> {
    let toy = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/toy");
    let lists = FilterLists::default();
    let index = build_index(
        &extract_methods(&toy.join("src"), &LanguageProfile::java())?.corpus,
        &lists,
    );
    let bugs = load_bug_reports(&toy.join("bugs.jsonl"))?;
    let gold = load_gold_set(&toy.join("gold.jsonl"))?;

    println!(
        "{:<14} {:>8} {:>14} {:>7} {:>7}",
        "preset", "weights", "ranked/bug", "MRR", "MAP"
    );
    for name in PRESET_NAMES {
        let config = preset(name)?;
        let loc = locate(&index, &bugs, &lists, &config)?;
        let sizes: Vec<String> = bugs
            .iter()
            .map(|b| {
                loc.results
                    .get(&b.bug_id)
                    .map_or(0, |l| l.len())
                    .to_string()
            })
            .collect();
        let report = evaluate(&loc.results, &gold, &DEFAULT_TOP_N)?;
        let w = config.boost_weights;
        println!(
            "{name:<14} {:>8} {:>14} {:>7.3} {:>7.3}",
            format!("{}/{}/{}", w.alpha, w.beta, w.gamma),
            sizes.join(","),
            report.mrr,
            report.map
        );
    }
    Ok(())
}

//! Sweep boost weights over a grid on the toy fixture and show the best and
//! worst configurations.
//!
//! `cargo run --example weight_sweep [-- <lo> <hi> <step>]`

use std::path::PathBuf;

use bugsift::pipeline::prepare_queries;
use bugsift::{
    build_index, extract_methods, load_bug_reports, load_gold_set, preset, sweep, sweep_weights,
    FilterLists, LanguageProfile,
};

fn main() -> anyhow::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (lo, hi, step) = match args.as_slice() {
        [lo, hi, step] => (*lo, *hi, *step),
        _ => (0.5, 4.0, 0.5),
    };
    let toy = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/toy");
    let lists = FilterLists::default();
    let index = build_index(
        &extract_methods(&toy.join("src"), &LanguageProfile::java())?.corpus,
        &lists,
    );
    let fields = prepare_queries(&load_bug_reports(&toy.join("bugs.jsonl"))?, &lists);
    let gold = load_gold_set(&toy.join("gold.jsonl"))?;

    let grid = sweep_weights(lo, hi, step)?;
    let report = sweep(&index, &fields, &gold, &preset("boostnsift")?, &grid)?;
    println!(
        "{} triples from {lo} to {hi} step {step}",
        report.rows.len()
    );
    for (title, rows) in [("best", report.best(3)), ("worst", report.worst(3))] {
        println!("{title}:");
        for r in rows {
            let w = r.weights;
            println!(
                "  alpha {:.1} beta {:.1} gamma {:.1}  MRR {:.3}  MAP {:.3}",
                w.alpha, w.beta, w.gamma, r.mrr, r.map
            );
        }
    }
    Ok(())
}

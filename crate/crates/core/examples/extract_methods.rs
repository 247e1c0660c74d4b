//! Extract method-level documents from a Java source tree and print them.
//!
//! `cargo run --example extract_methods [-- <source dir>]`

use std::path::PathBuf;

use bugsift::{extract_methods, LanguageProfile};

fn main() -> anyhow::Result<()> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/extract"));
    let extraction = extract_methods(&root, &LanguageProfile::java())?;
    for d in &extraction.diagnostics {
        eprintln!("warning: {d}");
    }
    println!("{:<48} {:>5} {:>5}  comments", "method", "start", "end");
    for doc in extraction.corpus.documents() {
        println!(
            "{:<48} {:>5} {:>5}  {}",
            doc.method_id,
            doc.start_line,
            doc.end_line,
            doc.comments.replace('\n', " | ")
        );
    }
    println!("{} methods", extraction.corpus.len());
    Ok(())
}

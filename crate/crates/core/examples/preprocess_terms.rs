//! Show how prose and code are reduced to index terms: identifier splitting,
//! stop-word and keyword removal, Porter stemming.
//!
//! `cargo run --example preprocess_terms [-- "text to preprocess"]`

use bugsift::{preprocess_text, split_identifier, stem, FilterLists};

fn main() {
    let lists = FilterLists::default();

    for id in ["addWidget", "HTTPServer", "parseXML2Json", "MAX_VALUE"] {
        println!("split {id:<14} -> {:?}", split_identifier(id));
    }
    for w in [
        "protection",
        "protective",
        "protected",
        "shuffling",
        "cards",
        "ordering",
    ] {
        println!("stem  {w:<14} -> {}", stem(w));
    }

    let code = "public void addWidget(Widget w) { if (w != null) widgets.add(w); } // keep order";
    println!("\ncode : {code}");
    println!("terms: {:?}", preprocess_text(code, &lists, true).terms());

    let prose = std::env::args().nth(1).unwrap_or_else(|| {
        "Deck is incorrectly shuffled: cards still in sequential order".to_string()
    });
    println!("\nprose: {prose}");
    println!(
        "terms: {:?}",
        preprocess_text(&prose, &lists, false).terms()
    );
}

//! Sift a hand-written score matrix in each mode; the matrix is the
//! word-overlap illustration from the toy card game (local scores for the
//! shuffling bug against the grand-query scores).
//!
//! `cargo run --example sift_modes`

use std::collections::HashMap;

use bugsift::{sift, truncate_top_fraction, Hit, SiftMode};

// the matrix is kept exactly as given, 3/3 included
#[allow(clippy::eq_op)]
fn main() -> anyhow::Result<()> {
    let local = vec![
        Hit {
            method_id: "Deck".into(),
            score: 4.0 / 6.0,
        },
        Hit {
            method_id: "Card".into(),
            score: 2.0 / 3.0,
        },
        Hit {
            method_id: "Hand".into(),
            score: 6.0 / 12.0,
        },
    ];
    let global: HashMap<String, f64> = [
        ("Deck", 4.0 / 6.0),
        ("Card", 3.0 / 3.0),
        ("Hand", 14.0 / 12.0),
    ]
    .into_iter()
    .map(|(m, s)| (m.to_string(), s))
    .collect();

    for mode in [SiftMode::Off, SiftMode::Diff, SiftMode::Filter] {
        let list = sift("1", &local, &global, mode);
        println!("{mode}:");
        for (i, e) in list.entries.iter().enumerate() {
            println!(
                "  {}. {:<5} rank score {:+.4} (local {:.4})",
                i + 1,
                e.method_id,
                e.rank_score,
                e.local_score
            );
        }
        if list.is_empty() {
            println!("  (every method scores at least as well on the grand query)");
        }
    }

    let off = sift("1", &local, &global, SiftMode::Off);
    let top = truncate_top_fraction(&off, 0.34)?;
    println!(
        "top 34% of the unsifted list: {:?}",
        top.method_ids().collect::<Vec<_>>()
    );
    Ok(())
}

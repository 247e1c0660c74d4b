//! Tabulate the saturating BM25 term-frequency component and IDF.
//!
//! `cargo run --example bm25_saturation`

use bugsift::{idf, tf_component, Bm25Params};

fn main() -> anyhow::Result<()> {
    let avg = 20.0;
    let p = Bm25Params::default();
    println!(
        "TF at average length (k = {}, b = {}); ceiling k + 1 = {}",
        p.k,
        p.b,
        p.k + 1.0
    );
    println!(
        "{:>6} {:>9} {:>12} {:>12}",
        "tf", "TF", "TF(len/2)", "TF(len*2)"
    );
    for tf in [1, 2, 3, 6, 12, 24, 100, 1000] {
        println!(
            "{:>6} {:>9.4} {:>12.4} {:>12.4}",
            tf,
            tf_component(tf, 20, p, avg)?,
            tf_component(tf, 10, p, avg)?,
            tf_component(tf, 40, p, avg)?
        );
    }
    let ratio = tf_component(12, 20, p, avg)? / tf_component(6, 20, p, avg)?;
    println!("\ntwelve mentions vs six: x{ratio:.4} (not x2)");

    let flat = Bm25Params::new(0.0, p.b)?;
    println!(
        "k = 0 ignores repetition: TF(1) = {}, TF(50) = {}",
        tf_component(1, 20, flat, avg)?,
        tf_component(50, 20, flat, avg)?
    );

    println!("\nIDF over 1000 methods");
    for df in [1, 10, 100, 200, 500, 1000] {
        println!("  in {df:>4} methods: {:.4}", idf(1000, df));
    }
    Ok(())
}

//! Compare two techniques' per-bug reciprocal ranks with the Wilcoxon
//! rank-sum test and Cliff's delta.
//!
//! `cargo run --example significance`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bugsift::{cliffs_delta, wilcoxon_rank_sum, EffectMagnitude};

fn reciprocal_ranks(rng: &mut ChaCha8Rng, n: usize, max_rank: u32) -> Vec<f64> {
    (0..n)
        .map(|_| 1.0 / f64::from(rng.gen_range(1..=max_rank)))
        .collect()
}

fn main() -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, better, worse) in [(6, 3, 12), (40, 3, 12), (40, 10, 10)] {
        let a = reciprocal_ranks(&mut rng, n, better);
        let b = reciprocal_ranks(&mut rng, n, worse);
        let w = wilcoxon_rank_sum(&a, &b)?;
        let d = cliffs_delta(&a, &b)?;
        println!(
            "n = {n:>2}: p = {:.4} ({:?}{}), delta = {d:+.3} ({})",
            w.p_value,
            w.method,
            if w.low_power { ", low power" } else { "" },
            EffectMagnitude::from_delta(d)
        );
    }
    for d in [0.485, 0.348, 0.23, 0.082] {
        println!("delta {d} is {}", EffectMagnitude::from_delta(d));
    }
    Ok(())
}

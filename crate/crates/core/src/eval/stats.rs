//! Two-sample comparisons of per-bug metric values.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Both samples at or below this size use the exact rank-sum distribution.
pub const EXACT_MAX_SAMPLE: usize = 10;

/// Samples smaller than this are flagged as low power.
pub const LOW_POWER_SAMPLE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WilcoxonMethod {
    /// Enumerated null distribution of the rank sum, ties included.
    Exact,
    /// Normal approximation with tie and continuity correction.
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// Rank sum of the first sample (midranks for ties).
    pub rank_sum: f64,
    /// Mann-Whitney U of the first sample.
    pub u: f64,
    pub p_value: f64,
    pub method: WilcoxonMethod,
    pub low_power: bool,
}

fn midranks(pooled: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut tie_sizes = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && pooled[order[j + 1]] == pooled[order[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        tie_sizes.push(j - i + 1);
        i = j + 1;
    }
    (ranks, tie_sizes)
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test.
///
/// Small samples use the exact permutation distribution of the rank sum;
/// larger ones the normal approximation. Identical pooled values give
/// `p = 1`.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::param("rank-sum test needs two non-empty samples"));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::param("rank-sum test input contains NaN"));
    }
    let (n1, n2) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let rank_sum: f64 = ranks[..n1].iter().sum();
    let u = rank_sum - (n1 * (n1 + 1)) as f64 / 2.0;
    let low_power = n1.min(n2) < LOW_POWER_SAMPLE;

    if ties.len() == 1 {
        return Ok(WilcoxonResult {
            rank_sum,
            u,
            p_value: 1.0,
            method: WilcoxonMethod::Exact,
            low_power,
        });
    }

    let (p_value, method) = if n1 <= EXACT_MAX_SAMPLE && n2 <= EXACT_MAX_SAMPLE {
        (exact_p(&ranks, n1, rank_sum), WilcoxonMethod::Exact)
    } else {
        (normal_p(n1, n2, rank_sum, &ties), WilcoxonMethod::Normal)
    };
    Ok(WilcoxonResult {
        rank_sum,
        u,
        p_value,
        method,
        low_power,
    })
}

/// Counts subsets of size `n1` by (doubled, hence integral) rank sum.
fn exact_p(ranks: &[f64], n1: usize, rank_sum: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    // ways[j][s]: subsets of size j with doubled rank sum s
    let mut ways = vec![vec![0.0f64; max_sum + 1]; n1 + 1];
    ways[0][0] = 1.0;
    for (seen, &r) in doubled.iter().enumerate() {
        for j in (1..=n1.min(seen + 1)).rev() {
            for s in (r..=max_sum).rev() {
                let add = ways[j - 1][s - r];
                if add != 0.0 {
                    ways[j][s] += add;
                }
            }
        }
    }
    let observed = (rank_sum * 2.0).round() as usize;
    let dist = &ways[n1];
    let total: f64 = dist.iter().sum();
    let lower: f64 = dist[..=observed].iter().sum::<f64>() / total;
    let upper: f64 = dist[observed..].iter().sum::<f64>() / total;
    (2.0 * lower.min(upper)).min(1.0)
}

fn normal_p(n1: usize, n2: usize, rank_sum: f64, ties: &[usize]) -> f64 {
    let (f1, f2) = (n1 as f64, n2 as f64);
    let n = f1 + f2;
    let mean = f1 * (n + 1.0) / 2.0;
    let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / (n * (n - 1.0));
    let var = f1 * f2 / 12.0 * ((n + 1.0) - tie_term);
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((rank_sum - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let std_normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * std_normal.sf(z)).min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EffectMagnitude {
    Negligible,
    Small,
    Medium,
    Large,
}

impl EffectMagnitude {
    /// Bands on `|delta|`: 0.147, 0.33 and 0.474.
    pub fn from_delta(delta: f64) -> Self {
        let d = delta.abs();
        if d < 0.147 {
            Self::Negligible
        } else if d < 0.33 {
            Self::Small
        } else if d < 0.474 {
            Self::Medium
        } else {
            Self::Large
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Negligible => "negligible",
            Self::Small => "small",
            Self::Medium => "medium",
            Self::Large => "large",
        }
    }
}

impl std::fmt::Display for EffectMagnitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// `(#(a_i > b_j) - #(a_i < b_j)) / (|a| * |b|)`.
pub fn cliffs_delta(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::param("Cliff's delta needs two non-empty samples"));
    }
    let mut sorted = b.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut greater = 0usize;
    let mut less = 0usize;
    for &x in a {
        greater += sorted.partition_point(|&y| y < x);
        less += sorted.len() - sorted.partition_point(|&y| y <= x);
    }
    Ok((greater as f64 - less as f64) / (a.len() * b.len()) as f64)
}

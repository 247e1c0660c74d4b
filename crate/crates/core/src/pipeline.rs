//! End-to-end localization: boost, grand query, score, sift, truncate; and
//! the boost-weight sweep built on top of it.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{evaluate, GoldSet};
use crate::index::Index;
use crate::preprocess::FilterLists;
use crate::query::{grand_query, BoostWeights, BugReport, FieldTerms};
use crate::sifter::{sift, truncate_top_fraction, RankedList, SiftMode};
use crate::variants::PipelineConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedBug {
    pub bug_id: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Localization {
    /// One list per located bug, keyed by bug id.
    pub results: BTreeMap<String, RankedList>,
    /// Bugs whose query was empty after preprocessing.
    pub skipped: Vec<SkippedBug>,
    /// Boosting plus grand-query scoring.
    pub query_time: Duration,
    /// Local scoring, sifting and truncation.
    pub sift_time: Duration,
}

/// Preprocesses every report's fields once.
pub fn prepare_queries(bugs: &[BugReport], lists: &FilterLists) -> Vec<FieldTerms> {
    bugs.par_iter()
        .map(|b| FieldTerms::from_report(b, lists))
        .collect()
}

pub fn locate(
    index: &Index,
    bugs: &[BugReport],
    lists: &FilterLists,
    config: &PipelineConfig,
) -> Result<Localization> {
    let start = Instant::now();
    let fields = prepare_queries(bugs, lists);
    let mut loc = locate_prepared(index, &fields, config)?;
    loc.query_time += start
        .elapsed()
        .saturating_sub(loc.query_time + loc.sift_time);
    Ok(loc)
}

/// Runs the pipeline over already-preprocessed reports.
pub fn locate_prepared(
    index: &Index,
    fields: &[FieldTerms],
    config: &PipelineConfig,
) -> Result<Localization> {
    config.validate()?;
    let query_start = Instant::now();
    let mut queries = Vec::with_capacity(fields.len());
    let mut skipped = Vec::new();
    for f in fields {
        match f.weighted(config.boost_weights) {
            Ok(q) => queries.push((f.bug_id.as_str(), q)),
            Err(e @ Error::EmptyQuery(_)) => skipped.push(SkippedBug {
                bug_id: f.bug_id.clone(),
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }

    // the grand query only matters when sifting compares against it
    let global: HashMap<String, f64> = if config.sift_mode == SiftMode::Off || queries.is_empty() {
        HashMap::new()
    } else {
        let per_bug: Vec<_> = queries.iter().map(|(_, q)| q.clone()).collect();
        let grand = grand_query(&per_bug, config.grand_mode)?;
        index
            .score(&grand, config.bm25)
            .into_iter()
            .map(|h| (h.method_id, h.score))
            .collect()
    };
    let query_time = query_start.elapsed();

    let sift_start = Instant::now();
    let lists: Vec<RankedList> = queries
        .par_iter()
        .map(|(bug_id, q)| {
            let hits = index.score(q, config.bm25);
            let list = sift(bug_id, &hits, &global, config.sift_mode);
            match config.truncate_fraction {
                Some(f) => truncate_top_fraction(&list, f),
                None => Ok(list),
            }
        })
        .collect::<Result<_>>()?;
    let results = lists.into_iter().map(|l| (l.bug_id.clone(), l)).collect();
    Ok(Localization {
        results,
        skipped,
        query_time,
        sift_time: sift_start.elapsed(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub weights: BoostWeights,
    pub mrr: f64,
    pub map: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    /// Best first: MRR descending, then MAP descending, then weights.
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn best(&self, n: usize) -> &[SweepRow] {
        &self.rows[..n.min(self.rows.len())]
    }

    /// The `n` lowest rows, worst last.
    pub fn worst(&self, n: usize) -> &[SweepRow] {
        &self.rows[self.rows.len().saturating_sub(n)..]
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("alpha\tbeta\tgamma\tMRR\tMAP\n");
        for r in &self.rows {
            let w = r.weights;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                w.alpha, w.beta, w.gamma, r.mrr, r.map
            )
            .expect("writing to a String");
        }
        out
    }
}

fn row_order(a: &SweepRow, b: &SweepRow) -> std::cmp::Ordering {
    b.mrr
        .total_cmp(&a.mrr)
        .then_with(|| b.map.total_cmp(&a.map))
        .then_with(|| a.weights.alpha.total_cmp(&b.weights.alpha))
        .then_with(|| a.weights.beta.total_cmp(&b.weights.beta))
        .then_with(|| a.weights.gamma.total_cmp(&b.weights.gamma))
}

/// Evaluates `base` with each weight triple substituted in. Triples run one
/// after another; bugs within a triple are scored in parallel.
pub fn sweep(
    index: &Index,
    fields: &[FieldTerms],
    gold: &GoldSet,
    base: &PipelineConfig,
    grid: &[BoostWeights],
) -> Result<SweepReport> {
    let mut rows = Vec::with_capacity(grid.len());
    for &weights in grid {
        let config = PipelineConfig {
            boost_weights: weights,
            ..*base
        };
        let loc = locate_prepared(index, fields, &config)?;
        let report = evaluate(&loc.results, gold, &[])?;
        rows.push(SweepRow {
            weights,
            mrr: report.mrr,
            map: report.map,
        });
    }
    rows.sort_by(row_order);
    Ok(SweepReport { rows })
}

//! Ranked-list metrics against a gold set: MRR, MAP and Top-N.

mod stats;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sifter::RankedList;

pub use stats::{cliffs_delta, wilcoxon_rank_sum, EffectMagnitude, WilcoxonMethod, WilcoxonResult};

pub const DEFAULT_TOP_N: [usize; 4] = [1, 5, 10, 20];

/// Methods changed to fix each bug.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GoldSet {
    bugs: BTreeMap<String, BTreeSet<String>>,
}

#[derive(Deserialize)]
struct GoldRecord {
    bug_id: String,
    methods: Vec<String>,
}

impl GoldSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert<I, S>(&mut self, bug_id: impl Into<String>, methods: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let bug_id = bug_id.into();
        let set: BTreeSet<String> = methods.into_iter().map(Into::into).collect();
        if set.is_empty() {
            return Err(Error::InvalidGold {
                id: bug_id,
                reason: "no methods".into(),
            });
        }
        if self.bugs.contains_key(&bug_id) {
            return Err(Error::InvalidGold {
                id: bug_id,
                reason: "duplicate bug id".into(),
            });
        }
        self.bugs.insert(bug_id, set);
        Ok(())
    }

    pub fn get(&self, bug_id: &str) -> Option<&BTreeSet<String>> {
        self.bugs.get(bug_id)
    }

    pub fn contains(&self, bug_id: &str) -> bool {
        self.bugs.contains_key(bug_id)
    }

    pub fn len(&self) -> usize {
        self.bugs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bugs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.bugs.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// Reads `{"bug_id": ..., "methods": [...]}` records, one per line.
pub fn load_gold_set(path: &Path) -> Result<GoldSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut gold = GoldSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: GoldRecord =
            serde_json::from_str(line).map_err(|e| Error::parse(path, i + 1, e.to_string()))?;
        gold.insert(rec.bug_id, rec.methods)?;
    }
    Ok(gold)
}

/// 1-based rank of the first relevant entry.
pub fn first_hit_rank(list: &RankedList, relevant: &BTreeSet<String>) -> Option<usize> {
    list.method_ids()
        .position(|m| relevant.contains(m))
        .map(|p| p + 1)
}

/// Sum of precision at each relevant rank over `|relevant|`. Relevant
/// methods never retrieved still count in the denominator.
pub fn average_precision(list: &RankedList, relevant: &BTreeSet<String>) -> Result<f64> {
    if relevant.is_empty() {
        return Err(Error::param("relevant set is empty"));
    }
    let mut found = 0usize;
    let mut sum = 0.0;
    let mut seen = HashSet::new();
    for (i, m) in list.method_ids().enumerate() {
        if relevant.contains(m) && seen.insert(m) {
            found += 1;
            sum += found as f64 / (i + 1) as f64;
        }
    }
    Ok(sum / relevant.len() as f64)
}

pub fn reciprocal_rank(list: &RankedList, relevant: &BTreeSet<String>) -> f64 {
    first_hit_rank(list, relevant).map_or(0.0, |r| 1.0 / r as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BugMetrics {
    pub reciprocal_rank: f64,
    pub average_precision: f64,
    pub first_hit_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_bug: BTreeMap<String, BugMetrics>,
    pub mrr: f64,
    pub map: f64,
    /// Absolute bug counts.
    pub top_n: BTreeMap<usize, usize>,
    pub bugs_evaluated: usize,
}

impl EvalReport {
    pub fn top_n_percent(&self, n: usize) -> Option<f64> {
        let c = *self.top_n.get(&n)?;
        Some(if self.bugs_evaluated == 0 {
            0.0
        } else {
            100.0 * c as f64 / self.bugs_evaluated as f64
        })
    }

    pub fn is_all_zero(&self) -> bool {
        self.mrr == 0.0 && self.map == 0.0 && self.top_n.values().all(|&c| c == 0)
    }

    /// Six-column table: MRR, MAP, then one Top-N column per cutoff.
    pub fn to_table(&self, label: &str) -> String {
        let mut head = format!("{:<16} {:>7} {:>7}", "run", "MRR", "MAP");
        let mut row = format!("{:<16} {:>7.3} {:>7.3}", label, self.mrr, self.map);
        let mut pct = format!("{:<16} {:>7} {:>7}", "  (% of bugs)", "", "");
        for (n, c) in &self.top_n {
            let name = format!("Top{n}");
            write!(head, " {name:>7}").unwrap();
            write!(row, " {c:>7}").unwrap();
            write!(pct, " {:>6.1}%", self.top_n_percent(*n).unwrap_or(0.0)).unwrap();
        }
        format!(
            "{head}\n{row}\n{pct}\nbugs evaluated: {}\n",
            self.bugs_evaluated
        )
    }
}

/// Scores every gold bug; bugs without a result list contribute zeros.
pub fn evaluate(
    results: &BTreeMap<String, RankedList>,
    gold: &GoldSet,
    ns: &[usize],
) -> Result<EvalReport> {
    let unknown: Vec<String> = results
        .keys()
        .filter(|b| !gold.contains(b))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownBugs(unknown));
    }
    let empty = RankedList::default();
    let mut per_bug = BTreeMap::new();
    for (bug, relevant) in gold.iter() {
        let list = results.get(bug).unwrap_or(&empty);
        per_bug.insert(
            bug.to_string(),
            BugMetrics {
                reciprocal_rank: reciprocal_rank(list, relevant),
                average_precision: average_precision(list, relevant)?,
                first_hit_rank: first_hit_rank(list, relevant),
            },
        );
    }
    let count = per_bug.len();
    let mean = |f: fn(&BugMetrics) -> f64| {
        if count == 0 {
            0.0
        } else {
            per_bug.values().map(f).sum::<f64>() / count as f64
        }
    };
    let mrr = mean(|m| m.reciprocal_rank);
    let map = mean(|m| m.average_precision);
    let top_n = ns
        .iter()
        .map(|&n| {
            let c = per_bug
                .values()
                .filter(|m| m.first_hit_rank.is_some_and(|r| r <= n))
                .count();
            (n, c)
        })
        .collect();
    Ok(EvalReport {
        per_bug,
        mrr,
        map,
        top_n,
        bugs_evaluated: count,
    })
}

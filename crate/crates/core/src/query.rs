//! Bug reports, field-boosted queries and the aggregated grand query.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::{preprocess_text, FilterLists};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BugReport {
    #[serde(rename = "id")]
    pub bug_id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub comments: Vec<String>,
}

impl BugReport {
    pub fn validate(&self) -> Result<()> {
        if self.bug_id.is_empty() {
            return Err(Error::InvalidBug {
                id: String::new(),
                reason: "empty id".into(),
            });
        }
        if self.title.trim().is_empty() && self.description.trim().is_empty() {
            return Err(Error::InvalidBug {
                id: self.bug_id.clone(),
                reason: "title and description are both empty".into(),
            });
        }
        Ok(())
    }
}

/// Reads a bug-report file: one JSON object per line.
pub fn load_bug_reports(path: &Path) -> Result<Vec<BugReport>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bug: BugReport =
            serde_json::from_str(line).map_err(|e| Error::parse(path, i + 1, e.to_string()))?;
        bug.validate()?;
        if !seen.insert(bug.bug_id.clone()) {
            return Err(Error::DuplicateBug(bug.bug_id));
        }
        out.push(bug);
    }
    Ok(out)
}

/// Per-field boost: title `alpha`, description `beta`, comments `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Default for BoostWeights {
    fn default() -> Self {
        Self {
            alpha: 3.0,
            beta: 1.0,
            gamma: 2.0,
        }
    }
}

impl BoostWeights {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let w = Self { alpha, beta, gamma };
        w.validate()?;
        Ok(w)
    }

    pub const fn uniform() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            gamma: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.alpha, self.beta, self.gamma];
        if all.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::param(format!(
                "boost weights must be finite and >= 0, got {self:?}"
            )));
        }
        if all.iter().all(|w| *w == 0.0) {
            return Err(Error::param("boost weights must not all be zero"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QueryOrigin {
    Bug(String),
    Grand,
}

/// Weighted bag of preprocessed terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedQuery {
    origin: QueryOrigin,
    weights: BTreeMap<String, f64>,
}

impl BoostedQuery {
    /// Builds a query, dropping non-positive weights.
    pub fn from_weights(
        origin: QueryOrigin,
        weights: impl IntoIterator<Item = (String, f64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (t, w) in weights {
            *map.entry(t).or_insert(0.0) += w;
        }
        map.retain(|_, w| *w > 0.0);
        Self {
            origin,
            weights: map,
        }
    }

    pub fn origin(&self) -> &QueryOrigin {
        &self.origin
    }

    pub fn weights(&self) -> &BTreeMap<String, f64> {
        &self.weights
    }

    pub fn weight(&self, term: &str) -> f64 {
        self.weights.get(term).copied().unwrap_or(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }
}

/// Term counts of each bug-report field, computed once and re-weighted freely.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FieldTerms {
    pub bug_id: String,
    pub title: BTreeMap<String, u32>,
    pub description: BTreeMap<String, u32>,
    pub comments: BTreeMap<String, u32>,
}

fn counts(text: &str, lists: &FilterLists) -> BTreeMap<String, u32> {
    let mut m = BTreeMap::new();
    for t in preprocess_text(text, lists, false).into_terms() {
        *m.entry(t).or_insert(0) += 1;
    }
    m
}

impl FieldTerms {
    pub fn from_report(report: &BugReport, lists: &FilterLists) -> Self {
        Self {
            bug_id: report.bug_id.clone(),
            title: counts(&report.title, lists),
            description: counts(&report.description, lists),
            comments: counts(&report.comments.join("\n"), lists),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.title.is_empty() && self.description.is_empty() && self.comments.is_empty()
    }

    /// `w(t) = alpha * tf_title(t) + beta * tf_desc(t) + gamma * tf_comments(t)`.
    pub fn weighted(&self, w: BoostWeights) -> Result<BoostedQuery> {
        let fields = [
            (&self.title, w.alpha),
            (&self.description, w.beta),
            (&self.comments, w.gamma),
        ];
        let terms = fields.into_iter().flat_map(|(m, weight)| {
            m.iter()
                .map(move |(t, &c)| (t.clone(), weight * f64::from(c)))
        });
        let q = BoostedQuery::from_weights(QueryOrigin::Bug(self.bug_id.clone()), terms);
        if q.is_empty() {
            return Err(Error::EmptyQuery(self.bug_id.clone()));
        }
        Ok(q)
    }
}

/// Field-boosted query for one bug report.
pub fn boost(report: &BugReport, w: BoostWeights, lists: &FilterLists) -> Result<BoostedQuery> {
    FieldTerms::from_report(report, lists).weighted(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrandMode {
    #[default]
    Mean,
    Sum,
}

impl std::str::FromStr for GrandMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mean" => Ok(Self::Mean),
            "sum" => Ok(Self::Sum),
            _ => Err(Error::param(format!(
                "unknown grand-query mode `{s}` (mean|sum)"
            ))),
        }
    }
}

impl std::fmt::Display for GrandMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Self::Mean => "mean",
            Self::Sum => "sum",
        })
    }
}

/// Aggregates per-bug queries: `MEAN` divides the summed weights by the
/// number of queries, `SUM` keeps the totals.
pub fn grand_query(queries: &[BoostedQuery], mode: GrandMode) -> Result<BoostedQuery> {
    if queries.is_empty() {
        return Err(Error::param("grand query needs at least one query"));
    }
    if queries.iter().any(|q| q.origin == QueryOrigin::Grand) {
        return Err(Error::param("grand query inputs must be per-bug queries"));
    }
    let mut sum: BTreeMap<String, f64> = BTreeMap::new();
    for q in queries {
        for (t, &w) in &q.weights {
            *sum.entry(t.clone()).or_insert(0.0) += w;
        }
    }
    let divisor = match mode {
        GrandMode::Mean => queries.len() as f64,
        GrandMode::Sum => 1.0,
    };
    Ok(BoostedQuery::from_weights(
        QueryOrigin::Grand,
        sum.into_iter().map(|(t, w)| (t, w / divisor)),
    ))
}

/// Every `(alpha, beta, gamma)` on the grid `lo, lo + step, ..., hi`.
///
/// Grid points are `lo + i * step` for integer `i`, rounded to ten decimals,
/// so `0.5..=4.0` by `0.1` has exactly 36 points per axis.
pub fn sweep_values(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 {
        return Err(Error::param("sweep bounds must be finite and step > 0"));
    }
    if lo > hi {
        return Err(Error::param(format!("sweep range is empty: {lo} > {hi}")));
    }
    let steps = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=steps)
        .map(|i| ((lo + i as f64 * step) * 1e10).round() / 1e10)
        .collect())
}

pub fn sweep_weights(lo: f64, hi: f64, step: f64) -> Result<Vec<BoostWeights>> {
    let values = sweep_values(lo, hi, step)?;
    let mut out = Vec::with_capacity(values.len().pow(3));
    for &alpha in &values {
        for &beta in &values {
            for &gamma in &values {
                out.push(BoostWeights { alpha, beta, gamma });
            }
        }
    }
    Ok(out)
}

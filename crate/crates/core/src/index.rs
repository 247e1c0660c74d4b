//! Inverted index and BM25 scoring over method documents.
//!
//! Term-frequency saturation follows
//!
//! ```text
//! TF(t, m) = ((k + 1) * tf) / (k * (1 - b + b * |m| / avg|M|) + tf)
//! ```
//!
//! and term weight is the Lucene BM25 IDF, `ln(1 + (N - n + 0.5) / (n + 0.5))`.
//! A method's score is `sum_t w(t) * IDF(t) * TF(t, m)` over the weighted query.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::preprocess::{preprocess_text, FilterLists};
use crate::query::BoostedQuery;

/// BM25 tuning: `k` controls term-frequency saturation, `b` length normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bm25Params {
    pub k: f64,
    pub b: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self { k: 1.2, b: 0.75 }
    }
}

impl Bm25Params {
    pub fn new(k: f64, b: f64) -> Result<Self> {
        let p = Self { k, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k.is_finite() && self.k >= 0.0) {
            return Err(Error::param(format!("k must be >= 0, got {}", self.k)));
        }
        if !(0.0..=1.0).contains(&self.b) {
            return Err(Error::param(format!("b must be in [0, 1], got {}", self.b)));
        }
        Ok(())
    }
}

/// Saturating term-frequency component. Zero when the term is absent.
pub fn tf_component(tf: u32, doc_len: u32, params: Bm25Params, avg_len: f64) -> Result<f64> {
    if avg_len.is_nan() || avg_len <= 0.0 {
        return Err(Error::param(format!(
            "average length must be > 0, got {avg_len}"
        )));
    }
    Ok(tf_unchecked(tf, doc_len, params, avg_len))
}

#[inline]
fn tf_unchecked(tf: u32, doc_len: u32, params: Bm25Params, avg_len: f64) -> f64 {
    if tf == 0 {
        return 0.0;
    }
    let ti = f64::from(tf);
    let norm = 1.0 - params.b + params.b * f64::from(doc_len) / avg_len;
    ((params.k + 1.0) * ti) / (params.k * norm + ti)
}

/// `ln(1 + (N - n + 0.5) / (n + 0.5))`; non-negative for `n <= N`.
pub fn idf(doc_count: usize, doc_freq: usize) -> f64 {
    let n = doc_freq as f64;
    (1.0 + (doc_count as f64 - n + 0.5) / (n + 0.5)).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    pub doc: u32,
    pub tf: u32,
}

/// A scored method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hit {
    pub method_id: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Index {
    postings: BTreeMap<String, Vec<Posting>>,
    doc_lengths: Vec<u32>,
    avg_len: f64,
    method_ids: Vec<String>,
    #[serde(skip)]
    ordinals: HashMap<String, u32>,
}

impl Index {
    pub fn doc_count(&self) -> usize {
        self.method_ids.len()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.postings.len()
    }

    pub fn avg_len(&self) -> f64 {
        self.avg_len
    }

    pub fn doc_len(&self, doc: u32) -> u32 {
        self.doc_lengths[doc as usize]
    }

    pub fn doc_freq(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }

    pub fn postings(&self, term: &str) -> &[Posting] {
        self.postings.get(term).map_or(&[], Vec::as_slice)
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    pub fn method_id(&self, doc: u32) -> &str {
        &self.method_ids[doc as usize]
    }

    pub fn ordinal(&self, method_id: &str) -> Option<u32> {
        self.ordinals.get(method_id).copied()
    }

    pub fn method_ids(&self) -> &[String] {
        &self.method_ids
    }

    fn from_term_streams(method_ids: Vec<String>, streams: Vec<Vec<String>>) -> Self {
        let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
        let mut doc_lengths = Vec::with_capacity(streams.len());
        for (doc, terms) in streams.into_iter().enumerate() {
            doc_lengths.push(terms.len() as u32);
            let mut counts: BTreeMap<String, u32> = BTreeMap::new();
            for t in terms {
                *counts.entry(t).or_insert(0) += 1;
            }
            for (t, tf) in counts {
                postings.entry(t).or_default().push(Posting {
                    doc: doc as u32,
                    tf,
                });
            }
        }
        let total: u64 = doc_lengths.iter().map(|&l| u64::from(l)).sum();
        let avg_len = total as f64 / doc_lengths.len() as f64;
        let mut index = Self {
            postings,
            doc_lengths,
            avg_len,
            method_ids,
            ordinals: HashMap::new(),
        };
        index.rebuild_ordinals();
        index
    }

    fn rebuild_ordinals(&mut self) {
        self.ordinals = self
            .method_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i as u32))
            .collect();
    }

    /// Raw accumulated scores per document ordinal, zeros included.
    pub fn score_vector(&self, query: &BoostedQuery, params: Bm25Params) -> Vec<f64> {
        let mut acc = vec![0.0; self.doc_count()];
        if self.avg_len <= 0.0 {
            return acc;
        }
        let n = self.doc_count();
        for (term, &w) in query.weights() {
            let Some(list) = self.postings.get(term) else {
                continue;
            };
            let term_weight = w * idf(n, list.len());
            for p in list {
                acc[p.doc as usize] += term_weight
                    * tf_unchecked(p.tf, self.doc_lengths[p.doc as usize], params, self.avg_len);
            }
        }
        acc
    }

    /// Positive-score hits, best first, ties by ascending method id.
    pub fn score(&self, query: &BoostedQuery, params: Bm25Params) -> Vec<Hit> {
        self.hits_from_vector(&self.score_vector(query, params))
    }

    pub fn hits_from_vector(&self, scores: &[f64]) -> Vec<Hit> {
        let mut hits: Vec<Hit> = scores
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0.0)
            .map(|(i, &s)| Hit {
                method_id: self.method_ids[i].clone(),
                score: s,
            })
            .collect();
        sort_hits(&mut hits);
        hits
    }
}

pub(crate) fn sort_hits(hits: &mut [Hit]) {
    hits.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.method_id.cmp(&b.method_id))
    });
}

/// Indexes `body + comments + literals` of every document as code text.
pub fn build_index(corpus: &Corpus, lists: &FilterLists) -> Index {
    let streams: Vec<Vec<String>> = corpus
        .documents()
        .par_iter()
        .map(|d| preprocess_text(&d.index_text(), lists, true).into_terms())
        .collect();
    let ids = corpus
        .documents()
        .iter()
        .map(|d| d.method_id.clone())
        .collect();
    Index::from_term_streams(ids, streams)
}

pub const INDEX_FORMAT: &str = "bugsift-index";
pub const INDEX_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct IndexFile {
    format: String,
    version: u32,
    corpus_hash: String,
    index: Index,
}

/// Writes the index with a format/version header and the hash of the corpus
/// it was built from.
pub fn save_index(index: &Index, corpus_hash: &str, path: &Path) -> Result<()> {
    let file = IndexFile {
        format: INDEX_FORMAT.into(),
        version: INDEX_VERSION,
        corpus_hash: corpus_hash.into(),
        index: index.clone(),
    };
    let text = serde_json::to_string(&file).expect("index serializes");
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Loads a persisted index and the corpus hash recorded with it.
pub fn load_index(path: &Path) -> Result<(Index, String)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: IndexFile = serde_json::from_str(&text)
        .map_err(|e| Error::IndexFormat(format!("{}: {e}", path.display())))?;
    if file.format != INDEX_FORMAT || file.version != INDEX_VERSION {
        return Err(Error::IndexFormat(format!(
            "{}: expected {INDEX_FORMAT} v{INDEX_VERSION}, found {} v{}",
            path.display(),
            file.format,
            file.version
        )));
    }
    let mut index = file.index;
    index.rebuild_ordinals();
    Ok((index, file.corpus_hash))
}

//! Brute-force reference implementations and random instances shared by the
//! integration tests and the acceptance harness. Nothing here calls the
//! scoring, sifting or evaluation code under test.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;

use bugsift::{preprocess_text, BugReport, Corpus, FilterLists, MethodDocument};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(rel)
}

// ---------------------------------------------------------------- scoring

pub fn oracle_tf(tf: f64, len: f64, avg: f64, k: f64, b: f64) -> f64 {
    if tf == 0.0 {
        return 0.0;
    }
    (k + 1.0) * tf / (k * ((1.0 - b) + b * len / avg) + tf)
}

pub fn oracle_idf(n_docs: f64, df: f64) -> f64 {
    (1.0 + (n_docs - df + 0.5) / (df + 0.5)).ln()
}

/// Scores every document (a bag of terms) for a weighted query by walking
/// each document's terms directly; no postings.
pub fn oracle_scores(
    docs: &[Vec<String>],
    query: &BTreeMap<String, f64>,
    k: f64,
    b: f64,
) -> Vec<f64> {
    let n = docs.len() as f64;
    let avg = docs.iter().map(Vec::len).sum::<usize>() as f64 / n;
    docs.iter()
        .map(|d| {
            let mut s = 0.0;
            for (t, w) in query {
                let tf = d.iter().filter(|x| *x == t).count() as f64;
                if tf == 0.0 || avg == 0.0 {
                    continue;
                }
                let df = docs.iter().filter(|o| o.contains(t)).count() as f64;
                s += w * oracle_idf(n, df) * oracle_tf(tf, d.len() as f64, avg, k, b);
            }
            s
        })
        .collect()
}

pub fn term_counts(terms: &[String]) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    for t in terms {
        *m.entry(t.clone()).or_insert(0.0) += 1.0;
    }
    m
}

/// `alpha * tf_title + beta * tf_desc + gamma * tf_comments`, zeros dropped.
pub fn oracle_query(bug: &OracleBug, alpha: f64, beta: f64, gamma: f64) -> BTreeMap<String, f64> {
    let mut q = BTreeMap::new();
    for (terms, w) in [
        (&bug.title, alpha),
        (&bug.description, beta),
        (&bug.comments, gamma),
    ] {
        for t in terms {
            *q.entry(t.clone()).or_insert(0.0) += w;
        }
    }
    q.retain(|_, w| *w > 0.0);
    q
}

pub fn oracle_mean_query(queries: &[BTreeMap<String, f64>]) -> BTreeMap<String, f64> {
    let mut g = BTreeMap::new();
    for q in queries {
        for (t, w) in q {
            *g.entry(t.clone()).or_insert(0.0) += w / queries.len() as f64;
        }
    }
    g
}

// ---------------------------------------------------------------- sifting

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Filter,
    Diff,
    Off,
}

/// `(method id, rank score)` best first. Sorting is done by selection so it
/// shares nothing with the library's comparator.
pub fn oracle_sift(
    ids: &[String],
    local: &[f64],
    global: &[f64],
    mode: OracleMode,
) -> Vec<(String, f64)> {
    let mut pool: Vec<(String, f64)> = Vec::new();
    for i in 0..ids.len() {
        if local[i] <= 0.0 {
            continue;
        }
        let keep = match mode {
            OracleMode::Filter => local[i] > global[i],
            _ => true,
        };
        if keep {
            let key = if mode == OracleMode::Diff {
                local[i] - global[i]
            } else {
                local[i]
            };
            pool.push((ids[i].clone(), key));
        }
    }
    let mut out = Vec::new();
    while !pool.is_empty() {
        let mut best = 0;
        for j in 1..pool.len() {
            let better =
                pool[j].1 > pool[best].1 || (pool[j].1 == pool[best].1 && pool[j].0 < pool[best].0);
            if better {
                best = j;
            }
        }
        out.push(pool.remove(best));
    }
    out
}

// ---------------------------------------------------------------- evaluation

#[derive(Debug, Clone, PartialEq)]
pub struct OracleEval {
    pub mrr: f64,
    pub map: f64,
    pub top_n: BTreeMap<usize, usize>,
}

/// Literal transcription of the definitions: precision@k at every relevant
/// rank, divided by the full relevant-set size.
pub fn oracle_evaluate(
    ranked: &BTreeMap<String, Vec<String>>,
    gold: &BTreeMap<String, BTreeSet<String>>,
    ns: &[usize],
) -> OracleEval {
    let mut rr_sum = 0.0;
    let mut ap_sum = 0.0;
    let mut top_n: BTreeMap<usize, usize> = ns.iter().map(|&n| (n, 0)).collect();
    for (bug, relevant) in gold {
        let list = ranked.get(bug).cloned().unwrap_or_default();
        let mut first = None;
        let mut ap = 0.0;
        for k in 1..=list.len() {
            if relevant.contains(&list[k - 1]) {
                if first.is_none() {
                    first = Some(k);
                }
                let hits = list[..k].iter().filter(|m| relevant.contains(*m)).count();
                ap += hits as f64 / k as f64;
            }
        }
        ap_sum += ap / relevant.len() as f64;
        if let Some(r) = first {
            rr_sum += 1.0 / r as f64;
            for (&n, c) in top_n.iter_mut() {
                if r <= n {
                    *c += 1;
                }
            }
        }
    }
    let count = gold.len() as f64;
    OracleEval {
        mrr: rr_sum / count,
        map: ap_sum / count,
        top_n,
    }
}

// ---------------------------------------------------------------- statistics

fn oracle_midranks(pooled: &[f64]) -> Vec<f64> {
    pooled
        .iter()
        .map(|&x| {
            let below = pooled.iter().filter(|&&y| y < x).count() as f64;
            let equal = pooled.iter().filter(|&&y| y == x).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Two-sided exact rank-sum p-value by enumerating every size-`|a|` subset
/// of the pooled ranks.
pub fn oracle_wilcoxon_exact(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = oracle_midranks(&pooled);
    let observed: f64 = ranks[..a.len()].iter().sum();
    let n = pooled.len();
    let (mut le, mut ge, mut total) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let s: f64 = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| ranks[i])
            .sum();
        total += 1;
        if s <= observed + 1e-9 {
            le += 1;
        }
        if s >= observed - 1e-9 {
            ge += 1;
        }
    }
    (2.0 * (le.min(ge) as f64) / total as f64).min(1.0)
}

// ---------------------------------------------------------------- instances

/// Lower-case words that survive preprocessing unchanged, so random
/// documents have a known term representation.
pub fn stable_vocabulary(rng: &mut impl Rng, size: usize) -> Vec<String> {
    let lists = FilterLists::default();
    let consonants = b"bdfgklmnprstvz";
    let vowels = b"aiou";
    let mut out = BTreeSet::new();
    while out.len() < size {
        let len = rng.gen_range(2..=3);
        let mut w = String::new();
        for _ in 0..len {
            w.push(*consonants.choose(rng).unwrap() as char);
            w.push(*vowels.choose(rng).unwrap() as char);
        }
        if preprocess_text(&w, &lists, true).terms() == [w.clone()]
            && preprocess_text(&w, &lists, false).terms() == [w.clone()]
        {
            out.insert(w);
        }
    }
    out.into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct OracleBug {
    pub id: String,
    pub title: Vec<String>,
    pub description: Vec<String>,
    pub comments: Vec<String>,
}

impl OracleBug {
    pub fn report(&self) -> BugReport {
        BugReport {
            bug_id: self.id.clone(),
            title: self.title.join(" "),
            description: self.description.join(" "),
            comments: if self.comments.is_empty() {
                vec![]
            } else {
                vec![self.comments.join(" ")]
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub ids: Vec<String>,
    pub docs: Vec<Vec<String>>,
    pub bugs: Vec<OracleBug>,
    pub gold: BTreeMap<String, BTreeSet<String>>,
}

fn words(rng: &mut impl Rng, vocab: &[String], lo: usize, hi: usize) -> Vec<String> {
    let n = rng.gen_range(lo..=hi);
    (0..n).map(|_| vocab.choose(rng).unwrap().clone()).collect()
}

/// Up to 20 documents over up to 50 terms and up to 5 bugs.
pub fn random_instance(rng: &mut impl Rng) -> Instance {
    let vocab_size = rng.gen_range(3..=50);
    let vocab = stable_vocabulary(rng, vocab_size);
    let n_docs = rng.gen_range(1..=20);
    let ids: Vec<String> = (0..n_docs)
        .map(|i| format!("src/M.java#M.m{i:02}(0)"))
        .collect();
    let docs: Vec<Vec<String>> = (0..n_docs).map(|_| words(rng, &vocab, 0, 15)).collect();
    let n_bugs = rng.gen_range(1..=5);
    let bugs: Vec<OracleBug> = (0..n_bugs)
        .map(|i| OracleBug {
            id: format!("B{i}"),
            title: words(rng, &vocab, 1, 4),
            description: words(rng, &vocab, 0, 8),
            comments: words(rng, &vocab, 0, 6),
        })
        .collect();
    let gold = bugs
        .iter()
        .map(|b| {
            let k = rng.gen_range(1..=3.min(n_docs));
            let set: BTreeSet<String> = ids.choose_multiple(rng, k).cloned().collect();
            (b.id.clone(), set)
        })
        .collect();
    Instance {
        ids,
        docs,
        bugs,
        gold,
    }
}

impl Instance {
    pub fn corpus(&self) -> Corpus {
        let docs = self
            .ids
            .iter()
            .zip(&self.docs)
            .map(|(id, terms)| MethodDocument {
                method_id: id.clone(),
                file_path: "src/M.java".into(),
                method_name: id.clone(),
                body_text: terms.join(" "),
                comments: String::new(),
                literals: vec![],
                start_line: 1,
                end_line: 1,
            })
            .collect();
        Corpus::new(docs, "random").unwrap()
    }

    pub fn reports(&self) -> Vec<BugReport> {
        self.bugs.iter().map(OracleBug::report).collect()
    }

    pub fn gold_set(&self) -> bugsift::GoldSet {
        let mut g = bugsift::GoldSet::new();
        for (bug, methods) in &self.gold {
            g.insert(bug.clone(), methods.iter().cloned()).unwrap();
        }
        g
    }
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

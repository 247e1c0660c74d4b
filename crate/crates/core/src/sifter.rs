//! Local-versus-global score sifting and the ranked-results file.
//!
//! A method's local score comes from one bug's query, its global score from
//! the grand query. `Filter` keeps methods whose local score beats their
//! global score; `Diff` keeps everything positive but ranks by the margin;
//! `Off` is plain ranking by local score.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::Hit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SiftMode {
    #[default]
    Filter,
    Diff,
    Off,
}

impl std::str::FromStr for SiftMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "filter" => Ok(Self::Filter),
            "diff" => Ok(Self::Diff),
            "off" => Ok(Self::Off),
            _ => Err(Error::param(format!(
                "unknown sift mode `{s}` (filter|diff|off)"
            ))),
        }
    }
}

impl std::fmt::Display for SiftMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Self::Filter => "filter",
            Self::Diff => "diff",
            Self::Off => "off",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub method_id: String,
    pub rank_score: f64,
    pub local_score: f64,
}

/// Final ranking for one bug; position `i` is rank `i + 1`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RankedList {
    pub bug_id: String,
    pub entries: Vec<RankedEntry>,
}

impl RankedList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn method_ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.method_id.as_str())
    }
}

/// Applies the sift rule to one bug's local scores. Methods absent from
/// `global` have a global score of zero.
pub fn sift(
    bug_id: &str,
    local: &[Hit],
    global: &HashMap<String, f64>,
    mode: SiftMode,
) -> RankedList {
    let mut entries: Vec<RankedEntry> = local
        .iter()
        .filter(|h| h.score > 0.0)
        .filter_map(|h| {
            let g = global.get(&h.method_id).copied().unwrap_or(0.0);
            let rank_score = match mode {
                SiftMode::Filter if h.score > g => h.score,
                SiftMode::Filter => return None,
                SiftMode::Diff => h.score - g,
                SiftMode::Off => h.score,
            };
            Some(RankedEntry {
                method_id: h.method_id.clone(),
                rank_score,
                local_score: h.score,
            })
        })
        .collect();
    entries.sort_by(|a, b| {
        b.rank_score
            .total_cmp(&a.rank_score)
            .then_with(|| a.method_id.cmp(&b.method_id))
    });
    RankedList {
        bug_id: bug_id.to_string(),
        entries,
    }
}

/// Keeps the top `ceil(fraction * len)` entries.
pub fn truncate_top_fraction(list: &RankedList, fraction: f64) -> Result<RankedList> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::param(format!(
            "fraction must be in (0, 1], got {fraction}"
        )));
    }
    // tolerance keeps 0.1 * 70 from rounding up to 8
    let keep = ((fraction * list.len() as f64) - 1e-9).ceil().max(0.0) as usize;
    Ok(RankedList {
        bug_id: list.bug_id.clone(),
        entries: list.entries[..keep.min(list.len())].to_vec(),
    })
}

/// Tab-separated rows `bug_id rank method_id rank_score local_score`, bugs in
/// the map's order and ranks ascending. Scores use the shortest exact
/// decimal form, so output is byte-stable.
pub fn format_results<'a>(lists: impl IntoIterator<Item = &'a RankedList>) -> String {
    let mut out = String::new();
    for list in lists {
        for (i, e) in list.entries.iter().enumerate() {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                list.bug_id,
                i + 1,
                e.method_id,
                e.rank_score,
                e.local_score
            )
            .expect("writing to a String");
        }
    }
    out
}

pub fn write_results(results: &BTreeMap<String, RankedList>, path: &Path) -> Result<()> {
    fs::write(path, format_results(results.values())).map_err(|e| Error::io(path, e))
}

pub fn parse_results(text: &str, path: &Path) -> Result<BTreeMap<String, RankedList>> {
    let mut rows: BTreeMap<String, Vec<(usize, RankedEntry)>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |m: &str| Error::parse(path, i + 1, m.to_string());
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(err(&format!(
                "expected 5 tab-separated columns, found {}",
                cols.len()
            )));
        }
        let rank: usize = cols[1]
            .parse()
            .map_err(|_| err("rank is not a positive integer"))?;
        if rank == 0 {
            return Err(err("rank must be >= 1"));
        }
        let rank_score: f64 = cols[3].parse().map_err(|_| err("bad rank_score"))?;
        let local_score: f64 = cols[4].parse().map_err(|_| err("bad local_score"))?;
        rows.entry(cols[0].to_string()).or_default().push((
            rank,
            RankedEntry {
                method_id: cols[2].to_string(),
                rank_score,
                local_score,
            },
        ));
    }
    Ok(rows
        .into_iter()
        .map(|(bug, mut entries)| {
            entries.sort_by_key(|(r, _)| *r);
            let list = RankedList {
                bug_id: bug.clone(),
                entries: entries.into_iter().map(|(_, e)| e).collect(),
            };
            (bug, list)
        })
        .collect())
}

pub fn read_results(path: &Path) -> Result<BTreeMap<String, RankedList>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_results(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hits(pairs: &[(&str, f64)]) -> Vec<Hit> {
        pairs
            .iter()
            .map(|(m, s)| Hit {
                method_id: m.to_string(),
                score: *s,
            })
            .collect()
    }

    fn global(pairs: &[(&str, f64)]) -> HashMap<String, f64> {
        pairs.iter().map(|(m, s)| (m.to_string(), *s)).collect()
    }

    #[test]
    fn toy_matrix_diff_mode() {
        let local = hits(&[
            ("Deck", 4.0 / 6.0),
            ("Card", 2.0 / 3.0),
            ("Hand", 6.0 / 12.0),
        ]);
        let g = global(&[
            ("Deck", 4.0 / 6.0),
            ("Card", 3.0 / 3.0),
            ("Hand", 14.0 / 12.0),
        ]);
        let list = sift("1", &local, &g, SiftMode::Diff);
        let order: Vec<&str> = list.method_ids().collect();
        assert_eq!(order, ["Deck", "Card", "Hand"]);
        assert_eq!(list.entries[0].rank_score, 0.0);
        assert!((list.entries[1].rank_score + 1.0 / 3.0).abs() < 1e-12);
        // 6/12 - 14/12
        assert!((list.entries[2].rank_score + 8.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn toy_matrix_filter_mode_is_strict() {
        let local = hits(&[
            ("Deck", 4.0 / 6.0),
            ("Card", 2.0 / 3.0),
            ("Hand", 6.0 / 12.0),
        ]);
        let g = global(&[("Deck", 4.0 / 6.0), ("Card", 1.0), ("Hand", 14.0 / 12.0)]);
        assert!(sift("1", &local, &g, SiftMode::Filter).is_empty());
    }

    #[test]
    fn zero_global_filter_is_plain_order() {
        let local = hits(&[("a", 1.0), ("b", 3.0), ("c", 2.0)]);
        let list = sift("1", &local, &HashMap::new(), SiftMode::Filter);
        assert_eq!(list.method_ids().collect::<Vec<_>>(), ["b", "c", "a"]);
        let off = sift("1", &local, &HashMap::new(), SiftMode::Off);
        assert_eq!(list, off);
    }

    #[test]
    fn zero_local_never_ranked() {
        let local = hits(&[("a", 0.0), ("b", 1.0)]);
        for mode in [SiftMode::Filter, SiftMode::Diff, SiftMode::Off] {
            let list = sift("1", &local, &HashMap::new(), mode);
            assert_eq!(list.method_ids().collect::<Vec<_>>(), ["b"]);
        }
        assert!(sift("1", &[], &HashMap::new(), SiftMode::Diff).is_empty());
    }

    #[test]
    fn truncation() {
        let mk = |n: usize| RankedList {
            bug_id: "b".into(),
            entries: (0..n)
                .map(|i| RankedEntry {
                    method_id: format!("m{i:03}"),
                    rank_score: (n - i) as f64,
                    local_score: 1.0,
                })
                .collect(),
        };
        assert_eq!(truncate_top_fraction(&mk(100), 0.10).unwrap().len(), 10);
        assert_eq!(truncate_top_fraction(&mk(7), 0.10).unwrap().len(), 1);
        assert_eq!(truncate_top_fraction(&mk(70), 0.10).unwrap().len(), 7);
        assert_eq!(truncate_top_fraction(&mk(13), 1.0).unwrap(), mk(13));
        assert!(truncate_top_fraction(&mk(0), 0.5).unwrap().is_empty());
        assert!(truncate_top_fraction(&mk(3), 0.0).is_err());
        assert!(truncate_top_fraction(&mk(3), 1.5).is_err());
        let t = truncate_top_fraction(&mk(30), 0.2).unwrap();
        assert_eq!(t.entries[..], mk(30).entries[..6]);
    }

    #[test]
    fn results_file_round_trip() {
        let mut m = BTreeMap::new();
        let l = sift(
            "B1",
            &hits(&[("x#a(0)", 0.1 + 0.2), ("x#b(1)", 1e-17)]),
            &HashMap::new(),
            SiftMode::Off,
        );
        m.insert("B1".to_string(), l);
        let text = format_results(m.values());
        assert_eq!(
            text.lines().next().unwrap(),
            "B1\t1\tx#a(0)\t0.30000000000000004\t0.30000000000000004"
        );
        let back = parse_results(&text, Path::new("r.tsv")).unwrap();
        assert_eq!(back, m);
        assert!(parse_results("B1\t1\tm\t0.5\n", Path::new("r.tsv")).is_err());
    }
}

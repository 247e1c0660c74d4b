//! Method-level documents and the line-delimited corpus file.

mod extract;

use std::collections::HashSet;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use extract::{extract_methods, Diagnostic, DiagnosticKind, Extraction, LanguageProfile};

/// One method, constructor or initializer block: the indexable unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDocument {
    #[serde(rename = "id")]
    pub method_id: String,
    #[serde(rename = "path")]
    pub file_path: String,
    #[serde(rename = "name")]
    pub method_name: String,
    #[serde(rename = "body")]
    pub body_text: String,
    #[serde(default)]
    pub comments: String,
    #[serde(default)]
    pub literals: Vec<String>,
    #[serde(rename = "start")]
    pub start_line: usize,
    #[serde(rename = "end")]
    pub end_line: usize,
}

impl MethodDocument {
    /// Text fed to the indexer: body, then comments, then literals.
    pub fn index_text(&self) -> String {
        let mut text = String::with_capacity(
            self.body_text.len()
                + self.comments.len()
                + self.literals.iter().map(|l| l.len() + 1).sum::<usize>()
                + 2,
        );
        text.push_str(&self.body_text);
        text.push('\n');
        text.push_str(&self.comments);
        for lit in &self.literals {
            text.push('\n');
            text.push_str(lit);
        }
        text
    }

    fn check_lines(&self) -> std::result::Result<(), String> {
        if self.start_line < 1 || self.end_line < self.start_line {
            return Err(format!(
                "invalid line range {}..{} for `{}`",
                self.start_line, self.end_line, self.method_id
            ));
        }
        Ok(())
    }
}

/// Immutable, non-empty collection of documents sorted by method id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<MethodDocument>,
    source_label: String,
}

impl Corpus {
    /// Sorts the documents by id and checks the corpus invariants.
    pub fn new(
        mut documents: Vec<MethodDocument>,
        source_label: impl Into<String>,
    ) -> Result<Self> {
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        documents.sort_by(|a, b| a.method_id.cmp(&b.method_id));
        if let Some(w) = documents
            .windows(2)
            .find(|w| w[0].method_id == w[1].method_id)
        {
            return Err(Error::DuplicateMethod(w[0].method_id.clone()));
        }
        for d in &documents {
            d.check_lines().map_err(Error::InvalidParameter)?;
        }
        Ok(Self {
            documents,
            source_label: source_label.into(),
        })
    }

    pub fn documents(&self) -> &[MethodDocument] {
        &self.documents
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn get(&self, method_id: &str) -> Option<&MethodDocument> {
        self.documents
            .binary_search_by(|d| d.method_id.as_str().cmp(method_id))
            .ok()
            .map(|i| &self.documents[i])
    }

    /// Serialized corpus-file bytes.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for d in &self.documents {
            out.push_str(&serde_json::to_string(d).expect("document serializes"));
            out.push('\n');
        }
        out
    }

    /// SHA-256 of the serialized corpus, hex encoded.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_jsonl().as_bytes()))
    }
}

#[derive(Deserialize)]
struct RawRecord {
    id: String,
    path: String,
    name: String,
    body: String,
    #[serde(default)]
    comments: TextOrList,
    #[serde(default)]
    literals: TextOrList,
    start: usize,
    end: usize,
}

/// Pre-segmented corpora sometimes carry these fields as one string.
#[derive(Deserialize, Default)]
#[serde(untagged)]
enum TextOrList {
    #[default]
    Missing,
    Text(String),
    List(Vec<String>),
}

impl TextOrList {
    fn into_text(self) -> String {
        match self {
            TextOrList::Missing => String::new(),
            TextOrList::Text(s) => s,
            TextOrList::List(v) => v.join("\n"),
        }
    }

    fn into_list(self) -> Vec<String> {
        match self {
            TextOrList::Missing => Vec::new(),
            TextOrList::Text(s) if s.is_empty() => Vec::new(),
            TextOrList::Text(s) => vec![s],
            TextOrList::List(v) => v,
        }
    }
}

/// Reads a corpus file: one JSON object per line, blank lines skipped.
pub fn load_corpus(path: &Path) -> Result<Corpus> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord =
            serde_json::from_str(line).map_err(|e| Error::parse(path, lineno, e.to_string()))?;
        if !seen.insert(raw.id.clone()) {
            return Err(Error::DuplicateMethod(raw.id));
        }
        let doc = MethodDocument {
            method_id: raw.id,
            file_path: raw.path,
            method_name: raw.name,
            body_text: raw.body,
            comments: raw.comments.into_text(),
            literals: raw.literals.into_list(),
            start_line: raw.start,
            end_line: raw.end,
        };
        doc.check_lines()
            .map_err(|m| Error::parse(path, lineno, m))?;
        docs.push(doc);
    }
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Corpus::new(docs, label)
}

pub fn save_corpus(corpus: &Corpus, path: &Path) -> Result<()> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(corpus.to_jsonl().as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

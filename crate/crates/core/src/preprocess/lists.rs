use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Lucene's default English stop set.
pub const DEFAULT_STOP_WORDS: &[&str] = &[
    "a", "an", "and", "are", "as", "at", "be", "but", "by", "for", "if", "in", "into", "is", "it",
    "no", "not", "of", "on", "or", "such", "that", "the", "their", "then", "there", "these",
    "they", "this", "to", "was", "will", "with",
];

/// Java reserved words plus the `true`/`false`/`null` literals.
pub const JAVA_KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
];

/// Stop words and language keywords removed during term filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterLists {
    stop_words: BTreeSet<String>,
    keywords: BTreeSet<String>,
}

impl Default for FilterLists {
    fn default() -> Self {
        Self::new(
            DEFAULT_STOP_WORDS.iter().copied(),
            JAVA_KEYWORDS.iter().copied(),
        )
    }
}

impl FilterLists {
    pub fn new<S, K>(stop_words: S, keywords: K) -> Self
    where
        S: IntoIterator,
        S::Item: AsRef<str>,
        K: IntoIterator,
        K::Item: AsRef<str>,
    {
        let norm = |s: &str| s.trim().to_lowercase();
        Self {
            stop_words: stop_words.into_iter().map(|s| norm(s.as_ref())).collect(),
            keywords: keywords.into_iter().map(|s| norm(s.as_ref())).collect(),
        }
    }

    /// Replaces either list with the contents of a file; `None` keeps the default.
    pub fn from_files(stop_words: Option<&Path>, keywords: Option<&Path>) -> Result<Self> {
        let mut lists = Self::default();
        if let Some(p) = stop_words {
            lists.stop_words = read_term_list(p)?;
        }
        if let Some(p) = keywords {
            lists.keywords = read_term_list(p)?;
        }
        Ok(lists)
    }

    pub fn is_stop_word(&self, term: &str) -> bool {
        self.stop_words.contains(term)
    }

    pub fn is_keyword(&self, term: &str) -> bool {
        self.keywords.contains(term)
    }

    pub fn stop_words(&self) -> impl Iterator<Item = &str> {
        self.stop_words.iter().map(String::as_str)
    }

    pub fn keywords(&self) -> impl Iterator<Item = &str> {
        self.keywords.iter().map(String::as_str)
    }
}

/// Reads one term per line. Blank lines and `#` comments are skipped.
pub fn read_term_list(path: &Path) -> Result<BTreeSet<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_term_list(&text))
}

pub(crate) fn parse_term_list(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_lowercase)
        .collect()
}

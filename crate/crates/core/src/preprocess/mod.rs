//! Text normalization shared by code and bug-report inputs.
//!
//! The pipeline is: tokenize, split identifiers (code only, originals kept),
//! lowercase, drop stop words and short terms, drop language keywords (code
//! only), stem. Survivors always match `[a-z0-9]{2,}`.

mod lists;
mod porter;

pub use lists::{read_term_list, FilterLists, DEFAULT_STOP_WORDS, JAVA_KEYWORDS};
pub use porter::stem;

/// Terms shorter than this are dropped.
pub const MIN_TERM_LEN: usize = 2;

/// Ordered, normalized terms of one text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermStream {
    terms: Vec<String>,
}

impl TermStream {
    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<String> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(String::as_str)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CharClass {
    Lower,
    Upper,
    Digit,
    Other,
}

fn class_of(c: char) -> CharClass {
    if c.is_ascii_lowercase() {
        CharClass::Lower
    } else if c.is_ascii_uppercase() {
        CharClass::Upper
    } else if c.is_ascii_digit() {
        CharClass::Digit
    } else {
        CharClass::Other
    }
}

/// Splits an identifier at camelCase, acronym, letter/digit and underscore
/// boundaries. The identifier itself is always the first element; it is the
/// only element when there is nothing to split.
///
/// `"HTTPServer_v2"` yields `["HTTPServer_v2", "HTTP", "Server", "v", "2"]`.
pub fn split_identifier(identifier: &str) -> Vec<String> {
    let chars: Vec<char> = identifier.chars().collect();
    let mut parts: Vec<String> = Vec::new();
    let mut current = String::new();

    for (i, &c) in chars.iter().enumerate() {
        let cls = class_of(c);
        if cls == CharClass::Other {
            if !current.is_empty() {
                parts.push(std::mem::take(&mut current));
            }
            continue;
        }
        if let Some(&prev) = current.chars().last().as_ref() {
            let prev_cls = class_of(prev);
            let next_cls = chars.get(i + 1).map(|&n| class_of(n));
            let boundary = match (prev_cls, cls) {
                (CharClass::Lower, CharClass::Upper) => true,
                (CharClass::Upper, CharClass::Upper) => next_cls == Some(CharClass::Lower),
                (CharClass::Digit, CharClass::Lower | CharClass::Upper)
                | (CharClass::Lower | CharClass::Upper, CharClass::Digit) => true,
                _ => false,
            };
            if boundary {
                parts.push(std::mem::take(&mut current));
            }
        }
        current.push(c);
    }
    if !current.is_empty() {
        parts.push(current);
    }

    let mut out = Vec::with_capacity(parts.len() + 1);
    out.push(identifier.to_string());
    if !(parts.len() == 1 && parts[0] == identifier) {
        out.extend(parts);
    }
    out
}

/// Runs of ASCII alphanumerics; code tokens also keep underscores so that
/// identifiers survive whole until they are split.
fn tokens(raw: &str, is_code: bool) -> impl Iterator<Item = &str> {
    raw.split(move |c: char| !(c.is_ascii_alphanumeric() || (is_code && c == '_')))
        .filter(|t| !t.is_empty())
}

/// Stems until the output stops changing, so the pipeline is idempotent on
/// its own output. A single pass is the common case.
fn stem_stable(term: &str) -> String {
    let mut cur = stem(term);
    for _ in 0..8 {
        let next = stem(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

fn keep(term: &str, lists: &FilterLists, is_code: bool) -> bool {
    term.len() >= MIN_TERM_LEN && !lists.is_stop_word(term) && !(is_code && lists.is_keyword(term))
}

/// Normalizes one candidate term (already split). Returns `None` when the
/// candidate is filtered out before or after stemming.
fn normalize(candidate: &str, lists: &FilterLists, is_code: bool) -> Option<String> {
    let lowered: String = candidate
        .chars()
        .filter(char::is_ascii_alphanumeric)
        .map(|c| c.to_ascii_lowercase())
        .collect();
    if !keep(&lowered, lists, is_code) {
        return None;
    }
    let stemmed = stem_stable(&lowered);
    keep(&stemmed, lists, is_code).then_some(stemmed)
}

/// Converts raw code or prose into a [`TermStream`].
pub fn preprocess_text(raw: &str, lists: &FilterLists, is_code: bool) -> TermStream {
    let mut terms = Vec::new();
    for token in tokens(raw, is_code) {
        if is_code {
            for part in split_identifier(token) {
                terms.extend(normalize(&part, lists, true));
            }
        } else {
            terms.extend(normalize(token, lists, false));
        }
    }
    TermStream { terms }
}

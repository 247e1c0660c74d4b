//! Lightweight method segmentation for brace languages.
//!
//! A small lexer strips comments and literals, then a brace matcher tracks
//! type bodies and classifies each `{` by the tokens that precede it since
//! the last `;`, `{` or `}`. No type resolution is attempted.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use super::{Corpus, MethodDocument};
use crate::error::{Error, Result};

/// Which files to read and which words open a type body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageProfile {
    pub name: String,
    pub extensions: Vec<String>,
    pub type_keywords: Vec<String>,
}

impl LanguageProfile {
    pub fn java() -> Self {
        Self {
            name: "java".into(),
            extensions: vec!["java".into()],
            type_keywords: ["class", "interface", "enum", "record"]
                .map(String::from)
                .to_vec(),
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "java" => Some(Self::java()),
            _ => None,
        }
    }

    fn matches(&self, path: &Path) -> bool {
        path.extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| self.extensions.iter().any(|x| x == e))
    }
}

impl Default for LanguageProfile {
    fn default() -> Self {
        Self::java()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Unreadable,
    UnbalancedBraces,
}

/// A file skipped during extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub line: Option<usize>,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(l) => write!(f, "{}:{}: {}", self.path, l, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub corpus: Corpus,
    pub diagnostics: Vec<Diagnostic>,
}

/// Extracts every method body under `source_root` (a directory or a single file).
pub fn extract_methods(source_root: &Path, profile: &LanguageProfile) -> Result<Extraction> {
    let meta = fs::metadata(source_root).map_err(|e| Error::io(source_root, e))?;
    let (base, files): (PathBuf, Vec<PathBuf>) = if meta.is_file() {
        let base = source_root
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_default();
        (base, vec![source_root.to_path_buf()])
    } else {
        let mut files: Vec<PathBuf> = WalkDir::new(source_root)
            .follow_links(true)
            .into_iter()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_type().is_file() && profile.matches(e.path()))
            .map(|e| e.into_path())
            .collect();
        files.sort();
        (source_root.to_path_buf(), files)
    };

    let per_file: Vec<std::result::Result<Vec<MethodDocument>, Diagnostic>> = files
        .par_iter()
        .map(|file| {
            let rel = relative_path(&base, file);
            match fs::read_to_string(file) {
                Ok(text) => extract_from_source(&rel, &text, profile),
                Err(e) => Err(Diagnostic {
                    path: rel,
                    line: None,
                    kind: DiagnosticKind::Unreadable,
                    message: format!("unreadable: {e}"),
                }),
            }
        })
        .collect();

    let mut docs = Vec::new();
    let mut diagnostics = Vec::new();
    for r in per_file {
        match r {
            Ok(d) => docs.extend(d),
            Err(diag) => diagnostics.push(diag),
        }
    }
    if docs.is_empty() {
        return Err(Error::NoMethods);
    }
    disambiguate(&mut docs);
    let label = source_root
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(Extraction {
        corpus: Corpus::new(docs, label)?,
        diagnostics,
    })
}

fn relative_path(base: &Path, file: &Path) -> String {
    let rel = file.strip_prefix(base).unwrap_or(file);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Overloads with equal arity share an id; later ones get an `@L<line>` suffix.
fn disambiguate(docs: &mut [MethodDocument]) {
    let mut seen: HashMap<String, usize> = HashMap::new();
    for d in docs.iter_mut() {
        let n = seen.entry(d.method_id.clone()).or_insert(0);
        *n += 1;
        if *n > 1 {
            d.method_id = format!("{}@L{}", d.method_id, d.start_line);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Ident(String),
    Punct(char),
    Str(String),
    Char,
    Number,
    Comment(String),
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    line: usize,
    end_line: usize,
}

struct LexError {
    line: usize,
    message: String,
}

fn lex(src: &str) -> std::result::Result<Vec<Tok>, LexError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let n = chars.len();

    while i < n {
        let c = chars[i];
        let start_line = line;
        if c == '\n' {
            line += 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '/' && i + 1 < n && chars[i + 1] == '/' {
            let s = i;
            while i < n && chars[i] != '\n' {
                i += 1;
            }
            toks.push(Tok {
                kind: TokKind::Comment(chars[s..i].iter().collect()),
                line: start_line,
                end_line: start_line,
            });
            continue;
        }
        if c == '/' && i + 1 < n && chars[i + 1] == '*' {
            let s = i;
            i += 2;
            while i < n && !(chars[i] == '*' && i + 1 < n && chars[i + 1] == '/') {
                if chars[i] == '\n' {
                    line += 1;
                }
                i += 1;
            }
            if i >= n {
                return Err(LexError {
                    line: start_line,
                    message: "unterminated block comment".into(),
                });
            }
            i += 2;
            toks.push(Tok {
                kind: TokKind::Comment(chars[s..i].iter().collect()),
                line: start_line,
                end_line: line,
            });
            continue;
        }
        if c == '"' {
            let text_block = i + 2 < n && chars[i + 1] == '"' && chars[i + 2] == '"';
            let delim = if text_block { 3 } else { 1 };
            i += delim;
            let s = i;
            loop {
                if i >= n || (!text_block && chars[i] == '\n') {
                    return Err(LexError {
                        line: start_line,
                        message: "unterminated string literal".into(),
                    });
                }
                match chars[i] {
                    '\\' => {
                        if chars.get(i + 1) == Some(&'\n') {
                            line += 1;
                        }
                        i += 2;
                        continue;
                    }
                    '\n' => line += 1,
                    '"' if !text_block => break,
                    '"' if i + 2 < n && chars[i + 1] == '"' && chars[i + 2] == '"' => break,
                    _ => {}
                }
                i += 1;
            }
            let body: String = chars[s..i].iter().collect();
            i += delim;
            toks.push(Tok {
                kind: TokKind::Str(body),
                line: start_line,
                end_line: line,
            });
            continue;
        }
        if c == '\'' {
            i += 1;
            while i < n && chars[i] != '\'' && chars[i] != '\n' {
                if chars[i] == '\\' {
                    i += 1;
                }
                i += 1;
            }
            if i >= n || chars[i] != '\'' {
                return Err(LexError {
                    line: start_line,
                    message: "unterminated character literal".into(),
                });
            }
            i += 1;
            toks.push(Tok {
                kind: TokKind::Char,
                line: start_line,
                end_line: start_line,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' || c == '$' {
            let s = i;
            while i < n && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$') {
                i += 1;
            }
            toks.push(Tok {
                kind: TokKind::Ident(chars[s..i].iter().collect()),
                line: start_line,
                end_line: start_line,
            });
            continue;
        }
        if c.is_ascii_digit() {
            while i < n && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            toks.push(Tok {
                kind: TokKind::Number,
                line: start_line,
                end_line: start_line,
            });
            continue;
        }
        toks.push(Tok {
            kind: TokKind::Punct(c),
            line: start_line,
            end_line: start_line,
        });
        i += 1;
    }
    Ok(toks)
}

const NOT_METHOD_NAMES: &[&str] = &[
    "if",
    "for",
    "while",
    "switch",
    "catch",
    "synchronized",
    "try",
    "do",
    "else",
    "return",
    "new",
    "throw",
    "case",
    "assert",
];

#[derive(Debug)]
enum Scope {
    Type {
        name: String,
        /// Enum constant section: ends at the first `;` of the enum body.
        enum_constants: bool,
    },
    Method(usize),
    Block,
}

struct OpenMethod {
    name: String,
    class_path: String,
    arity: usize,
    start_line: usize,
    comments: Vec<String>,
    literals: Vec<String>,
}

enum HeaderKind {
    Type { name: String, is_enum: bool },
    Method { name: String, arity: usize },
    Initializer { is_static: bool },
    Block,
}

fn ident(t: &Tok) -> Option<&str> {
    match &t.kind {
        TokKind::Ident(s) => Some(s),
        _ => None,
    }
}

fn is_punct(t: &Tok, c: char) -> bool {
    t.kind == TokKind::Punct(c)
}

fn classify(header: &[&Tok], in_type: bool, profile: &LanguageProfile) -> HeaderKind {
    for (i, t) in header.iter().enumerate() {
        if let Some(word) = ident(t) {
            let after_dot = i > 0 && is_punct(header[i - 1], '.');
            if !after_dot && profile.type_keywords.iter().any(|k| k == word) {
                if let Some(name) = header.get(i + 1).and_then(|t| ident(t)) {
                    return HeaderKind::Type {
                        name: name.to_string(),
                        is_enum: word == "enum",
                    };
                }
            }
        }
    }
    if in_type {
        match header {
            [] => return HeaderKind::Initializer { is_static: false },
            [t] if ident(t) == Some("static") => {
                return HeaderKind::Initializer { is_static: true }
            }
            _ => {}
        }
    }
    method_signature(header).unwrap_or(HeaderKind::Block)
}

/// Recognizes `... name ( params ) [throws A, B]` at the end of a header.
fn method_signature(header: &[&Tok]) -> Option<HeaderKind> {
    // drop a trailing throws clause
    let mut end = header.len();
    if let Some(pos) = header.iter().rposition(|t| ident(t) == Some("throws")) {
        let tail_ok = header[pos + 1..].iter().all(|t| {
            ident(t).is_some()
                || is_punct(t, '.')
                || is_punct(t, ',')
                || is_punct(t, '<')
                || is_punct(t, '>')
        });
        if tail_ok {
            end = pos;
        }
    }
    let sig = &header[..end];
    let close = sig.len().checked_sub(1)?;
    if !is_punct(sig[close], ')') {
        return None;
    }
    let mut depth = 0usize;
    let mut open = None;
    for i in (0..=close).rev() {
        if is_punct(sig[i], ')') {
            depth += 1;
        } else if is_punct(sig[i], '(') {
            depth -= 1;
            if depth == 0 {
                open = Some(i);
                break;
            }
        }
    }
    let open = open?;
    let name = ident(sig.get(open.checked_sub(1)?)?)?;
    if NOT_METHOD_NAMES.contains(&name) {
        return None;
    }
    let before = &sig[..open - 1];
    // `x = foo() {`, `new Foo() {` and `a.b() {` are not declarations
    let mut depth = 0i32;
    for t in before {
        match &t.kind {
            TokKind::Punct('(') => depth += 1,
            TokKind::Punct(')') => depth -= 1,
            TokKind::Punct('=') if depth == 0 => return None,
            TokKind::Ident(w) if depth == 0 && w == "new" => return None,
            _ => {}
        }
    }
    if before.last().is_some_and(|t| is_punct(t, '.')) {
        return None;
    }
    Some(HeaderKind::Method {
        name: name.to_string(),
        arity: count_params(&sig[open + 1..close]),
    })
}

fn count_params(params: &[&Tok]) -> usize {
    if params.is_empty() {
        return 0;
    }
    let mut depth = 0i32;
    let mut commas = 0;
    for t in params {
        match &t.kind {
            TokKind::Punct('(' | '<' | '[') => depth += 1,
            TokKind::Punct(')' | '>' | ']') => depth -= 1,
            TokKind::Punct(',') if depth == 0 => commas += 1,
            _ => {}
        }
    }
    commas + 1
}

/// Extracts the methods of one source file. Unbalanced braces reject the
/// whole file.
fn extract_from_source(
    rel_path: &str,
    text: &str,
    profile: &LanguageProfile,
) -> std::result::Result<Vec<MethodDocument>, Diagnostic> {
    let unbalanced = |line: usize, message: String| Diagnostic {
        path: rel_path.to_string(),
        line: Some(line),
        kind: DiagnosticKind::UnbalancedBraces,
        message,
    };
    let toks = lex(text).map_err(|e| unbalanced(e.line, e.message))?;

    let line_starts: Vec<usize> = std::iter::once(0)
        .chain(text.match_indices('\n').map(|(i, _)| i + 1))
        .collect();
    let slice_lines = |start: usize, end: usize| -> String {
        let from = line_starts[start - 1];
        let to = line_starts.get(end).map(|&p| p - 1).unwrap_or(text.len());
        text[from..to].to_string()
    };

    let mut stack: Vec<(Scope, usize)> = Vec::new();
    let mut open: Vec<OpenMethod> = Vec::new();
    let mut docs = Vec::new();
    let mut header: Vec<&Tok> = Vec::new();
    let mut pending_comments: Vec<&Tok> = Vec::new();

    let innermost_method = |stack: &[(Scope, usize)]| {
        stack.iter().rev().find_map(|(s, _)| match s {
            Scope::Method(i) => Some(*i),
            _ => None,
        })
    };

    for tok in &toks {
        let in_method = innermost_method(&stack);
        match &tok.kind {
            TokKind::Comment(c) => {
                if let Some(m) = in_method {
                    open[m].comments.push(c.clone());
                } else {
                    pending_comments.push(tok);
                }
            }
            TokKind::Punct('{') => {
                if in_method.is_some() {
                    stack.push((Scope::Block, tok.line));
                    continue;
                }
                let in_type = stack.iter().any(|(s, _)| matches!(s, Scope::Type { .. }));
                let enum_constants = matches!(
                    stack.last(),
                    Some((
                        Scope::Type {
                            enum_constants: true,
                            ..
                        },
                        _
                    ))
                );
                let kind = if enum_constants {
                    let name = header
                        .iter()
                        .find_map(|t| ident(t))
                        .unwrap_or("<constant>")
                        .to_string();
                    HeaderKind::Type {
                        name,
                        is_enum: false,
                    }
                } else {
                    classify(&header, in_type, profile)
                };
                let class_path = stack
                    .iter()
                    .filter_map(|(s, _)| match s {
                        Scope::Type { name, .. } => Some(name.as_str()),
                        _ => None,
                    })
                    .collect::<Vec<_>>()
                    .join(".");
                let start_line = header.first().map(|t| t.line).unwrap_or(tok.line);
                let scope = match kind {
                    HeaderKind::Type { name, is_enum } => Scope::Type {
                        name,
                        enum_constants: is_enum,
                    },
                    HeaderKind::Method { name, arity } => {
                        open.push(OpenMethod {
                            name,
                            class_path,
                            arity,
                            start_line,
                            comments: attached_comments(&pending_comments, start_line),
                            literals: Vec::new(),
                        });
                        Scope::Method(open.len() - 1)
                    }
                    HeaderKind::Initializer { is_static } => {
                        let name = if is_static { "<clinit>" } else { "<init>" };
                        open.push(OpenMethod {
                            name: name.into(),
                            class_path,
                            arity: 0,
                            start_line,
                            comments: attached_comments(&pending_comments, start_line),
                            literals: Vec::new(),
                        });
                        Scope::Method(open.len() - 1)
                    }
                    HeaderKind::Block => Scope::Block,
                };
                stack.push((scope, tok.line));
                header.clear();
                pending_comments.clear();
            }
            TokKind::Punct('}') => {
                let Some((scope, _)) = stack.pop() else {
                    return Err(unbalanced(tok.line, "unmatched `}`".into()));
                };
                if let Scope::Method(i) = scope {
                    let m = &open[i];
                    let member = if m.class_path.is_empty() {
                        m.name.clone()
                    } else {
                        format!("{}.{}", m.class_path, m.name)
                    };
                    docs.push(MethodDocument {
                        method_id: format!("{rel_path}#{member}({})", m.arity),
                        file_path: rel_path.to_string(),
                        method_name: m.name.clone(),
                        body_text: slice_lines(m.start_line, tok.end_line),
                        comments: m.comments.join("\n"),
                        literals: m.literals.clone(),
                        start_line: m.start_line,
                        end_line: tok.end_line,
                    });
                }
                if in_method.is_none() || matches!(scope, Scope::Method(_)) {
                    header.clear();
                    pending_comments.clear();
                }
            }
            TokKind::Punct(';') => {
                if in_method.is_none() {
                    if let Some((Scope::Type { enum_constants, .. }, _)) = stack.last_mut() {
                        *enum_constants = false;
                    }
                    header.clear();
                    pending_comments.clear();
                }
            }
            TokKind::Str(s) => {
                if let Some(m) = in_method {
                    open[m].literals.push(s.clone());
                } else {
                    header.push(tok);
                }
            }
            _ => {
                if in_method.is_none() {
                    // a comma between enum constants ends a constant header
                    if is_punct(tok, ',')
                        && matches!(
                            stack.last(),
                            Some((
                                Scope::Type {
                                    enum_constants: true,
                                    ..
                                },
                                _
                            ))
                        )
                        && paren_depth(&header) == 0
                    {
                        header.clear();
                        pending_comments.clear();
                    } else {
                        header.push(tok);
                    }
                }
            }
        }
    }

    if let Some((_, line)) = stack.first() {
        return Err(unbalanced(*line, "unclosed `{`".into()));
    }
    Ok(docs)
}

fn paren_depth(header: &[&Tok]) -> i32 {
    header.iter().fold(0, |d, t| match t.kind {
        TokKind::Punct('(') => d + 1,
        TokKind::Punct(')') => d - 1,
        _ => d,
    })
}

/// Comments forming a contiguous block that ends on or just above `start_line`.
fn attached_comments(pending: &[&Tok], start_line: usize) -> Vec<String> {
    let mut picked = Vec::new();
    let mut next_start = start_line;
    for t in pending.iter().rev() {
        if t.end_line + 1 < next_start {
            break;
        }
        if let TokKind::Comment(c) = &t.kind {
            picked.push(c.clone());
        }
        next_start = t.line;
    }
    picked.reverse();
    picked
}

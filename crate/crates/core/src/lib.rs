//! Method-level bug localization.
//!
//! Source methods become BM25 documents; each bug report becomes a query
//! whose title, description and comment terms carry separate boost weights.
//! A grand query aggregated over all reports scores every method's generic
//! relevance, and the sifter drops (or demotes) methods that match the
//! specific bug no better than they match the average one.
//!
//! ```no_run
//! use bugsift::{build_index, extract_methods, locate, preset, FilterLists, LanguageProfile};
//! # fn main() -> bugsift::Result<()> {
//! let corpus = extract_methods("src".as_ref(), &LanguageProfile::java())?.corpus;
//! let lists = FilterLists::default();
//! let index = build_index(&corpus, &lists);
//! let bugs = bugsift::load_bug_reports("bugs.jsonl".as_ref())?;
//! let ranked = locate(&index, &bugs, &lists, &preset("boostnsift")?)?;
//! for list in ranked.results.values() {
//!     println!("{}: {:?}", list.bug_id, list.method_ids().take(3).collect::<Vec<_>>());
//! }
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod index;
pub mod manifest;
pub mod pipeline;
pub mod preprocess;
pub mod query;
pub mod sifter;
pub mod variants;

pub use corpus::{
    extract_methods, load_corpus, save_corpus, Corpus, LanguageProfile, MethodDocument,
};
pub use error::{Error, Result};
pub use eval::{
    cliffs_delta, evaluate, load_gold_set, wilcoxon_rank_sum, EffectMagnitude, EvalReport, GoldSet,
};
pub use index::{build_index, idf, load_index, save_index, tf_component, Bm25Params, Hit, Index};
pub use manifest::RunManifest;
pub use pipeline::{locate, sweep, Localization};
pub use preprocess::{preprocess_text, split_identifier, stem, FilterLists, TermStream};
pub use query::{
    boost, grand_query, load_bug_reports, sweep_weights, BoostWeights, BoostedQuery, BugReport,
    GrandMode,
};
pub use sifter::{sift, truncate_top_fraction, RankedEntry, RankedList, SiftMode};
pub use variants::{preset, PipelineConfig, PRESET_NAMES};

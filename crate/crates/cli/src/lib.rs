//! Front end for `algint-core`: an expression grammar over `ℚ(t)[x, y]`,
//! one-shot problem runs with text or JSON output, and corpus batches.

pub mod corpus;
pub mod expr;
pub mod run;

pub use corpus::{corpus_document, corpus_table, parse_corpus, run_corpus, CorpusEntry, CorpusLine, Row};
pub use expr::{parse_curve, parse_element, parse_expression, Expr, ParseError};
pub use run::{render_text, run, Mode, ProblemSpec, RunOutput, SCHEMA};

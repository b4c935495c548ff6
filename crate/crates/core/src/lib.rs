//! Detection of social-engineering asks (PERFORM, GIVE) and framings
//! (LOSE, GAIN) in email bodies.
//!
//! The pipeline is rule based: an email is normalized to text segments with
//! link placeholders ([`ingest`]), linguistic annotations produced by an
//! external parser are loaded and mined for clause-level actions
//! ([`annotation`]), actions are matched against verb lexicons
//! ([`lexicon`]) and scored ([`detector`]). [`eval`] scores predictions
//! against clause-level gold labels and runs the seven-case experiment
//! ladder.

pub mod annotation;
pub mod detector;
pub mod eval;
pub mod ingest;
pub mod lexicon;
pub mod resources;

pub use annotation::{AnnotatedDocument, ClauseCandidate, SentenceAnnotation};
pub use detector::{detect, AskFrame, DetectorConfig, EmailAnalysis, LinkMode};
pub use ingest::{EmailDocument, LinkEntry, LinkTable, NormalizedDocument};
pub use lexicon::{AskLabel, CatVarDatabase, LexiconSource, VerbLexicon};
pub use resources::Resources;

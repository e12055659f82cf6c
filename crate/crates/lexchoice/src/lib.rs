//! Lexical choice among near-synonyms for interlingual machine translation.
//!
//! Near-synonyms are grouped into clusters that share a core concept and
//! differ in peripheral distinctions, style, and attitude. Translation
//! analysis turns a source word's distinctions into an interlingual
//! representation whose possibilities record nuances that may have been
//! expressed; generation reads those possibilities as preferences and ranks
//! the words of each activated target cluster by how well they satisfy
//! them.

pub mod analysis;
pub mod choice;
pub mod ir;
pub mod lexicon;
pub mod nuance;
pub mod ontology;
pub mod syntax;

pub use analysis::{analyze, instantiate_core, AnalysisError, AnalysisRequest};
pub use choice::{
    activate, choose, explain, satisfaction, score_entry, Activation, ChoiceError, ChoiceResult,
    RankedEntry, ScoreBreakdown, Weights, WeightsError,
};
pub use ir::{
    parse_ir, serialize_ir, validate_ir, AttitudeExpr, IrError, Possibility, StylePref, IR,
};
pub use lexicon::{
    load_lexicon, serialize_lexicon, Cluster, Distinction, Entry, Lexicon, LexiconError,
};
pub use nuance::{AttitudeValue, Frequency, NuanceType, Strength, StyleLevel};
pub use ontology::{
    unify, unify_with_mode, Bindings, BoundValue, ConceptInstance, ConceptMatch, InstanceGraph,
    InstanceIndex, Ontology, OntologyError, Template, TemplateValue, Value,
};

//! Free-group words and Stallings automata.

pub mod core_graph;
pub mod cover_graph;
pub mod folded;
pub mod graph;
pub mod word;

pub use core_graph::{CompletedCore, ConjugacySearch, CoreGraph, OuterPair};
pub use cover_graph::{CosetTable, CoverGraph};
pub use folded::{fold, fold_words, FoldedGraph};
pub use graph::{GraphDocument, LabeledEdge, LabeledGraph};
pub use word::{Alphabet, Letter, Word};

//! Right frontier checking for discourse-annotated corpora.
//!
//! Documents are segmented into EDUs and annotated with typed rhetorical
//! relations and complex segments. [`sdrs`] holds the graph model,
//! [`frontier`] computes which constituents are open for attachment,
//! [`closure`] restores structure annotators tend to leave implicit, and
//! [`validator`] replays each document EDU by EDU to check every annotated
//! attachment against the frontier of what came before.

pub mod closure;
pub mod corpus;
pub mod document;
pub mod frontier;
pub mod relation;
pub mod report;
pub mod sdrs;
pub mod validator;

#[cfg(test)]
mod test_fixtures;

pub use closure::{normalize, ClosureError};
pub use corpus::{parse_corpus, parse_corpus_str, CorpusError};
pub use document::{Document, DocumentError, Edu};
pub use frontier::{
    available_attachment_points, available_attachment_points_with, right_frontier, right_frontier_union,
    FrontierEntry, FrontierSet, OpenConstituentGate, Provenance,
};
pub use relation::{classify, Category, RelationType};
pub use sdrs::{
    build_sdrs, components, ComplexSegment, Label, LabelId, LabelKind, Origin, RelationInstance, Sdrs,
    SdrsError,
};
pub use validator::{
    constituent_distance, corpus_stats, prefix_graph, replay, replay_corpus, replay_with, AttachmentVerdict,
    CorpusStats, DocumentReport, ReplayOptions, Status, StructuralPolicy, ValidationError,
};

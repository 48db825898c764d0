//! Incremental replay of annotated documents against the right frontier.
//!
//! Each annotated relation is one attachment decision. Its *subject* is the
//! endpoint that starts later in the text (the new material) and its *point*
//! is the other endpoint. A decision is checked against the normalized graph
//! of everything that precedes the subject. When the point is not yet in that
//! graph (an EDU attached to a segment that is only completed later, say) the
//! decision is postponed to the first prefix holding both endpoints.

mod metrics;

pub use metrics::{
    constituent_distance, corpus_stats, rfc_edu_score, rfc_r_score, CorpusStats, StructuralPolicy,
};

use std::fmt;

use log::debug;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closure::{normalize, ClosureError};
use crate::document::Document;
use crate::frontier::{union_indexed, OpenConstituentGate, Provenance};
use crate::sdrs::{build_sdrs, components, Label, LabelId, RelationInstance, Sdrs, SdrsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("prefix length {index} outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("no attachment decisions to score")]
    EmptyInput,
    #[error("document `{doc}`: {source}")]
    Closure { doc: String, source: ClosureError },
    #[error(transparent)]
    Sdrs(#[from] SdrsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReplayOptions {
    /// Apply the closure rules to every prefix graph.
    pub normalize: bool,
    pub gate: OpenConstituentGate,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        ReplayOptions {
            normalize: true,
            gate: OpenConstituentGate::SubordinatingOnly,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    Compliant,
    Violation,
    PostponedResolvedCompliant,
    PostponedResolvedViolation,
    /// Parallel or Contrast: not subject to the constraint.
    Exempt,
}

impl Status {
    pub fn is_compliant(self) -> bool {
        matches!(self, Status::Compliant | Status::PostponedResolvedCompliant)
    }

    pub fn is_violation(self) -> bool {
        matches!(self, Status::Violation | Status::PostponedResolvedViolation)
    }

    pub fn is_postponed(self) -> bool {
        matches!(
            self,
            Status::PostponedResolvedCompliant | Status::PostponedResolvedViolation
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Compliant => "Compliant",
            Status::Violation => "Violation",
            Status::PostponedResolvedCompliant => "PostponedResolvedCompliant",
            Status::PostponedResolvedViolation => "PostponedResolvedViolation",
            Status::Exempt => "Exempt",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachmentVerdict {
    pub doc: String,
    /// The newly introduced constituent.
    pub subject: LabelId,
    /// EDUs covered by the subject, in textual order.
    pub subject_edus: Vec<LabelId>,
    pub decision: RelationInstance,
    /// The endpoint that was already present.
    pub point: LabelId,
    pub status: Status,
    /// Frontier provenance of the point when the decision is compliant.
    pub via: Option<Provenance>,
    /// 1-based index of the EDU whose introduction settles the decision.
    pub step: usize,
    /// Number of EDUs in the graph the decision was checked against.
    pub evaluated_at: usize,
    pub distance: usize,
    /// The point's EDU span does not reach LAST.
    pub nonadjacent: bool,
    /// A coordinating violation whose point is an open constituent on the
    /// frontier, i.e. one that gating open constituents to subordinating
    /// attachments alone turned into a violation.
    pub open_constituent_rescue: bool,
    /// The point never appeared in any prefix.
    pub unresolved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentReport {
    pub doc: String,
    pub edus: usize,
    pub verdicts: Vec<AttachmentVerdict>,
    /// LAST of every component beyond the first left at the end of the
    /// document; each one counts as a violation.
    pub disconnected: Vec<LabelId>,
    /// `(|RF|, |labels|)` for every prefix, in order.
    pub frontier_sizes: Vec<(usize, usize)>,
}

impl DocumentReport {
    pub fn violations(&self) -> usize {
        self.verdicts.iter().filter(|v| v.status.is_violation()).count() + self.disconnected.len()
    }
}

/// The normalized graph over the first `i` EDUs.
pub fn prefix_graph(doc: &Document, i: usize) -> Result<Sdrs, ValidationError> {
    prefix_graph_with(doc, i, true)
}

/// The graph over the first `i` EDUs: annotated relations and segments whose
/// endpoints and members all lie in the prefix, optionally normalized.
pub fn prefix_graph_with(doc: &Document, i: usize, normalized: bool) -> Result<Sdrs, ValidationError> {
    let full = doc.graph();
    let n = doc.edus().len();
    if i == 0 || i > n {
        return Err(ValidationError::IndexOutOfRange { index: i, len: n });
    }
    let present = |id: &LabelId| full.edu_span(id.as_str()).is_some_and(|(_, hi)| hi < i);
    let edus: Vec<Label> = full.edus().take(i).cloned().collect();
    let relations = doc
        .relations()
        .iter()
        .filter(|r| present(&r.source) && present(&r.target))
        .cloned()
        .collect();
    let segments = doc
        .segments()
        .iter()
        .filter(|s| present(&s.id))
        .cloned()
        .collect();
    let raw = build_sdrs(edus, relations, segments)?;
    if normalized {
        normalize(&raw).map_err(|source| ValidationError::Closure {
            doc: doc.id().to_string(),
            source,
        })
    } else {
        Ok(raw)
    }
}

struct Prefix {
    graph: Sdrs,
    frontier: Vec<(usize, Provenance)>,
}

pub fn replay(doc: &Document) -> Result<DocumentReport, ValidationError> {
    replay_with(doc, &ReplayOptions::default())
}

pub fn replay_with(doc: &Document, options: &ReplayOptions) -> Result<DocumentReport, ValidationError> {
    let n = doc.edus().len();
    let full = doc.graph();
    let prefixes = (1..=n)
        .map(|i| {
            let graph = prefix_graph_with(doc, i, options.normalize)?;
            let frontier = union_indexed(&graph);
            Ok(Prefix { graph, frontier })
        })
        .collect::<Result<Vec<_>, ValidationError>>()?;

    let mut keyed = Vec::with_capacity(doc.relations().len());
    for (k, decision) in doc.relations().iter().enumerate() {
        let source_span = full.require(decision.source.as_str()).map(|v| full.span_of(v))?;
        let target_span = full.require(decision.target.as_str()).map(|v| full.span_of(v))?;
        let target_is_subject = match source_span.0.cmp(&target_span.0) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => target_span.1 <= source_span.1,
        };
        let (subject, point, subject_span, point_span) = if target_is_subject {
            (&decision.target, &decision.source, target_span, source_span)
        } else {
            (&decision.source, &decision.target, source_span, target_span)
        };

        let postponed = point_span.1 >= subject_span.0;
        let evaluated_at = if postponed {
            point_span.1.max(subject_span.1) + 1
        } else {
            subject_span.0
        };
        let step = point_span.1.max(subject_span.1) + 1;
        let subject_edus = full.edus_within(subject.as_str()).unwrap_or_default();

        let mut verdict = AttachmentVerdict {
            doc: doc.id().to_string(),
            subject: subject.clone(),
            subject_edus,
            decision: decision.clone(),
            point: point.clone(),
            status: Status::Violation,
            via: None,
            step,
            evaluated_at,
            distance: 0,
            nonadjacent: false,
            open_constituent_rescue: false,
            unresolved: false,
        };

        let Some(prefix) = prefixes.get(evaluated_at.wrapping_sub(1)) else {
            verdict.unresolved = true;
            keyed.push(((step, true, k), verdict));
            continue;
        };
        let g = &prefix.graph;
        let p = g.require(point.as_str())?;
        verdict.distance = constituent_distance(g, point.as_str())?;
        let last = g.span_of(g.last_index()).0;
        let (lo, hi) = g.span_of(p);
        verdict.nonadjacent = !(lo <= last && last <= hi);

        let found = prefix
            .frontier
            .iter()
            .find(|&&(v, _)| v == p)
            .map(|&(_, prov)| prov);
        verdict.status = if decision.rel.is_structural() {
            Status::Exempt
        } else {
            let admitted = match found {
                Some(Provenance::OpenConstituent) => options.gate.admits(decision.rel),
                Some(_) => true,
                None => false,
            };
            if admitted {
                verdict.via = found;
            } else {
                verdict.open_constituent_rescue = found == Some(Provenance::OpenConstituent);
            }
            match (admitted, postponed) {
                (true, false) => Status::Compliant,
                (true, true) => Status::PostponedResolvedCompliant,
                (false, false) => Status::Violation,
                (false, true) => Status::PostponedResolvedViolation,
            }
        };
        debug!(
            "{}: {} checked at {} -> {}",
            doc.id(),
            decision,
            evaluated_at,
            verdict.status
        );
        keyed.push((
            (
                step,
                full.index_of(subject.as_str())
                    .is_some_and(|v| full.is_segment(v)),
                k,
            ),
            verdict,
        ));
    }
    keyed.sort_by_key(|a| a.0);
    let verdicts = keyed.into_iter().map(|(_, v)| v).collect();

    let final_graph = &prefixes[n - 1].graph;
    let disconnected = components(final_graph)
        .into_iter()
        .skip(1)
        .map(|c| c.last)
        .collect();
    let frontier_sizes = prefixes
        .iter()
        .map(|p| (p.frontier.len(), p.graph.len()))
        .collect();

    Ok(DocumentReport {
        doc: doc.id().to_string(),
        edus: n,
        verdicts,
        disconnected,
        frontier_sizes,
    })
}

/// Replays every document; documents are independent and run in parallel.
pub fn replay_corpus(
    docs: &[Document],
    options: &ReplayOptions,
) -> Result<Vec<DocumentReport>, ValidationError> {
    docs.par_iter().map(|d| replay_with(d, options)).collect()
}

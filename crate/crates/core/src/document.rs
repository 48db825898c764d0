//! Annotated documents: segmented text plus the annotator's relations and
//! complex segments.

use std::cmp::Reverse;

use thiserror::Error;

use crate::sdrs::{build_sdrs, ComplexSegment, Label, LabelId, Origin, RelationInstance, Sdrs, SdrsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("EDU `{id}` has an empty or inverted span {start}..{end}")]
    BadSpan { id: String, start: usize, end: usize },
    #[error("EDUs `{outer}` and `{inner}` overlap without nesting")]
    Overlap { outer: String, inner: String },
    #[error(transparent)]
    Sdrs(#[from] SdrsError),
}

/// An elementary discourse unit with its half-open character span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edu {
    pub id: LabelId,
    pub start: usize,
    pub end: usize,
    pub text: String,
}

impl Edu {
    pub fn new(id: impl Into<LabelId>, start: usize, end: usize, text: impl Into<String>) -> Self {
        Edu {
            id: id.into(),
            start,
            end,
            text: text.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    id: String,
    edus: Vec<Edu>,
    relations: Vec<RelationInstance>,
    segments: Vec<ComplexSegment>,
    graph: Sdrs,
}

impl Document {
    /// Orders EDUs by span start, containers before the EDUs embedded in
    /// them, and validates the annotation. Every relation is taken as
    /// annotated.
    pub fn new(
        id: impl Into<String>,
        mut edus: Vec<Edu>,
        relations: Vec<RelationInstance>,
        segments: Vec<ComplexSegment>,
    ) -> Result<Self, DocumentError> {
        for edu in &edus {
            if edu.start >= edu.end {
                return Err(DocumentError::BadSpan {
                    id: edu.id.to_string(),
                    start: edu.start,
                    end: edu.end,
                });
            }
        }
        edus.sort_by(|a, b| (a.start, Reverse(a.end), &a.id).cmp(&(b.start, Reverse(b.end), &b.id)));
        let mut open: Vec<&Edu> = Vec::new();
        for edu in &edus {
            while open.last().is_some_and(|top| top.end <= edu.start) {
                open.pop();
            }
            if let Some(top) = open.last() {
                if edu.end > top.end || (edu.start, edu.end) == (top.start, top.end) {
                    return Err(DocumentError::Overlap {
                        outer: top.id.to_string(),
                        inner: edu.id.to_string(),
                    });
                }
            }
            open.push(edu);
        }

        let relations: Vec<RelationInstance> = relations
            .into_iter()
            .map(|r| RelationInstance {
                origin: Origin::Annotated,
                ..r
            })
            .collect();
        let labels = edus
            .iter()
            .enumerate()
            .map(|(i, e)| Label::edu(e.id.clone(), i))
            .collect();
        let graph = build_sdrs(labels, relations.clone(), segments.clone())?;
        Ok(Document {
            id: id.into(),
            edus,
            relations,
            segments,
            graph,
        })
    }

    /// A document whose EDUs are given in textual order without text.
    pub fn from_edu_ids<I, L>(
        id: impl Into<String>,
        edu_ids: I,
        relations: Vec<RelationInstance>,
        segments: Vec<ComplexSegment>,
    ) -> Result<Self, DocumentError>
    where
        I: IntoIterator<Item = L>,
        L: Into<LabelId>,
    {
        let edus = edu_ids
            .into_iter()
            .enumerate()
            .map(|(i, id)| Edu::new(id, 10 * i, 10 * i + 9, ""))
            .collect();
        Self::new(id, edus, relations, segments)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// EDUs in textual order.
    pub fn edus(&self) -> &[Edu] {
        &self.edus
    }

    /// Annotated relations, in the order they were given.
    pub fn relations(&self) -> &[RelationInstance] {
        &self.relations
    }

    pub fn segments(&self) -> &[ComplexSegment] {
        &self.segments
    }

    /// The whole annotated graph, without normalization.
    pub fn graph(&self) -> &Sdrs {
        &self.graph
    }
}

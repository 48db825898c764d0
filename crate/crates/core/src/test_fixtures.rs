//! Small hand-built graphs shared by the unit tests.

use crate::relation::RelationType::{self, *};
use crate::sdrs::{build_sdrs, ComplexSegment, Label, RelationInstance, Sdrs};

pub fn edus(ids: &[&str]) -> Vec<Label> {
    ids.iter().enumerate().map(|(i, id)| Label::edu(*id, i)).collect()
}

pub fn rel(r: RelationType, s: &str, t: &str) -> RelationInstance {
    RelationInstance::annotated(r, s, t)
}

/// John's evening: seven EDUs, π′ = [π2, π7], π′′ = [π3, π5].
pub fn graph_two() -> Sdrs {
    build_sdrs(
        edus(&["π1", "π2", "π3", "π4", "π5", "π6", "π7"]),
        vec![
            rel(Elaboration, "π1", "π′"),
            rel(Narration, "π2", "π7"),
            rel(Elaboration, "π2", "π′′"),
            rel(EntityElaboration, "π3", "π4"),
            rel(Narration, "π3", "π5"),
            rel(Background, "π5", "π6"),
        ],
        vec![
            ComplexSegment::new("π′", ["π2", "π7"]),
            ComplexSegment::new("π′′", ["π3", "π5"]),
        ],
    )
    .unwrap()
}

/// The annotator's graph for EDUs 74 to 78, before normalization.
pub fn racaille_to_78() -> Sdrs {
    build_sdrs(
        edus(&["74", "75", "76", "77", "78"]),
        vec![
            rel(Comment, "74", "75"),
            rel(EntityElaboration, "75", "76"),
            rel(Continuation, "75", "77"),
            rel(EntityElaboration, "77", "78"),
        ],
        vec![],
    )
    .unwrap()
}

/// Mary wanted garlic and thyme, after the third EDU.
pub fn mary_after_three() -> Sdrs {
    build_sdrs(
        edus(&["π1", "π2", "π3"]),
        vec![rel(Parallel, "π1", "π2"), rel(Explanation, "π", "π3")],
        vec![ComplexSegment::new("π", ["π1", "π2"])],
    )
    .unwrap()
}

/// e0..e6 with τ = [e2, e3] (rank 1), σ = [τ, e4] (rank 2), ρ = [e4, e5] (rank 1).
pub fn nested_rank_two() -> Sdrs {
    build_sdrs(
        edus(&["e0", "e1", "e2", "e3", "e4", "e5", "e6"]),
        vec![rel(Continuation, "e2", "e3")],
        vec![
            ComplexSegment::new("τ", ["e2", "e3"]),
            ComplexSegment::new("σ", ["τ", "e4"]),
            ComplexSegment::new("ρ", ["e4", "e5"]),
        ],
    )
    .unwrap()
}

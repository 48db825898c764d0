//! Random graphs and documents.

use rand::seq::SliceRandom;
use rand::Rng;
use rightfront::{
    build_sdrs, ComplexSegment, Document, Label, LabelId, RelationInstance, RelationType, Sdrs,
};

pub const MAX_CONSTITUENTS: usize = 12;

/// A random valid graph of at most [`MAX_CONSTITUENTS`] labels: 1 to 8 EDUs,
/// up to 4 segments whose members are drawn from earlier labels (so segments
/// nest and share members), and relations of every category.
pub fn random_sdrs(rng: &mut impl Rng) -> Sdrs {
    let (edus, relations, segments) = random_parts(rng);
    build_sdrs(edus, relations, segments).expect("generator keeps graphs valid")
}

/// Same as [`random_sdrs`] but as raw parts, ready for [`Document::from_edu_ids`].
pub fn random_parts(rng: &mut impl Rng) -> (Vec<Label>, Vec<RelationInstance>, Vec<ComplexSegment>) {
    let n_edus = rng.gen_range(1..=8);
    let n_segments = rng.gen_range(0..=4.min(MAX_CONSTITUENTS - n_edus));
    let edus: Vec<Label> = (0..n_edus).map(|i| Label::edu(format!("e{i}"), i)).collect();

    let mut pool: Vec<LabelId> = edus.iter().map(|l| l.id.clone()).collect();
    let mut segments = Vec::new();
    for k in 0..n_segments {
        let size = rng.gen_range(1..=3.min(pool.len()));
        let members: Vec<LabelId> = pool.choose_multiple(rng, size).cloned().collect();
        let id = LabelId::new(format!("s{k}"));
        segments.push(ComplexSegment::new(id.clone(), members));
        pool.push(id);
    }

    let mut relations: Vec<RelationInstance> = Vec::new();
    if pool.len() >= 2 {
        let attempts = rng.gen_range(0..=2 * pool.len());
        for _ in 0..attempts {
            let pair: Vec<&LabelId> = pool.choose_multiple(rng, 2).collect();
            let rel = *RelationType::ALL.choose(rng).expect("non-empty taxonomy");
            let candidate = RelationInstance::annotated(rel, pair[0].clone(), pair[1].clone());
            if relations.iter().any(|r| r.same_edge(&candidate)) {
                continue;
            }
            relations.push(candidate);
            if build_sdrs(edus.clone(), relations.clone(), segments.clone()).is_err() {
                relations.pop();
            }
        }
    }
    (edus, relations, segments)
}

/// A random document over the same kind of graph.
pub fn random_document(rng: &mut impl Rng, id: &str) -> Document {
    let (edus, relations, segments) = random_parts(rng);
    Document::from_edu_ids(id, edus.into_iter().map(|l| l.id), relations, segments)
        .expect("generated parts form a valid document")
}

pub fn random_corpus(rng: &mut impl Rng, docs: usize) -> Vec<Document> {
    (0..docs)
        .map(|k| random_document(rng, &format!("doc{k}")))
        .collect()
}

//! Synthetic corpora with known right-frontier outcomes.
//!
//! Documents are flat (no complex segments) and contain no `Continuation`,
//! so normalization leaves every prefix untouched and the frontier of a
//! prefix is just LAST plus its subordinating ancestors. The generator
//! tracks that set itself while it plants decisions on or off it, and keeps
//! the outcome of every decision as ground truth.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rightfront::{Document, RelationInstance, RelationType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedDecision {
    pub doc: String,
    /// Index of the attached EDU.
    pub subject: usize,
    /// Index of the earlier EDU it attaches to.
    pub point: usize,
    pub rel: RelationType,
    pub compliant: bool,
    pub exempt: bool,
    /// EDUs between the point and LAST of the prefix before the subject.
    pub distance: usize,
}

#[derive(Clone, Debug)]
pub struct PlantedCorpus {
    pub docs: Vec<Document>,
    pub decisions: Vec<PlantedDecision>,
}

pub fn edu_id(k: usize) -> String {
    format!("u{k}")
}

const COORDINATING: [RelationType; 6] = [
    RelationType::Narration,
    RelationType::Result,
    RelationType::Alternation,
    RelationType::Conditional,
    RelationType::Parallel,
    RelationType::Contrast,
];

/// `docs` documents of `edus` EDUs each. Every EDU after the first attaches
/// to one or two earlier EDUs; roughly `violation_rate` of the decisions
/// pick a point off the frontier when one exists.
pub fn planted_corpus(rng: &mut impl Rng, docs: usize, edus: usize, violation_rate: f64) -> PlantedCorpus {
    let mut out = PlantedCorpus {
        docs: Vec::with_capacity(docs),
        decisions: Vec::new(),
    };
    for d in 0..docs {
        let doc_id = format!("planted-{d:03}");
        let mut relations = Vec::new();
        // Subordinating heads of each EDU so far.
        let mut heads: Vec<Vec<usize>> = vec![Vec::new(); edus];
        for p in 1..edus {
            let frontier = frontier_of(&heads, p - 1);
            let closed: Vec<usize> = (0..p).filter(|q| !frontier.contains(q)).collect();
            let n_decisions = if p >= 2 { rng.gen_range(1..=2) } else { 1 };
            let mut used = BTreeSet::new();
            for _ in 0..n_decisions {
                let off = !closed.is_empty() && rng.gen_bool(violation_rate);
                let pool: Vec<usize> = if off {
                    closed.iter().copied().filter(|q| !used.contains(q)).collect()
                } else {
                    frontier.iter().copied().filter(|q| !used.contains(q)).collect()
                };
                let Some(&q) = pool.choose(rng) else { continue };
                used.insert(q);
                let rel = if rng.gen_bool(0.5) {
                    *RelationType::ALL
                        .iter()
                        .filter(|r| r.is_subordinating())
                        .collect::<Vec<_>>()
                        .choose(rng)
                        .copied()
                        .expect("subordinating relations exist")
                } else {
                    *COORDINATING.choose(rng).expect("non-empty")
                };
                relations.push(RelationInstance::annotated(rel, edu_id(q), edu_id(p)));
                out.decisions.push(PlantedDecision {
                    doc: doc_id.clone(),
                    subject: p,
                    point: q,
                    rel,
                    compliant: frontier.contains(&q),
                    exempt: rel.is_structural(),
                    distance: p - 1 - q,
                });
            }
            // Record heads only after all of p's decisions were drawn
            // against the prefix before p.
            for r in relations.iter().filter(|r| r.target.as_str() == edu_id(p)) {
                if r.rel.is_subordinating() {
                    let q: usize = r.source.as_str()[1..].parse().expect("generated id");
                    heads[p].push(q);
                }
            }
        }
        let doc = Document::from_edu_ids(doc_id, (0..edus).map(edu_id), relations, vec![])
            .expect("planted documents are valid");
        out.docs.push(doc);
    }
    out
}

fn frontier_of(heads: &[Vec<usize>], last: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([last]);
    let mut stack = vec![last];
    while let Some(x) = stack.pop() {
        for &h in &heads[x] {
            if seen.insert(h) {
                stack.push(h);
            }
        }
    }
    seen
}

impl PlantedCorpus {
    fn scored(&self) -> impl Iterator<Item = &PlantedDecision> {
        self.decisions.iter().filter(|d| !d.exempt)
    }

    pub fn expected_rfc_r(&self) -> f64 {
        let total = self.scored().count();
        self.scored().filter(|d| d.compliant).count() as f64 / total as f64
    }

    pub fn expected_rfc_edu(&self) -> f64 {
        let mut attached: BTreeMap<(&str, usize), bool> = BTreeMap::new();
        for d in self.scored() {
            *attached.entry((&d.doc, d.subject)).or_insert(false) |= d.compliant;
        }
        attached.values().filter(|&&a| a).count() as f64 / attached.len() as f64
    }

    pub fn expected_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for d in self.scored() {
            *h.entry(d.distance).or_insert(0) += 1;
        }
        h
    }

    pub fn expected_violations_per_doc(&self) -> BTreeMap<String, usize> {
        let mut v: BTreeMap<String, usize> = self.docs.iter().map(|d| (d.id().to_string(), 0)).collect();
        for d in self.scored().filter(|d| !d.compliant) {
            *v.get_mut(&d.doc).expect("known document") += 1;
        }
        v
    }
}

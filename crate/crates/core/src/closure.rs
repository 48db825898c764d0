//! Normalization of annotator-produced graphs.
//!
//! Annotators routinely leave out structure that the theory implies. Three
//! rules put it back:
//!
//! * **coherence**: adjacent members of a complex segment that are not
//!   connected inside the segment get a `Continuation` between them;
//! * **expansion**: `R(a, b)` followed by a `Continuation` chain `b, c, …`
//!   becomes `R(a, [b, c, …])`;
//! * **factoring**: `R(a, σ)` for a distributive `R` and a segment σ whose
//!   members are chained by `Continuation` implies `R(a, m)` for each member.
//!
//! [`normalize`] applies the three until nothing changes. Everything added is
//! marked with an inferred [`Origin`].

use std::collections::BTreeSet;

use thiserror::Error;

use crate::relation::RelationType;
use crate::sdrs::{build_sdrs, ComplexSegment, LabelId, Origin, RelationInstance, Sdrs};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error("normalization did not reach a fixpoint within {passes} passes")]
    NonTermination { passes: usize },
}

const DISTRIBUTIVE: [RelationType; 5] = [
    RelationType::Elaboration,
    RelationType::EntityElaboration,
    RelationType::Frame,
    RelationType::Attribution,
    RelationType::Comment,
];

pub fn is_distributive(rel: RelationType) -> bool {
    DISTRIBUTIVE.contains(&rel)
}

fn rebuild(g: &Sdrs, extra: Vec<RelationInstance>) -> Sdrs {
    let (edus, mut relations, segments) = g.to_parts();
    relations.extend(extra);
    build_sdrs(edus, relations, segments).expect("added relations keep the graph valid")
}

/// Connects adjacent members of each segment with `Continuation` unless some
/// undirected path inside the segment already links them.
pub fn ensure_continuation_coherence(g: &Sdrs) -> Sdrs {
    let mut added: Vec<(usize, usize)> = Vec::new();
    for seg in (0..g.len()).filter(|&v| g.is_segment(v)) {
        let members = g.members_of(seg);
        if members.len() < 2 {
            continue;
        }
        let local = |v: usize| members.iter().position(|&m| m == v);
        let mut parent: Vec<usize> = (0..members.len()).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        fn join(parent: &mut [usize], a: usize, b: usize) {
            let (ra, rb) = (find(parent, a), find(parent, b));
            parent[ra] = rb;
        }
        for &(s, t) in g.endpoints().iter().chain(added.iter()) {
            if let (Some(a), Some(b)) = (local(s), local(t)) {
                join(&mut parent, a, b);
            }
        }
        for (a, &m) in members.iter().enumerate() {
            for &inner in g.members_of(m) {
                if let Some(b) = local(inner) {
                    join(&mut parent, a, b);
                }
            }
        }
        for k in 1..members.len() {
            if find(&mut parent, k - 1) != find(&mut parent, k) {
                added.push((members[k - 1], members[k]));
                join(&mut parent, k - 1, k);
            }
        }
    }
    if added.is_empty() {
        return g.clone();
    }
    let extra = added
        .into_iter()
        .map(|(x, y)| {
            RelationInstance::new(
                RelationType::Continuation,
                g.node(x).id.clone(),
                g.node(y).id.clone(),
                Origin::InferredContinuation,
            )
        })
        .collect();
    rebuild(g, extra)
}

/// Lifts `R(a, b)` to `R(a, [b, c, …])` when `b` starts a rightward
/// `Continuation` chain of at least two constituents that no existing segment
/// already groups. Longer chains are grouped first; a chain inside a segment
/// created earlier in the same pass is left alone.
pub fn expand_continuations(g: &Sdrs) -> Sdrs {
    let n = g.len();
    let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (rel, &(s, t)) in g.relations().iter().zip(g.endpoints()) {
        if rel.rel == RelationType::Continuation {
            successors[s].push(t);
        }
    }
    for list in &mut successors {
        list.sort_by_key(|&v| (g.span_of(v).0, g.node(v).id.clone()));
    }

    // chain -> relation indices to lift onto it
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (k, (rel, &(s, t))) in g.relations().iter().zip(g.endpoints()).enumerate() {
        if rel.rel == RelationType::Continuation || successors[t].is_empty() {
            continue;
        }
        let mut chain = vec![t];
        let mut cur = t;
        while let Some(&next) = successors[cur].iter().find(|v| !chain.contains(v)) {
            chain.push(next);
            cur = next;
        }
        if chain.contains(&s) {
            continue;
        }
        match groups.iter_mut().find(|(c, _)| *c == chain) {
            Some((_, rels)) => rels.push(k),
            None => groups.push((chain, vec![k])),
        }
    }
    if groups.is_empty() {
        return g.clone();
    }
    groups.sort_by_key(|(chain, rels)| (std::cmp::Reverse(chain.len()), g.span_of(chain[0]).0, rels[0]));

    let (edus, mut relations, mut segments) = g.to_parts();
    let mut current: Option<Sdrs> = None;
    for (chain, rels) in groups {
        let chain_ids: BTreeSet<&LabelId> = chain.iter().map(|&v| &g.node(v).id).collect();
        let covered = segments
            .iter()
            .any(|seg| chain_ids.iter().all(|id| seg.members.contains(id)));
        if covered {
            continue;
        }
        let id = fresh_segment_id(g, &segments, &chain);
        let mut next_relations = relations.clone();
        for &k in &rels {
            let original = &g.relations()[k];
            let lifted = RelationInstance::new(
                original.rel,
                original.source.clone(),
                id.clone(),
                Origin::InferredExpansion,
            );
            if let Some(slot) = next_relations.iter_mut().find(|r| r.same_edge(original)) {
                *slot = lifted;
            }
        }
        let mut next_segments = segments.clone();
        next_segments.push(ComplexSegment::new(
            id,
            chain.iter().map(|&v| g.node(v).id.clone()),
        ));
        // A lift that would close a dominance cycle is skipped.
        if let Ok(built) = build_sdrs(edus.clone(), next_relations.clone(), next_segments.clone()) {
            relations = next_relations;
            segments = next_segments;
            current = Some(built);
        }
    }
    current.unwrap_or_else(|| g.clone())
}

fn fresh_segment_id(g: &Sdrs, pending: &[ComplexSegment], chain: &[usize]) -> LabelId {
    let names: Vec<&str> = chain.iter().map(|&v| g.node(v).id.as_str()).collect();
    let mut id = format!("[{}]", names.join(","));
    while g.contains(&id) || pending.iter().any(|s| s.id.as_str() == id) {
        id.push('\'');
    }
    LabelId::new(id)
}

/// Whether consecutive members of a segment are all joined by `Continuation`
/// (in either direction). Single-member segments do not qualify.
fn continuation_linked(g: &Sdrs, seg: usize) -> bool {
    let members = g.members_of(seg);
    members.len() >= 2
        && members.windows(2).all(|pair| {
            g.relations().iter().zip(g.endpoints()).any(|(rel, &(s, t))| {
                rel.rel == RelationType::Continuation
                    && ((s, t) == (pair[0], pair[1]) || (t, s) == (pair[0], pair[1]))
            })
        })
}

/// For each distributive `R(a, σ)` with σ a `Continuation`-linked segment,
/// adds `R(a, m)` for every direct member `m` of σ.
pub fn factor_distributive(g: &Sdrs) -> Sdrs {
    let mut extra: Vec<RelationInstance> = Vec::new();
    for (rel, &(s, t)) in g.relations().iter().zip(g.endpoints()) {
        if !is_distributive(rel.rel) || !g.is_segment(t) || !continuation_linked(g, t) {
            continue;
        }
        for &m in g.members_of(t) {
            if m == s {
                continue;
            }
            let candidate = RelationInstance::new(
                rel.rel,
                rel.source.clone(),
                g.node(m).id.clone(),
                Origin::InferredFactoring,
            );
            let exists = g
                .relations()
                .iter()
                .chain(extra.iter())
                .any(|r| r.same_edge(&candidate));
            if !exists {
                extra.push(candidate);
            }
        }
    }
    if extra.is_empty() {
        return g.clone();
    }
    rebuild(g, extra)
}

/// Applies coherence, expansion and factoring until a fixpoint. Gives up
/// after twice as many passes as the input has constituents.
pub fn normalize(g: &Sdrs) -> Result<Sdrs, ClosureError> {
    normalize_with_cap(g, 2 * g.len())
}

pub(crate) fn normalize_with_cap(g: &Sdrs, cap: usize) -> Result<Sdrs, ClosureError> {
    let mut current = g.clone();
    for _ in 0..cap {
        let next = factor_distributive(&expand_continuations(&ensure_continuation_coherence(&current)));
        if next == current {
            return Ok(current);
        }
        current = next;
    }
    Err(ClosureError::NonTermination { passes: cap })
}

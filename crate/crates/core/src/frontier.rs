//! Right frontier computation.
//!
//! A label γ dominates α (written α < γ) when γ is a complex segment with α
//! among its members, or when some subordinating relation R(γ, α) holds.
//! The right frontier from a start label is the start plus everything that
//! dominates it transitively. For every complex segment on the frontier, the
//! frontier of the sub-structure induced by its members is added as well
//! (the segment's *open constituents*); those nodes are only available for
//! subordinating attachments unless the gate says otherwise.
//!
//! Disconnected graphs get one frontier per weakly connected component, each
//! anchored at the component's own LAST, and the results are unioned.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::relation::RelationType;
use crate::sdrs::{LabelId, Sdrs, SdrsError};

/// Why a label is on the frontier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    Last,
    /// A complex segment directly containing the start label.
    Outscopes,
    /// First argument of a subordinating relation whose second argument is the start label.
    SubordinatingParent,
    TransitiveClosure,
    OpenConstituent,
    DisjointComponent,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Last => "Last",
            Provenance::Outscopes => "Outscopes",
            Provenance::SubordinatingParent => "SubordinatingParent",
            Provenance::TransitiveClosure => "TransitiveClosure",
            Provenance::OpenConstituent => "OpenConstituent",
            Provenance::DisjointComponent => "DisjointComponent",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierEntry {
    pub label: LabelId,
    pub provenance: Provenance,
}

/// Frontier nodes ordered by breadth-first distance from the start, ties by
/// descending textual position; open constituents follow the nodes of the
/// segment that exposes them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrontierSet {
    entries: Vec<FrontierEntry>,
}

impl FrontierSet {
    pub fn entries(&self) -> &[FrontierEntry] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &FrontierEntry> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entries.iter().any(|e| e.label.as_str() == id)
    }

    pub fn provenance(&self, id: &str) -> Option<Provenance> {
        self.entries
            .iter()
            .find(|e| e.label.as_str() == id)
            .map(|e| e.provenance)
    }

    pub fn labels(&self) -> Vec<&LabelId> {
        self.entries.iter().map(|e| &e.label).collect()
    }

    pub fn label_set(&self) -> BTreeSet<LabelId> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    fn from_indexed(g: &Sdrs, entries: &[(usize, Provenance)]) -> Self {
        FrontierSet {
            entries: entries
                .iter()
                .map(|&(v, provenance)| FrontierEntry {
                    label: g.node(v).id.clone(),
                    provenance,
                })
                .collect(),
        }
    }
}

/// Which attachments may use the open constituents of frontier segments.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OpenConstituentGate {
    /// Only subordinating attachments.
    #[default]
    SubordinatingOnly,
    /// Every non-structural attachment.
    AllNonStructural,
}

impl OpenConstituentGate {
    pub fn admits(self, incoming: RelationType) -> bool {
        match self {
            OpenConstituentGate::SubordinatingOnly => incoming.is_subordinating(),
            OpenConstituentGate::AllNonStructural => true,
        }
    }
}

/// The labels γ with α < γ.
pub fn dominance_parents(g: &Sdrs, alpha: &str) -> Result<BTreeSet<LabelId>, SdrsError> {
    let a = g.require(alpha)?;
    Ok(g.containers_of(a)
        .iter()
        .chain(g.subordinating_parents_of(a))
        .map(|&v| g.node(v).id.clone())
        .collect())
}

pub fn right_frontier(g: &Sdrs, start: &str) -> Result<FrontierSet, SdrsError> {
    let s = g.require(start)?;
    Ok(FrontierSet::from_indexed(g, &frontier_from(g, s)))
}

/// Frontier of a possibly disconnected graph: the union of the per-component
/// frontiers. Nodes contributed by components other than the one holding LAST
/// are marked [`Provenance::DisjointComponent`], except open constituents,
/// which keep their provenance so the attachment gate still applies to them.
pub fn right_frontier_union(g: &Sdrs) -> FrontierSet {
    FrontierSet::from_indexed(g, &union_indexed(g))
}

pub fn available_attachment_points(g: &Sdrs, incoming: RelationType) -> BTreeSet<LabelId> {
    available_attachment_points_with(g, incoming, OpenConstituentGate::default())
}

pub fn available_attachment_points_with(
    g: &Sdrs,
    incoming: RelationType,
    gate: OpenConstituentGate,
) -> BTreeSet<LabelId> {
    if incoming.is_structural() {
        return g.labels().iter().map(|l| l.id.clone()).collect();
    }
    let open = gate.admits(incoming);
    right_frontier_union(g)
        .entries
        .into_iter()
        .filter(|e| open || e.provenance != Provenance::OpenConstituent)
        .map(|e| e.label)
        .collect()
}

pub(crate) fn union_indexed(g: &Sdrs) -> Vec<(usize, Provenance)> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for (k, (_, last)) in g.component_indices().into_iter().enumerate() {
        for (v, provenance) in frontier_from(g, last) {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            let provenance = match provenance {
                Provenance::OpenConstituent => provenance,
                _ if k > 0 => Provenance::DisjointComponent,
                _ => provenance,
            };
            out.push((v, provenance));
        }
    }
    out
}

/// Closure of `start` under dominance, followed by open constituents of every
/// segment reached.
fn frontier_from(g: &Sdrs, start: usize) -> Vec<(usize, Provenance)> {
    let mut entries = dominance_closure(g, None, start);
    let mut present = vec![false; g.len()];
    for &(v, _) in &entries {
        present[v] = true;
    }
    let mut expanded = vec![false; g.len()];
    let mut i = 0;
    while i < entries.len() {
        let seg = entries[i].0;
        i += 1;
        if !g.is_segment(seg) || std::mem::replace(&mut expanded[seg], true) {
            continue;
        }
        let mut inside = vec![false; g.len()];
        for &m in g.members_of(seg) {
            inside[m] = true;
        }
        for (v, _) in dominance_closure(g, Some(&inside), open_start(g, seg)) {
            if !std::mem::replace(&mut present[v], true) {
                entries.push((v, Provenance::OpenConstituent));
            }
        }
    }
    entries
}

/// The member of a segment that plays LAST inside it: the one reaching
/// furthest into the text, preferring EDUs, then lower rank.
pub(crate) fn open_start(g: &Sdrs, seg: usize) -> usize {
    *g.members_of(seg)
        .iter()
        .min_by_key(|&&m| {
            (
                std::cmp::Reverse(g.span_of(m).1),
                g.is_segment(m),
                g.rank_of(m),
                &g.node(m).id,
            )
        })
        .expect("segments are non-empty")
}

fn dominance_closure(g: &Sdrs, within: Option<&[bool]>, start: usize) -> Vec<(usize, Provenance)> {
    let allowed = |v: usize| within.is_none_or(|mask| mask[v]);
    let mut dist = vec![usize::MAX; g.len()];
    let mut found = vec![(start, Provenance::Last)];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v] + 1;
        let parents = g
            .containers_of(v)
            .iter()
            .map(|&p| (p, Provenance::Outscopes))
            .chain(
                g.subordinating_parents_of(v)
                    .iter()
                    .map(|&p| (p, Provenance::SubordinatingParent)),
            );
        for (p, direct) in parents {
            if !allowed(p) || dist[p] != usize::MAX {
                continue;
            }
            dist[p] = d;
            let provenance = if d == 1 {
                direct
            } else {
                Provenance::TransitiveClosure
            };
            found.push((p, provenance));
            queue.push_back(p);
        }
    }
    found.sort_by_key(|&(v, _)| {
        (
            dist[v],
            std::cmp::Reverse(g.span_of(v).1),
            g.is_segment(v),
            g.node(v).id.clone(),
        )
    });
    found
}

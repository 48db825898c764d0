//! Segmented discourse representation structures.
//!
//! An [`Sdrs`] holds the labels of a discourse (EDUs and complex segments),
//! the typed relations between them, the membership ("outscoping") structure
//! of complex segments, and the LAST label. Values are validated on
//! construction and immutable afterwards; the normalization passes in
//! [`crate::closure`] produce new values instead of editing in place.

use std::borrow::Borrow;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::relation::RelationType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SdrsError {
    #[error("document has no EDUs")]
    EmptyDocument,
    #[error("duplicate label id `{0}`")]
    DuplicateId(String),
    #[error("EDUs `{0}` and `{1}` share order index {2}")]
    DuplicateOrder(String, String, usize),
    #[error("label `{0}` is passed as an EDU but is a complex segment")]
    NotAnEdu(String),
    #[error("`{referrer}` refers to unknown label `{missing}`")]
    DanglingEndpoint { referrer: String, missing: String },
    #[error("complex segment `{0}` has no members")]
    EmptySegment(String),
    #[error("complex segment `{0}` contains itself")]
    MembershipCycle(String),
    #[error("{rel} relation from `{label}` to itself")]
    SelfRelation { rel: RelationType, label: String },
    #[error("subordination and membership form a cycle through `{0}`")]
    DominanceCycle(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("unknown relation name `{0}`")]
    UnknownRelationName(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabelId(String);

impl LabelId {
    pub fn new(id: impl Into<String>) -> Self {
        LabelId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for LabelId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for LabelId {
    fn from(s: &str) -> Self {
        LabelId(s.to_string())
    }
}

impl From<String> for LabelId {
    fn from(s: String) -> Self {
        LabelId(s)
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelKind {
    /// An elementary discourse unit at a 0-based textual position.
    Edu {
        order: usize,
    },
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub id: LabelId,
    pub kind: LabelKind,
}

impl Label {
    pub fn edu(id: impl Into<LabelId>, order: usize) -> Self {
        Label {
            id: id.into(),
            kind: LabelKind::Edu { order },
        }
    }

    pub fn complex(id: impl Into<LabelId>) -> Self {
        Label {
            id: id.into(),
            kind: LabelKind::Complex,
        }
    }

    pub fn is_edu(&self) -> bool {
        matches!(self.kind, LabelKind::Edu { .. })
    }

    pub fn order_index(&self) -> Option<usize> {
        match self.kind {
            LabelKind::Edu { order } => Some(order),
            LabelKind::Complex => None,
        }
    }
}

/// Where a relation instance came from. Only annotated relations are
/// attachment decisions; inferred ones only shape the frontier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Origin {
    Annotated,
    InferredContinuation,
    InferredExpansion,
    InferredFactoring,
}

/// `rel(source, target)`: `source` is the attachment point, `target` the
/// attached constituent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationInstance {
    pub rel: RelationType,
    pub source: LabelId,
    pub target: LabelId,
    pub origin: Origin,
}

impl RelationInstance {
    pub fn new(
        rel: RelationType,
        source: impl Into<LabelId>,
        target: impl Into<LabelId>,
        origin: Origin,
    ) -> Self {
        RelationInstance {
            rel,
            source: source.into(),
            target: target.into(),
            origin,
        }
    }

    pub fn annotated(rel: RelationType, source: impl Into<LabelId>, target: impl Into<LabelId>) -> Self {
        Self::new(rel, source, target, Origin::Annotated)
    }

    pub fn is_annotated(&self) -> bool {
        self.origin == Origin::Annotated
    }

    /// Same relation type and endpoints, ignoring origin.
    pub fn same_edge(&self, other: &RelationInstance) -> bool {
        self.rel == other.rel && self.source == other.source && self.target == other.target
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.rel, self.source, self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexSegment {
    pub id: LabelId,
    /// Ordered by the textual position of the earliest contained EDU.
    pub members: Vec<LabelId>,
}

impl ComplexSegment {
    pub fn new<I, L>(id: impl Into<LabelId>, members: I) -> Self
    where
        I: IntoIterator<Item = L>,
        L: Into<LabelId>,
    {
        ComplexSegment {
            id: id.into(),
            members: members.into_iter().map(Into::into).collect(),
        }
    }
}

/// A weakly connected part of an [`Sdrs`] together with its own LAST.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub labels: Vec<LabelId>,
    pub last: LabelId,
}

/// The tuple ⟨A, F, LAST⟩ with F given extensionally as relation edges plus
/// segment membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sdrs {
    // EDUs by order index, then complex segments by id.
    nodes: Vec<Label>,
    by_id: BTreeMap<LabelId, usize>,
    relations: Vec<RelationInstance>,
    endpoints: Vec<(usize, usize)>,
    segments: Vec<ComplexSegment>,
    last: usize,
    members: Vec<Vec<usize>>,
    containers: Vec<Vec<usize>>,
    sub_parents: Vec<Vec<usize>>,
    span: Vec<(usize, usize)>,
    rank: Vec<usize>,
}

/// Builds and validates an [`Sdrs`]. LAST is the EDU with the highest order
/// index. Duplicate relations (same type and endpoints) are merged, keeping
/// the annotated origin when there is one.
pub fn build_sdrs(
    edus: Vec<Label>,
    relations: Vec<RelationInstance>,
    segments: Vec<ComplexSegment>,
) -> Result<Sdrs, SdrsError> {
    if edus.is_empty() {
        return Err(SdrsError::EmptyDocument);
    }
    let mut edus = edus;
    for edu in &edus {
        if !edu.is_edu() {
            return Err(SdrsError::NotAnEdu(edu.id.to_string()));
        }
    }
    edus.sort_by_key(|l| l.order_index());
    for pair in edus.windows(2) {
        if pair[0].order_index() == pair[1].order_index() {
            return Err(SdrsError::DuplicateOrder(
                pair[0].id.to_string(),
                pair[1].id.to_string(),
                pair[0].order_index().unwrap_or_default(),
            ));
        }
    }

    let mut segments = segments;
    segments.sort_by(|a, b| a.id.cmp(&b.id));

    let mut nodes = edus;
    nodes.extend(segments.iter().map(|s| Label::complex(s.id.clone())));
    let mut by_id = BTreeMap::new();
    for (i, node) in nodes.iter().enumerate() {
        if by_id.insert(node.id.clone(), i).is_some() {
            return Err(SdrsError::DuplicateId(node.id.to_string()));
        }
    }
    let n = nodes.len();
    let edu_count = n - segments.len();

    let resolve = |referrer: &LabelId, id: &LabelId| {
        by_id.get(id).copied().ok_or_else(|| SdrsError::DanglingEndpoint {
            referrer: referrer.to_string(),
            missing: id.to_string(),
        })
    };

    let mut members = vec![Vec::new(); n];
    for (k, seg) in segments.iter().enumerate() {
        if seg.members.is_empty() {
            return Err(SdrsError::EmptySegment(seg.id.to_string()));
        }
        let own = edu_count + k;
        let mut list = Vec::with_capacity(seg.members.len());
        for m in &seg.members {
            let idx = resolve(&seg.id, m)?;
            if idx == own {
                return Err(SdrsError::MembershipCycle(seg.id.to_string()));
            }
            list.push(idx);
        }
        list.sort_unstable();
        list.dedup();
        members[own] = list;
    }
    if let Some(node) = find_cycle(n, |v| members[v].iter().copied()) {
        return Err(SdrsError::MembershipCycle(nodes[node].id.to_string()));
    }

    let mut keyed = Vec::with_capacity(relations.len());
    for rel in relations {
        let referrer = LabelId::new(rel.to_string());
        let s = resolve(&referrer, &rel.source)?;
        let t = resolve(&referrer, &rel.target)?;
        if s == t {
            return Err(SdrsError::SelfRelation {
                rel: rel.rel,
                label: rel.source.to_string(),
            });
        }
        keyed.push(((s, t, rel.rel, rel.origin), rel));
    }
    keyed.sort_by_key(|a| a.0);
    keyed.dedup_by(|later, earlier| {
        (later.0 .0, later.0 .1, later.0 .2) == (earlier.0 .0, earlier.0 .1, earlier.0 .2)
    });
    let endpoints: Vec<(usize, usize)> = keyed.iter().map(|(k, _)| (k.0, k.1)).collect();
    let relations: Vec<RelationInstance> = keyed.into_iter().map(|(_, r)| r).collect();

    let mut containers = vec![Vec::new(); n];
    for (seg, list) in members.iter().enumerate() {
        for &m in list {
            containers[m].push(seg);
        }
    }
    let mut sub_parents = vec![Vec::new(); n];
    for (rel, &(s, t)) in relations.iter().zip(&endpoints) {
        if rel.rel.is_subordinating() {
            sub_parents[t].push(s);
        }
    }
    for list in &mut sub_parents {
        list.sort_unstable();
        list.dedup();
    }
    if let Some(node) = find_cycle(n, |v| containers[v].iter().chain(sub_parents[v].iter()).copied()) {
        return Err(SdrsError::DominanceCycle(nodes[node].id.to_string()));
    }

    // Spans and ranks; the membership graph is acyclic here.
    let mut span = vec![(usize::MAX, 0); n];
    let mut rank = vec![0; n];
    let mut done = vec![false; n];
    for v in 0..n {
        fill_span(v, &nodes, &members, &mut span, &mut rank, &mut done);
    }

    for (k, seg) in segments.iter_mut().enumerate() {
        let list = &mut members[edu_count + k];
        list.sort_by_key(|&m| (span[m].0, !nodes[m].is_edu(), span[m].1, nodes[m].id.clone()));
        seg.members = list.iter().map(|&m| nodes[m].id.clone()).collect();
    }

    Ok(Sdrs {
        last: edu_count - 1,
        nodes,
        by_id,
        relations,
        endpoints,
        segments,
        members,
        containers,
        sub_parents,
        span,
        rank,
    })
}

fn fill_span(
    v: usize,
    nodes: &[Label],
    members: &[Vec<usize>],
    span: &mut [(usize, usize)],
    rank: &mut [usize],
    done: &mut [bool],
) {
    if done[v] {
        return;
    }
    match nodes[v].kind {
        LabelKind::Edu { order } => {
            span[v] = (order, order);
        }
        LabelKind::Complex => {
            let mut lo = usize::MAX;
            let mut hi = 0;
            let mut r = 0;
            for &m in &members[v] {
                fill_span(m, nodes, members, span, rank, done);
                lo = lo.min(span[m].0);
                hi = hi.max(span[m].1);
                r = r.max(rank[m]);
            }
            span[v] = (lo, hi);
            rank[v] = r + 1;
        }
    }
    done[v] = true;
}

/// Returns a node on a cycle of the directed graph, if any.
fn find_cycle<F, I>(n: usize, succ: F) -> Option<usize>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, succ(root).collect())];
        mark[root] = Mark::Active;
        while let Some((v, pending)) = stack.last_mut() {
            let v = *v;
            match pending.pop() {
                Some(w) => match mark[w] {
                    Mark::Active => return Some(w),
                    Mark::New => {
                        mark[w] = Mark::Active;
                        let next = succ(w).collect();
                        stack.push((w, next));
                    }
                    Mark::Done => {}
                },
                None => {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
    }
    None
}

impl Sdrs {
    pub fn labels(&self) -> &[Label] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn label(&self, id: &str) -> Option<&Label> {
        self.by_id.get(id).map(|&i| &self.nodes[i])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.by_id.contains_key(id)
    }

    pub fn last(&self) -> &Label {
        &self.nodes[self.last]
    }

    /// EDUs in textual order.
    pub fn edus(&self) -> impl Iterator<Item = &Label> {
        self.nodes.iter().filter(|l| l.is_edu())
    }

    pub fn relations(&self) -> &[RelationInstance] {
        &self.relations
    }

    pub fn segments(&self) -> &[ComplexSegment] {
        &self.segments
    }

    pub fn segment(&self, id: &str) -> Option<&ComplexSegment> {
        self.segments
            .binary_search_by(|s| s.id.as_str().cmp(id))
            .ok()
            .map(|k| &self.segments[k])
    }

    /// Lowest and highest order index of the EDUs a label covers.
    pub fn edu_span(&self, id: &str) -> Option<(usize, usize)> {
        self.by_id.get(id).map(|&i| self.span[i])
    }

    /// 0 for EDUs, one more than the highest member rank for segments.
    pub fn rank(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).map(|&i| self.rank[i])
    }

    /// All EDUs transitively contained in a label (the label itself for an EDU).
    pub fn edus_within(&self, id: &str) -> Option<Vec<LabelId>> {
        let root = *self.by_id.get(id)?;
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![root];
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            if self.nodes[v].is_edu() {
                out.push(v);
            }
            stack.extend(self.members[v].iter().copied());
        }
        out.sort_unstable();
        Some(out.into_iter().map(|v| self.nodes[v].id.clone()).collect())
    }

    /// Decomposes back into the inputs accepted by [`build_sdrs`].
    pub fn to_parts(&self) -> (Vec<Label>, Vec<RelationInstance>, Vec<ComplexSegment>) {
        (
            self.edus().cloned().collect(),
            self.relations.clone(),
            self.segments.clone(),
        )
    }

    pub(crate) fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize, SdrsError> {
        self.index_of(id)
            .ok_or_else(|| SdrsError::UnknownLabel(id.to_string()))
    }

    pub(crate) fn node(&self, i: usize) -> &Label {
        &self.nodes[i]
    }

    pub(crate) fn last_index(&self) -> usize {
        self.last
    }

    pub(crate) fn members_of(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    pub(crate) fn containers_of(&self, i: usize) -> &[usize] {
        &self.containers[i]
    }

    pub(crate) fn subordinating_parents_of(&self, i: usize) -> &[usize] {
        &self.sub_parents[i]
    }

    pub(crate) fn span_of(&self, i: usize) -> (usize, usize) {
        self.span[i]
    }

    pub(crate) fn rank_of(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub(crate) fn endpoints(&self) -> &[(usize, usize)] {
        &self.endpoints
    }

    pub(crate) fn is_segment(&self, i: usize) -> bool {
        !self.nodes[i].is_edu()
    }

    /// Weakly connected components over relation and membership edges, as
    /// index lists. The component holding LAST comes first, the rest by
    /// descending order of their own LAST.
    pub(crate) fn component_indices(&self) -> Vec<(Vec<usize>, usize)> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for &(s, t) in &self.endpoints {
            union(s, t);
        }
        for (seg, list) in self.members.iter().enumerate() {
            for &m in list {
                union(seg, m);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let root = find(&mut parent, v);
            groups.entry(root).or_default().push(v);
        }
        let mut out: Vec<(Vec<usize>, usize)> = groups
            .into_values()
            .map(|labels| {
                // Every component holds an EDU: segments are non-empty and
                // connected to their members.
                let last = labels
                    .iter()
                    .copied()
                    .filter(|&v| self.nodes[v].is_edu())
                    .max_by_key(|&v| self.span[v].1)
                    .expect("component without EDU");
                (labels, last)
            })
            .collect();
        out.sort_by_key(|&(_, last)| std::cmp::Reverse(self.span[last].1));
        out
    }
}

/// Whether `gamma` is a complex segment with `alpha` among its members.
pub fn i_outscopes(g: &Sdrs, gamma: &str, alpha: &str) -> Result<bool, SdrsError> {
    let gi = g.require(gamma)?;
    let ai = g.require(alpha)?;
    Ok(g.members[gi].contains(&ai))
}

pub fn components(g: &Sdrs) -> Vec<Component> {
    g.component_indices()
        .into_iter()
        .map(|(labels, last)| Component {
            labels: labels.into_iter().map(|v| g.nodes[v].id.clone()).collect(),
            last: g.nodes[last].id.clone(),
        })
        .collect()
}

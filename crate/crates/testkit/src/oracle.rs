//! Brute-force frontier, for cross-checking the library.
//!
//! Works from the public surface of an [`Sdrs`] only (labels, relations,
//! segment member lists) and enumerates every upward dominance path instead
//! of running a graph search.

use std::collections::{BTreeMap, BTreeSet};

use rightfront::{LabelId, Sdrs};

/// For each frontier label: `true` when it is only reachable as an open
/// constituent of some frontier segment.
pub type OracleFrontier = BTreeMap<LabelId, bool>;

struct View<'a> {
    g: &'a Sdrs,
    segments: BTreeMap<&'a LabelId, &'a [LabelId]>,
}

impl<'a> View<'a> {
    fn new(g: &'a Sdrs) -> Self {
        let segments = g
            .segments()
            .iter()
            .map(|s| (&s.id, s.members.as_slice()))
            .collect();
        View { g, segments }
    }

    /// Labels γ with x < γ: containing segments and subordinating heads.
    fn parents(&self, x: &LabelId) -> Vec<&'a LabelId> {
        let mut out: Vec<&LabelId> = self
            .segments
            .iter()
            .filter(|(_, members)| members.contains(x))
            .map(|(id, _)| *id)
            .collect();
        for r in self.g.relations() {
            if r.rel.is_subordinating() && &r.target == x {
                out.push(&r.source);
            }
        }
        out
    }

    /// Order indices of all EDUs a label covers.
    fn orders(&self, x: &LabelId) -> BTreeSet<usize> {
        match self.segments.get(x) {
            Some(members) => members.iter().flat_map(|m| self.orders(m)).collect(),
            None => self
                .g
                .labels()
                .iter()
                .find(|l| &l.id == x)
                .and_then(|l| l.order_index())
                .into_iter()
                .collect(),
        }
    }

    fn rank(&self, x: &LabelId) -> usize {
        match self.segments.get(x) {
            Some(members) => 1 + members.iter().map(|m| self.rank(m)).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Every label on some path start → parent → parent …, staying in `within`.
    fn all_paths(&self, start: &LabelId, within: Option<&BTreeSet<&LabelId>>) -> BTreeSet<LabelId> {
        let mut seen = BTreeSet::new();
        let mut path = vec![start.clone()];
        self.walk(&mut path, within, &mut seen);
        seen
    }

    fn walk(
        &self,
        path: &mut Vec<LabelId>,
        within: Option<&BTreeSet<&LabelId>>,
        seen: &mut BTreeSet<LabelId>,
    ) {
        let here = path.last().expect("paths are non-empty").clone();
        seen.insert(here.clone());
        for p in self.parents(&here) {
            if within.is_some_and(|w| !w.contains(p)) || path.contains(p) {
                continue;
            }
            path.push(p.clone());
            self.walk(path, within, seen);
            path.pop();
        }
    }

    /// The member of a segment reaching furthest right; EDUs before
    /// segments, then lower rank, then id.
    fn inner_last(&self, seg: &LabelId) -> LabelId {
        let members = self.segments[seg];
        let key = |m: &LabelId| {
            let right = self.orders(m).into_iter().max().unwrap_or(0);
            (
                std::cmp::Reverse(right),
                self.segments.contains_key(m),
                self.rank(m),
                m.clone(),
            )
        };
        members
            .iter()
            .min_by_key(|m| key(m))
            .expect("segments are non-empty")
            .clone()
    }

    fn frontier(&self, start: &LabelId) -> OracleFrontier {
        let mut out: OracleFrontier = self
            .all_paths(start, None)
            .into_iter()
            .map(|l| (l, false))
            .collect();
        let mut pending: Vec<LabelId> = out.keys().cloned().collect();
        let mut opened = BTreeSet::new();
        while let Some(x) = pending.pop() {
            if !self.segments.contains_key(&x) || !opened.insert(x.clone()) {
                continue;
            }
            let inside: BTreeSet<&LabelId> = self.segments[&x].iter().collect();
            for y in self.all_paths(&self.inner_last(&x), Some(&inside)) {
                if !out.contains_key(&y) {
                    out.insert(y.clone(), true);
                }
                pending.push(y);
            }
        }
        out
    }

    /// Weakly connected components, each with its highest-order EDU.
    fn components(&self) -> Vec<(BTreeSet<LabelId>, LabelId)> {
        let mut adj: BTreeMap<&LabelId, Vec<&LabelId>> = BTreeMap::new();
        for l in self.g.labels() {
            adj.entry(&l.id).or_default();
        }
        let mut link = |a: &'a LabelId, b: &'a LabelId| {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        };
        for r in self.g.relations() {
            link(&r.source, &r.target);
        }
        for (id, members) in &self.segments {
            for m in members.iter() {
                link(id, m);
            }
        }
        let mut assigned: BTreeSet<&LabelId> = BTreeSet::new();
        let mut out = Vec::new();
        for l in self.g.labels() {
            if assigned.contains(&l.id) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![&l.id];
            while let Some(x) = stack.pop() {
                if !assigned.insert(x) {
                    continue;
                }
                comp.insert(x.clone());
                stack.extend(adj[x].iter().copied());
            }
            let last = self
                .g
                .labels()
                .iter()
                .filter(|l| comp.contains(&l.id))
                .filter_map(|l| l.order_index().map(|o| (o, l.id.clone())))
                .max()
                .expect("every component holds an EDU")
                .1;
            out.push((comp, last));
        }
        out
    }
}

/// Frontier from an arbitrary start label.
pub fn brute_force_frontier(g: &Sdrs, start: &str) -> OracleFrontier {
    View::new(g).frontier(&LabelId::from(start))
}

/// Union of the frontiers of every component, each from its own last EDU.
pub fn brute_force_union(g: &Sdrs) -> OracleFrontier {
    let view = View::new(g);
    let mut out = OracleFrontier::new();
    for (_, last) in view.components() {
        for (label, open) in view.frontier(&last) {
            out.entry(label).or_insert(open);
        }
    }
    out
}

/// Components as label sets, for checking the partition.
pub fn brute_force_components(g: &Sdrs) -> Vec<(BTreeSet<LabelId>, LabelId)> {
    View::new(g).components()
}

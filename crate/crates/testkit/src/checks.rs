//! Reusable property checks. Each returns a description of the first
//! failure instead of panicking, so callers can count mismatches.

use std::collections::{BTreeMap, BTreeSet};

use rightfront::{
    available_attachment_points, right_frontier, right_frontier_union, FrontierSet, LabelId, Origin,
    Provenance, RelationInstance, RelationType, Sdrs,
};

use crate::oracle::{brute_force_frontier, brute_force_union};

fn marks(set: &FrontierSet) -> BTreeMap<LabelId, bool> {
    set.iter()
        .map(|e| (e.label.clone(), e.provenance == Provenance::OpenConstituent))
        .collect()
}

/// The frontier from every label, and the component union, agree with the
/// brute-force enumeration, open-constituent marks included.
pub fn frontier_matches_oracle(g: &Sdrs) -> Result<(), String> {
    for label in g.labels() {
        let ours = right_frontier(g, label.id.as_str()).map_err(|e| e.to_string())?;
        let theirs = brute_force_frontier(g, label.id.as_str());
        if marks(&ours) != theirs {
            return Err(format!(
                "from {}: {:?} vs oracle {:?}",
                label.id,
                marks(&ours),
                theirs
            ));
        }
    }
    let ours = marks(&right_frontier_union(g));
    let theirs = brute_force_union(g);
    if ours != theirs {
        return Err(format!("union: {ours:?} vs oracle {theirs:?}"));
    }
    Ok(())
}

fn within(g: &Sdrs, inner: &LabelId, outer: &LabelId) -> bool {
    inner == outer
        || g.segment(outer.as_str())
            .is_some_and(|s| s.members.iter().any(|m| within(g, inner, m)))
}

/// Every annotated edge of `before` is still in `after`, either unchanged or
/// lifted by expansion onto a new segment containing its target, and no
/// annotated edge appears from nowhere.
pub fn annotated_edges_conserved(before: &Sdrs, after: &Sdrs) -> Result<(), String> {
    let kept = |r: &RelationInstance| {
        after
            .relations()
            .iter()
            .any(|x| x.same_edge(r) && x.is_annotated())
            || after.relations().iter().any(|x| {
                x.origin == Origin::InferredExpansion
                    && x.rel == r.rel
                    && x.source == r.source
                    && !before.contains(x.target.as_str())
                    && within(after, &r.target, &x.target)
            })
    };
    for r in before.relations().iter().filter(|r| r.is_annotated()) {
        if !kept(r) {
            return Err(format!("{r} lost"));
        }
    }
    for r in after.relations().iter().filter(|r| r.is_annotated()) {
        if !before.relations().iter().any(|x| x == r) {
            return Err(format!("{r} appeared"));
        }
    }
    Ok(())
}

/// Structural ⊇ subordinating ⊇ coordinating availability, for every
/// relation type of each category.
pub fn availability_is_monotone(g: &Sdrs) -> Result<(), String> {
    let points = |keep: fn(&RelationType) -> bool| -> Vec<(RelationType, BTreeSet<LabelId>)> {
        RelationType::ALL
            .iter()
            .filter(|r| keep(r))
            .map(|&r| (r, available_attachment_points(g, r)))
            .collect()
    };
    let structural = points(|r| r.is_structural());
    let subordinating = points(|r| r.is_subordinating());
    let coordinating = points(|r| r.is_coordinating() && !r.is_structural());
    for (s, big) in &structural {
        if big.len() != g.len() {
            return Err(format!("{s} does not see every label"));
        }
        for (r, mid) in &subordinating {
            if !mid.is_subset(big) {
                return Err(format!("{r} ⊄ {s}"));
            }
            for (c, small) in &coordinating {
                if !small.is_subset(mid) {
                    return Err(format!("{c} ⊄ {r}"));
                }
            }
        }
    }
    Ok(())
}

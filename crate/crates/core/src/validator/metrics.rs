use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{AttachmentVerdict, DocumentReport, Status, ValidationError};
use crate::sdrs::{LabelId, Sdrs, SdrsError};

/// How Parallel and Contrast decisions enter the metrics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StructuralPolicy {
    /// Left out of numerators and denominators.
    #[default]
    Exclude,
    CountAsCompliant,
}

impl StructuralPolicy {
    fn scored(self, v: &AttachmentVerdict) -> bool {
        v.status != Status::Exempt || self == StructuralPolicy::CountAsCompliant
    }

    fn compliant(self, v: &AttachmentVerdict) -> bool {
        v.status.is_compliant() || (v.status == Status::Exempt && self == StructuralPolicy::CountAsCompliant)
    }
}

/// Distance of a label from LAST. For an EDU, the number of EDUs between it
/// and LAST; for a segment, the largest distance among the EDUs it covers
/// plus its rank.
pub fn constituent_distance(g: &Sdrs, x: &str) -> Result<usize, SdrsError> {
    let v = g.require(x)?;
    let last = g.span_of(g.last_index()).0;
    let edus = g.edus_within(x).unwrap_or_default();
    let farthest = edus
        .iter()
        .filter_map(|e| g.edu_span(e.as_str()))
        .map(|(order, _)| order.abs_diff(last))
        .max()
        .unwrap_or(0);
    Ok(farthest + g.rank_of(v))
}

/// Compliant decisions over scored decisions.
pub fn rfc_r_score(verdicts: &[AttachmentVerdict], policy: StructuralPolicy) -> Result<f64, ValidationError> {
    let scored: Vec<&AttachmentVerdict> = verdicts.iter().filter(|v| policy.scored(v)).collect();
    if scored.is_empty() {
        return Err(ValidationError::EmptyInput);
    }
    let compliant = scored.iter().filter(|v| policy.compliant(v)).count();
    Ok(compliant as f64 / scored.len() as f64)
}

/// `(EDUs with a scored decision, of which attached to the frontier)`.
/// An EDU is attached when a compliant decision introduces it, either
/// directly or as part of a segment.
fn edu_counts(verdicts: &[AttachmentVerdict], policy: StructuralPolicy) -> (usize, usize) {
    let mut scored: BTreeSet<(&str, &LabelId)> = BTreeSet::new();
    let mut attached: BTreeSet<(&str, &LabelId)> = BTreeSet::new();
    for v in verdicts.iter().filter(|v| policy.scored(v)) {
        for e in &v.subject_edus {
            scored.insert((&v.doc, e));
            if policy.compliant(v) {
                attached.insert((&v.doc, e));
            }
        }
    }
    (scored.len(), attached.len())
}

/// EDUs attached to the frontier over EDUs with at least one scored decision.
pub fn rfc_edu_score(
    verdicts: &[AttachmentVerdict],
    policy: StructuralPolicy,
) -> Result<f64, ValidationError> {
    match edu_counts(verdicts, policy) {
        (0, _) => Err(ValidationError::EmptyInput),
        (total, attached) => Ok(attached as f64 / total as f64),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub documents: usize,
    /// Every annotated relation, exempt ones included.
    pub decisions: usize,
    /// Decisions entering the metrics.
    pub scored: usize,
    pub compliant: usize,
    pub violations: usize,
    pub exempt: usize,
    pub postponed: usize,
    pub edus_scored: usize,
    pub edus_attached: usize,
    pub rfc_edu: Option<f64>,
    pub rfc_r: Option<f64>,
    /// Distance → number of scored decisions.
    pub distance_histogram: BTreeMap<usize, usize>,
    pub nonlocal_fraction: Option<f64>,
    pub nonadjacent_fraction: Option<f64>,
    pub open_fraction: Option<f64>,
    /// Violating decisions plus disconnected components, per document.
    pub violations_per_doc: BTreeMap<String, usize>,
    pub disconnected_violations: usize,
    /// Coordinating violations whose point was an open constituent.
    pub rescued_by_open_constituents: usize,
    pub docs_over_five_violations: f64,
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn corpus_stats(
    reports: &[DocumentReport],
    policy: StructuralPolicy,
) -> Result<CorpusStats, ValidationError> {
    if reports.is_empty() {
        return Err(ValidationError::EmptyInput);
    }
    let verdicts: Vec<AttachmentVerdict> = reports.iter().flat_map(|r| r.verdicts.iter().cloned()).collect();
    let scored: Vec<&AttachmentVerdict> = verdicts.iter().filter(|v| policy.scored(v)).collect();

    let mut distance_histogram = BTreeMap::new();
    for v in &scored {
        *distance_histogram.entry(v.distance).or_insert(0) += 1;
    }
    let nonlocal = scored.iter().filter(|v| v.distance >= 2).count();
    let nonadjacent = scored.iter().filter(|v| v.nonadjacent).count();

    let (steps, open_sum) = reports
        .iter()
        .flat_map(|r| r.frontier_sizes.iter())
        .fold((0usize, 0.0f64), |(n, sum), &(rf, labels)| {
            (n + 1, sum + rf as f64 / labels as f64)
        });

    let violations_per_doc: BTreeMap<String, usize> =
        reports.iter().map(|r| (r.doc.clone(), r.violations())).collect();
    let over_five = violations_per_doc.values().filter(|&&n| n > 5).count();
    let (edus_scored, edus_attached) = edu_counts(&verdicts, policy);

    Ok(CorpusStats {
        documents: reports.len(),
        decisions: verdicts.len(),
        scored: scored.len(),
        compliant: scored.iter().filter(|v| policy.compliant(v)).count(),
        violations: verdicts.iter().filter(|v| v.status.is_violation()).count(),
        exempt: verdicts.iter().filter(|v| v.status == Status::Exempt).count(),
        postponed: verdicts.iter().filter(|v| v.status.is_postponed()).count(),
        edus_scored,
        edus_attached,
        rfc_edu: ratio(edus_attached, edus_scored),
        rfc_r: ratio(
            scored.iter().filter(|v| policy.compliant(v)).count(),
            scored.len(),
        ),
        distance_histogram,
        nonlocal_fraction: ratio(nonlocal, scored.len()),
        nonadjacent_fraction: ratio(nonadjacent, scored.len()),
        open_fraction: (steps > 0).then(|| open_sum / steps as f64),
        disconnected_violations: reports.iter().map(|r| r.disconnected.len()).sum(),
        rescued_by_open_constituents: verdicts.iter().filter(|v| v.open_constituent_rescue).count(),
        docs_over_five_violations: over_five as f64 / reports.len() as f64,
        violations_per_doc,
    })
}

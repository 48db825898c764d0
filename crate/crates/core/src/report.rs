//! Flat per-decision rows and plot-ready tables.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::validator::{AttachmentVerdict, DocumentReport};

/// One attachment decision as a CSV or JSON row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub doc: String,
    pub relation: String,
    pub source: String,
    pub target: String,
    pub subject: String,
    pub point: String,
    pub status: String,
    /// Frontier provenance when compliant, empty otherwise.
    pub via: String,
    pub step: usize,
    pub evaluated_at: usize,
    pub distance: usize,
    pub nonadjacent: bool,
    pub open_constituent_rescue: bool,
}

impl From<&AttachmentVerdict> for VerdictRecord {
    fn from(v: &AttachmentVerdict) -> Self {
        VerdictRecord {
            doc: v.doc.clone(),
            relation: v.decision.rel.name().to_string(),
            source: v.decision.source.to_string(),
            target: v.decision.target.to_string(),
            subject: v.subject.to_string(),
            point: v.point.to_string(),
            status: v.status.name().to_string(),
            via: v.via.map(|p| p.name().to_string()).unwrap_or_default(),
            step: v.step,
            evaluated_at: v.evaluated_at,
            distance: v.distance,
            nonadjacent: v.nonadjacent,
            open_constituent_rescue: v.open_constituent_rescue,
        }
    }
}

/// Rows for every decision, documents in input order.
pub fn verdict_records(reports: &[DocumentReport]) -> Vec<VerdictRecord> {
    reports
        .iter()
        .flat_map(|r| r.verdicts.iter().map(VerdictRecord::from))
        .collect()
}

pub fn write_verdicts_csv(out: impl Write, records: &[VerdictRecord]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        // Keep the header even without rows.
        w.write_record([
            "doc",
            "relation",
            "source",
            "target",
            "subject",
            "point",
            "status",
            "via",
            "step",
            "evaluated_at",
            "distance",
            "nonadjacent",
            "open_constituent_rescue",
        ])?;
    }
    w.flush()
}

pub fn write_verdicts_json(mut out: impl Write, records: &[VerdictRecord]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)
}

/// Two columns, `distance,count`, ascending by distance.
pub fn write_histogram_csv(out: impl Write, histogram: &BTreeMap<usize, usize>) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["distance", "count"])?;
    for (d, n) in histogram {
        w.write_record([d.to_string(), n.to_string()])?;
    }
    w.flush()
}

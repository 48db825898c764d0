use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rightfront::validator::{prefix_graph_with, rfc_edu_score, rfc_r_score};
use rightfront::{
    available_attachment_points, constituent_distance, corpus_stats, prefix_graph, replay, replay_corpus,
    replay_with, right_frontier_union, AttachmentVerdict, DocumentReport, LabelId, Provenance, RelationType,
    ReplayOptions, Status, StructuralPolicy,
};
use rightfront_testkit::fixtures;
use rightfront_testkit::planted::planted_corpus;

fn set(ids: &[&str]) -> BTreeSet<LabelId> {
    ids.iter().map(|&s| LabelId::from(s)).collect()
}

fn find<'a>(r: &'a DocumentReport, point: &str, subject: &str) -> &'a AttachmentVerdict {
    r.verdicts
        .iter()
        .find(|v| v.point.as_str() == point && v.subject.as_str() == subject)
        .unwrap_or_else(|| panic!("no decision {point} -> {subject}"))
}

#[test]
fn john_frontiers() {
    let doc = fixtures::john_evening();
    let after_seven = right_frontier_union(&prefix_graph(&doc, 7).unwrap());
    assert_eq!(after_seven.label_set(), set(&["π7", "π′", "π1"]));
    let after_six = right_frontier_union(&prefix_graph(&doc, 6).unwrap());
    assert!(after_six.contains("π2"));
    assert_eq!(after_six.provenance("π2"), Some(Provenance::TransitiveClosure));
}

#[test]
fn john_replay() {
    let doc = fixtures::john_evening();
    let r = replay(&doc).unwrap();
    assert!(r.verdicts.iter().all(|v| v.status == Status::Compliant));
    let to_pi2 = find(&r, "π2", "π7");
    assert!(to_pi2.nonadjacent);
    assert!(to_pi2.distance >= 2);
    let s = corpus_stats(&[r], StructuralPolicy::Exclude).unwrap();
    assert_eq!(s.rfc_edu, Some(1.0));
    assert_eq!(s.rfc_r, Some(1.0));
    assert!(s.violations_per_doc.values().all(|&n| n == 0));
}

#[test]
fn racaille_at_78() {
    let doc = fixtures::racaille();
    let normal = right_frontier_union(&prefix_graph(&doc, 5).unwrap());
    let ids: Vec<&str> = normal.iter().map(|e| e.label.as_str()).collect();
    assert_eq!(ids, ["78", "77", "[75,77]", "74"]);
    let raw = right_frontier_union(&prefix_graph_with(&doc, 5, false).unwrap());
    assert_eq!(raw.label_set(), set(&["78", "77"]));
}

#[test]
fn racaille_verdicts() {
    let doc = fixtures::racaille();
    let r = replay(&doc).unwrap();
    assert_eq!(find(&r, "75", "79").status, Status::Violation);
    assert_eq!(find(&r, "74", "79").status, Status::Compliant);
    let raw = replay_with(
        &doc,
        &ReplayOptions {
            normalize: false,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(find(&raw, "74", "79").status, Status::Violation);
    assert!(raw.violations() > r.violations());
}

#[test]
fn mary_open_constituent() {
    let doc = fixtures::mary_garlic();
    let g = prefix_graph(&doc, 3).unwrap();
    for r in RelationType::ALL.iter().filter(|r| r.is_subordinating()) {
        assert!(available_attachment_points(&g, *r).contains("π2"), "{r}");
    }
    for r in RelationType::ALL
        .iter()
        .filter(|r| r.is_coordinating() && !r.is_structural())
    {
        assert!(!available_attachment_points(&g, *r).contains("π2"), "{r}");
    }
    let r = replay(&doc).unwrap();
    let v = find(&r, "π2", "π4");
    assert_eq!(v.status, Status::Compliant);
    assert_eq!(v.via, Some(Provenance::OpenConstituent));
}

#[test]
fn bill_contrast_is_exempt() {
    let r = replay(&fixtures::bill_sports()).unwrap();
    assert_eq!(find(&r, "π1", "π′").status, Status::Exempt);
    assert_eq!(r.violations(), 0);
}

#[test]
fn distance_of_nested_segments() {
    use rightfront::{build_sdrs, ComplexSegment, Label};
    let edus: Vec<Label> = (0..7).map(|i| Label::edu(format!("e{i}"), i)).collect();
    let g = build_sdrs(
        edus,
        vec![],
        vec![
            ComplexSegment::new("rank1", ["e4", "e5"]),
            ComplexSegment::new("inner", ["e2", "e3"]),
            ComplexSegment::new("rank2", ["inner", "e4"]),
        ],
    )
    .unwrap();
    assert_eq!(constituent_distance(&g, "e6").unwrap(), 0);
    assert_eq!(constituent_distance(&g, "rank1").unwrap(), 3);
    assert_eq!(constituent_distance(&g, "rank2").unwrap(), 6);
    for seg in ["rank1", "inner", "rank2"] {
        let members = &g.segment(seg).unwrap().members;
        let widest = members
            .iter()
            .map(|m| constituent_distance(&g, m.as_str()).unwrap())
            .max()
            .unwrap();
        assert!(constituent_distance(&g, seg).unwrap() > widest);
    }
}

#[test]
fn fixtures_in_one_corpus() {
    let docs = fixtures::all();
    let reports = replay_corpus(&docs, &ReplayOptions::default()).unwrap();
    let s = corpus_stats(&reports, StructuralPolicy::Exclude).unwrap();
    assert_eq!(s.documents, 4);
    assert_eq!(s.violations_per_doc["racaille"], 1);
    assert_eq!(s.violations_per_doc["john-evening"], 0);
    assert_eq!(s.exempt, 2);
    let counted = corpus_stats(&reports, StructuralPolicy::CountAsCompliant).unwrap();
    assert_eq!(counted.scored, s.scored + 2);
}

#[test]
fn planted_metrics_match_bookkeeping() {
    let planted = planted_corpus(&mut ChaCha8Rng::seed_from_u64(7), 30, 20, 0.25);
    let reports = replay_corpus(&planted.docs, &ReplayOptions::default()).unwrap();
    let verdicts: Vec<_> = reports.iter().flat_map(|r| r.verdicts.clone()).collect();
    assert_eq!(
        rfc_r_score(&verdicts, StructuralPolicy::Exclude).unwrap(),
        planted.expected_rfc_r()
    );
    assert_eq!(
        rfc_edu_score(&verdicts, StructuralPolicy::Exclude).unwrap(),
        planted.expected_rfc_edu()
    );
    let s = corpus_stats(&reports, StructuralPolicy::Exclude).unwrap();
    assert_eq!(s.distance_histogram, planted.expected_histogram());
    assert_eq!(s.violations_per_doc, planted.expected_violations_per_doc());
    assert!(s.violations > 0 && s.compliant > 0);
}

#[test]
fn single_edu_documents() {
    let docs: Vec<_> = (0..3)
        .map(|k| rightfront::Document::from_edu_ids(format!("d{k}"), ["only"], vec![], vec![]).unwrap())
        .collect();
    let reports = replay_corpus(&docs, &ReplayOptions::default()).unwrap();
    let s = corpus_stats(&reports, StructuralPolicy::Exclude).unwrap();
    assert!(s.distance_histogram.is_empty());
    assert_eq!(s.open_fraction, Some(1.0));
    assert_eq!(s.rfc_r, None);
}

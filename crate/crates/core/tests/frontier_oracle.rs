use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rightfront::{components, right_frontier_union, LabelId, Provenance, Sdrs};
use rightfront_testkit::checks;
use rightfront_testkit::generate::{random_sdrs, MAX_CONSTITUENTS};
use rightfront_testkit::oracle::brute_force_components;

fn graph(seed: u64) -> Sdrs {
    random_sdrs(&mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn generator_respects_bounds(seed in any::<u64>()) {
        let g = graph(seed);
        prop_assert!(g.len() <= MAX_CONSTITUENTS);
        prop_assert!(!g.is_empty());
    }

    #[test]
    fn frontier_matches_oracle(seed in any::<u64>()) {
        let g = graph(seed);
        prop_assert_eq!(checks::frontier_matches_oracle(&g), Ok(()));
        let union = right_frontier_union(&g);
        prop_assert_eq!(&union.entries()[0].label, &g.last().id);
        prop_assert_eq!(union.entries()[0].provenance, Provenance::Last);
        prop_assert_eq!(union.len(), union.label_set().len());
    }

    #[test]
    fn availability_is_monotone(seed in any::<u64>()) {
        prop_assert_eq!(checks::availability_is_monotone(&graph(seed)), Ok(()));
    }

    #[test]
    fn components_partition_labels(seed in any::<u64>()) {
        let g = graph(seed);
        let ours = components(&g);
        let mut seen = BTreeSet::new();
        for c in &ours {
            for l in &c.labels {
                prop_assert!(seen.insert(l.clone()), "{} in two components", l);
            }
            prop_assert!(c.labels.contains(&c.last));
        }
        prop_assert_eq!(seen.len(), g.len());
        prop_assert_eq!(&ours[0].last, &g.last().id);

        let mut theirs: Vec<(BTreeSet<LabelId>, LabelId)> = brute_force_components(&g);
        theirs.sort_by(|a, b| a.1.cmp(&b.1));
        let mut mine: Vec<(BTreeSet<LabelId>, LabelId)> = ours
            .into_iter()
            .map(|c| (c.labels.into_iter().collect(), c.last))
            .collect();
        mine.sort_by(|a, b| a.1.cmp(&b.1));
        prop_assert_eq!(mine, theirs);
    }
}

/// The random graphs exercise the cases the oracle is meant to cross-check.
#[test]
fn generator_covers_interesting_shapes() {
    let (mut open, mut nested, mut disconnected, mut subordinated_segments) = (0, 0, 0, 0);
    for seed in 0..1000 {
        let g = graph(seed);
        if right_frontier_union(&g)
            .iter()
            .any(|e| e.provenance == Provenance::OpenConstituent)
        {
            open += 1;
        }
        if g.segments()
            .iter()
            .any(|s| s.members.iter().any(|m| g.segment(m.as_str()).is_some()))
        {
            nested += 1;
        }
        if components(&g).len() > 1 {
            disconnected += 1;
        }
        if g.relations()
            .iter()
            .any(|r| r.rel.is_subordinating() && g.segment(r.target.as_str()).is_some())
        {
            subordinated_segments += 1;
        }
    }
    eprintln!("open {open}, nested {nested}, disconnected {disconnected}, subordinated segments {subordinated_segments}");
    assert!(open >= 100, "open constituents in {open} graphs");
    assert!(nested >= 100, "nested segments in {nested} graphs");
    assert!(disconnected >= 100, "disconnected in {disconnected} graphs");
    assert!(subordinated_segments >= 100);
}

//! Hand-annotated example documents, stored as NDJSON next to the crate.

use rightfront::{parse_corpus_str, Document};

pub const JOHN_EVENING: &str = include_str!("../fixtures/john_evening.ndjson");
/// EDUs 74 to 79 of a news text, with both the annotator's Elaboration(75, 79)
/// and the corrected Elaboration(74, 79).
pub const RACAILLE: &str = include_str!("../fixtures/racaille.ndjson");
pub const MARY_GARLIC: &str = include_str!("../fixtures/mary_garlic.ndjson");
pub const BILL_SPORTS: &str = include_str!("../fixtures/bill_sports.ndjson");

fn single(text: &str) -> Document {
    let mut docs = parse_corpus_str(text).expect("fixture parses");
    assert_eq!(docs.len(), 1);
    docs.remove(0)
}

pub fn john_evening() -> Document {
    single(JOHN_EVENING)
}

pub fn racaille() -> Document {
    single(RACAILLE)
}

pub fn mary_garlic() -> Document {
    single(MARY_GARLIC)
}

pub fn bill_sports() -> Document {
    single(BILL_SPORTS)
}

pub fn all() -> Vec<Document> {
    vec![john_evening(), racaille(), mary_garlic(), bill_sports()]
}

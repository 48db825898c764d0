//! Newline-delimited JSON corpora: one document object per line.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::{Document, DocumentError, Edu};
use crate::relation::classify;
use crate::sdrs::{ComplexSegment, LabelId, RelationInstance};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read `{path}`: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("line {line}: EDUs `{outer}` and `{inner}` overlap without nesting")]
    Overlap {
        line: usize,
        outer: String,
        inner: String,
    },
    #[error("line {line}: unknown relation name `{name}`")]
    UnknownRelationName { line: usize, name: String },
    #[error("line {line}: duplicate document id `{id}`")]
    DuplicateDocument { line: usize, id: String },
    #[error("line {line}: document `{doc}`: {source}")]
    Invalid {
        line: usize,
        doc: String,
        source: DocumentError,
    },
}

impl CorpusError {
    pub fn line(&self) -> Option<usize> {
        match self {
            CorpusError::Io { .. } => None,
            CorpusError::Schema { line, .. }
            | CorpusError::Overlap { line, .. }
            | CorpusError::UnknownRelationName { line, .. }
            | CorpusError::DuplicateDocument { line, .. }
            | CorpusError::Invalid { line, .. } => Some(*line),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireDocument {
    id: String,
    edus: Vec<WireEdu>,
    #[serde(default)]
    relations: Vec<WireRelation>,
    #[serde(default)]
    segments: Vec<WireSegment>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireEdu {
    id: LabelId,
    start: usize,
    end: usize,
    #[serde(default)]
    text: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireRelation {
    #[serde(rename = "type")]
    kind: String,
    source: LabelId,
    target: LabelId,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireSegment {
    id: LabelId,
    members: Vec<LabelId>,
}

pub fn parse_corpus(path: impl AsRef<Path>) -> Result<Vec<Document>, CorpusError> {
    let path = path.as_ref();
    let io_err = |source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    read_corpus(BufReader::new(file)).map_err(|e| match e {
        CorpusError::Io { source, .. } => io_err(source),
        other => other,
    })
}

pub fn parse_corpus_str(text: &str) -> Result<Vec<Document>, CorpusError> {
    read_corpus(text.as_bytes())
}

/// Reads documents from NDJSON. Blank lines are skipped; line numbers in
/// errors are 1-based.
pub fn read_corpus(reader: impl BufRead) -> Result<Vec<Document>, CorpusError> {
    let mut docs = Vec::new();
    let mut ids = BTreeSet::new();
    for (k, line) in reader.lines().enumerate() {
        let line_no = k + 1;
        let line = line.map_err(|source| CorpusError::Io {
            path: PathBuf::new(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let doc = parse_line(&line, line_no)?;
        if !ids.insert(doc.id().to_string()) {
            return Err(CorpusError::DuplicateDocument {
                line: line_no,
                id: doc.id().to_string(),
            });
        }
        docs.push(doc);
    }
    Ok(docs)
}

fn parse_line(line: &str, line_no: usize) -> Result<Document, CorpusError> {
    let wire: WireDocument = serde_json::from_str(line).map_err(|e| CorpusError::Schema {
        line: line_no,
        message: e.to_string(),
    })?;
    let relations = wire
        .relations
        .into_iter()
        .map(|r| {
            classify(&r.kind)
                .map(|rel| RelationInstance::annotated(rel, r.source, r.target))
                .map_err(|_| CorpusError::UnknownRelationName {
                    line: line_no,
                    name: r.kind,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let edus = wire
        .edus
        .into_iter()
        .map(|e| Edu::new(e.id, e.start, e.end, e.text))
        .collect();
    let segments = wire
        .segments
        .into_iter()
        .map(|s| ComplexSegment::new(s.id, s.members))
        .collect();
    Document::new(wire.id.clone(), edus, relations, segments).map_err(|e| match e {
        DocumentError::Overlap { outer, inner } => CorpusError::Overlap {
            line: line_no,
            outer,
            inner,
        },
        source => CorpusError::Invalid {
            line: line_no,
            doc: wire.id,
            source,
        },
    })
}

/// One line of NDJSON, without the trailing newline.
pub fn document_to_json(doc: &Document) -> String {
    let wire = WireDocument {
        id: doc.id().to_string(),
        edus: doc
            .edus()
            .iter()
            .map(|e| WireEdu {
                id: e.id.clone(),
                start: e.start,
                end: e.end,
                text: e.text.clone(),
            })
            .collect(),
        relations: doc
            .relations()
            .iter()
            .map(|r| WireRelation {
                kind: r.rel.name().to_string(),
                source: r.source.clone(),
                target: r.target.clone(),
            })
            .collect(),
        segments: doc
            .segments()
            .iter()
            .map(|s| WireSegment {
                id: s.id.clone(),
                members: s.members.clone(),
            })
            .collect(),
    };
    serde_json::to_string(&wire).expect("wire documents always serialize")
}

pub fn write_corpus(mut out: impl Write, docs: &[Document]) -> io::Result<()> {
    for doc in docs {
        writeln!(out, "{}", document_to_json(doc))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = r#"{"id":"d1","edus":[{"id":"a","start":0,"end":5,"text":"Hello"},{"id":"b","start":6,"end":11,"text":"world"}],"relations":[{"type":"Narration","source":"a","target":"b"}]}"#;

    #[test]
    fn smoke() {
        let docs = parse_corpus_str(TWO).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].edus().len(), 2);
        assert!(docs[0].segments().is_empty());
    }

    #[test]
    fn misspelled_relation() {
        let text = format!("\n{}", TWO.replace("Narration", "Elaborationn"));
        match parse_corpus_str(&text) {
            Err(CorpusError::UnknownRelationName { line, name }) => {
                assert_eq!(line, 2);
                assert_eq!(name, "Elaborationn");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_errors_carry_line() {
        let err = parse_corpus_str(&format!("{TWO}\n{{\"id\":\"x\"}}")).unwrap_err();
        assert!(matches!(err, CorpusError::Schema { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("edus"));
        let err = parse_corpus_str(&TWO.replace("\"text\":\"Hello\"", "\"txt\":\"Hello\"")).unwrap_err();
        assert!(matches!(err, CorpusError::Schema { line: 1, .. }));
        assert!(matches!(
            parse_corpus_str("not json"),
            Err(CorpusError::Schema { line: 1, .. })
        ));
    }

    #[test]
    fn overlap_and_dangling() {
        let crossing = TWO.replace("\"start\":6", "\"start\":3");
        assert!(matches!(
            parse_corpus_str(&crossing),
            Err(CorpusError::Overlap { line: 1, .. })
        ));
        let dangling = TWO.replace("\"target\":\"b\"", "\"target\":\"zz\"");
        assert!(matches!(
            parse_corpus_str(&dangling),
            Err(CorpusError::Invalid { line: 1, .. })
        ));
    }

    #[test]
    fn duplicate_document() {
        let err = parse_corpus_str(&format!("{TWO}\n{TWO}")).unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateDocument { line: 2, .. }));
    }

    #[test]
    fn embedded_edu_order() {
        let text = r#"{"id":"p","edus":[{"id":"app","start":12,"end":60,"text":""},{"id":"m","start":0,"end":77,"text":""}]}"#;
        let docs = parse_corpus_str(text).unwrap();
        let ids: Vec<&str> = docs[0].edus().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["m", "app"]);
    }

    #[test]
    fn round_trip() {
        let docs = parse_corpus_str(TWO).unwrap();
        let mut buf = Vec::new();
        write_corpus(&mut buf, &docs).unwrap();
        let again = read_corpus(&buf[..]).unwrap();
        assert_eq!(docs, again);
        let expected = format!("{},\"segments\":[]}}", &TWO[..TWO.len() - 1]);
        assert_eq!(document_to_json(&again[0]), expected);
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            parse_corpus("/nonexistent/corpus.ndjson"),
            Err(CorpusError::Io { .. })
        ));
    }
}

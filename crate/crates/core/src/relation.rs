//! The rhetorical relation inventory.
//!
//! Every relation is either subordinating (extends the graph vertically and
//! keeps its first argument open) or coordinating (extends it horizontally).
//! Parallel and Contrast are additionally *structural*: attachments made with
//! them are exempt from the right frontier constraint.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::sdrs::SdrsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Subordinating,
    Coordinating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationType {
    Elaboration,
    EntityElaboration,
    Comment,
    Flashback,
    Background,
    Goal,
    Explanation,
    Attribution,
    Frame,
    Narration,
    Contrast,
    Result,
    Parallel,
    Continuation,
    Alternation,
    Conditional,
}

impl RelationType {
    pub const ALL: [RelationType; 16] = [
        RelationType::Elaboration,
        RelationType::EntityElaboration,
        RelationType::Comment,
        RelationType::Flashback,
        RelationType::Background,
        RelationType::Goal,
        RelationType::Explanation,
        RelationType::Attribution,
        RelationType::Frame,
        RelationType::Narration,
        RelationType::Contrast,
        RelationType::Result,
        RelationType::Parallel,
        RelationType::Continuation,
        RelationType::Alternation,
        RelationType::Conditional,
    ];

    pub fn category(self) -> Category {
        use RelationType::*;
        match self {
            Elaboration | EntityElaboration | Comment | Flashback | Background | Goal | Explanation
            | Attribution | Frame => Category::Subordinating,
            Narration | Contrast | Result | Parallel | Continuation | Alternation | Conditional => {
                Category::Coordinating
            }
        }
    }

    pub fn is_subordinating(self) -> bool {
        self.category() == Category::Subordinating
    }

    pub fn is_coordinating(self) -> bool {
        self.category() == Category::Coordinating
    }

    /// Parallel and Contrast license their own attachment sites and are
    /// exempt from the right frontier constraint.
    pub fn is_structural(self) -> bool {
        matches!(self, RelationType::Parallel | RelationType::Contrast)
    }

    /// Canonical name, as written in corpus files.
    pub fn name(self) -> &'static str {
        use RelationType::*;
        match self {
            Elaboration => "Elaboration",
            EntityElaboration => "EntityElaboration",
            Comment => "Comment",
            Flashback => "Flashback",
            Background => "Background",
            Goal => "Goal",
            Explanation => "Explanation",
            Attribution => "Attribution",
            Frame => "Frame",
            Narration => "Narration",
            Contrast => "Contrast",
            Result => "Result",
            Parallel => "Parallel",
            Continuation => "Continuation",
            Alternation => "Alternation",
            Conditional => "Conditional",
        }
    }
}

/// Looks up a relation by name.
///
/// Matching ignores case, hyphens, underscores and spaces, so `Entity-Elaboration`
/// and `entity_elaboration` both resolve. The abbreviations `E-Elab` and the
/// spelling `Commentary` are accepted as well.
pub fn classify(name: &str) -> Result<RelationType, SdrsError> {
    let key: String = name
        .chars()
        .filter(|c| !matches!(c, '-' | '_' | ' '))
        .flat_map(char::to_lowercase)
        .collect();
    let found = match key.as_str() {
        "eelab" | "eelaboration" => Some(RelationType::EntityElaboration),
        "commentary" => Some(RelationType::Comment),
        _ => RelationType::ALL
            .iter()
            .copied()
            .find(|r| r.name().to_lowercase() == key),
    };
    found.ok_or_else(|| SdrsError::UnknownRelationName(name.to_string()))
}

impl FromStr for RelationType {
    type Err = SdrsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        classify(s)
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for RelationType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for RelationType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        classify(&name).map_err(serde::de::Error::custom)
    }
}

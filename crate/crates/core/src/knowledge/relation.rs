//! The twelve relations used by the knowledge models: six concept-centered
//! (ConceptNet-style) and six event-centered (ATOMIC-style, about the
//! narrative's protagonist).

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::KnowledgeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    UsedFor,
    Desires,
    HasProperty,
    MadeUpOf,
    AtLocation,
    CapableOf,
    #[serde(rename = "xIntent")]
    XIntent,
    #[serde(rename = "xNeed")]
    XNeed,
    #[serde(rename = "xAttr")]
    XAttr,
    #[serde(rename = "xWant")]
    XWant,
    #[serde(rename = "xEffect")]
    XEffect,
    #[serde(rename = "xReact")]
    XReact,
}

/// Concept relations in listing order; literal bundles draw from these.
pub const CONCEPT_RELATIONS: [Relation; 6] = [
    Relation::UsedFor,
    Relation::Desires,
    Relation::HasProperty,
    Relation::MadeUpOf,
    Relation::AtLocation,
    Relation::CapableOf,
];

/// Event relations in listing order; context bundles draw from these.
pub const EVENT_RELATIONS: [Relation; 6] = [
    Relation::XIntent,
    Relation::XNeed,
    Relation::XAttr,
    Relation::XWant,
    Relation::XEffect,
    Relation::XReact,
];

impl Relation {
    pub fn name(&self) -> &'static str {
        match self {
            Relation::UsedFor => "UsedFor",
            Relation::Desires => "Desires",
            Relation::HasProperty => "HasProperty",
            Relation::MadeUpOf => "MadeUpOf",
            Relation::AtLocation => "AtLocation",
            Relation::CapableOf => "CapableOf",
            Relation::XIntent => "xIntent",
            Relation::XNeed => "xNeed",
            Relation::XAttr => "xAttr",
            Relation::XWant => "xWant",
            Relation::XEffect => "xEffect",
            Relation::XReact => "xReact",
        }
    }

    pub fn is_concept(&self) -> bool {
        CONCEPT_RELATIONS.contains(self)
    }

    pub fn is_event(&self) -> bool {
        EVENT_RELATIONS.contains(self)
    }

    pub fn all() -> impl Iterator<Item = Relation> {
        CONCEPT_RELATIONS.into_iter().chain(EVENT_RELATIONS)
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = KnowledgeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Relation::all()
            .find(|r| r.name() == s)
            .ok_or_else(|| KnowledgeError::UnknownRelation(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for r in Relation::all() {
            assert_eq!(r.name().parse::<Relation>().unwrap(), r);
        }
    }

    #[test]
    fn unknown_relation_is_an_error() {
        assert!(matches!(
            "ObjectUse".parse::<Relation>(),
            Err(KnowledgeError::UnknownRelation(_))
        ));
    }

    #[test]
    fn concept_and_event_partition() {
        for r in CONCEPT_RELATIONS {
            assert!(r.is_concept() && !r.is_event());
        }
        for r in EVENT_RELATIONS {
            assert!(r.is_event() && !r.is_concept());
        }
    }

    #[test]
    fn serde_uses_exact_names() {
        assert_eq!(serde_json::to_string(&Relation::XReact).unwrap(), "\"xReact\"");
        assert_eq!(serde_json::to_string(&Relation::UsedFor).unwrap(), "\"UsedFor\"");
    }
}

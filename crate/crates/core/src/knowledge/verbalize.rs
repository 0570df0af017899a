//! Fixed English templates rendering an inference triple as one sentence.

use super::relation::Relation;

/// One template per relation. `{s}` is the subject, `{t}` the tail; event
/// relations speak about `PersonX` and ignore the subject.
pub const TEMPLATES: [(Relation, &str); 12] = [
    (Relation::UsedFor, "{s} is used for {t}"),
    (Relation::Desires, "{s} desires {t}"),
    (Relation::HasProperty, "{s} has the property of {t}"),
    (Relation::MadeUpOf, "{s} is made up of {t}"),
    (Relation::AtLocation, "{s} is located at {t}"),
    (Relation::CapableOf, "{s} is capable of {t}"),
    (Relation::XIntent, "PersonX intends {t}"),
    (Relation::XNeed, "PersonX needs {t}"),
    (Relation::XAttr, "PersonX is {t}"),
    (Relation::XWant, "PersonX wants {t}"),
    (Relation::XEffect, "PersonX then {t}"),
    (Relation::XReact, "PersonX feels {t}"),
];

/// Renders `(subject, relation, tail)` through the template table, with
/// subject and tail substituted verbatim. Total over [`Relation`]; parsing
/// a relation name from text is where an unknown relation errors.
pub fn verbalize(subject: &str, relation: Relation, tail: &str) -> String {
    let template = TEMPLATES
        .iter()
        .find(|(r, _)| *r == relation)
        .map(|(_, t)| *t)
        .expect("template table covers every relation");
    template.replace("{s}", subject).replace("{t}", tail)
}

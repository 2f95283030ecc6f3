//! Diagram lemmas: templates, their evaluation on concrete diagrams,
//! random instances, and the constructions behind the six-term
//! sequences.

pub mod construct;
pub mod diagram;
pub mod expr;
pub mod library;
pub mod sample;
pub mod template;

pub use construct::{
    generalized_snail, goursat, homology_object, salamander, snake, strongly_short_exact_check, GoursatOutcome,
    Homology, HomologyError, SequenceOutcome, StronglyShortExact,
};
pub use diagram::{
    bind, is_exact_at, is_short_exact, verify_generic, verify_lemma, Check, Diagram, Eval, LemmaOutcome,
    PartOutcome, ShapeError,
};
pub use expr::{Assertion, MorProp, Path, SubExpr, SyntaxError};
pub use library::{dragon, template};
pub use sample::{sample_instance, Instance, SampleOptions};
pub use template::{ArrowDecl, Part, Template};

use std::collections::BTreeMap;

/// Role renaming that turns a four-lemma diagram into one over the dual
/// form: rows swap and reverse, and verticals mirror.
pub fn four_dual_roles() -> (BTreeMap<String, String>, BTreeMap<String, String>) {
    let m = |pairs: &[(&str, &str)]| {
        pairs
            .iter()
            .flat_map(|(a, b)| [(a.to_string(), b.to_string()), (b.to_string(), a.to_string())])
            .collect::<BTreeMap<_, _>>()
    };
    (
        m(&[("A", "D'"), ("B", "C'"), ("C", "B'"), ("D", "A'")]),
        m(&[("f", "z"), ("g", "y"), ("h", "x"), ("s", "v"), ("t", "u")]),
    )
}

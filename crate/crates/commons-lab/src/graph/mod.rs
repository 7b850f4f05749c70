//! Graph representations and structural analysis.

pub mod canon;
mod enumerate;
mod mirror;
mod pattern;
mod structure;
mod weighted;

pub use canon::{automorphism_count, canonical_key, pattern_from_key, CanonKey};
pub use enumerate::{enumerate_graph_classes, enumerate_patterns};
pub use mirror::{glue_along, is_mirror_symmetric, verify_witness, MirrorWitness};
pub use pattern::PatternGraph;
pub use structure::{analyze_structure, Girth, OddCyclePair, StructureReport};
pub use weighted::{categorical_product, WeightedGraph};

use crate::error::{Error, Result};

/// Parses either kind of graph JSON, dispatching on the `kind` field.
pub enum AnyGraph {
    Pattern(PatternGraph),
    Weighted(WeightedGraph),
}

pub fn graph_from_json(s: &str) -> Result<AnyGraph> {
    let value: serde_json::Value = serde_json::from_str(s)?;
    match value.get("kind").and_then(|k| k.as_str()) {
        Some("pattern") => Ok(AnyGraph::Pattern(PatternGraph::from_json(s)?)),
        Some("weighted") => Ok(AnyGraph::Weighted(WeightedGraph::from_json(s)?)),
        other => Err(Error::InvalidGraph(format!(
            "unknown graph kind {other:?}"
        ))),
    }
}

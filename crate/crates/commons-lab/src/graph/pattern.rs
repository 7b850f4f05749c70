//! Small simple graphs used as counting patterns.

use serde::{Deserialize, Serialize};

use crate::config::PATTERN_NODE_CAP;
use crate::error::{Error, Result};

/// A small simple unweighted graph: the pattern whose density is measured.
///
/// No loops, no multi-edges, and — unless explicitly allowed — no isolated
/// nodes. Node count is capped at [`PATTERN_NODE_CAP`] because all structural
/// analysis on patterns is exhaustive. The empty graph (0 nodes) is permitted
/// as the degenerate member of subgraph spectra.
///
/// Equality, ordering and hashing ignore the display name.
#[derive(Clone)]
pub struct PatternGraph {
    node_count: usize,
    /// Sorted, deduplicated, each pair with u < v.
    edges: Vec<(usize, usize)>,
    name: Option<String>,
}

impl PartialEq for PatternGraph {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.edges == other.edges
    }
}

impl Eq for PatternGraph {}

impl std::hash::Hash for PatternGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.node_count.hash(state);
        self.edges.hash(state);
    }
}

impl PartialOrd for PatternGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PatternGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.node_count, &self.edges).cmp(&(other.node_count, &other.edges))
    }
}

impl PatternGraph {
    /// Build a pattern graph, rejecting loops, out-of-range endpoints,
    /// duplicate edges and isolated nodes.
    pub fn new(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::with_isolated(node_count, edges)?;
        if let Some(v) = g.isolated_node() {
            return Err(Error::InvalidGraph(format!(
                "node {v} is isolated; use with_isolated to allow this"
            )));
        }
        if node_count == 0 {
            return Err(Error::InvalidGraph(
                "pattern must have at least one node; use PatternGraph::empty for the empty pattern"
                    .into(),
            ));
        }
        Ok(g)
    }

    /// Like [`PatternGraph::new`] but admits isolated nodes. Intended for
    /// intermediate objects during subgraph enumeration and generation.
    pub fn with_isolated(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if node_count > PATTERN_NODE_CAP {
            return Err(Error::NodeCapExceeded(node_count, PATTERN_NODE_CAP));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at node {a}")));
            }
            if a >= node_count || b >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) out of range for {node_count} nodes"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        let before = norm.len();
        norm.dedup();
        if norm.len() != before {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(PatternGraph {
            node_count,
            edges: norm,
            name: None,
        })
    }

    /// The empty pattern: 0 nodes, 0 edges. Its density in every kernel is 1.
    pub fn empty() -> Self {
        PatternGraph {
            node_count: 0,
            edges: Vec::new(),
            name: Some("empty".into()),
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Ok(Self::new(n, &edges)?.named(&format!("k{n}")))
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("cycle needs at least 3 nodes".into()));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Ok(Self::new(n, &edges)?.named(&format!("c{n}")))
    }

    /// Path on `n >= 2` nodes (n-1 edges).
    pub fn path(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph("path needs at least 2 nodes".into()));
        }
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Ok(Self::new(n, &edges)?.named(&format!("p{n}")))
    }

    /// Triangle with a pendant edge.
    pub fn paw() -> Self {
        Self::new(4, &[(0, 1), (1, 2), (2, 0), (0, 3)])
            .expect("paw is valid")
            .named("paw")
    }

    /// Two disjoint edges.
    pub fn two_disjoint_edges() -> Self {
        Self::new(4, &[(0, 1), (2, 3)])
            .expect("2k2 is valid")
            .named("2k2")
    }

    /// Disjoint union with another pattern, relabelling the second block.
    pub fn disjoint_union(&self, other: &PatternGraph) -> Result<Self> {
        let off = self.node_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        Self::with_isolated(off + other.node_count, &edges)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Adjacency rows as bitmasks (node cap is 12, so u16 suffices).
    pub fn adjacency_masks(&self) -> Vec<u16> {
        let mut adj = vec![0u16; self.node_count];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    pub fn isolated_node(&self) -> Option<usize> {
        let mut touched = vec![false; self.node_count];
        for &(a, b) in &self.edges {
            touched[a] = true;
            touched[b] = true;
        }
        touched.iter().position(|&t| !t)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.node_count)
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    /// Drops isolated nodes and relabels the rest compactly, preserving order.
    pub fn without_isolated(&self) -> PatternGraph {
        let mut keep: Vec<usize> = Vec::new();
        let mut touched = vec![false; self.node_count];
        for &(a, b) in &self.edges {
            touched[a] = true;
            touched[b] = true;
        }
        let mut relabel = vec![usize::MAX; self.node_count];
        for v in 0..self.node_count {
            if touched[v] {
                relabel[v] = keep.len();
                keep.push(v);
            }
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (relabel[a], relabel[b]))
            .collect();
        PatternGraph {
            node_count: keep.len(),
            edges,
            name: None,
        }
    }

    /// Subgraph induced by keeping exactly the given edge subset (by index
    /// into `edges()`), with isolated nodes removed.
    pub(crate) fn edge_subset(&self, mask: u64) -> PatternGraph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        PatternGraph {
            node_count: self.node_count,
            edges,
            name: None,
        }
        .without_isolated()
    }
}

impl std::fmt::Debug for PatternGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{}(n={}, e={:?})", n, self.node_count, self.edges),
            None => write!(f, "pattern(n={}, e={:?})", self.node_count, self.edges),
        }
    }
}

/// Wire form of the graph JSON schema shared by pattern and weighted graphs.
#[derive(Serialize, Deserialize)]
pub(crate) struct GraphJson {
    pub kind: String,
    pub n: usize,
    pub edges: Vec<EdgeJson>,
    pub allow_loops: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum EdgeJson {
    Plain([usize; 2]),
    Weighted(usize, usize, String),
}

impl PatternGraph {
    fn to_wire(&self) -> GraphJson {
        GraphJson {
            kind: "pattern".into(),
            n: self.node_count,
            edges: self.edges.iter().map(|&(a, b)| EdgeJson::Plain([a, b])).collect(),
            allow_loops: false,
        }
    }

    fn from_wire(doc: GraphJson) -> Result<Self> {
        if doc.kind != "pattern" {
            return Err(Error::InvalidGraph(format!(
                "expected kind \"pattern\", got {:?}",
                doc.kind
            )));
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            match e {
                EdgeJson::Plain([a, b]) => edges.push((*a, *b)),
                EdgeJson::Weighted(..) => {
                    return Err(Error::InvalidGraph(
                        "pattern edges must be unweighted pairs".into(),
                    ))
                }
            }
        }
        if doc.n == 0 && edges.is_empty() {
            return Ok(Self::empty());
        }
        Self::new(doc.n, &edges)
    }

    /// Serializes to the graph JSON schema:
    /// `{"kind":"pattern","n":..,"edges":[[u,v],..],"allow_loops":false}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("pattern serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_wire(serde_json::from_str(s)?)
    }

    /// Display label: the tag when present, otherwise a shape summary.
    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("pattern(n={}, m={})", self.node_count, self.edges.len()),
        }
    }
}

impl Serialize for PatternGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PatternGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphJson::deserialize(deserializer)?;
        Self::from_wire(doc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(PatternGraph::new(3, &[(0, 0)]).is_err());
        assert!(PatternGraph::new(3, &[(0, 3)]).is_err());
        assert!(PatternGraph::new(3, &[(0, 1), (1, 0)]).is_err());
        // node 2 isolated
        assert!(PatternGraph::new(3, &[(0, 1)]).is_err());
        assert!(PatternGraph::with_isolated(3, &[(0, 1)]).is_ok());
        assert!(PatternGraph::new(13, &[]).is_err());
    }

    #[test]
    fn constructors() {
        let k4 = PatternGraph::complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        let c5 = PatternGraph::cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.degree(0), 2);
        let p3 = PatternGraph::path(3).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(PatternGraph::paw().min_degree(), 1);
        assert_eq!(PatternGraph::empty().node_count(), 0);
    }

    #[test]
    fn edge_subset_drops_isolated() {
        let k3 = PatternGraph::complete(3).unwrap();
        // keep only the edge (0,1): nodes relabel to a single K2
        let sub = k3.edge_subset(0b001);
        assert_eq!(sub.node_count(), 2);
        assert_eq!(sub.edges(), &[(0, 1)]);
        assert_eq!(k3.edge_subset(0).node_count(), 0);
    }

    #[test]
    fn json_roundtrip() {
        let paw = PatternGraph::paw();
        let s = paw.to_json();
        assert_eq!(
            s,
            r#"{"kind":"pattern","n":4,"edges":[[0,1],[0,2],[0,3],[1,2]],"allow_loops":false}"#
        );
        let back = PatternGraph::from_json(&s).unwrap();
        assert_eq!(back.edges(), paw.edges());
        assert_eq!(PatternGraph::from_json(&back.to_json()).unwrap().to_json(), s);
    }
}

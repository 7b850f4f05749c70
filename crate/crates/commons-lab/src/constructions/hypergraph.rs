//! r-uniform r-partite glue hypergraphs: the scaffolding on which copies of
//! a weighted graph are glued with alternating signs. Obtained as duals of
//! regular bipartite graphs of girth at least 5.

use serde::{Deserialize, Serialize};

use crate::constructions::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::graph::Girth;

/// Vertex set 0..vertex_count with two hyperedge families A and B (each a
/// partition into r-sets meeting every class exactly once) and partition
/// classes V_1..V_r. Linear: two distinct hyperedges share at most one
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueHypergraph {
    classes: Vec<Vec<usize>>,
    #[serde(rename = "A")]
    a_edges: Vec<Vec<usize>>,
    #[serde(rename = "B")]
    b_edges: Vec<Vec<usize>>,
    #[serde(default)]
    provenance: String,
}

impl GlueHypergraph {
    pub fn new(
        classes: Vec<Vec<usize>>,
        a_edges: Vec<Vec<usize>>,
        b_edges: Vec<Vec<usize>>,
        provenance: String,
    ) -> Result<Self> {
        let mut h = GlueHypergraph {
            classes,
            a_edges,
            b_edges,
            provenance,
        };
        for family in [&mut h.classes, &mut h.a_edges, &mut h.b_edges] {
            for set in family.iter_mut() {
                set.sort_unstable();
            }
        }
        h.validate()?;
        Ok(h)
    }

    /// Uniformity r: the common size of all hyperedges.
    pub fn uniformity(&self) -> usize {
        self.classes.len()
    }

    /// Number of hyperedges in each family.
    pub fn family_size(&self) -> usize {
        self.a_edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.iter().map(|c| c.len()).sum()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn a_edges(&self) -> &[Vec<usize>] {
        &self.a_edges
    }

    pub fn b_edges(&self) -> &[Vec<usize>] {
        &self.b_edges
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Class index of every vertex.
    pub fn class_of(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut out = vec![usize::MAX; n];
        for (c, class) in self.classes.iter().enumerate() {
            for &v in class {
                out[v] = c;
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let r = self.classes.len();
        if r == 0 {
            return Err(Error::InvalidHypergraph("no partition classes".into()));
        }
        let n = self.vertex_count();
        let check_partition = |family: &[Vec<usize>], name: &str| -> Result<()> {
            let mut seen = vec![false; n];
            for set in family {
                for &v in set {
                    if v >= n {
                        return Err(Error::InvalidHypergraph(format!(
                            "{name}: vertex {v} out of range"
                        )));
                    }
                    if seen[v] {
                        return Err(Error::InvalidHypergraph(format!(
                            "{name}: vertex {v} covered twice"
                        )));
                    }
                    seen[v] = true;
                }
            }
            if let Some(v) = seen.iter().position(|&s| !s) {
                return Err(Error::InvalidHypergraph(format!(
                    "{name}: vertex {v} not covered"
                )));
            }
            Ok(())
        };
        check_partition(&self.classes, "classes")?;
        check_partition(&self.a_edges, "A")?;
        check_partition(&self.b_edges, "B")?;
        if self.a_edges.len() != self.b_edges.len() {
            return Err(Error::InvalidHypergraph(format!(
                "family sizes differ: {} vs {}",
                self.a_edges.len(),
                self.b_edges.len()
            )));
        }
        // r-uniform, r-partite: every hyperedge meets every class once
        let class_of = self.class_of();
        for (name, family) in [("A", &self.a_edges), ("B", &self.b_edges)] {
            for (i, set) in family.iter().enumerate() {
                if set.len() != r {
                    return Err(Error::InvalidHypergraph(format!(
                        "{name}_{i} has {} vertices, expected {r}",
                        set.len()
                    )));
                }
                let mut hit = vec![false; r];
                for &v in set {
                    if hit[class_of[v]] {
                        return Err(Error::InvalidHypergraph(format!(
                            "{name}_{i} meets class {} twice",
                            class_of[v]
                        )));
                    }
                    hit[class_of[v]] = true;
                }
            }
        }
        // linearity across the union of both families
        let all: Vec<&Vec<usize>> = self.a_edges.iter().chain(&self.b_edges).collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let shared = intersection_size(all[i], all[j]);
                if shared > 1 {
                    return Err(Error::InvalidHypergraph(format!(
                        "hyperedges {i} and {j} share {shared} vertices"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let h: GlueHypergraph = serde_json::from_str(s)?;
        h.validate()?;
        Ok(h)
    }
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    // both sorted
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Dual hypergraph of an r-regular bipartite graph with both sides of equal
/// size and girth at least 5 (hence at least 6): hypergraph vertices are the
/// edges of the source, A_x collects the edges at left node x, B_y those at
/// right node y, and the partition classes come from a proper r-edge
/// colouring (computed by alternating-path augmentation when not supplied).
pub fn dual_hypergraph(
    source: &BipartiteGraph,
    coloring: Option<&[usize]>,
) -> Result<GlueHypergraph> {
    let r = source
        .regular_degree()
        .ok_or_else(|| Error::InvalidHypergraph("source graph is not regular".into()))?;
    if r == 0 {
        return Err(Error::InvalidHypergraph("source graph has no edges".into()));
    }
    if source.left_count() != source.right_count() {
        return Err(Error::InvalidHypergraph(
            "source graph sides must have equal size".into(),
        ));
    }
    let girth = source.girth();
    if girth.at_most(4) {
        return Err(Error::InvalidHypergraph(format!(
            "source girth {girth} is below 5"
        )));
    }
    let edges = source.edges();
    let colors = match coloring {
        Some(c) => {
            validate_coloring(source, c, r)?;
            c.to_vec()
        }
        None => edge_coloring(source, r),
    };

    let n_left = source.left_count();
    let mut a_edges = vec![Vec::new(); n_left];
    let mut b_edges = vec![Vec::new(); source.right_count()];
    let mut classes = vec![Vec::new(); r];
    for (idx, &(x, y)) in edges.iter().enumerate() {
        a_edges[x].push(idx);
        b_edges[y].push(idx);
        classes[colors[idx]].push(idx);
    }
    GlueHypergraph::new(
        classes,
        a_edges,
        b_edges,
        format!(
            "dual of {r}-regular bipartite graph on {n_left}+{n_left} nodes, girth {girth}"
        ),
    )
}

fn validate_coloring(source: &BipartiteGraph, colors: &[usize], r: usize) -> Result<()> {
    let edges = source.edges();
    if colors.len() != edges.len() {
        return Err(Error::InvalidHypergraph(
            "coloring length does not match edge count".into(),
        ));
    }
    if colors.iter().any(|&c| c >= r) {
        return Err(Error::InvalidHypergraph(format!(
            "coloring uses a color outside 0..{r}"
        )));
    }
    let mut at_left = vec![vec![false; r]; source.left_count()];
    let mut at_right = vec![vec![false; r]; source.right_count()];
    for (idx, &(x, y)) in edges.iter().enumerate() {
        let c = colors[idx];
        if at_left[x][c] || at_right[y][c] {
            return Err(Error::InvalidHypergraph(format!(
                "coloring is not proper at edge {idx}"
            )));
        }
        at_left[x][c] = true;
        at_right[y][c] = true;
    }
    Ok(())
}

/// Proper r-edge-colouring of an r-regular bipartite graph by alternating
/// path augmentation, processing edges in their stored order.
fn edge_coloring(source: &BipartiteGraph, r: usize) -> Vec<usize> {
    let edges = source.edges();
    let n = source.left_count() + source.right_count();
    let node = |side: usize, v: usize| if side == 0 { v } else { source.left_count() + v };
    // at[v][c] = edge currently coloured c at node v
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; r]; n];
    let mut color: Vec<Option<usize>> = vec![None; edges.len()];
    let endpoints = |e: usize| (node(0, edges[e].0), node(1, edges[e].1));

    for e in 0..edges.len() {
        let (u, v) = endpoints(e);
        let free = |at: &Vec<Vec<Option<usize>>>, x: usize| {
            (0..r).find(|&c| at[x][c].is_none()).expect("regular graph has a free color")
        };
        let alpha = free(&at, u);
        let beta = free(&at, v);
        if alpha != beta {
            // walk the maximal alpha/beta alternating path from v and swap;
            // it cannot reach u, which has no alpha edge
            let mut path = Vec::new();
            let mut cur = v;
            let mut want = alpha;
            while let Some(f) = at[cur][want] {
                path.push(f);
                let (a, b) = endpoints(f);
                cur = if a == cur { b } else { a };
                want = if want == alpha { beta } else { alpha };
            }
            for &f in &path {
                let old = color[f].expect("path edges are colored");
                let new = if old == alpha { beta } else { alpha };
                let (a, b) = endpoints(f);
                at[a][old] = None;
                at[b][old] = None;
                color[f] = Some(new);
            }
            for &f in &path {
                let c = color[f].unwrap();
                let (a, b) = endpoints(f);
                at[a][c] = Some(f);
                at[b][c] = Some(f);
            }
            debug_assert!(at[v][alpha].is_none() && at[u][alpha].is_none());
        }
        color[e] = Some(alpha);
        at[u][alpha] = Some(e);
        at[v][alpha] = Some(e);
    }
    color.into_iter().map(|c| c.expect("all edges colored")).collect()
}

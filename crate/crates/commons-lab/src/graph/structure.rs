//! Structural analysis of pattern graphs: girth, blocks, odd-cycle pairs.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::PatternGraph;

/// Length of a shortest cycle of some parity, or none at all.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Girth {
    Finite(usize),
    Unbounded,
}

impl Girth {
    pub fn is_finite(&self) -> bool {
        matches!(self, Girth::Finite(_))
    }

    /// Finite values compare by length; `Unbounded` exceeds everything.
    pub fn at_most(&self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => *g <= bound,
            Girth::Unbounded => false,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// A pair of odd cycles sharing at most one node, `shorter <= longer`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OddCyclePair {
    pub shorter: usize,
    pub longer: usize,
    pub shared_nodes: usize,
}

/// Output of [`analyze_structure`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructureReport {
    pub girth: Girth,
    /// Length of the shortest even cycle.
    pub even_girth: Girth,
    /// Node sets of the 2-connected components, each sorted, the list sorted.
    pub blocks: Vec<Vec<usize>>,
    /// Among all pairs of odd cycles sharing at most one node: the pair
    /// minimizing the combined length, ties broken by the smaller short
    /// length, then by fewer shared nodes.
    pub odd_cycle_pair: Option<OddCyclePair>,
    pub is_bipartite: bool,
    pub is_forest: bool,
}

/// Exhaustive structural analysis. Cycle data comes from explicit cycle
/// enumeration (by length, shortest first), not from any clever polynomial
/// algorithm; the pattern node cap keeps this cheap.
pub fn analyze_structure(g: &PatternGraph) -> Result<StructureReport> {
    let n = g.node_count();
    let adj = g.adjacency_masks();

    let mut cycles_by_len: Vec<Option<Vec<u16>>> = vec![None; n + 1];
    let mut cycles = |len: usize| -> Vec<u16> {
        if cycles_by_len[len].is_none() {
            cycles_by_len[len] = Some(enumerate_cycles(&adj, len));
        }
        cycles_by_len[len].clone().unwrap()
    };

    let mut girth = Girth::Unbounded;
    for len in 3..=n {
        if !cycles(len).is_empty() {
            girth = Girth::Finite(len);
            break;
        }
    }
    let mut even_girth = Girth::Unbounded;
    let mut len = 4;
    while len <= n {
        if !cycles(len).is_empty() {
            even_girth = Girth::Finite(len);
            break;
        }
        len += 2;
    }

    let is_bipartite = bipartite(&adj);
    let is_forest = !girth.is_finite();

    let odd_cycle_pair = if is_bipartite {
        None
    } else {
        find_odd_pair(n, &mut cycles)
    };

    Ok(StructureReport {
        girth,
        even_girth,
        blocks: blocks(g),
        odd_cycle_pair,
        is_bipartite,
        is_forest,
    })
}

/// All simple cycles of exactly `len` nodes, as node bitmasks. Each cycle is
/// found once: paths are anchored at their smallest node and oriented.
fn enumerate_cycles(adj: &[u16], len: usize) -> Vec<u16> {
    let n = adj.len();
    let mut out = Vec::new();
    if len < 3 || len > n {
        return out;
    }
    let mut path: Vec<usize> = Vec::with_capacity(len);
    for s in 0..n {
        path.push(s);
        extend_cycle(adj, s, len, &mut path, 1u16 << s, &mut out);
        path.pop();
    }
    out
}

fn extend_cycle(adj: &[u16], anchor: usize, len: usize, path: &mut Vec<usize>, mask: u16, out: &mut Vec<u16>) {
    let last = *path.last().unwrap();
    if path.len() == len {
        // close the cycle; orientation fixed by path[1] < path[len-1]
        if adj[last] >> anchor & 1 == 1 && path[1] < path[len - 1] {
            out.push(mask);
        }
        return;
    }
    let n = adj.len();
    for next in anchor + 1..n {
        if adj[last] >> next & 1 == 1 && mask >> next & 1 == 0 {
            path.push(next);
            extend_cycle(adj, anchor, len, path, mask | 1 << next, out);
            path.pop();
        }
    }
}

/// Scans combined lengths in increasing order, so the first qualifying pair
/// is the minimizer; within a sum, smaller first length wins, and within a
/// length pair the smallest intersection is reported.
fn find_odd_pair(n: usize, cycles: &mut impl FnMut(usize) -> Vec<u16>) -> Option<OddCyclePair> {
    let mut sum = 6;
    while sum <= 2 * n {
        let mut g1 = 3;
        while g1 <= sum / 2 {
            let g2 = sum - g1;
            if g2 <= n {
                let c1 = cycles(g1);
                let c2 = cycles(g2);
                let mut best_shared: Option<usize> = None;
                for (i, a) in c1.iter().enumerate() {
                    let js = if g1 == g2 { i + 1.. } else { 0.. };
                    for b in &c2[js] {
                        let shared = (a & b).count_ones() as usize;
                        if shared <= 1 && best_shared.map_or(true, |s| shared < s) {
                            best_shared = Some(shared);
                        }
                    }
                }
                if let Some(shared_nodes) = best_shared {
                    return Some(OddCyclePair {
                        shorter: g1,
                        longer: g2,
                        shared_nodes,
                    });
                }
            }
            g1 += 2;
        }
        sum += 2;
    }
    None
}

fn bipartite(adj: &[u16]) -> bool {
    let n = adj.len();
    let mut color = vec![-1i8; n];
    for s in 0..n {
        if color[s] != -1 {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if adj[v] >> u & 1 == 1 {
                    if color[u] == -1 {
                        color[u] = 1 - color[v];
                        stack.push(u);
                    } else if color[u] == color[v] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Node sets of the biconnected components (Hopcroft-Tarjan on edges).
fn blocks(g: &PatternGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in g.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }

    struct Dfs<'a> {
        adj: &'a [Vec<usize>],
        num: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        edge_stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<usize>>,
    }

    impl Dfs<'_> {
        fn run(&mut self, v: usize, parent: Option<usize>) {
            self.timer += 1;
            self.num[v] = self.timer;
            self.low[v] = self.timer;
            for &u in &self.adj[v] {
                if self.num[u] == 0 {
                    self.edge_stack.push((v, u));
                    self.run(u, Some(v));
                    self.low[v] = self.low[v].min(self.low[u]);
                    if self.low[u] >= self.num[v] {
                        // v is a cut vertex (or root); pop one block
                        let mut nodes = std::collections::BTreeSet::new();
                        while let Some(&(a, b)) = self.edge_stack.last() {
                            if self.num[a] >= self.num[u] {
                                self.edge_stack.pop();
                                nodes.insert(a);
                                nodes.insert(b);
                            } else {
                                break;
                            }
                        }
                        // the (v,u) tree edge itself
                        if let Some(&(a, b)) = self.edge_stack.last() {
                            if (a, b) == (v, u) {
                                self.edge_stack.pop();
                                nodes.insert(a);
                                nodes.insert(b);
                            }
                        }
                        if !nodes.is_empty() {
                            self.blocks.push(nodes.into_iter().collect());
                        }
                    }
                } else if Some(u) != parent && self.num[u] < self.num[v] {
                    self.edge_stack.push((v, u));
                    self.low[v] = self.low[v].min(self.num[u]);
                }
            }
        }
    }

    let mut dfs = Dfs {
        adj: &adj,
        num: vec![0; n],
        low: vec![0; n],
        timer: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
    };
    for s in 0..n {
        if dfs.num[s] == 0 && !adj[s].is_empty() {
            dfs.run(s, None);
        }
    }
    let mut blocks = dfs.blocks;
    blocks.sort();
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_structure() {
        let rep = analyze_structure(&PatternGraph::complete(4).unwrap()).unwrap();
        assert_eq!(rep.girth, Girth::Finite(3));
        assert_eq!(rep.even_girth, Girth::Finite(4));
        assert!(!rep.is_bipartite);
        assert!(!rep.is_forest);
        // all triangle pairs in K4 share an edge, so no qualifying pair
        assert_eq!(rep.odd_cycle_pair, None);
        assert_eq!(rep.blocks, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn even_cycles() {
        for k in 2..=5 {
            let rep = analyze_structure(&PatternGraph::cycle(2 * k).unwrap()).unwrap();
            assert_eq!(rep.girth, Girth::Finite(2 * k));
            assert_eq!(rep.even_girth, Girth::Finite(2 * k));
            assert!(rep.is_bipartite);
            assert_eq!(rep.odd_cycle_pair, None);
        }
    }

    #[test]
    fn forest() {
        let rep = analyze_structure(&PatternGraph::path(5).unwrap()).unwrap();
        assert_eq!(rep.girth, Girth::Unbounded);
        assert_eq!(rep.even_girth, Girth::Unbounded);
        assert!(rep.is_forest);
        // each edge is its own block
        assert_eq!(rep.blocks.len(), 4);
    }

    #[test]
    fn two_triangles_sharing_a_node() {
        // bowtie: triangles {0,1,2} and {2,3,4}
        let g = PatternGraph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let rep = analyze_structure(&g).unwrap();
        assert_eq!(
            rep.odd_cycle_pair,
            Some(OddCyclePair {
                shorter: 3,
                longer: 3,
                shared_nodes: 1
            })
        );
        assert_eq!(rep.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn disjoint_triangles_prefer_fewer_shared() {
        let t = PatternGraph::complete(3).unwrap();
        let g = t.disjoint_union(&t).unwrap();
        let rep = analyze_structure(&g).unwrap();
        assert_eq!(
            rep.odd_cycle_pair,
            Some(OddCyclePair {
                shorter: 3,
                longer: 3,
                shared_nodes: 0
            })
        );
    }

    #[test]
    fn cycle_counts_on_complete_graphs() {
        // K5 has 10 triangles, 15 four-cycles, 12 five-cycles
        let k5 = PatternGraph::complete(5).unwrap();
        let adj = k5.adjacency_masks();
        assert_eq!(enumerate_cycles(&adj, 3).len(), 10);
        assert_eq!(enumerate_cycles(&adj, 4).len(), 15);
        assert_eq!(enumerate_cycles(&adj, 5).len(), 12);
    }
}

//! Bipartite source graphs for the glued construction: projective-plane
//! incidence graphs (high girth at high regularity) and a seeded
//! random-regular generator with girth verification.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::Girth;

/// A simple bipartite graph with explicitly two-sided node sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    /// (left index, right index), sorted, no duplicates.
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm = edges.to_vec();
        for &(a, b) in &norm {
            if a >= left || b >= right {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) out of range for sides {left}/{right}"
                )));
            }
        }
        norm.sort_unstable();
        let before = norm.len();
        norm.dedup();
        if norm.len() != before {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(BipartiteGraph {
            left,
            right,
            edges: norm,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Common degree of all nodes, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut ld = vec![0usize; self.left];
        let mut rd = vec![0usize; self.right];
        for &(a, b) in &self.edges {
            ld[a] += 1;
            rd[b] += 1;
        }
        let d = *ld.first()?;
        if ld.iter().all(|&x| x == d) && rd.iter().all(|&x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Shortest cycle length via BFS from every node (even, since the graph
    /// is bipartite).
    pub fn girth(&self) -> Girth {
        let n = self.left + self.right;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(self.left + b);
            adj[self.left + b].push(a);
        }
        let mut best = usize::MAX;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                if 2 * dist[v] >= best {
                    break;
                }
                for &u in &adj[v] {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        parent[u] = v;
                        queue.push_back(u);
                    } else if parent[v] != u {
                        // non-tree edge closes a cycle through s
                        best = best.min(dist[v] + dist[u] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Unbounded
        } else {
            Girth::Finite(best)
        }
    }
}

/// Incidence graph of the projective plane of prime order `q`: both sides
/// have q²+q+1 nodes, the graph is (q+1)-regular with girth 6.
pub fn projective_plane_incidence(q: usize) -> Result<BipartiteGraph> {
    if q < 2 {
        return Err(Error::InvalidGraph("plane order must be at least 2".into()));
    }
    for d in 2..q {
        if q % d == 0 {
            return Err(Error::InvalidGraph(format!(
                "only prime plane orders are bundled, got {q}"
            )));
        }
    }
    // normalized homogeneous coordinates over the prime field
    let mut points: Vec<[usize; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            points.push([1, a, b]);
        }
    }
    for a in 0..q {
        points.push([0, 1, a]);
    }
    points.push([0, 0, 1]);
    let n = points.len();
    debug_assert_eq!(n, q * q + q + 1);
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, l) in points.iter().enumerate() {
            let dot = p[0] * l[0] + p[1] * l[1] + p[2] * l[2];
            if dot % q == 0 {
                edges.push((i, j));
            }
        }
    }
    let g = BipartiteGraph::new(n, n, &edges)?;
    debug_assert_eq!(g.regular_degree(), Some(q + 1));
    Ok(g)
}

/// The Heawood graph: incidence graph of the smallest projective plane
/// (order 2); 3-regular on 7+7 nodes with girth 6.
pub fn heawood_graph() -> BipartiteGraph {
    projective_plane_incidence(2).expect("order 2 is prime")
}

/// Seeded random r-regular bipartite graph on N+N nodes as a union of r
/// random perfect matchings, redrawn until simple and of girth at least
/// `min_girth`.
pub fn random_regular_bipartite(
    seed: u64,
    side: usize,
    r: usize,
    min_girth: usize,
    cfg: &Config,
) -> Result<BipartiteGraph> {
    if r == 0 || side == 0 || r > side {
        return Err(Error::InvalidGraph(format!(
            "need 1 <= r <= side, got r={r}, side={side}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..cfg.retry_limit {
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(side * r);
        for _ in 0..r {
            let mut perm: Vec<usize> = (0..side).collect();
            perm.shuffle(&mut rng);
            for (a, &b) in perm.iter().enumerate() {
                edges.push((a, b));
            }
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != edges.len() {
            continue 'attempt; // matchings collided on an edge
        }
        let g = BipartiteGraph::new(side, side, &edges)?;
        match g.girth() {
            Girth::Finite(girth) if girth < min_girth => continue 'attempt,
            _ => return Ok(g),
        }
    }
    Err(Error::RetryLimit(cfg.retry_limit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heawood_shape() {
        let h = heawood_graph();
        assert_eq!(h.left_count(), 7);
        assert_eq!(h.right_count(), 7);
        assert_eq!(h.edges().len(), 21);
        assert_eq!(h.regular_degree(), Some(3));
        assert_eq!(h.girth(), Girth::Finite(6));
    }

    #[test]
    fn order_seven_plane() {
        let g = projective_plane_incidence(7).unwrap();
        assert_eq!(g.left_count(), 57);
        assert_eq!(g.edges().len(), 57 * 8);
        assert_eq!(g.regular_degree(), Some(8));
        assert_eq!(g.girth(), Girth::Finite(6));
    }

    #[test]
    fn rejects_composite_order() {
        assert!(projective_plane_incidence(6).is_err());
    }

    #[test]
    fn girth_of_even_cycle() {
        // C8 as bipartite 2-regular
        let c8 = BipartiteGraph::new(4, 4, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 0)])
            .unwrap();
        assert_eq!(c8.regular_degree(), Some(2));
        assert_eq!(c8.girth(), Girth::Finite(8));
    }

    #[test]
    fn random_regular_with_girth() {
        let cfg = Config::default();
        let g = random_regular_bipartite(1, 24, 3, 6, &cfg).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert!(matches!(g.girth(), Girth::Finite(x) if x >= 6));
        // determinism
        let g2 = random_regular_bipartite(1, 24, 3, 6, &cfg).unwrap();
        assert_eq!(g, g2);
    }
}

//! Mirror symmetry: graphs obtained by gluing two copies of a graph along
//! an independent set. Densities of such patterns are nonnegative in every
//! kernel, which several test suites rely on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PatternGraph;

/// Witness that a graph is mirror-symmetric: an involutive automorphism
/// whose fixed nodes form the independent glue set, together with one of
/// the two swapped sides.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MirrorWitness {
    /// `involution[v]` is the image of `v`; applying it twice is the identity.
    pub involution: Vec<usize>,
    /// Fixed nodes of the involution, sorted; mutually nonadjacent.
    pub glue_set: Vec<usize>,
    /// One side of the split of the non-fixed nodes; the involution maps it
    /// onto the complementary side and no edge crosses between the sides.
    pub side: Vec<usize>,
}

/// Searches for a mirror-symmetry witness. Enumerates involutive
/// automorphisms by backtracking and, for each, checks that the fixed set is
/// independent and that the remaining nodes 2-colour into swapped sides with
/// no cross edges. The returned witness is re-verified before returning.
pub fn is_mirror_symmetric(g: &PatternGraph) -> Result<Option<MirrorWitness>> {
    let n = g.node_count();
    let adj = g.adjacency_masks();
    let degs: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut sigma = vec![usize::MAX; n];
    let mut found: Option<MirrorWitness> = None;
    search_involutions(&adj, &degs, 0, &mut sigma, &mut found, g);
    if let Some(w) = &found {
        debug_assert!(verify_witness(g, w));
    }
    Ok(found)
}

fn search_involutions(
    adj: &[u16],
    degs: &[u32],
    from: usize,
    sigma: &mut [usize],
    found: &mut Option<MirrorWitness>,
    g: &PatternGraph,
) {
    if found.is_some() {
        return;
    }
    let n = adj.len();
    let v = match (from..n).find(|&v| sigma[v] == usize::MAX) {
        Some(v) => v,
        None => {
            if let Some(w) = witness_from_involution(g, adj, sigma) {
                *found = Some(w);
            }
            return;
        }
    };
    // fix v, or pair it with a later unassigned node of equal degree
    let mut candidates = vec![v];
    candidates.extend((v + 1..n).filter(|&u| sigma[u] == usize::MAX && degs[u] == degs[v]));
    for u in candidates {
        if !consistent(adj, sigma, v, u) || (u != v && !consistent(adj, sigma, u, v)) {
            continue;
        }
        sigma[v] = u;
        sigma[u] = v;
        search_involutions(adj, degs, v + 1, sigma, found, g);
        sigma[v] = usize::MAX;
        sigma[u] = usize::MAX;
    }
}

/// Adjacency preservation of v -> image against all already-assigned nodes.
fn consistent(adj: &[u16], sigma: &[usize], v: usize, image: usize) -> bool {
    let n = adj.len();
    for w in 0..n {
        if w == v || sigma[w] == usize::MAX {
            continue;
        }
        let e = adj[v] >> w & 1;
        let e_img = adj[image] >> sigma[w] & 1;
        if e != e_img {
            return false;
        }
    }
    true
}

fn witness_from_involution(g: &PatternGraph, adj: &[u16], sigma: &[usize]) -> Option<MirrorWitness> {
    let n = adj.len();
    let glue: Vec<usize> = (0..n).filter(|&v| sigma[v] == v).collect();
    // glue set must be independent
    for (i, &a) in glue.iter().enumerate() {
        for &b in &glue[i + 1..] {
            if adj[a] >> b & 1 == 1 {
                return None;
            }
        }
    }
    // 2-colour the swapped nodes: edges force equal sides, orbits force
    // opposite sides
    let mut side = vec![-1i8; n];
    let moved: Vec<usize> = (0..n).filter(|&v| sigma[v] != v).collect();
    for &s in &moved {
        if side[s] != -1 {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v];
            let mut constraints = vec![(sigma[v], 1 - sv)];
            for u in 0..n {
                if adj[v] >> u & 1 == 1 && sigma[u] != u {
                    constraints.push((u, sv));
                }
            }
            for (u, c) in constraints {
                if side[u] == -1 {
                    side[u] = c;
                    stack.push(u);
                } else if side[u] != c {
                    return None;
                }
            }
        }
    }
    let w = MirrorWitness {
        involution: sigma.to_vec(),
        glue_set: glue,
        side: (0..n).filter(|&v| side[v] == 0).collect(),
    };
    if verify_witness(g, &w) {
        Some(w)
    } else {
        None
    }
}

/// Independent full check of a claimed witness.
pub fn verify_witness(g: &PatternGraph, w: &MirrorWitness) -> bool {
    let n = g.node_count();
    if w.involution.len() != n {
        return false;
    }
    let s = &w.involution;
    // involution
    if (0..n).any(|v| s[v] >= n || s[s[v]] != v) {
        return false;
    }
    // automorphism
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) != g.has_edge(s[a], s[b]) {
                return false;
            }
        }
    }
    // fixed set = glue set, independent
    let fixed: Vec<usize> = (0..n).filter(|&v| s[v] == v).collect();
    if fixed != w.glue_set {
        return false;
    }
    for (i, &a) in fixed.iter().enumerate() {
        for &b in &fixed[i + 1..] {
            if g.has_edge(a, b) {
                return false;
            }
        }
    }
    // sides partition the moved nodes and are swapped by sigma
    let mut side_of = vec![2i8; n];
    for &v in &fixed {
        side_of[v] = -1;
    }
    for &v in &w.side {
        if side_of[v] != 2 {
            return false;
        }
        side_of[v] = 0;
    }
    for v in 0..n {
        if side_of[v] == 2 {
            side_of[v] = 1;
        }
    }
    for v in 0..n {
        if side_of[v] >= 0 && side_of[s[v]] != 1 - side_of[v] {
            return false;
        }
    }
    // no edge between the two sides
    for &(a, b) in g.edges() {
        if side_of[a] >= 0 && side_of[b] >= 0 && side_of[a] != side_of[b] {
            return false;
        }
    }
    true
}

/// The glue construction itself: two copies of `g` glued along the
/// independent set `s`. Nodes of `s` come first, then the two copies of the
/// rest. Every output is mirror-symmetric by construction.
pub fn glue_along(g: &PatternGraph, s: &[usize]) -> Result<PatternGraph> {
    let n = g.node_count();
    let mut in_s = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(Error::InvalidGraph(format!("glue node {v} out of range")));
        }
        if in_s[v] {
            return Err(Error::InvalidGraph(format!("duplicate glue node {v}")));
        }
        in_s[v] = true;
    }
    for &(a, b) in g.edges() {
        if in_s[a] && in_s[b] {
            return Err(Error::InvalidGraph(format!(
                "glue set is not independent: edge ({a},{b})"
            )));
        }
    }
    let k = s.len();
    let mut map0 = vec![usize::MAX; n];
    let mut map1 = vec![usize::MAX; n];
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    for (i, &v) in sorted.iter().enumerate() {
        map0[v] = i;
        map1[v] = i;
    }
    let moved: Vec<usize> = (0..n).filter(|&v| !in_s[v]).collect();
    for (i, &v) in moved.iter().enumerate() {
        map0[v] = k + i;
        map1[v] = k + moved.len() + i;
    }
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for &(a, b) in g.edges() {
        edges.push((map0[a], map0[b]));
        edges.push((map1[a], map1[b]));
    }
    edges.sort_unstable();
    edges.dedup();
    PatternGraph::with_isolated(2 * n - k, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path3_center_glue() {
        let p3 = PatternGraph::path(3).unwrap();
        let w = is_mirror_symmetric(&p3).unwrap().expect("p3 is mirror-symmetric");
        assert_eq!(w.glue_set, vec![1]);
    }

    #[test]
    fn c4_opposite_nodes() {
        let c4 = PatternGraph::cycle(4).unwrap();
        let w = is_mirror_symmetric(&c4).unwrap().expect("c4 is mirror-symmetric");
        assert_eq!(w.glue_set.len(), 2);
        let (a, b) = (w.glue_set[0], w.glue_set[1]);
        assert!(!c4.has_edge(a, b));
    }

    #[test]
    fn c5_is_not() {
        let c5 = PatternGraph::cycle(5).unwrap();
        assert!(is_mirror_symmetric(&c5).unwrap().is_none());
    }

    #[test]
    fn glue_outputs_have_witnesses() {
        // P4 glued along its two endpoints gives C6-like symmetry
        let p4 = PatternGraph::path(4).unwrap();
        let f = glue_along(&p4, &[0, 3]).unwrap();
        assert_eq!(f.node_count(), 6);
        assert!(is_mirror_symmetric(&f).unwrap().is_some());

        let k3 = PatternGraph::complete(3).unwrap();
        let f = glue_along(&k3, &[2]).unwrap();
        assert_eq!(f.node_count(), 5);
        assert_eq!(f.edge_count(), 6);
        assert!(is_mirror_symmetric(&f).unwrap().is_some());
    }

    #[test]
    fn glue_rejects_dependent_set() {
        let k3 = PatternGraph::complete(3).unwrap();
        assert!(glue_along(&k3, &[0, 1]).is_err());
    }
}

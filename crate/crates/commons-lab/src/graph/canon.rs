//! Canonical forms and automorphism counting for small graphs.
//!
//! Graphs up to 8 nodes are canonicalized by scanning all node permutations;
//! larger ones (the pattern cap is 12) use colour refinement with
//! individualization backtracking. Both produce the same notion of canonical
//! form: the maximum upper-triangular adjacency bitmask over all labelings.

use std::sync::OnceLock;

use crate::graph::PatternGraph;

/// Canonical key: isomorphic graphs (without isolated nodes the node count
/// is determined by the edges, but keeping it makes the key total).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonKey {
    pub node_count: u8,
    pub mask: u128,
}

#[inline]
fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    debug_assert!(i < j && j < n);
    // row-major upper triangle
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

fn mask_of(n: usize, edges: &[(usize, usize)], perm: &[u8]) -> u128 {
    let mut mask = 0u128;
    for &(a, b) in edges {
        let (x, y) = (perm[a] as usize, perm[b] as usize);
        let (i, j) = (x.min(y), x.max(y));
        mask |= 1u128 << pair_bit(n, i, j);
    }
    mask
}

fn all_permutations(n: usize) -> &'static [Vec<u8>] {
    static CACHE: OnceLock<Vec<Vec<Vec<u8>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let mut per_n: Vec<Vec<Vec<u8>>> = Vec::with_capacity(9);
        for n in 0..=8usize {
            let mut perms = Vec::new();
            let mut cur: Vec<u8> = (0..n as u8).collect();
            heap_permutations(&mut cur, n, &mut perms);
            per_n.push(perms);
        }
        per_n
    });
    &cache[n]
}

fn heap_permutations(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(cur, k - 1, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

/// Canonical key of a pattern graph. Isolated nodes participate (they affect
/// only `node_count`).
pub fn canonical_key(g: &PatternGraph) -> CanonKey {
    let n = g.node_count();
    if n <= 8 {
        let mut best = 0u128;
        for perm in all_permutations(n) {
            let m = mask_of(n, g.edges(), perm);
            if m > best {
                best = m;
            }
        }
        CanonKey {
            node_count: n as u8,
            mask: best,
        }
    } else {
        let adj = g.adjacency_masks();
        let mut colors = vec![0usize; n];
        refine(&adj, &mut colors);
        let mut best = 0u128;
        canon_search(n, g.edges(), &adj, &colors, &mut best);
        CanonKey {
            node_count: n as u8,
            mask: best,
        }
    }
}

/// Rebuilds the canonical representative from a key.
pub fn pattern_from_key(key: CanonKey) -> PatternGraph {
    let n = key.node_count as usize;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if key.mask >> pair_bit(n, i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    PatternGraph::with_isolated(n, &edges).expect("canonical key decodes to a valid graph")
}

/// Iterated colour refinement: colours end up sorted by an isomorphism
/// invariant signature (own colour, multiset of neighbour colours).
fn refine(adj: &[u16], colors: &mut [usize]) {
    let n = adj.len();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut ncols: Vec<usize> = (0..n)
                .filter(|&u| adj[v] >> u & 1 == 1)
                .map(|u| colors[u])
                .collect();
            ncols.sort_unstable();
            sigs.push((colors[v], ncols));
        }
        let mut uniq: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        let new: Vec<usize> = sigs
            .iter()
            .map(|s| uniq.binary_search(&s).expect("own signature present"))
            .collect();
        if new == colors {
            return;
        }
        colors.copy_from_slice(&new);
    }
}

fn canon_search(
    n: usize,
    edges: &[(usize, usize)],
    adj: &[u16],
    colors: &[usize],
    best: &mut u128,
) {
    // discrete partition: colours form a permutation
    let ncolors = colors.iter().max().map_or(0, |m| m + 1);
    if ncolors == n {
        let mut perm = vec![0u8; n];
        for (v, &c) in colors.iter().enumerate() {
            perm[v] = c as u8;
        }
        let m = mask_of(n, edges, &perm);
        if m > *best {
            *best = m;
        }
        return;
    }
    // first colour class with at least two members
    let target = (0..ncolors)
        .find(|&c| colors.iter().filter(|&&x| x == c).count() >= 2)
        .expect("non-discrete partition has a big cell");
    for v in 0..n {
        if colors[v] != target {
            continue;
        }
        // individualize v below its cellmates, then refine
        let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
        next[v] = 2 * target;
        refine(adj, &mut next);
        canon_search(n, edges, adj, &next, best);
    }
}

/// Number of adjacency-preserving bijections of the pattern onto itself,
/// by exhaustive backtracking.
pub fn automorphism_count(g: &PatternGraph) -> u64 {
    let n = g.node_count();
    if n == 0 {
        return 1;
    }
    let adj = g.adjacency_masks();
    let degs: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut count = 0u64;
    backtrack(&adj, &degs, 0, &mut image, &mut used, &mut count);
    count
}

fn backtrack(
    adj: &[u16],
    degs: &[u32],
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
    count: &mut u64,
) {
    let n = adj.len();
    if v == n {
        *count += 1;
        return;
    }
    'cand: for u in 0..n {
        if used[u] || degs[u] != degs[v] {
            continue;
        }
        for w in 0..v {
            let e_vw = adj[v] >> w & 1;
            let e_img = adj[u] >> image[w] & 1;
            if e_vw != e_img {
                continue 'cand;
            }
        }
        image[v] = u;
        used[u] = true;
        backtrack(adj, degs, v + 1, image, used, count);
        used[u] = false;
    }
    image[v] = usize::MAX;
}

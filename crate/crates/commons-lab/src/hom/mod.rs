//! Exact homomorphism counting: `hom`, `inj`, the normalized density `t`,
//! and subgraph spectra.

pub(crate) mod brute;
mod cache;
mod dp;
mod spectrum;
pub(crate) mod target;

pub use dp::elimination_order;
pub use spectrum::{binomial, subgraph_count, subgraph_spectrum, SpectrumEntry, SubgraphSpectrum};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{PatternGraph, WeightedGraph};
use crate::rational::Rational;
use target::Target;

/// Evaluation strategy for the homomorphism sum.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Elimination DP when the width permits, brute force otherwise.
    Auto,
    /// Direct sum over all assignments (guarded).
    Brute,
    /// Elimination DP; falls back to brute force on width blow-up, and only
    /// errors when the brute-force guard also rejects the instance.
    Dp,
}

pub(crate) fn hom_target(
    pattern: &PatternGraph,
    target: &Target,
    strategy: Strategy,
    cfg: &Config,
) -> Result<Rational> {
    match strategy {
        Strategy::Brute => brute::hom_brute(pattern, target, cfg),
        Strategy::Dp | Strategy::Auto => match dp::hom_dp(pattern, target, cfg.dp_width_cap) {
            Ok(v) => Ok(v),
            Err(Error::WidthExceeded { width, cap, .. }) => {
                brute::hom_brute(pattern, target, cfg).map_err(|e| Error::WidthExceeded {
                    width,
                    cap,
                    fallback: e.to_string(),
                })
            }
            Err(e) => Err(e),
        },
    }
}

/// Weighted homomorphism count: the sum over all maps V(F) -> V(G) of the
/// product of edge weights. Loops in `g` enter only through maps sending
/// both endpoints of a pattern edge to the same node.
pub fn hom(
    pattern: &PatternGraph,
    g: &WeightedGraph,
    strategy: Strategy,
    cfg: &Config,
) -> Result<Rational> {
    hom_target(pattern, &Target::from_weighted_graph(g), strategy, cfg)
}

/// Same sum restricted to injective maps. Brute force only.
pub fn inj(pattern: &PatternGraph, g: &WeightedGraph, cfg: &Config) -> Result<Rational> {
    brute::inj_brute(pattern, &Target::from_weighted_graph(g), cfg)
}

/// Normalized homomorphism density t(F,G) = hom(F,G) / |V(G)|^|V(F)|.
pub fn density(pattern: &PatternGraph, g: &WeightedGraph, cfg: &Config) -> Result<Rational> {
    let h = hom(pattern, g, Strategy::Auto, cfg)?;
    let norm = Rational::from_int(g.node_count() as i64).pow(pattern.node_count() as u32);
    Ok(h / norm)
}

/// Number of partitions of V(F) into exactly k independent sets, for each k.
/// `counts[k]` is the count for k blocks; index 0 is unused except for the
/// empty pattern.
pub fn independent_partition_counts(pattern: &PatternGraph) -> Vec<u64> {
    let n = pattern.node_count();
    let adj = pattern.adjacency_masks();
    let mut counts = vec![0u64; n + 1];
    if n == 0 {
        counts = vec![1];
        return counts;
    }
    // DFS over restricted-growth assignments; blocks tracked as node masks
    fn assign(v: usize, n: usize, adj: &[u16], blocks: &mut Vec<u16>, counts: &mut [u64]) {
        if v == n {
            counts[blocks.len()] += 1;
            return;
        }
        for i in 0..blocks.len() {
            if blocks[i] & adj[v] == 0 {
                blocks[i] |= 1 << v;
                assign(v + 1, n, adj, blocks, counts);
                blocks[i] &= !(1 << v);
            }
        }
        blocks.push(1 << v);
        assign(v + 1, n, adj, blocks, counts);
        blocks.pop();
    }
    let mut blocks = Vec::new();
    assign(0, n, &adj, &mut blocks, &mut counts);
    counts
}

/// hom(F, K_n) for the 0/1 complete graph without loops, evaluated as the
/// chromatic polynomial: the sum over k of (number of partitions of V(F)
/// into k independent sets) times n(n-1)...(n-k+1). Exact for every n and
/// much cheaper than the generic engine; the two are cross-checked in tests.
pub fn hom_into_complete(pattern: &PatternGraph, n: usize) -> Rational {
    let counts = independent_partition_counts(pattern);
    let mut total = Rational::zero();
    for (k, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut falling = Rational::one();
        for i in 0..k {
            falling *= Rational::from_int(n as i64 - i as i64);
        }
        total += Rational::from_int(c as i64) * falling;
    }
    total
}

/// t(F, K_n) via the chromatic-polynomial route.
pub fn density_into_complete(pattern: &PatternGraph, n: usize) -> Rational {
    hom_into_complete(pattern, n) / Rational::from_int(n as i64).pow(pattern.node_count() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::categorical_product;

    fn cfg() -> Config {
        Config::default()
    }

    fn g01(p: &PatternGraph) -> WeightedGraph {
        WeightedGraph::from_pattern(p)
    }

    #[test]
    fn triangle_into_triangle() {
        let k3 = PatternGraph::complete(3).unwrap();
        let target = g01(&k3);
        for s in [Strategy::Brute, Strategy::Dp, Strategy::Auto] {
            assert_eq!(hom(&k3, &target, s, &cfg()).unwrap(), Rational::from_int(6));
        }
        assert_eq!(inj(&k3, &target, &cfg()).unwrap(), Rational::from_int(6));
    }

    #[test]
    fn injective_counts() {
        let k3 = PatternGraph::complete(3).unwrap();
        let c5 = g01(&PatternGraph::cycle(5).unwrap());
        let k4 = g01(&PatternGraph::complete(4).unwrap());
        assert!(inj(&k3, &c5, &cfg()).unwrap().is_zero());
        assert!(hom(&k3, &c5, Strategy::Auto, &cfg()).unwrap().is_zero());
        assert_eq!(inj(&k3, &k4, &cfg()).unwrap(), Rational::from_int(24));
    }

    #[test]
    fn edge_density() {
        let k2 = PatternGraph::complete(2).unwrap();
        let target = g01(&k2);
        assert_eq!(density(&k2, &target, &cfg()).unwrap(), Rational::new(1, 2));
    }

    #[test]
    fn edge_count_formula_with_loops() {
        // hom(K2, G) = 2 * (sum of off-diagonal weights) + (sum of loops)
        let mut g = WeightedGraph::new(3, true).unwrap();
        g.set_weight(0, 1, Rational::new(1, 2)).unwrap();
        g.set_weight(1, 2, Rational::from_int(-1)).unwrap();
        g.set_weight(2, 2, Rational::new(3, 4)).unwrap();
        let k2 = PatternGraph::complete(2).unwrap();
        let expect = Rational::from_int(2) * (Rational::new(1, 2) + Rational::from_int(-1))
            + Rational::new(3, 4);
        for s in [Strategy::Brute, Strategy::Dp] {
            assert_eq!(hom(&k2, &g, s, &cfg()).unwrap(), expect);
        }
    }

    #[test]
    fn forest_density_grows_toward_one() {
        let p4 = PatternGraph::path(4).unwrap();
        let mut last = Rational::zero();
        for n in [2usize, 4, 8] {
            let kn = WeightedGraph::complete01(n).unwrap();
            let t = density(&p4, &kn, &cfg()).unwrap();
            assert!(t > last, "density not increasing at n={n}");
            assert!(t < Rational::one());
            last = t;
        }
    }

    #[test]
    fn brute_guard_fires() {
        let mut small = cfg();
        small.brute_force_guard = 100;
        let k4 = PatternGraph::complete(4).unwrap();
        let k4t = g01(&k4);
        assert!(matches!(
            hom(&k4, &k4t, Strategy::Brute, &small),
            Err(Error::BruteGuardExceeded(256, 100))
        ));
        // DP is unaffected by the brute guard
        assert_eq!(
            hom(&k4, &k4t, Strategy::Dp, &small).unwrap(),
            Rational::from_int(24)
        );
    }

    #[test]
    fn parallel_brute_equals_sequential() {
        let k3 = PatternGraph::complete(3).unwrap();
        let mut g = WeightedGraph::new(5, true).unwrap();
        g.set_weight(0, 1, Rational::new(1, 2)).unwrap();
        g.set_weight(1, 2, Rational::from_int(-1)).unwrap();
        g.set_weight(2, 0, Rational::one()).unwrap();
        g.set_weight(3, 4, Rational::new(-1, 3)).unwrap();
        g.set_weight(0, 0, Rational::from_int(-1)).unwrap();
        g.set_weight(0, 3, Rational::one()).unwrap();
        let seq = hom(&k3, &g, Strategy::Brute, &cfg()).unwrap();
        let mut par_cfg = cfg();
        par_cfg.threads = 4;
        let par = hom(&k3, &g, Strategy::Brute, &par_cfg).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn product_multiplicativity_spot_check() {
        let c4 = PatternGraph::cycle(4).unwrap();
        let k3 = WeightedGraph::complete01(3).unwrap();
        let mut h = WeightedGraph::new(2, true).unwrap();
        h.set_weight(0, 1, Rational::one()).unwrap();
        h.set_weight(0, 0, Rational::from_int(-1)).unwrap();
        let p = categorical_product(&k3, &h, &cfg()).unwrap();
        let lhs = density(&c4, &p, &cfg()).unwrap();
        let rhs = density(&c4, &k3, &cfg()).unwrap() * density(&c4, &h, &cfg()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn complete_target_fast_path_matches_engine() {
        for f in [
            PatternGraph::complete(3).unwrap(),
            PatternGraph::complete(4).unwrap(),
            PatternGraph::cycle(4).unwrap(),
            PatternGraph::cycle(5).unwrap(),
            PatternGraph::paw(),
            PatternGraph::path(4).unwrap(),
        ] {
            for n in 1..=7usize {
                let kn = WeightedGraph::complete01(n).unwrap();
                assert_eq!(
                    hom_into_complete(&f, n),
                    hom(&f, &kn, Strategy::Auto, &cfg()).unwrap(),
                    "pattern {f:?}, n={n}"
                );
            }
        }
        assert_eq!(
            hom_into_complete(&PatternGraph::complete(4).unwrap(), 38),
            Rational::from_int(38 * 37 * 36 * 35)
        );
    }

    #[test]
    fn elimination_width_of_known_patterns() {
        assert_eq!(elimination_order(&PatternGraph::complete(4).unwrap()).1, 4);
        assert_eq!(elimination_order(&PatternGraph::cycle(5).unwrap()).1, 3);
        assert_eq!(elimination_order(&PatternGraph::path(4).unwrap()).1, 2);
    }
}

//! Weighted homomorphism counting by bucket elimination over a greedy
//! elimination ordering of the pattern. Factor tables are sparse: only
//! assignments with nonzero value are stored, which is what makes the
//! glued constructions (hundreds of target nodes, all weights in a few
//! dense pockets) tractable.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::PatternGraph;
use crate::hom::target::Target;
use crate::rational::Rational;

/// Greedy min-degree elimination order of the pattern (with fill-in), plus
/// the resulting width (largest bag: eliminated vertex + live neighbours).
pub fn elimination_order(pattern: &PatternGraph) -> (Vec<usize>, usize) {
    let n = pattern.node_count();
    let mut adj: Vec<u16> = pattern.adjacency_masks();
    let mut alive: u16 = if n == 16 { !0 } else { (1 << n) - 1 };
    let mut order = Vec::with_capacity(n);
    let mut width = 0usize;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive >> v & 1 == 1)
            .min_by_key(|&v| (adj[v] & alive).count_ones())
            .expect("alive set nonempty");
        let nbrs = adj[v] & alive & !(1 << v);
        width = width.max(1 + nbrs.count_ones() as usize);
        // fill: neighbours become a clique
        for a in 0..n {
            if nbrs >> a & 1 == 1 {
                adj[a] |= nbrs & !(1 << a);
            }
        }
        alive &= !(1 << v);
        order.push(v);
    }
    (order, width)
}

struct Factor {
    scope: Vec<usize>,
    table: HashMap<Vec<u32>, Rational>,
}

impl Factor {
    fn project(assignment: &[u32], scope: &[usize], vars: &[usize]) -> Vec<u32> {
        vars.iter()
            .map(|v| {
                let i = scope.iter().position(|s| s == v).expect("var in scope");
                assignment[i]
            })
            .collect()
    }
}

fn join(f: Factor, g: Factor) -> Factor {
    let shared: Vec<usize> = f
        .scope
        .iter()
        .copied()
        .filter(|v| g.scope.contains(v))
        .collect();
    let mut union: Vec<usize> = f.scope.clone();
    for &v in &g.scope {
        if !union.contains(&v) {
            union.push(v);
        }
    }
    union.sort_unstable();

    // index g by its shared-variable projection
    let mut index: HashMap<Vec<u32>, Vec<(&Vec<u32>, &Rational)>> = HashMap::new();
    for (ga, gv) in &g.table {
        index
            .entry(Factor::project(ga, &g.scope, &shared))
            .or_default()
            .push((ga, gv));
    }

    let mut table: HashMap<Vec<u32>, Rational> = HashMap::new();
    for (fa, fv) in &f.table {
        let key = Factor::project(fa, &f.scope, &shared);
        if let Some(matches) = index.get(&key) {
            for (ga, gv) in matches {
                let merged: Vec<u32> = union
                    .iter()
                    .map(|v| {
                        if let Some(i) = f.scope.iter().position(|s| s == v) {
                            fa[i]
                        } else {
                            let i = g.scope.iter().position(|s| s == v).unwrap();
                            ga[i]
                        }
                    })
                    .collect();
                let val = fv * *gv;
                if !val.is_zero() {
                    table.insert(merged, val);
                }
            }
        }
    }
    Factor {
        scope: union,
        table,
    }
}

fn marginalize(f: Factor, v: usize, node_weight: &[Rational]) -> Factor {
    let pos = f.scope.iter().position(|&s| s == v).expect("v in scope");
    let scope: Vec<usize> = f
        .scope
        .iter()
        .copied()
        .filter(|&s| s != v)
        .collect();
    let mut table: HashMap<Vec<u32>, Rational> = HashMap::new();
    for (assign, val) in f.table {
        let x = assign[pos] as usize;
        let mut rest = assign.clone();
        rest.remove(pos);
        let term = val * &node_weight[x];
        if term.is_zero() {
            continue;
        }
        *table.entry(rest).or_insert_with(Rational::zero) += term;
    }
    table.retain(|_, v| !v.is_zero());
    Factor { scope, table }
}

/// Bucket-elimination evaluation of the weighted homomorphism sum. Returns
/// an error (without falling back) when the elimination width exceeds the
/// cap; callers decide on the fallback.
pub(crate) fn hom_dp(pattern: &PatternGraph, target: &Target, width_cap: usize) -> Result<Rational> {
    let k = pattern.node_count();
    if k == 0 {
        return Ok(Rational::one());
    }
    let (order, width) = elimination_order(pattern);
    if width > width_cap {
        return Err(Error::WidthExceeded {
            width,
            cap: width_cap,
            fallback: "not attempted".into(),
        });
    }

    let mut factors: Vec<Factor> = Vec::new();
    for &(a, b) in pattern.edges() {
        let mut table = HashMap::new();
        // rows hold both orientations of every nonzero pair, so this visits
        // each ordered assignment (x_a, x_b) exactly once
        for x in 0..target.n as u32 {
            for (y, w) in &target.rows[x as usize] {
                table.insert(vec![x, *y], w.clone());
            }
        }
        factors.push(Factor {
            scope: vec![a, b],
            table,
        });
    }

    let mut multiplier = Rational::one();
    for &v in &order {
        let (with_v, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        if with_v.is_empty() {
            multiplier *= target.node_weight_sum();
            continue;
        }
        let mut iter = with_v.into_iter();
        let mut joined = iter.next().unwrap();
        for f in iter {
            joined = join(joined, f);
        }
        factors.push(marginalize(joined, v, &target.node_weight));
    }

    let mut result = multiplier;
    for f in factors {
        debug_assert!(f.scope.is_empty());
        let val = f
            .table
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(Rational::zero);
        result *= val;
    }
    Ok(result)
}

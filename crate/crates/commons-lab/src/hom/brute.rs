//! Brute-force weighted homomorphism sums: the independent oracle against
//! which the elimination DP is checked.

use rayon::prelude::*;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::PatternGraph;
use crate::hom::target::Target;
use crate::rational::Rational;

pub(crate) fn check_guard(pattern: &PatternGraph, target: &Target, cfg: &Config) -> Result<()> {
    let k = pattern.node_count() as u32;
    let total = (target.n as u128)
        .checked_pow(k)
        .unwrap_or(u128::MAX);
    if total > cfg.brute_force_guard {
        return Err(Error::BruteGuardExceeded(total, cfg.brute_force_guard));
    }
    Ok(())
}

/// Sum over all maps V(F) -> V(target) of the product of pair weights over
/// the edges of F times the product of node weights. Zero partial products
/// prune the walk; the sum is unchanged.
pub(crate) fn hom_brute(pattern: &PatternGraph, target: &Target, cfg: &Config) -> Result<Rational> {
    check_guard(pattern, target, cfg)?;
    let k = pattern.node_count();
    if k == 0 {
        return Ok(Rational::one());
    }
    // edges from each vertex to earlier vertices, for incremental weights
    let back_edges: Vec<Vec<usize>> = (0..k)
        .map(|v| {
            pattern
                .edges()
                .iter()
                .filter_map(|&(a, b)| {
                    if b == v && a < v {
                        Some(a)
                    } else if a == v && b < v {
                        Some(b)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();

    let body = |x0: u32| -> Rational {
        let mut assign = vec![0u32; k];
        assign[0] = x0;
        let start = target.node_weight[x0 as usize].clone();
        let mut acc = Rational::zero();
        descend(pattern, target, &back_edges, &mut assign, 1, start, &mut acc);
        acc
    };

    if cfg.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        // exact rational addition is associative and commutative, so the
        // reduction schedule cannot change the result
        Ok(pool.install(|| {
            (0..target.n as u32)
                .into_par_iter()
                .map(body)
                .reduce(Rational::zero, |a, b| a + b)
        }))
    } else {
        Ok((0..target.n as u32).map(body).sum())
    }
}

fn descend(
    pattern: &PatternGraph,
    target: &Target,
    back_edges: &[Vec<usize>],
    assign: &mut [u32],
    depth: usize,
    partial: Rational,
    acc: &mut Rational,
) {
    if depth == pattern.node_count() {
        *acc += partial;
        return;
    }
    'choice: for x in 0..target.n as u32 {
        let mut p = partial.clone() * &target.node_weight[x as usize];
        if p.is_zero() {
            continue;
        }
        for &e in &back_edges[depth] {
            match target.weight(x, assign[e]) {
                Some(w) => p *= w,
                None => continue 'choice,
            }
        }
        assign[depth] = x;
        descend(pattern, target, back_edges, assign, depth + 1, p, acc);
    }
}

/// Same sum restricted to injective maps.
pub(crate) fn inj_brute(pattern: &PatternGraph, target: &Target, cfg: &Config) -> Result<Rational> {
    check_guard(pattern, target, cfg)?;
    let k = pattern.node_count();
    if k == 0 {
        return Ok(Rational::one());
    }
    if k > target.n {
        return Ok(Rational::zero());
    }
    let back_edges: Vec<Vec<usize>> = (0..k)
        .map(|v| {
            pattern
                .edges()
                .iter()
                .filter_map(|&(a, b)| {
                    if b == v && a < v {
                        Some(a)
                    } else if a == v && b < v {
                        Some(b)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let mut assign = vec![0u32; k];
    let mut used = vec![false; target.n];
    let mut acc = Rational::zero();
    descend_inj(
        pattern,
        target,
        &back_edges,
        &mut assign,
        &mut used,
        0,
        Rational::one(),
        &mut acc,
    );
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn descend_inj(
    pattern: &PatternGraph,
    target: &Target,
    back_edges: &[Vec<usize>],
    assign: &mut [u32],
    used: &mut [bool],
    depth: usize,
    partial: Rational,
    acc: &mut Rational,
) {
    if depth == pattern.node_count() {
        *acc += partial;
        return;
    }
    'choice: for x in 0..target.n as u32 {
        if used[x as usize] {
            continue;
        }
        let mut p = partial.clone() * &target.node_weight[x as usize];
        if p.is_zero() {
            continue;
        }
        for &e in &back_edges[depth] {
            match target.weight(x, assign[e]) {
                Some(w) => p *= w,
                None => continue 'choice,
            }
        }
        assign[depth] = x;
        used[x as usize] = true;
        descend_inj(pattern, target, back_edges, assign, used, depth + 1, p, acc);
        used[x as usize] = false;
    }
}

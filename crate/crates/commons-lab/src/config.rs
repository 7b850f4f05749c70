//! Resource guards and suite sizes.
//!
//! Every enumeration in this crate is exhaustive, so every entry point is
//! protected by an explicit guard. All guards and the sizes of the seeded
//! property suites live in this one record; tests and the CLI override
//! fields instead of scattering magic numbers.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Hard cap on pattern-graph size. Structural analysis (cycle enumeration,
/// automorphisms, subgraph spectra) is exhaustive and only meant for small
/// patterns; every pattern this library ships has at most 7 nodes.
pub const PATTERN_NODE_CAP: usize = 12;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Maximum number of assignments the brute-force counter will sum over.
    pub brute_force_guard: u128,
    /// Maximum bag size (eliminated vertex plus live neighbours) the
    /// elimination-order DP accepts before falling back to brute force.
    pub dp_width_cap: usize,
    /// Maximum part count a tensor power may produce.
    pub tensor_part_guard: usize,
    /// Maximum node count a categorical product may produce.
    pub product_node_guard: usize,
    /// Maximum edge count for subgraph-spectrum enumeration (2^|E| subsets).
    pub max_spectrum_edges: usize,
    /// Maximum part count for the random kernel generator.
    pub random_parts_cap: usize,
    /// Retry limit for generators that resample (balanced kernels,
    /// random regular bipartite graphs).
    pub retry_limit: usize,
    /// Worker threads for the parallel brute-force sum; 1 = sequential.
    pub threads: usize,
    /// Directory for the on-disk spectrum cache; `None` disables it.
    pub cache_dir: Option<PathBuf>,

    /// Cases in the mirror-symmetry density suite.
    pub mirror_suite: usize,
    /// Cases in the balanced-kernel suite.
    pub balance_suite: usize,
    /// Cases in the perturbation-expansion identity suite.
    pub expansion_suite: usize,
    /// Cases in the DP-vs-brute oracle suite.
    pub oracle_suite: usize,
    /// Cases in the product-multiplicativity and kernel-identity suites.
    pub product_suite: usize,
    /// Cases in the random-graphon suites (Goodman, Sidorenko).
    pub graphon_suite: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            brute_force_guard: 1_000_000_000,
            dp_width_cap: 8,
            tensor_part_guard: 10_000,
            product_node_guard: 100_000,
            max_spectrum_edges: 20,
            random_parts_cap: 12,
            retry_limit: 64,
            threads: 1,
            cache_dir: None,
            mirror_suite: 200,
            balance_suite: 300,
            expansion_suite: 200,
            oracle_suite: 500,
            product_suite: 100,
            graphon_suite: 100,
        }
    }
}

impl Config {
    /// Default config with the spectrum cache directory taken from the
    /// `COMMONS_LAB_CACHE_DIR` environment variable when set.
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        if let Ok(dir) = std::env::var("COMMONS_LAB_CACHE_DIR") {
            if !dir.is_empty() {
                cfg.cache_dir = Some(PathBuf::from(dir));
            }
        }
        cfg
    }
}

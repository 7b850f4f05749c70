//! Subgraph spectra: the multiset of isomorphism classes of subgraphs
//! (isolated nodes deleted) with multiplicities, indexed by canonical form.
//! Every edge subset of the pattern contributes to exactly one class, so the
//! class multiplicities at a fixed edge count sum to a binomial coefficient —
//! a tested invariant.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::canon::{canonical_key, CanonKey};
use crate::graph::PatternGraph;
use crate::hom::cache;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    /// Canonical representative of the class (no isolated nodes).
    pub graph: PatternGraph,
    /// Number of edge subsets of the pattern inducing this class.
    pub count: u64,
}

/// Spectrum of one pattern, entries sorted by (edge count, node count,
/// canonical mask). Always contains the empty pattern with multiplicity 1.
#[derive(Clone, Debug)]
pub struct SubgraphSpectrum {
    entries: Vec<SpectrumEntry>,
    index: HashMap<CanonKey, usize>,
}

impl SubgraphSpectrum {
    fn from_counts(counts: HashMap<CanonKey, u64>) -> SubgraphSpectrum {
        let mut keyed: Vec<(CanonKey, u64)> = counts.into_iter().collect();
        keyed.sort_by_key(|(k, _)| (k.mask.count_ones(), k.node_count, k.mask));
        let mut entries = Vec::with_capacity(keyed.len());
        let mut index = HashMap::with_capacity(keyed.len());
        for (key, count) in keyed {
            index.insert(key, entries.len());
            entries.push(SpectrumEntry {
                graph: crate::graph::pattern_from_key(key),
                count,
            });
        }
        SubgraphSpectrum { entries, index }
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    /// Multiplicity of the class of `h` (0 when absent).
    pub fn multiplicity(&self, h: &PatternGraph) -> u64 {
        self.index
            .get(&canonical_key(h))
            .map(|&i| self.entries[i].count)
            .unwrap_or(0)
    }

    pub fn classes_with_edge_count(&self, e: usize) -> impl Iterator<Item = &SpectrumEntry> {
        self.entries
            .iter()
            .filter(move |s| s.graph.edge_count() == e)
    }
}

fn memo() -> &'static Mutex<HashMap<CanonKey, Arc<SubgraphSpectrum>>> {
    static MEMO: OnceLock<Mutex<HashMap<CanonKey, Arc<SubgraphSpectrum>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enumerates all 2^|E| edge subsets of `f`, deletes isolated nodes,
/// buckets by canonical form. Results are memoized per isomorphism class
/// (spectra are isomorphism invariants) and optionally cached on disk.
pub fn subgraph_spectrum(f: &PatternGraph, cfg: &Config) -> Result<Arc<SubgraphSpectrum>> {
    let e = f.edge_count();
    if e > cfg.max_spectrum_edges {
        return Err(Error::SpectrumCapExceeded(e, cfg.max_spectrum_edges));
    }
    let key = canonical_key(f);
    if let Some(hit) = memo().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    if let Some(dir) = &cfg.cache_dir {
        if let Some(spec) = cache::load(dir, key) {
            let arc = Arc::new(spec);
            memo().lock().unwrap().insert(key, arc.clone());
            return Ok(arc);
        }
    }

    let mut counts: HashMap<CanonKey, u64> = HashMap::new();
    for mask in 0u64..(1u64 << e) {
        let sub = f.edge_subset(mask);
        *counts.entry(canonical_key(&sub)).or_insert(0) += 1;
    }
    let spec = SubgraphSpectrum::from_counts(counts);
    if let Some(dir) = &cfg.cache_dir {
        cache::store(dir, key, &spec);
    }
    let arc = Arc::new(spec);
    memo().lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// Number of subgraphs of `f` (without isolated nodes) isomorphic to `h`.
pub fn subgraph_count(h: &PatternGraph, f: &PatternGraph, cfg: &Config) -> Result<u64> {
    if h.node_count() > 0 && h.isolated_node().is_some() {
        return Err(Error::InvalidGraph(
            "subgraph multiplicities are defined for graphs without isolated nodes".into(),
        ));
    }
    Ok(subgraph_spectrum(f, cfg)?.multiplicity(h))
}

/// Wire form of one cached spectrum.
#[derive(Serialize, Deserialize)]
pub(crate) struct SpectrumFile {
    pub version: u32,
    pub entries: Vec<SpectrumFileEntry>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SpectrumFileEntry {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub count: u64,
}

impl SubgraphSpectrum {
    pub(crate) fn to_file(&self) -> SpectrumFile {
        SpectrumFile {
            version: cache::SCHEMA_VERSION,
            entries: self
                .entries
                .iter()
                .map(|s| SpectrumFileEntry {
                    n: s.graph.node_count(),
                    edges: s.graph.edges().iter().map(|&(a, b)| [a, b]).collect(),
                    count: s.count,
                })
                .collect(),
        }
    }

    pub(crate) fn from_file(file: SpectrumFile) -> Result<SubgraphSpectrum> {
        let mut counts = HashMap::new();
        for e in file.entries {
            let edges: Vec<(usize, usize)> = e.edges.iter().map(|&[a, b]| (a, b)).collect();
            let g = PatternGraph::with_isolated(e.n, &edges)?;
            counts.insert(canonical_key(&g), e.count);
        }
        Ok(SubgraphSpectrum::from_counts(counts))
    }
}

/// Binomial coefficient, exact.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= Rational::from_int((n - i) as i64);
        acc /= Rational::from_int((i + 1) as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn triangle_spectrum() {
        let k3 = PatternGraph::complete(3).unwrap();
        let spec = subgraph_spectrum(&k3, &cfg()).unwrap();
        assert_eq!(spec.entries().len(), 4);
        assert_eq!(spec.multiplicity(&PatternGraph::empty()), 1);
        assert_eq!(spec.multiplicity(&PatternGraph::path(2).unwrap()), 3);
        assert_eq!(spec.multiplicity(&PatternGraph::path(3).unwrap()), 3);
        assert_eq!(spec.multiplicity(&k3), 1);
    }

    #[test]
    fn k4_four_edge_classes() {
        let k4 = PatternGraph::complete(4).unwrap();
        let spec = subgraph_spectrum(&k4, &cfg()).unwrap();
        let four: Vec<_> = spec.classes_with_edge_count(4).collect();
        assert_eq!(four.len(), 2);
        assert_eq!(spec.multiplicity(&PatternGraph::cycle(4).unwrap()), 3);
        assert_eq!(spec.multiplicity(&PatternGraph::paw()), 12);
    }

    #[test]
    fn named_multiplicities() {
        let c = cfg();
        let k3 = PatternGraph::complete(3).unwrap();
        let k4 = PatternGraph::complete(4).unwrap();
        let c4 = PatternGraph::cycle(4).unwrap();
        assert_eq!(subgraph_count(&PatternGraph::path(3).unwrap(), &k3, &c).unwrap(), 3);
        assert_eq!(subgraph_count(&PatternGraph::two_disjoint_edges(), &c4, &c).unwrap(), 2);
        assert_eq!(subgraph_count(&c4, &k4, &c).unwrap(), 3);
        assert_eq!(subgraph_count(&k4, &k4, &c).unwrap(), 1);
    }

    #[test]
    fn binomial_identity_small_patterns() {
        let c = cfg();
        for f in [
            PatternGraph::complete(4).unwrap(),
            PatternGraph::cycle(5).unwrap(),
            PatternGraph::cycle(6).unwrap(),
            PatternGraph::paw(),
            PatternGraph::path(5).unwrap(),
            PatternGraph::complete(5).unwrap(),
        ] {
            let spec = subgraph_spectrum(&f, &c).unwrap();
            let m = f.edge_count() as u64;
            for e in 0..=m {
                let total: u64 = spec
                    .classes_with_edge_count(e as usize)
                    .map(|s| s.count)
                    .sum();
                assert_eq!(
                    Rational::from_int(total as i64),
                    binomial(m, e),
                    "pattern {:?} edge count {}",
                    f,
                    e
                );
            }
        }
    }

    #[test]
    fn spectrum_edge_cap() {
        let mut c = cfg();
        c.max_spectrum_edges = 5;
        let k4 = PatternGraph::complete(4).unwrap();
        assert!(matches!(
            subgraph_spectrum(&k4, &c),
            Err(Error::SpectrumCapExceeded(6, 5))
        ));
    }
}

//! Edge-weighted target graphs with exact rational weights.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::pattern::{EdgeJson, GraphJson};
use crate::rational::Rational;

/// A finite graph with rational edge weights; loops optional.
///
/// Weights are stored on unordered pairs, so symmetry is structural. An
/// absent pair has weight 0.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    node_count: usize,
    weights: BTreeMap<(usize, usize), Rational>,
    allow_loops: bool,
}

impl WeightedGraph {
    pub fn new(node_count: usize, allow_loops: bool) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidGraph("target graph needs at least one node".into()));
        }
        Ok(WeightedGraph {
            node_count,
            weights: BTreeMap::new(),
            allow_loops,
        })
    }

    /// Sets the weight of the unordered pair {a,b}; a weight of 0 removes
    /// the entry.
    pub fn set_weight(&mut self, a: usize, b: usize, w: Rational) -> Result<()> {
        if a >= self.node_count || b >= self.node_count {
            return Err(Error::InvalidGraph(format!(
                "pair ({a},{b}) out of range for {} nodes",
                self.node_count
            )));
        }
        if a == b && !self.allow_loops {
            return Err(Error::InvalidGraph(format!(
                "loop at {a} but loops are not allowed"
            )));
        }
        let key = (a.min(b), a.max(b));
        if w.is_zero() {
            self.weights.remove(&key);
        } else {
            self.weights.insert(key, w);
        }
        Ok(())
    }

    /// Builds from a list of weighted pairs.
    pub fn from_entries(
        node_count: usize,
        entries: &[(usize, usize, Rational)],
        allow_loops: bool,
    ) -> Result<Self> {
        let mut g = Self::new(node_count, allow_loops)?;
        for (a, b, w) in entries {
            let key = (*a.min(b), *a.max(b));
            if g.weights.contains_key(&key) {
                return Err(Error::InvalidGraph(format!("duplicate pair ({a},{b})")));
            }
            g.set_weight(*a, *b, w.clone())?;
        }
        Ok(g)
    }

    /// Complete graph on `n` nodes with all weights 1, no loops.
    pub fn complete01(n: usize) -> Result<Self> {
        let mut g = Self::new(n, false)?;
        for i in 0..n {
            for j in i + 1..n {
                g.set_weight(i, j, Rational::one())?;
            }
        }
        Ok(g)
    }

    /// 0/1 weighting of a pattern graph.
    pub fn from_pattern(p: &crate::graph::PatternGraph) -> Self {
        let mut g = WeightedGraph {
            node_count: p.node_count(),
            weights: BTreeMap::new(),
            allow_loops: false,
        };
        for &(a, b) in p.edges() {
            g.weights.insert((a, b), Rational::one());
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn allow_loops(&self) -> bool {
        self.allow_loops
    }

    /// Number of stored (nonzero) pairs, loops included.
    pub fn entry_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, a: usize, b: usize) -> Rational {
        let key = (a.min(b), a.max(b));
        self.weights.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates stored pairs (u <= v) with nonzero weight, in sorted order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.weights.iter().map(|(&(a, b), w)| (a, b, w))
    }

    /// True iff every present weight is +1 or -1.
    pub fn is_pm_one(&self) -> bool {
        let one = Rational::one();
        let minus_one = Rational::from_int(-1);
        self.weights.values().all(|w| *w == one || *w == minus_one)
    }

    /// Weighted degree: sum of weights of edges at `v`, loops counted once.
    pub fn weighted_degree(&self, v: usize) -> Rational {
        let mut sum = Rational::zero();
        for (&(a, b), w) in &self.weights {
            if a == v || b == v {
                sum += w;
            }
        }
        sum
    }

    /// True iff every node has weighted degree exactly 0.
    pub fn is_balanced(&self) -> bool {
        (0..self.node_count).all(|v| self.weighted_degree(v).is_zero())
    }

    fn to_wire(&self) -> GraphJson {
        GraphJson {
            kind: "weighted".into(),
            n: self.node_count,
            edges: self
                .weights
                .iter()
                .map(|(&(a, b), w)| EdgeJson::Weighted(a, b, w.to_string()))
                .collect(),
            allow_loops: self.allow_loops,
        }
    }

    fn from_wire(doc: GraphJson) -> Result<Self> {
        if doc.kind != "weighted" {
            return Err(Error::InvalidGraph(format!(
                "expected kind \"weighted\", got {:?}",
                doc.kind
            )));
        }
        let mut entries = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            match e {
                EdgeJson::Weighted(a, b, w) => entries.push((*a, *b, w.parse::<Rational>()?)),
                EdgeJson::Plain([a, b]) => entries.push((*a, *b, Rational::one())),
            }
        }
        Self::from_entries(doc.n, &entries, doc.allow_loops)
    }

    /// Serializes to the graph JSON schema, edges sorted by pair:
    /// `{"kind":"weighted","n":..,"edges":[[u,v,"p/q"],..],"allow_loops":..}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("weighted graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_wire(serde_json::from_str(s)?)
    }
}

impl serde::Serialize for WeightedGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for WeightedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphJson::deserialize(deserializer)?;
        Self::from_wire(doc).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "weighted(n={}, entries={}, loops={})",
            self.node_count,
            self.weights.len(),
            self.allow_loops
        )
    }
}

/// Categorical (tensor) product: node set V(G) x V(H), weights multiply
/// coordinate-wise. Homomorphism densities multiply over this product.
pub fn categorical_product(
    g: &WeightedGraph,
    h: &WeightedGraph,
    cfg: &crate::config::Config,
) -> Result<WeightedGraph> {
    let nodes = g.node_count() as u128 * h.node_count() as u128;
    if nodes > cfg.product_node_guard as u128 {
        return Err(Error::ProductGuardExceeded(nodes, cfg.product_node_guard));
    }
    let n_h = h.node_count();
    let idx = |a: usize, b: usize| a * n_h + b;
    let mut out = WeightedGraph::new(
        (nodes as usize).max(1),
        g.allow_loops() && h.allow_loops(),
    )?;
    // Ordered nonzero pairs of each factor; each ordered combination yields
    // one ordered product pair, deduplicated by keeping idx1 <= idx2.
    let ordered = |w: &WeightedGraph| -> Vec<(usize, usize, Rational)> {
        let mut v = Vec::new();
        for (a, b, wt) in w.entries() {
            v.push((a, b, wt.clone()));
            if a != b {
                v.push((b, a, wt.clone()));
            }
        }
        v
    };
    let go = ordered(g);
    let ho = ordered(h);
    for (a, c, w1) in &go {
        for (b, d, w2) in &ho {
            let (x, y) = (idx(*a, *b), idx(*c, *d));
            if x <= y {
                out.set_weight(x, y, w1 * w2)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;

    #[test]
    fn absent_pair_is_zero() {
        let g = WeightedGraph::new(3, false).unwrap();
        assert!(g.weight(0, 1).is_zero());
    }

    #[test]
    fn symmetry_is_structural() {
        let mut g = WeightedGraph::new(3, false).unwrap();
        g.set_weight(2, 0, Rational::new(1, 2)).unwrap();
        assert_eq!(g.weight(0, 2), Rational::new(1, 2));
        assert_eq!(g.weight(2, 0), Rational::new(1, 2));
    }

    #[test]
    fn loops_gated_by_flag() {
        let mut g = WeightedGraph::new(2, false).unwrap();
        assert!(g.set_weight(0, 0, Rational::one()).is_err());
        let mut g = WeightedGraph::new(2, true).unwrap();
        assert!(g.set_weight(0, 0, Rational::from_int(-1)).is_ok());
        assert_eq!(g.weight(0, 0), Rational::from_int(-1));
    }

    #[test]
    fn pm_one_predicate() {
        let mut g = WeightedGraph::new(2, false).unwrap();
        g.set_weight(0, 1, Rational::from_int(-1)).unwrap();
        assert!(g.is_pm_one());
        g.set_weight(0, 1, Rational::new(1, 2)).unwrap();
        assert!(!g.is_pm_one());
    }

    #[test]
    fn k2_times_k2_is_perfect_matching() {
        let cfg = Config::default();
        let k2 = WeightedGraph::complete01(2).unwrap();
        let p = categorical_product(&k2, &k2, &cfg).unwrap();
        assert_eq!(p.node_count(), 4);
        assert_eq!(p.entry_count(), 2);
        // (0,0)-(1,1) and (0,1)-(1,0) under index a*2+b
        assert_eq!(p.weight(0, 3), Rational::one());
        assert_eq!(p.weight(1, 2), Rational::one());
        assert!(p.weight(0, 1).is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let mut g = WeightedGraph::new(2, true).unwrap();
        g.set_weight(0, 0, Rational::from_int(-1)).unwrap();
        g.set_weight(0, 1, Rational::new(2, 3)).unwrap();
        let s = g.to_json();
        assert_eq!(
            s,
            r#"{"kind":"weighted","n":2,"edges":[[0,0,"-1"],[0,1,"2/3"]],"allow_loops":true}"#
        );
        let back = WeightedGraph::from_json(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), s);
    }
}

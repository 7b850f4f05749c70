//! Shared view of a counting target: a finite node set with symmetric
//! rational pair weights and a per-node weight. Weighted graphs use node
//! weight 1; step kernels use their part measures.

use crate::graph::WeightedGraph;
use crate::rational::Rational;

pub(crate) struct Target {
    pub n: usize,
    /// rows[x] = sorted (y, w(x,y)) over all y with nonzero weight,
    /// including y = x for loops/diagonal values.
    pub rows: Vec<Vec<(u32, Rational)>>,
    pub node_weight: Vec<Rational>,
}

impl Target {
    pub fn from_weighted_graph(g: &WeightedGraph) -> Target {
        let n = g.node_count();
        let mut rows: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); n];
        for (a, b, w) in g.entries() {
            rows[a].push((b as u32, w.clone()));
            if a != b {
                rows[b].push((a as u32, w.clone()));
            }
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|&(y, _)| y);
        }
        Target {
            n,
            rows,
            node_weight: vec![Rational::one(); n],
        }
    }

    pub fn from_parts(n: usize, rows: Vec<Vec<(u32, Rational)>>, node_weight: Vec<Rational>) -> Target {
        Target {
            n,
            rows,
            node_weight,
        }
    }

    pub fn weight(&self, x: u32, y: u32) -> Option<&Rational> {
        let row = &self.rows[x as usize];
        row.binary_search_by_key(&y, |&(z, _)| z)
            .ok()
            .map(|i| &row[i].1)
    }

    pub fn node_weight_sum(&self) -> Rational {
        self.node_weight.iter().sum()
    }
}

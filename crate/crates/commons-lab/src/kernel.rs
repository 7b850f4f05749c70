//! Step kernels: symmetric rational step functions on the unit square with
//! rational part measures. These represent every limit object this crate
//! touches — graphons, the step function of a weighted graph, and the
//! perturbed kernels 1 ± εU. Values are never clamped: densities like
//! t(F, 1+U) are evaluated with the same formula on kernels of any bound.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{PatternGraph, WeightedGraph};
use crate::hom::target::Target;
use crate::hom::{hom_target, Strategy};
use crate::rational::Rational;

/// Range class of a kernel's values.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelClass {
    /// Values in [0,1].
    Graphon,
    /// Values in [-1,1].
    W1Kernel,
    /// Anything else.
    General,
}

/// A symmetric step function with `part_count` parts of positive rational
/// measure summing to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepKernel {
    measures: Vec<Rational>,
    /// Row-major symmetric matrix, values[i][j] == values[j][i].
    values: Vec<Vec<Rational>>,
}

impl StepKernel {
    pub fn new(measures: Vec<Rational>, values: Vec<Vec<Rational>>) -> Result<Self> {
        let k = measures.len();
        if k == 0 {
            return Err(Error::InvalidKernel("at least one part required".into()));
        }
        if measures.iter().any(|m| !m.is_positive()) {
            return Err(Error::InvalidKernel("part measures must be positive".into()));
        }
        let total: Rational = measures.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidKernel(format!(
                "part measures must sum to 1, got {total}"
            )));
        }
        if values.len() != k || values.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidKernel("value matrix must be k x k".into()));
        }
        for i in 0..k {
            for j in 0..i {
                if values[i][j] != values[j][i] {
                    return Err(Error::InvalidKernel(format!(
                        "value matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(StepKernel { measures, values })
    }

    /// Constant kernel on one part.
    pub fn constant(value: Rational) -> Self {
        StepKernel {
            measures: vec![Rational::one()],
            values: vec![vec![value]],
        }
    }

    /// Uniform-measure kernel from a value matrix.
    pub fn uniform(values: Vec<Vec<Rational>>) -> Result<Self> {
        let k = values.len();
        let measure = Rational::one() / Rational::from_int(k as i64);
        Self::new(vec![measure; k], values)
    }

    /// Step kernel of a weighted graph: uniform parts, the weight matrix as
    /// values (loop weights on the diagonal). Densities agree exactly with
    /// densities in the graph.
    pub fn from_weighted_graph(g: &WeightedGraph) -> Self {
        let n = g.node_count();
        let mut values = vec![vec![Rational::zero(); n]; n];
        for (a, b, w) in g.entries() {
            values[a][b] = w.clone();
            values[b][a] = w.clone();
        }
        Self::uniform(values).expect("weight matrix is symmetric")
    }

    pub fn part_count(&self) -> usize {
        self.measures.len()
    }

    pub fn measures(&self) -> &[Rational] {
        &self.measures
    }

    pub fn value(&self, i: usize, j: usize) -> &Rational {
        &self.values[i][j]
    }

    /// Largest absolute value.
    pub fn bound(&self) -> Rational {
        self.values
            .iter()
            .flatten()
            .map(|v| v.abs())
            .max()
            .expect("kernel has at least one part")
    }

    pub fn class(&self) -> KernelClass {
        let mut graphon = true;
        let mut w1 = true;
        let one = Rational::one();
        for v in self.values.iter().flatten() {
            if v.is_negative() || *v > one {
                graphon = false;
            }
            if v.abs() > one {
                w1 = false;
            }
        }
        if graphon {
            KernelClass::Graphon
        } else if w1 {
            KernelClass::W1Kernel
        } else {
            KernelClass::General
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_zero())
    }

    /// a + b*W, pointwise. Covers 1+εU, 1-εU, (1+U)/2 and the complement.
    pub fn affine(&self, a: &Rational, b: &Rational) -> StepKernel {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| a + &(b * v)).collect())
            .collect();
        StepKernel {
            measures: self.measures.clone(),
            values,
        }
    }

    /// Weighted row sums ∫ W(x,·): one rational per part.
    pub fn row_integrals(&self) -> Vec<Rational> {
        (0..self.part_count())
            .map(|i| {
                (0..self.part_count())
                    .map(|j| &self.values[i][j] * &self.measures[j])
                    .sum()
            })
            .collect()
    }

    /// True iff every weighted row sum is exactly zero.
    pub fn is_balanced(&self) -> bool {
        self.row_integrals().iter().all(|r| r.is_zero())
    }

    fn check_balanced(&self) -> Result<()> {
        for (i, r) in self.row_integrals().into_iter().enumerate() {
            if !r.is_zero() {
                return Err(Error::NotBalanced(i, r));
            }
        }
        Ok(())
    }

    fn check_graphon(&self) -> Result<()> {
        let one = Rational::one();
        for v in self.values.iter().flatten() {
            if v.is_negative() || *v > one {
                return Err(Error::NotGraphon(v.clone()));
            }
        }
        Ok(())
    }

    /// Squeezes the kernel into the corner square of side `delta`, zero
    /// elsewhere: densities scale by delta^|V(F)|  and balance is preserved.
    pub fn shrink(&self, delta: &Rational) -> Result<StepKernel> {
        if !delta.is_positive() || *delta > Rational::one() {
            return Err(Error::DeltaOutOfRange(delta.clone()));
        }
        if delta.is_one() {
            return Ok(self.clone());
        }
        let k = self.part_count();
        let mut measures: Vec<Rational> = self.measures.iter().map(|m| m * delta).collect();
        measures.push(Rational::one() - delta);
        let mut values = vec![vec![Rational::zero(); k + 1]; k + 1];
        for i in 0..k {
            for j in 0..k {
                values[i][j] = self.values[i][j].clone();
            }
        }
        StepKernel::new(measures, values)
    }

    /// m-fold tensor power: parts are m-tuples, measures and values multiply
    /// coordinate-wise. Densities satisfy t(F, U^⊗m) = t(F,U)^m.
    pub fn tensor_power(&self, m: u32, cfg: &Config) -> Result<StepKernel> {
        if m == 0 {
            return Err(Error::Precondition("tensor power needs m >= 1".into()));
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let k = self.part_count();
        let parts = (k as u128)
            .checked_pow(m)
            .unwrap_or(u128::MAX);
        if parts > cfg.tensor_part_guard as u128 {
            return Err(Error::PartGuardExceeded(parts, cfg.tensor_part_guard));
        }
        let parts = parts as usize;
        // digit decomposition of a flat index into an m-tuple over 0..k
        let digits = |mut idx: usize| -> Vec<usize> {
            let mut d = vec![0usize; m as usize];
            for slot in d.iter_mut().rev() {
                *slot = idx % k;
                idx /= k;
            }
            d
        };
        let tuples: Vec<Vec<usize>> = (0..parts).map(digits).collect();
        let measures: Vec<Rational> = tuples
            .iter()
            .map(|t| t.iter().map(|&i| self.measures[i].clone()).product())
            .collect();
        let values: Vec<Vec<Rational>> = tuples
            .iter()
            .map(|ti| {
                tuples
                    .iter()
                    .map(|tj| {
                        ti.iter()
                            .zip(tj)
                            .map(|(&a, &b)| self.values[a][b].clone())
                            .product()
                    })
                    .collect()
            })
            .collect();
        StepKernel::new(measures, values)
    }

    fn to_target(&self) -> Target {
        let k = self.part_count();
        let rows: Vec<Vec<(u32, Rational)>> = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| !self.values[i][j].is_zero())
                    .map(|j| (j as u32, self.values[i][j].clone()))
                    .collect()
            })
            .collect();
        Target::from_parts(k, rows, self.measures.clone())
    }

    fn to_wire(&self) -> KernelJson {
        KernelJson {
            kind: "step_kernel".into(),
            parts: self.part_count(),
            measures: self.measures.iter().map(|m| m.to_string()).collect(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
        }
    }

    fn from_wire(doc: KernelJson) -> Result<Self> {
        if doc.kind != "step_kernel" {
            return Err(Error::InvalidKernel(format!(
                "expected kind \"step_kernel\", got {:?}",
                doc.kind
            )));
        }
        if doc.measures.len() != doc.parts {
            return Err(Error::InvalidKernel("parts/measures mismatch".into()));
        }
        let measures = doc
            .measures
            .iter()
            .map(|m| m.parse())
            .collect::<Result<Vec<Rational>>>()?;
        let values = doc
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.parse()).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        StepKernel::new(measures, values)
    }

    /// Kernel JSON: `{"kind":"step_kernel","parts":k,"measures":[..],"values":[[..]]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("kernel serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_wire(serde_json::from_str(s)?)
    }

    /// Display label: shape plus range class.
    pub fn label(&self) -> String {
        format!(
            "step-kernel(parts={}, bound={}, class={:?})",
            self.part_count(),
            self.bound(),
            self.class()
        )
    }
}

impl serde::Serialize for StepKernel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for StepKernel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = KernelJson::deserialize(deserializer)?;
        Self::from_wire(doc).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct KernelJson {
    kind: String,
    parts: usize,
    measures: Vec<String>,
    values: Vec<Vec<String>>,
}

/// Homomorphism density of a pattern in a step kernel:
/// the measure-weighted sum over part assignments of the product of values
/// over pattern edges. Valid for kernels of any bound.
pub fn kernel_density(pattern: &PatternGraph, w: &StepKernel, cfg: &Config) -> Result<Rational> {
    hom_target(pattern, &w.to_target(), Strategy::Auto, cfg)
}

/// Goodman defect t(K3,W) + t(K3,1-W) - 1/4 of a graphon; nonnegative,
/// zero exactly for the constant-1/2 graphon among constants.
pub fn goodman_defect(w: &StepKernel, cfg: &Config) -> Result<Rational> {
    w.check_graphon()?;
    let k3 = PatternGraph::complete(3).expect("triangle");
    let direct = kernel_density(&k3, w, cfg)?;
    let complement = kernel_density(&k3, &w.affine(&Rational::one(), &Rational::from_int(-1)), cfg)?;
    Ok(direct + complement - Rational::new(1, 4))
}

/// Sidorenko defect t(F,W) - t(K2,W)^|E(F)| of a graphon.
pub fn sidorenko_defect(pattern: &PatternGraph, w: &StepKernel, cfg: &Config) -> Result<Rational> {
    w.check_graphon()?;
    let k2 = PatternGraph::complete(2).expect("edge");
    let edge = kernel_density(&k2, w, cfg)?;
    let val = kernel_density(pattern, w, cfg)?;
    Ok(val - edge.pow(pattern.edge_count() as u32))
}

/// Ensures the kernel is balanced, for operations that require it.
pub fn require_balanced(w: &StepKernel) -> Result<()> {
    w.check_balanced()
}

/// Specification for the seeded kernel generator.
#[derive(Clone, Debug)]
pub struct RandomKernelSpec {
    pub seed: u64,
    pub parts: usize,
    /// Values are drawn uniformly from this set.
    pub value_set: Vec<Rational>,
    pub balanced: bool,
    /// Use uniform part measures instead of random ones.
    pub uniform_measures: bool,
}

impl RandomKernelSpec {
    pub fn new(seed: u64, parts: usize) -> Self {
        RandomKernelSpec {
            seed,
            parts,
            value_set: vec![
                Rational::from_int(-1),
                Rational::new(-1, 2),
                Rational::zero(),
                Rational::new(1, 2),
                Rational::one(),
            ],
            balanced: false,
            uniform_measures: false,
        }
    }

    pub fn balanced(mut self) -> Self {
        self.balanced = true;
        self
    }

    pub fn graphon_values(mut self) -> Self {
        self.value_set = vec![
            Rational::zero(),
            Rational::new(1, 4),
            Rational::new(1, 2),
            Rational::new(3, 4),
            Rational::one(),
        ];
        self
    }

    pub fn values(mut self, vs: Vec<Rational>) -> Self {
        self.value_set = vs;
        self
    }
}

/// Deterministic seeded kernel generator. For balanced kernels the symmetric
/// draw is projected to zero weighted row sums in exact arithmetic
/// (v - r_i - r_j + s) and rescaled into [-1,1]; rescaling keeps the balance
/// exact. All-zero outcomes are redrawn up to the retry limit.
pub fn random_kernel(spec: &RandomKernelSpec, cfg: &Config) -> Result<StepKernel> {
    if spec.parts == 0 || spec.parts > cfg.random_parts_cap {
        return Err(Error::InvalidKernel(format!(
            "part count {} outside 1..={}",
            spec.parts, cfg.random_parts_cap
        )));
    }
    if spec.value_set.is_empty() {
        return Err(Error::InvalidKernel("empty value set".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _attempt in 0..cfg.retry_limit {
        let k = spec.parts;
        let measures: Vec<Rational> = if spec.uniform_measures {
            vec![Rational::one() / Rational::from_int(k as i64); k]
        } else {
            let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
            let total: i64 = weights.iter().sum();
            weights
                .iter()
                .map(|&w| Rational::new(w, total))
                .collect()
        };
        let mut values = vec![vec![Rational::zero(); k]; k];
        for i in 0..k {
            for j in i..k {
                let v = spec.value_set[rng.gen_range(0..spec.value_set.len())].clone();
                values[i][j] = v.clone();
                values[j][i] = v;
            }
        }
        let mut kernel = StepKernel::new(measures, values)?;
        if spec.balanced {
            kernel = project_balanced(&kernel);
            debug_assert!(kernel.is_balanced());
        }
        if !kernel.is_zero() {
            return Ok(kernel);
        }
    }
    Err(Error::RetryLimit(cfg.retry_limit))
}

/// Exact projection onto balanced kernels followed by rescaling into [-1,1].
fn project_balanced(w: &StepKernel) -> StepKernel {
    let k = w.part_count();
    let r = w.row_integrals();
    let s: Rational = r
        .iter()
        .zip(w.measures())
        .map(|(ri, mi)| ri * mi)
        .sum();
    let mut values = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            values[i][j] = &w.values[i][j] - &r[i] - &r[j] + &s;
        }
    }
    let mut out = StepKernel {
        measures: w.measures.clone(),
        values,
    };
    let bound = out.bound();
    if bound > Rational::one() {
        let inv = bound.recip();
        out = out.affine(&Rational::zero(), &inv);
    }
    out
}

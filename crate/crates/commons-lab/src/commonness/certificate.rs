//! Machine-checkable verdict records. Every certificate embeds its inputs
//! and evidence and can be re-verified by replaying the evidence through the
//! public operations; `verify` is exercised by the serialization tests.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::Result;
use crate::graph::{Girth, OddCyclePair, PatternGraph};
use crate::kernel::StepKernel;
use crate::rational::Rational;

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

/// One subgraph class with its multiplicity and density in the kernel under
/// consideration; the raw material of the expansion evidence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassDensity {
    pub graph: PatternGraph,
    pub multiplicity: u64,
    pub density: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictOutcome {
    AllZero,
    FirstNonzeroPositive { exponent: u32, value: Rational },
    FirstNonzeroNegative { exponent: u32, value: Rational },
}

impl VerdictOutcome {
    pub fn verdict_string(&self) -> String {
        match self {
            VerdictOutcome::AllZero => "all-zero".into(),
            VerdictOutcome::FirstNonzeroPositive { exponent, value } => {
                format!("first-nonzero-positive (c_{exponent} = {value})")
            }
            VerdictOutcome::FirstNonzeroNegative { exponent, value } => format!(
                "first-nonzero-negative (witness against weak local commonness; c_{exponent} = {value})"
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructuralClass {
    /// No qualifying pair of odd cycles: weakly locally common, certified.
    CertifiedWeaklyLocallyCommon,
    /// The odd-cycle-pair condition holds; the classifier does not decide.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateBody {
    WeaklyLocalVerdict {
        pattern: PatternGraph,
        kernel: StepKernel,
        /// (exponent, coefficient) for every even exponent up to |E(F)|.
        coefficients: Vec<(u32, Rational)>,
        outcome: VerdictOutcome,
    },
    StructuralClassification {
        pattern: PatternGraph,
        classification: StructuralClass,
        girth: Girth,
        even_girth: Girth,
        odd_cycle_pair: Option<OddCyclePair>,
        /// Forest or even girth.
        weakly_locally_sidorenko: bool,
        /// For bipartite patterns: the certified perturbation 1/(4|E|).
        locally_common_perturbation: Option<Rational>,
        reasons: Vec<String>,
    },
    LocalCommonnessRefutation {
        pattern: PatternGraph,
        /// Present when the search ran against a concrete kernel; absent for
        /// the density-driven route, whose inputs are `class_densities`.
        kernel: Option<StepKernel>,
        /// Densities of the even-edge subgraph classes used in the expansion.
        class_densities: Vec<ClassDensity>,
        epsilon: Rational,
        m: u64,
        delta: Rational,
        /// The negative value of the perturbation polynomial at (m, delta).
        value: Rational,
        /// Whether the value was additionally reproduced by materializing the
        /// shrunk tensor power (possible only within the part guard).
        reverified_by_materialization: bool,
        /// Where density inputs came from, for the kernel-free route.
        density_provenance: Option<String>,
    },
    Goodman {
        kernel: StepKernel,
        defect: Rational,
    },
    SidorenkoDefect {
        pattern: PatternGraph,
        kernel: StepKernel,
        defect: Rational,
        pattern_bipartite: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub verdict: String,
    #[serde(flatten)]
    pub body: CertificateBody,
}

impl Certificate {
    pub(crate) fn new(verdict: String, body: CertificateBody) -> Certificate {
        Certificate {
            schema_version: CERTIFICATE_SCHEMA_VERSION,
            verdict,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(s)?)
    }

    /// Replays the evidence through the public operations and checks it
    /// reproduces this certificate's claims exactly.
    pub fn verify(&self, cfg: &Config) -> Result<bool> {
        if self.schema_version != CERTIFICATE_SCHEMA_VERSION {
            return Ok(false);
        }
        match &self.body {
            CertificateBody::WeaklyLocalVerdict {
                pattern,
                kernel,
                coefficients,
                outcome,
            } => {
                let recomputed = crate::commonness::weak_local_verdict(pattern, kernel, cfg)?;
                match &recomputed.body {
                    CertificateBody::WeaklyLocalVerdict {
                        coefficients: c2,
                        outcome: o2,
                        ..
                    } => Ok(c2 == coefficients && o2 == outcome),
                    _ => Ok(false),
                }
            }
            CertificateBody::StructuralClassification { pattern, .. } => {
                let recomputed = crate::commonness::classify_structure(pattern)?;
                Ok(recomputed.body == self.body && recomputed.verdict == self.verdict)
            }
            CertificateBody::LocalCommonnessRefutation {
                pattern,
                kernel,
                class_densities,
                epsilon,
                m,
                delta,
                value,
                ..
            } => {
                // arithmetic replay of the expansion at (m, delta)
                let replayed = crate::commonness::expansion_value(
                    class_densities,
                    epsilon,
                    *m,
                    delta,
                );
                if replayed != *value || !value.is_negative() {
                    return Ok(false);
                }
                // with a concrete kernel, the class densities themselves are
                // recomputed from it
                if let Some(u) = kernel {
                    let fresh = crate::commonness::even_class_densities(pattern, u, cfg)?;
                    let nonzero: Vec<&ClassDensity> =
                        fresh.iter().filter(|c| !c.density.is_zero()).collect();
                    let embedded: Vec<&ClassDensity> = class_densities
                        .iter()
                        .filter(|c| !c.density.is_zero())
                        .collect();
                    if nonzero.len() != embedded.len()
                        || nonzero.iter().zip(&embedded).any(|(a, b)| a != b)
                    {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CertificateBody::Goodman { kernel, defect } => {
                Ok(crate::kernel::goodman_defect(kernel, cfg)? == *defect)
            }
            CertificateBody::SidorenkoDefect {
                pattern,
                kernel,
                defect,
                pattern_bipartite,
            } => {
                let fresh = crate::kernel::sidorenko_defect(pattern, kernel, cfg)?;
                let bip = crate::graph::analyze_structure(pattern)?.is_bipartite;
                Ok(fresh == *defect && bip == *pattern_bipartite)
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match &self.body {
            CertificateBody::WeaklyLocalVerdict { .. } => "weakly-local-verdict",
            CertificateBody::StructuralClassification { .. } => "structural-classification",
            CertificateBody::LocalCommonnessRefutation { .. } => "local-commonness-refutation",
            CertificateBody::Goodman { .. } => "goodman",
            CertificateBody::SidorenkoDefect { .. } => "sidorenko-defect",
        }
    }
}

/// Convenience constructors used by the operations module.
impl Certificate {
    pub(crate) fn goodman(kernel: StepKernel, defect: Rational) -> Certificate {
        let verdict = format!("goodman-defect {defect} >= 0");
        Certificate::new(verdict, CertificateBody::Goodman { kernel, defect })
    }

    pub(crate) fn sidorenko(
        pattern: PatternGraph,
        kernel: StepKernel,
        defect: Rational,
        pattern_bipartite: bool,
    ) -> Certificate {
        let verdict = if defect.is_negative() {
            format!("sidorenko-defect {defect} < 0")
        } else {
            format!("sidorenko-defect {defect} >= 0")
        };
        Certificate::new(
            verdict,
            CertificateBody::SidorenkoDefect {
                pattern,
                kernel,
                defect,
                pattern_bipartite,
            },
        )
    }
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] {}", self.kind(), self.verdict)
    }
}

/// Interprets a certificate as an error-level exit condition for the CLI.
pub fn verdict_is_refutation(c: &Certificate) -> bool {
    matches!(
        &c.body,
        CertificateBody::WeaklyLocalVerdict {
            outcome: VerdictOutcome::FirstNonzeroNegative { .. },
            ..
        } | CertificateBody::LocalCommonnessRefutation { .. }
    )
}

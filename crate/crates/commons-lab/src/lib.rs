//! Exact calculus of homomorphism densities over edge-weighted graphs and
//! step kernels, with certificate-producing operations for local-commonness
//! questions: perturbation expansions, structural classification, and the
//! explicit weighted-graph constructions behind them.
//!
//! Everything is exact: all values are arbitrary-precision rationals, every
//! enumeration is exhaustive and guarded, and every verdict can be replayed
//! from its serialized certificate.

pub mod commonness;
pub mod config;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod hom;
pub mod kernel;
pub mod rational;

pub use commonness::{
    classify_structure, even_class_densities, expansion_coefficient, expansion_value,
    find_witness, find_witness_k4, goodman_certificate, minimal_odd_m, necessary_condition,
    perturbation_polynomial, sidorenko_certificate, weak_local_verdict, Certificate,
    CertificateBody, ClassDensity, EpsPolynomial, StructuralClass, VerdictOutcome,
};
pub use config::Config;
pub use error::{Error, Result};
pub use graph::{
    analyze_structure, automorphism_count, categorical_product, enumerate_graph_classes,
    enumerate_patterns, glue_along, graph_from_json, is_mirror_symmetric, AnyGraph, Girth,
    MirrorWitness, OddCyclePair, PatternGraph, StructureReport, WeightedGraph,
};
pub use hom::{
    binomial, density, elimination_order, hom, inj, subgraph_count, subgraph_spectrum,
    SpectrumEntry, Strategy, SubgraphSpectrum,
};
pub use kernel::{
    goodman_defect, kernel_density, random_kernel, require_balanced, sidorenko_defect,
    KernelClass, RandomKernelSpec, StepKernel,
};
pub use rational::Rational;

//! Spectral radius and degree irregularity of r-uniform hypergraphs.
//!
//! The spectral radius `ρ(H)` of the adjacency tensor is compared against
//! three degree-based irregularity measures:
//!
//! * `ε(H) = ρ(H) − rm/n`
//! * `s(H) = Σ |d_i − rm/n|`
//! * `v(H) = (1/n) Σ d_i^{r/(r−1)} − (rm/n)^{r/(r−1)}`
//!
//! plus the partition-relative `s_r(H)` for r-partite hypergraphs. Every
//! known inequality between them is available as a [`BoundCheck`], and
//! the constructive steps behind them (near-regular rewiring, blow-ups,
//! direct products) are exposed as ordinary functions.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*F64`
//! aliases below name the usual instantiation.

pub mod constructions;
pub mod hgr;
pub mod hypergraph;
pub mod irregularity;
pub mod scalar;
pub mod spectral;

pub use constructions::{
    binomial, blow_up, blow_up_uniform, complete_r_partite, direct_product, random_r_partite,
    random_uniform, single_edge, ConstructionError, RngSeed,
};
pub use hgr::{parse_hgr, parse_partition_line, parse_trace, write_hgr, write_trace, HgrDocument, HgrError};
pub use hypergraph::{
    Component, Edge, EdgeTrace, HypergraphError, Partition, SwapPhase, SwapRecord, TraceError,
    UniformHypergraph, Vertex,
};
pub use irregularity::{
    bound_suite, epsilon, regularize, regularize_partitewise, s_measure, s_r_measure, v_measure,
    weyl_check, BoundCheck, BoundSuite, IrregularityError, IrregularityReport, SkippedCheck,
    SuiteOptions,
};
pub use scalar::Scalar;
pub use spectral::{
    apply_adjacency, rayleigh_quotient, residual, row_sums, scaled_row_sums, spectral_radius,
    Shift, SpectralError, SpectralOptions, SpectralResult,
};

pub type SpectralOptionsF64 = SpectralOptions<f64>;
pub type SpectralResultF64 = SpectralResult<f64>;
pub type BoundCheckF64 = BoundCheck<f64>;
pub type SuiteOptionsF64 = SuiteOptions<f64>;
pub type IrregularityReportF64 = IrregularityReport<f64>;

pub type SpectralOptionsF32 = SpectralOptions<f32>;
pub type SpectralResultF32 = SpectralResult<f32>;

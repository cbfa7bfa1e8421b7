//! Degree irregularity measures, the inequalities linking them to the
//! spectral radius, and near-regular rewiring.

mod bounds;
mod regularize;

use thiserror::Error;

use crate::hypergraph::{HypergraphError, Partition, UniformHypergraph, Vertex};
use crate::scalar::{ratio, Scalar};
use crate::spectral::{spectral_radius, SpectralError, SpectralResult};

pub use bounds::{bound_suite, weyl_check, BoundCheck, BoundSuite, SkippedCheck, SuiteOptions};
pub use regularize::{regularize, regularize_partitewise};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IrregularityError {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("no swappable edge moving degree from vertex {from} to vertex {to}")]
    NoSwappableEdge { from: Vertex, to: Vertex },
}

/// `rm/n`.
pub fn average_degree<T: Scalar>(h: &UniformHypergraph) -> T {
    ratio(h.rank() * h.edge_count(), h.vertex_count())
}

/// `ε(H) = ρ − rm/n`.
pub fn epsilon<T: Scalar>(h: &UniformHypergraph, rho: T) -> T {
    rho - average_degree::<T>(h)
}

/// `s(H) = Σ_i |d_i − rm/n|`, evaluated as `Σ_i |n d_i − rm| / n` in
/// integers so the only rounding is the final division.
pub fn s_measure<T: Scalar>(h: &UniformHypergraph) -> T {
    let n = h.vertex_count();
    let total = h.rank() * h.edge_count();
    let numerator: usize = h.degrees().iter().map(|&d| (n * d).abs_diff(total)).sum();
    ratio(numerator, n)
}

/// `v(H) = (1/n) Σ_i d_i^{r/(r−1)} − (rm/n)^{r/(r−1)}`.
///
/// Summed as `(1/n) Σ_i (d_i^p − μ^p)`, so every term of a regular
/// hypergraph is exactly zero.
pub fn v_measure<T: Scalar>(h: &UniformHypergraph) -> T {
    let r = h.rank();
    let p = ratio::<T>(r, r - 1);
    let mean_pow = average_degree::<T>(h).powf(p);
    let total: T = h
        .degrees()
        .into_iter()
        .map(|d| T::of_usize(d).powf(p) - mean_pow)
        .sum();
    total / T::of_usize(h.vertex_count())
}

/// `s_r(H) = Σ_classes Σ_{j ∈ V_c} |d_j − m/n_c|` for a valid partition.
pub fn s_r_measure<T: Scalar>(
    h: &UniformHypergraph,
    partition: &Partition,
) -> Result<T, IrregularityError> {
    h.check_partition(partition)?;
    let m = h.edge_count();
    let degrees = h.degrees();
    let sizes = partition.class_sizes();
    let mut per_class = vec![0usize; sizes.len()];
    for (v, &c) in partition.class_of().iter().enumerate() {
        per_class[c - 1] += (sizes[c - 1] * degrees[v]).abs_diff(m);
    }
    Ok(per_class
        .into_iter()
        .zip(sizes)
        .filter(|&(_, size)| size > 0)
        .map(|(num, size)| ratio::<T>(num, size))
        .sum())
}

/// Everything known about one hypergraph: measures, spectral solve and
/// the full bound suite.
#[derive(Debug, Clone, PartialEq)]
pub struct IrregularityReport<T> {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub average_degree: T,
    pub epsilon: T,
    pub s: T,
    pub v: T,
    pub s_r: Option<T>,
    pub rho: T,
    pub spectral: SpectralResult<T>,
    pub bounds: BoundSuite<T>,
}

impl<T: Scalar> IrregularityReport<T> {
    pub fn compute(
        h: &UniformHypergraph,
        partition: Option<&Partition>,
        opts: &SuiteOptions<T>,
    ) -> Result<Self, IrregularityError> {
        let s_r = partition.map(|p| s_r_measure(h, p)).transpose()?;
        let spectral = spectral_radius(h, &opts.spectral)?;
        let bounds = bound_suite(h, &spectral, partition, opts)?;
        Ok(IrregularityReport {
            n: h.vertex_count(),
            m: h.edge_count(),
            r: h.rank(),
            average_degree: average_degree(h),
            epsilon: epsilon(h, spectral.rho),
            s: s_measure(h),
            v: v_measure(h),
            s_r,
            rho: spectral.rho,
            spectral,
            bounds,
        })
    }
}

//! Adjacency tensor action and the Perron root of a uniform hypergraph.
//!
//! The adjacency tensor is never materialized. Its entry on each ordering
//! of an edge is `1/(r-1)!`, and the `(r-1)!` orderings of an edge that
//! fix the first index cancel that weight, so
//!
//! ```text
//! (A x)_i = sum over edges e containing i of prod_{j in e, j != i} x_j
//! ```
//!
//! The spectral radius is found per connected component (where the tensor
//! is weakly irreducible) with a shifted higher-order power iteration.
//! Each step maps `x` to `(A x + σ x^[r-1])^[1/(r-1)]`, renormalized in
//! the r-norm. For positive `x` the ratios `(A x)_i / x_i^(r-1)` bracket
//! the Perron root from both sides, so the bracket width is a certified
//! error bound and the stopping rule.

use thiserror::Error;

use crate::hypergraph::UniformHypergraph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("entry {index} is negative")]
    NegativeEntry { index: usize },
    #[error("entry {index} is not positive")]
    NonPositiveEntry { index: usize },
    #[error("vector r-norm^r is {got}, expected 1")]
    NotUnitNorm { got: f64 },
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("max_iterations must be at least 1")]
    BadIterationLimit,
    #[error("shift must be nonnegative")]
    BadShift,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shift<T> {
    /// Maximum degree of the component being solved.
    Auto,
    Fixed(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions<T> {
    /// Relative bracket width at which iteration stops.
    pub tolerance: T,
    pub max_iterations: usize,
    pub shift: Shift<T>,
}

impl<T: Scalar> Default for SpectralOptions<T> {
    /// `1e-10` relative, clamped to 64 ulps of the scalar type.
    fn default() -> Self {
        SpectralOptions {
            tolerance: T::of(1e-10).max(T::epsilon() * T::of(64.0)),
            max_iterations: 100_000,
            shift: Shift::Auto,
        }
    }
}

impl<T: Scalar> SpectralOptions<T> {
    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    fn validate(&self) -> Result<(), SpectralError> {
        if !(self.tolerance > T::zero()) {
            return Err(SpectralError::BadTolerance);
        }
        if self.max_iterations == 0 {
            return Err(SpectralError::BadIterationLimit);
        }
        if let Shift::Fixed(s) = self.shift {
            if !(s >= T::zero()) {
                return Err(SpectralError::BadShift);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult<T> {
    /// Midpoint of the certified bracket.
    pub rho: T,
    /// Lower end of the bracket, `max` over components.
    pub lower: T,
    /// Upper end of the bracket, `max` over components.
    pub upper: T,
    /// Positive, unit r-norm on every component.
    pub perron_vector: Vec<T>,
    /// Power steps summed over all components.
    pub iterations: usize,
    /// Eigen-equation residual on the component attaining `rho`.
    pub residual: T,
    pub converged: bool,
    /// One entry per component, in the order of `components()`.
    pub component_rhos: Vec<T>,
}

impl<T: Scalar> SpectralResult<T> {
    /// Largest possible distance between `rho` and the true spectral radius.
    pub fn certified_error(&self) -> T {
        (self.upper - self.lower) / T::of(2.0)
    }
}

/// `A(H) x`.
pub fn apply_adjacency<T: Scalar>(
    h: &UniformHypergraph,
    x: &[T],
) -> Result<Vec<T>, SpectralError> {
    check_len(h, x)?;
    Ok(apply(h, x))
}

fn apply<T: Scalar>(h: &UniformHypergraph, x: &[T]) -> Vec<T> {
    let r = h.rank();
    let mut out = vec![T::zero(); h.vertex_count()];
    let mut prefix = vec![T::one(); r + 1];
    for e in h.edges() {
        let vs = e.vertices();
        for t in 0..r {
            prefix[t + 1] = prefix[t] * x[vs[t] as usize - 1];
        }
        let mut suffix = T::one();
        for t in (0..r).rev() {
            let i = vs[t] as usize - 1;
            out[i] = out[i] + prefix[t] * suffix;
            suffix = suffix * x[i];
        }
    }
    out
}

/// Row sums of the adjacency tensor; these are the degrees.
pub fn row_sums<T: Scalar>(h: &UniformHypergraph) -> Vec<T> {
    h.degrees().into_iter().map(T::of_usize).collect()
}

/// `x^T (A x) = r * sum over edges of prod x_j`, for nonnegative `x` of unit
/// r-norm. Never exceeds the spectral radius.
pub fn rayleigh_quotient<T: Scalar>(h: &UniformHypergraph, x: &[T]) -> Result<T, SpectralError> {
    check_len(h, x)?;
    if let Some(index) = x.iter().position(|&v| !(v >= T::zero())) {
        return Err(SpectralError::NegativeEntry { index });
    }
    let r = h.rank();
    let norm: T = x.iter().map(|&v| v.powi(r as i32)).sum();
    if (norm - T::one()).abs() > T::epsilon().sqrt() {
        return Err(SpectralError::NotUnitNorm {
            got: norm.to_f64().unwrap_or(f64::NAN),
        });
    }
    let total: T = h
        .edges()
        .map(|e| {
            e.vertices()
                .iter()
                .fold(T::one(), |acc, &v| acc * x[v as usize - 1])
        })
        .sum();
    Ok(T::of_usize(r) * total)
}

/// Row sums of `P^{-(r-1)} A(H) P` for `P = diag(p)`:
/// entry `i` is `sum over e containing i of p_i^{-(r-1)} prod_{j in e\{i}} p_j`.
/// The maximum entry bounds the spectral radius from above for every `p > 0`.
pub fn scaled_row_sums<T: Scalar>(h: &UniformHypergraph, p: &[T]) -> Result<Vec<T>, SpectralError> {
    check_len(h, p)?;
    if let Some(index) = p.iter().position(|&v| !(v > T::zero())) {
        return Err(SpectralError::NonPositiveEntry { index });
    }
    let r1 = h.rank() as i32 - 1;
    let ap = apply(h, p);
    Ok(ap
        .into_iter()
        .zip(p)
        .map(|(a, &pi)| a / pi.powi(r1))
        .collect())
}

/// `max_i |(A x)_i - rho x_i^(r-1)| / max(1, rho)`.
pub fn residual<T: Scalar>(h: &UniformHypergraph, rho: T, x: &[T]) -> Result<T, SpectralError> {
    check_len(h, x)?;
    Ok(residual_unchecked(h, rho, x))
}

fn residual_unchecked<T: Scalar>(h: &UniformHypergraph, rho: T, x: &[T]) -> T {
    let r1 = h.rank() as i32 - 1;
    let ax = apply(h, x);
    let worst = ax
        .iter()
        .zip(x)
        .map(|(&a, &xi)| (a - rho * xi.powi(r1)).abs())
        .fold(T::zero(), T::max);
    worst / rho.max(T::one())
}

fn check_len<T>(h: &UniformHypergraph, x: &[T]) -> Result<(), SpectralError> {
    if x.len() != h.vertex_count() {
        return Err(SpectralError::LengthMismatch {
            got: x.len(),
            expected: h.vertex_count(),
        });
    }
    Ok(())
}

/// Spectral radius of `A(H)`: the maximum over connected components, each
/// solved by shifted power iteration. Edgeless components contribute 0.
///
/// Running out of iterations is not an error; the result carries
/// `converged = false` and the last bracket.
pub fn spectral_radius<T: Scalar>(
    h: &UniformHypergraph,
    opts: &SpectralOptions<T>,
) -> Result<SpectralResult<T>, SpectralError> {
    opts.validate()?;
    let r = h.rank();
    let mut perron_vector = vec![T::one(); h.vertex_count()];
    let mut component_rhos = Vec::new();
    let mut best: Option<(T, T)> = None; // (rho, residual)
    let mut lower = T::zero();
    let mut upper = T::zero();
    let mut iterations = 0;
    let mut converged = true;

    for comp in h.components() {
        let k = comp.vertices.len();
        let solution = match &comp.hypergraph {
            Some(sub) if sub.edge_count() > 0 => solve_connected(sub, opts),
            _ => ComponentSolution::edgeless(k, r),
        };
        iterations += solution.iterations;
        converged &= solution.converged;
        for (&v, &xv) in comp.vertices.iter().zip(&solution.x) {
            perron_vector[v as usize - 1] = xv;
        }
        component_rhos.push(solution.rho);
        // the radius is the max of the component radii, so its bracket is
        // the max of the component brackets
        lower = lower.max(solution.lower);
        upper = upper.max(solution.upper);
        if best.is_none_or(|(rho, _)| solution.rho > rho) {
            best = Some((solution.rho, solution.residual));
        }
    }

    let (rho, residual) = best.unwrap_or((T::zero(), T::zero()));
    Ok(SpectralResult {
        rho,
        lower,
        upper,
        perron_vector,
        iterations,
        residual,
        converged,
        component_rhos,
    })
}

struct ComponentSolution<T> {
    rho: T,
    lower: T,
    upper: T,
    x: Vec<T>,
    residual: T,
    iterations: usize,
    converged: bool,
}

impl<T: Scalar> ComponentSolution<T> {
    fn edgeless(k: usize, r: usize) -> Self {
        let xv = T::of_usize(k).powf(-T::one() / T::of_usize(r));
        ComponentSolution {
            rho: T::zero(),
            lower: T::zero(),
            upper: T::zero(),
            x: vec![xv; k],
            residual: T::zero(),
            iterations: 0,
            converged: true,
        }
    }
}

fn solve_connected<T: Scalar>(h: &UniformHypergraph, opts: &SpectralOptions<T>) -> ComponentSolution<T> {
    let r = h.rank();
    let k = h.vertex_count();
    let r1 = r as i32 - 1;
    let inv_r1 = T::one() / T::of_usize(r - 1);
    let shift = match opts.shift {
        Shift::Auto => T::of_usize(h.max_degree()),
        Shift::Fixed(s) => s,
    };

    let mut x = vec![T::of_usize(k).powf(-T::one() / T::of_usize(r)); k];
    let mut lower = T::zero();
    let mut upper = T::infinity();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;
        let ax = apply(h, &x);
        let (lo, hi) = ax
            .iter()
            .zip(&x)
            .map(|(&a, &xi)| a / xi.powi(r1))
            .fold((T::infinity(), T::zero()), |(lo, hi), q| (lo.min(q), hi.max(q)));
        lower = lo;
        upper = hi;
        if hi - lo <= opts.tolerance * hi.max(T::one()) {
            converged = true;
            break;
        }
        let mut norm = T::zero();
        for (xi, &a) in x.iter_mut().zip(&ax) {
            let y = a + shift * xi.powi(r1);
            *xi = if r == 2 { y } else { y.powf(inv_r1) };
            norm = norm + xi.powi(r as i32);
        }
        let scale = norm.powf(-T::one() / T::of_usize(r));
        x.iter_mut().for_each(|xi| *xi = *xi * scale);
    }
    let rho = (lower + upper) / T::of(2.0);
    ComponentSolution {
        rho,
        lower,
        upper,
        residual: residual_unchecked(h, rho, &x),
        x,
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_r_partite, random_uniform, single_edge, RngSeed};
    use crate::hypergraph::Vertex;
    use approx::assert_abs_diff_eq;

    fn two_edge_path() -> UniformHypergraph {
        UniformHypergraph::build(3, 5, [[1, 2, 3], [1, 4, 5]]).unwrap()
    }

    fn solve(h: &UniformHypergraph) -> SpectralResult<f64> {
        let res = spectral_radius(h, &SpectralOptions::default()).unwrap();
        assert!(res.converged);
        res
    }

    /// Largest eigenvalue of a dense symmetric matrix by cyclic Jacobi
    /// rotations. Independent of the tensor code path.
    fn jacobi_max_eigenvalue(mut a: Vec<Vec<f64>>) -> f64 {
        let n = a.len();
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j] * a[i][j])
                .sum();
            if off < 1e-26 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        (0..n).map(|i| a[i][i]).fold(f64::MIN, f64::max)
    }

    #[test]
    fn apply_examples() {
        let k = single_edge(3).unwrap();
        assert_eq!(apply_adjacency(&k, &[1.0, 1.0, 1.0]).unwrap(), vec![1.0; 3]);
        assert_eq!(
            apply_adjacency(&k, &[2.0, 3.0, 5.0]).unwrap(),
            vec![15.0, 10.0, 6.0]
        );
        let h = two_edge_path();
        assert_eq!(
            apply_adjacency(&h, &[1.0; 5]).unwrap(),
            vec![2.0, 1.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(
            apply_adjacency(&h, &[1.0; 4]),
            Err(SpectralError::LengthMismatch {
                got: 4,
                expected: 5
            })
        );
        // zero entries are fine: no division in the product
        assert_eq!(
            apply_adjacency(&k, &[0.0, 3.0, 5.0]).unwrap(),
            vec![15.0, 0.0, 0.0]
        );
    }

    #[test]
    fn row_sums_are_degrees() {
        let h = two_edge_path();
        assert_eq!(row_sums::<f64>(&h), vec![2.0, 1.0, 1.0, 1.0, 1.0]);
        let (k, _) = complete_r_partite(&[2, 2, 2]).unwrap();
        assert_eq!(row_sums::<f64>(&k), vec![4.0; 6]);
    }

    #[test]
    fn rayleigh_examples() {
        // 4-regular, uniform x gives r m / n = d
        let (k, _) = complete_r_partite(&[2, 2, 2]).unwrap();
        let x = vec![6f64.powf(-1.0 / 3.0); 6];
        assert_abs_diff_eq!(rayleigh_quotient(&k, &x).unwrap(), 4.0, epsilon = 1e-12);

        // degree vector x_i = (d_i / rm)^{1/r}; both edges have product 2
        let h = two_edge_path();
        let x: Vec<f64> = h
            .degrees()
            .iter()
            .map(|&d| (d as f64 / 6.0).cbrt())
            .collect();
        assert_abs_diff_eq!(
            rayleigh_quotient(&h, &x).unwrap(),
            2f64.cbrt(),
            epsilon = 1e-12
        );

        assert!(matches!(
            rayleigh_quotient(&h, &[1.0, -0.1, 0.0, 0.0, 0.0]),
            Err(SpectralError::NegativeEntry { index: 1 })
        ));
        assert!(matches!(
            rayleigh_quotient(&h, &[1.0, 1.0, 0.0, 0.0, 0.0]),
            Err(SpectralError::NotUnitNorm { .. })
        ));
    }

    #[test]
    fn single_edge_radius_is_one() {
        for r in 2..=5 {
            let res = solve(&single_edge(r).unwrap());
            assert_abs_diff_eq!(res.rho, 1.0, epsilon = 1e-12);
            assert!(res.residual < 1e-12);
        }
    }

    #[test]
    fn regular_radius_is_degree() {
        let (k, _) = complete_r_partite(&[2, 2, 2]).unwrap();
        assert_abs_diff_eq!(solve(&k).rho, 4.0, epsilon = 1e-12);
        let full = random_uniform(6, 20, 3, RngSeed(0)).unwrap();
        assert_abs_diff_eq!(solve(&full).rho, 10.0, epsilon = 1e-10);
    }

    #[test]
    fn two_edge_path_closed_form() {
        // Symmetry ansatz x = (a, b, b, b, b): the eigen-equations read
        // 2 b^2 = λ a^2 and a b = λ b^2, so λ = a / b and a^3 = 2 b^3.
        let res = solve(&two_edge_path());
        assert_abs_diff_eq!(res.rho, 2f64.cbrt(), epsilon = 1e-9);
        assert!(res.certified_error() <= 1e-9);
        assert!(res.lower <= 2f64.cbrt() + 1e-15 && 2f64.cbrt() <= res.upper + 1e-15);
        let x = &res.perron_vector;
        assert_abs_diff_eq!(x[0] / x[1], 2f64.cbrt(), epsilon = 1e-8);
    }

    #[test]
    fn sunflower_closed_form() {
        // k petals sharing one vertex: the same ansatz gives λ = k^{1/r}.
        for (r, k) in [(3usize, 3usize), (4, 2), (4, 5), (5, 3)] {
            let n = 1 + k * (r - 1);
            let edges: Vec<Vec<Vertex>> = (0..k)
                .map(|p| {
                    std::iter::once(1)
                        .chain((0..r - 1).map(|t| (2 + p * (r - 1) + t) as Vertex))
                        .collect()
                })
                .collect();
            let h = UniformHypergraph::build(r, n, edges).unwrap();
            let expected = (k as f64).powf(1.0 / r as f64);
            assert_abs_diff_eq!(solve(&h).rho, expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn graphs_match_dense_eigenvalue() {
        for seed in 0..20 {
            let n = 3 + (seed as usize % 6);
            let max = n * (n - 1) / 2;
            let m = 1 + (seed as usize * 7) % max;
            let g = random_uniform(n, m, 2, RngSeed(seed)).unwrap();
            let mut a = vec![vec![0.0; n]; n];
            for e in g.edges() {
                let (i, j) = (e.vertices()[0] as usize - 1, e.vertices()[1] as usize - 1);
                a[i][j] = 1.0;
                a[j][i] = 1.0;
            }
            let oracle = jacobi_max_eigenvalue(a);
            assert_abs_diff_eq!(solve(&g).rho, oracle, epsilon = 1e-8);
        }
    }

    #[test]
    fn components_and_isolated_vertices() {
        let h = UniformHypergraph::build(3, 8, [[1, 2, 3], [1, 4, 5], [6, 7, 8]]).unwrap();
        let res = solve(&h);
        assert_eq!(res.component_rhos.len(), 2);
        assert_abs_diff_eq!(res.rho, 2f64.cbrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(res.component_rhos[1], 1.0, epsilon = 1e-12);

        let empty = UniformHypergraph::empty(3, 4).unwrap();
        let res = solve(&empty);
        assert_eq!(res.rho, 0.0);
        assert_eq!(res.iterations, 0);
        assert!(res.perron_vector.iter().all(|&x| x == 1.0));

        let with_isolated = two_edge_path().with_vertex_count(6).unwrap();
        let res = solve(&with_isolated);
        assert_eq!(res.component_rhos.len(), 2);
        assert_eq!(res.component_rhos[1], 0.0);
        assert!(res.perron_vector.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn scaled_row_sums_examples() {
        let h = two_edge_path();
        assert_eq!(
            scaled_row_sums(&h, &[1.0; 5]).unwrap(),
            vec![2.0, 1.0, 1.0, 1.0, 1.0]
        );
        let p: Vec<f64> = h.degrees().iter().map(|&d| (d as f64).cbrt()).collect();
        for v in scaled_row_sums(&h, &p).unwrap() {
            assert_abs_diff_eq!(v, 2f64.cbrt(), epsilon = 1e-12);
        }
        let (k, _) = complete_r_partite(&[2, 2, 2]).unwrap();
        assert_eq!(scaled_row_sums(&k, &[3.0; 6]).unwrap(), vec![4.0; 6]);
        assert!(matches!(
            scaled_row_sums(&h, &[1.0, 0.0, 1.0, 1.0, 1.0]),
            Err(SpectralError::NonPositiveEntry { index: 1 })
        ));
    }

    #[test]
    fn residual_examples() {
        let k = single_edge(3).unwrap();
        let x = vec![3f64.powf(-1.0 / 3.0); 3];
        assert_abs_diff_eq!(residual(&k, 1.0, &x).unwrap(), 0.0, epsilon = 1e-15);
        let res = solve(&two_edge_path());
        assert!(residual(&two_edge_path(), res.rho, &res.perron_vector).unwrap() < 1e-9);
        let mut bent = res.perron_vector.clone();
        bent[0] *= 1.01;
        assert!(residual(&two_edge_path(), res.rho, &bent).unwrap() > 1e-4);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let opts = SpectralOptions {
            tolerance: 1e-14,
            max_iterations: 2,
            shift: Shift::Auto,
        };
        let res = spectral_radius(&two_edge_path(), &opts).unwrap();
        assert!(!res.converged);
        assert_eq!(res.iterations, 2);
        assert!(res.lower <= 2f64.cbrt() && 2f64.cbrt() <= res.upper);
    }

    #[test]
    fn option_validation() {
        let h = two_edge_path();
        let bad = SpectralOptions::default().with_tolerance(0.0);
        assert_eq!(spectral_radius(&h, &bad), Err(SpectralError::BadTolerance));
        let bad = SpectralOptions::<f64> {
            max_iterations: 0,
            ..Default::default()
        };
        assert_eq!(spectral_radius(&h, &bad), Err(SpectralError::BadIterationLimit));
        let bad = SpectralOptions {
            shift: Shift::Fixed(-1.0),
            ..Default::default()
        };
        assert_eq!(spectral_radius(&h, &bad), Err(SpectralError::BadShift));
    }

    #[test]
    fn single_precision_solve() {
        let res = spectral_radius::<f32>(&two_edge_path(), &SpectralOptions::default()).unwrap();
        assert!(res.converged);
        assert_abs_diff_eq!(res.rho, 2f32.cbrt(), epsilon = 1e-4);
    }
}

//! Inequalities between the spectral radius and the degree sequence,
//! evaluated on concrete hypergraphs.
//!
//! Every check is phrased as `lhs ≤ rhs` and passes when
//! `rhs − lhs ≥ −tolerance`. The tolerance is the caller's base tolerance
//! plus ten times the solver's certified error, so a correct inequality
//! can never be reported as violated because of an unconverged `ρ`.

use super::regularize::regularize_partitewise;
use super::{average_degree, epsilon, s_measure, s_r_measure, v_measure, IrregularityError};
use crate::hypergraph::{Partition, UniformHypergraph};
use crate::scalar::{factorial, ratio, Scalar};
use crate::spectral::{spectral_radius, SpectralOptions, SpectralResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions<T> {
    /// Base absolute tolerance on `rhs − lhs`.
    pub check_tolerance: T,
    /// Used for the auxiliary solves (rewired hypergraphs, unions).
    pub spectral: SpectralOptions<T>,
}

impl<T: Scalar> Default for SuiteOptions<T> {
    fn default() -> Self {
        SuiteOptions {
            check_tolerance: T::of(1e-8),
            spectral: SpectralOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck<T> {
    pub name: &'static str,
    pub lhs: T,
    pub rhs: T,
    /// `rhs − lhs`.
    pub slack: T,
    pub tolerance: T,
    pub holds: bool,
    /// Whether the instance is one where the inequality is known to be
    /// tight; `None` when nothing is claimed.
    pub equality_expected: Option<bool>,
    pub equality_reason: Option<&'static str>,
}

impl<T: Scalar> BoundCheck<T> {
    pub fn new(name: &'static str, lhs: T, rhs: T, tolerance: T) -> Self {
        let slack = rhs - lhs;
        BoundCheck {
            name,
            lhs,
            rhs,
            slack,
            tolerance,
            holds: slack >= -tolerance,
            equality_expected: None,
            equality_reason: None,
        }
    }

    fn expect_equality(mut self, expected: bool, reason: &'static str) -> Self {
        self.equality_expected = Some(expected);
        self.equality_reason = Some(reason);
        self
    }

    /// True when the slack is within tolerance of zero.
    pub fn is_tight(&self) -> bool {
        self.slack.abs() <= self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkippedCheck {
    pub name: &'static str,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundSuite<T> {
    pub checks: Vec<BoundCheck<T>>,
    pub skipped: Vec<SkippedCheck>,
    /// Effective tolerance applied to checks that only involve `ρ(H)`.
    pub tolerance: T,
}

impl<T: Scalar> BoundSuite<T> {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&BoundCheck<T>> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundCheck<T>> {
        self.checks.iter().filter(|c| !c.holds)
    }

    fn skip(&mut self, name: &'static str, reason: &'static str) {
        self.skipped.push(SkippedCheck { name, reason });
    }
}

/// `r / (r!)^{1/r}`.
fn size_constant<T: Scalar>(r: usize) -> T {
    T::of_usize(r) / T::of_usize(factorial(r)).powf(ratio(1, r))
}

/// Evaluates every applicable inequality for `h` given its solved
/// spectral radius. Partition-dependent checks run only when a partition
/// is supplied (and are skipped if it has an empty class); degree-product
/// lower bounds are skipped when some vertex is isolated.
///
/// Fails only if `partition` is not valid for `h`, or an auxiliary solve
/// rejects its options.
pub fn bound_suite<T: Scalar>(
    h: &UniformHypergraph,
    spectral: &SpectralResult<T>,
    partition: Option<&Partition>,
    opts: &SuiteOptions<T>,
) -> Result<BoundSuite<T>, IrregularityError> {
    if let Some(p) = partition {
        h.check_partition(p)?;
    }
    let tol = opts.check_tolerance + T::of(10.0) * spectral.certified_error();
    let mut suite = BoundSuite {
        checks: Vec::new(),
        skipped: Vec::new(),
        tolerance: tol,
    };

    let r = h.rank();
    let n = h.vertex_count();
    let m = h.edge_count();
    let rho = spectral.rho;
    let rt = T::of_usize(r);
    let mt = T::of_usize(m);
    let degrees = h.degrees();
    let regular = h.is_regular();
    let connected = h.is_connected();
    let avg = average_degree::<T>(h);
    let eps = epsilon(h, rho);
    let exponent = ratio::<T>(r - 1, r);

    suite.checks.push(
        BoundCheck::new("cooper_dutle", avg, rho, tol)
            .expect_equality(regular, "equal exactly when regular"),
    );

    let dmin = T::of_usize(degrees.iter().copied().min().unwrap_or(0));
    let dmax = T::of_usize(degrees.iter().copied().max().unwrap_or(0));
    let sandwich = if rho - dmin <= dmax - rho {
        BoundCheck::new("row_sum_sandwich", dmin, rho, tol)
    } else {
        BoundCheck::new("row_sum_sandwich", rho, dmax, tol)
    };
    suite
        .checks
        .push(sandwich.expect_equality(regular, "row sums all equal"));

    suite.checks.push(BoundCheck::new(
        "size_upper",
        rho,
        size_constant::<T>(r) * mt.powf(exponent),
        tol,
    ));

    let sizes = partition.map(|p| p.class_sizes());
    let usable_sizes = match &sizes {
        Some(s) if s.contains(&0) => {
            for name in ["size_upper_partite", "theorem1", "claim1", "claim2"] {
                suite.skip(name, "empty partition class");
            }
            None
        }
        Some(s) => Some(s.clone()),
        None => {
            for name in ["size_upper_partite", "theorem1", "claim1", "claim2"] {
                suite.skip(name, "no partition");
            }
            None
        }
    };

    if let Some(sizes) = &usable_sizes {
        let transversals: u128 = sizes.iter().map(|&s| s as u128).product();
        suite.checks.push(
            BoundCheck::new("size_upper_partite", rho, mt.powf(exponent), tol).expect_equality(
                m as u128 == transversals,
                "equal exactly when complete r-partite",
            ),
        );
    }

    // per-edge degree products, exact in integers
    let products: Vec<u128> = h
        .edges()
        .map(|e| {
            e.vertices()
                .iter()
                .map(|&v| degrees[v as usize - 1] as u128)
                .product()
        })
        .collect();
    let constant_product = products.windows(2).all(|w| w[0] == w[1]);
    let root = |p: u128| T::from_u128(p).expect("degree product representable").powf(ratio(1, r));

    if m == 0 {
        suite.skip("edge_gm_upper", "no edges");
    } else {
        let max_product = products.iter().copied().max().unwrap_or(0);
        let check = BoundCheck::new("edge_gm_upper", rho, root(max_product), tol);
        suite.checks.push(if connected {
            check.expect_equality(constant_product, "equal exactly when the edge degree product is constant")
        } else {
            check
        });
    }

    if m == 0 || degrees.contains(&0) {
        let reason = if m == 0 { "no edges" } else { "zero degree" };
        suite.skip("gm_lower", reason);
        suite.skip("hm_lower", reason);
    } else {
        let log_sum: T = products
            .iter()
            .map(|&p| T::from_u128(p).expect("representable").ln())
            .sum();
        let gm = (log_sum / (mt * rt)).exp();
        let inv_sum: T = products
            .iter()
            .map(|&p| T::one() / T::from_u128(p).expect("representable"))
            .sum();
        let hm = (mt / inv_sum).powf(ratio(1, r));
        let reason = "equal exactly when the edge degree product is constant";
        let (gm_check, hm_check) = (
            BoundCheck::new("gm_lower", gm, rho, tol),
            BoundCheck::new("hm_lower", hm, rho, tol),
        );
        if connected {
            suite
                .checks
                .push(gm_check.expect_equality(constant_product, reason));
            suite
                .checks
                .push(hm_check.expect_equality(constant_product, reason));
        } else {
            suite.checks.push(gm_check);
            suite.checks.push(hm_check);
        }
    }

    let p = ratio::<T>(r, r - 1);
    let power_mean = (degrees
        .iter()
        .map(|&d| T::of_usize(d).powf(p))
        .sum::<T>()
        / T::of_usize(n))
    .powf(exponent);
    suite.checks.push(
        BoundCheck::new("power_mean_lower", power_mean, rho, tol)
            .expect_equality(regular, "equal when regular"),
    );

    if let (Some(sizes), Some(partition)) = (&usable_sizes, partition) {
        let class_product = sizes
            .iter()
            .map(|&s| T::of_usize(s))
            .fold(T::one(), |a, b| a * b);
        let class_root = class_product.powf(ratio(1, r));
        let s_r = s_r_measure::<T>(h, partition)?;
        let mut theorem1 = BoundCheck::new(
            "theorem1",
            rho - mt / class_root,
            (s_r / T::of(2.0)).powf(exponent),
            tol,
        );
        theorem1.equality_reason = Some("equality cases not characterized");
        suite.checks.push(theorem1);
        suite.checks.push(BoundCheck::new(
            "claim1",
            ratio::<T>(n, r).powf(ratio(1, r)),
            class_root,
            opts.check_tolerance,
        ));

        let (rewired, _) = regularize_partitewise(h, partition)?;
        let rewired_rho = spectral_radius(&rewired, &opts.spectral)?;
        let claim_tol = tol + T::of(10.0) * rewired_rho.certified_error();
        suite.checks.push(BoundCheck::new(
            "claim2",
            rewired_rho.rho,
            mt / class_root + ratio::<T>(n, r).powf(exponent),
            claim_tol,
        ));
    }

    let s = s_measure::<T>(h);
    suite.checks.push(BoundCheck::new(
        "theorem2_upper",
        eps,
        size_constant::<T>(r) * (s / T::of(2.0)).powf(exponent),
        tol,
    ));

    let v = v_measure::<T>(h);
    let lower = if m == 0 {
        T::zero()
    } else {
        let fact_root = T::of_usize(factorial(r)).powf(ratio(1, r));
        let coefficient = T::of_usize(r - 1) / mt.powf(ratio(1, r))
            * (fact_root / rt.powi(r as i32)).powf(ratio(1, r - 1));
        coefficient * v
    };
    suite
        .checks
        .push(BoundCheck::new("theorem2_lower", lower, eps, tol));

    Ok(suite)
}

/// `ρ(H1 ∪ H2) ≤ ρ(H1) + ρ(H2)` on the shared vertex universe.
pub fn weyl_check<T: Scalar>(
    h1: &UniformHypergraph,
    h2: &UniformHypergraph,
    opts: &SuiteOptions<T>,
) -> Result<BoundCheck<T>, IrregularityError> {
    let union = h1.union_edges(h2)?;
    let a = spectral_radius(h1, &opts.spectral)?;
    let b = spectral_radius(h2, &opts.spectral)?;
    let u = spectral_radius(&union, &opts.spectral)?;
    let tol = opts.check_tolerance
        + T::of(10.0) * (a.certified_error() + b.certified_error() + u.certified_error());
    let check = BoundCheck::new("weyl", u.rho, a.rho + b.rho, tol);
    Ok(if h2.edge_count() == 0 || h1.edge_count() == 0 {
        check.expect_equality(true, "one side is edgeless")
    } else {
        check
    })
}

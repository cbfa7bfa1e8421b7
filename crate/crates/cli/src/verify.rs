//! Seeded fuzzing of every bound, plus the scaling laws and rewiring
//! postconditions on a subsample.
//!
//! Instance `i` draws all of its parameters from a generator seeded with
//! `seed + i`, so the summary is independent of worker count and order.

use std::fmt::Write as _;
use std::io::Write;

use hyperirreg::{
    binomial, blow_up_uniform, direct_product, random_r_partite, random_uniform, regularize,
    regularize_partitewise, s_measure, s_r_measure, single_edge, spectral_radius, weyl_check,
    IrregularityReport, Partition, RngSeed, SuiteOptions, UniformHypergraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analyze::suite_options;
use crate::{Failure, VerifyArgs, EXIT_BOUND_VIOLATION, EXIT_NONCONVERGENCE, EXIT_OK};

/// Relative error allowed on the blow-up and direct-product scaling laws.
pub const LAW_RELATIVE_TOLERANCE: f64 = 1e-7;

pub const BOUND_NAMES: [&str; 13] = [
    "cooper_dutle",
    "row_sum_sandwich",
    "size_upper",
    "size_upper_partite",
    "edge_gm_upper",
    "gm_lower",
    "hm_lower",
    "power_mean_lower",
    "theorem1",
    "claim1",
    "claim2",
    "theorem2_upper",
    "theorem2_lower",
];

pub const EXTRA_NAMES: [&str; 5] = [
    "blowup_law",
    "product_law",
    "weyl",
    "regularize",
    "regularize_partitewise",
];

const SOLVER: &str = "solver";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyShape {
    Uniform,
    /// Fixed class sizes, or drawn per instance when `None`.
    Partite(Option<Vec<usize>>),
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub rank: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub count: usize,
    pub seed: u64,
    pub shape: VerifyShape,
    pub max_n: usize,
    pub extra_every: usize,
    pub jobs: usize,
    pub options: SuiteOptions<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            rank: None,
            n: None,
            m: None,
            count: 100,
            seed: 0,
            shape: VerifyShape::Uniform,
            max_n: 10,
            extra_every: 10,
            jobs: 1,
            options: SuiteOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckStats {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub skipped: usize,
    pub min_slack: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySummary {
    pub config_line: String,
    pub instances: usize,
    pub stats: Vec<CheckStats>,
    /// Human-readable description of each failure, in instance order.
    pub failures: Vec<String>,
}

impl VerifySummary {
    pub fn stat(&self, name: &str) -> Option<&CheckStats> {
        self.stats.iter().find(|s| s.name == name)
    }

    pub fn total_failures(&self) -> usize {
        self.stats.iter().map(|s| s.failed).sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verify {}", self.config_line);
        let _ = writeln!(out, "instances {}", self.instances);
        let _ = writeln!(
            out,
            "{:<24} {:>8} {:>8} {:>8}  min_slack",
            "check", "checked", "failed", "skipped"
        );
        for s in &self.stats {
            let slack = s
                .min_slack
                .map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"));
            let _ = writeln!(
                out,
                "{:<24} {:>8} {:>8} {:>8}  {}",
                s.name, s.checked, s.failed, s.skipped, slack
            );
        }
        for f in self.failures.iter().take(20) {
            let _ = writeln!(out, "FAIL {f}");
        }
        let total = self.total_failures();
        let _ = writeln!(out, "failures {total}");
        let _ = writeln!(out, "result {}", if total == 0 { "PASS" } else { "FAIL" });
        out
    }
}

struct Record {
    name: &'static str,
    /// `None` when skipped; the slack is NaN for pass/fail-only checks.
    outcome: Option<(f64, bool)>,
    detail: String,
}

struct InstanceOutcome {
    label: String,
    records: Vec<Record>,
}

struct Instance {
    h: UniformHypergraph,
    partition: Option<Partition>,
    rng: ChaCha8Rng,
    label: String,
}

fn check_config(config: &VerifyConfig) -> Result<(), String> {
    if config.extra_every == 0 {
        return Err("extra-every must be at least 1".into());
    }
    if config.jobs == 0 {
        return Err("jobs must be at least 1".into());
    }
    if let Some(r) = config.rank {
        if r < 2 {
            return Err(format!("rank must be at least 2 (got {r})"));
        }
    }
    match &config.shape {
        VerifyShape::Uniform => {
            for r in ranks(config) {
                if candidate_ns(config, r).is_empty() {
                    return Err(format!(
                        "no vertex count in range fits rank {r} with the requested edge count"
                    ));
                }
            }
        }
        VerifyShape::Partite(Some(sizes)) => {
            if sizes.len() < 2 || sizes.contains(&0) {
                return Err("partite sizes need at least two positive classes".into());
            }
            if config.rank.is_some_and(|r| r != sizes.len()) {
                return Err("--r disagrees with the number of partite classes".into());
            }
            let total: u128 = sizes.iter().map(|&s| s as u128).product();
            if config.m.is_some_and(|m| m as u128 > total) {
                return Err(format!("m exceeds the {total} possible transversal edges"));
            }
        }
        VerifyShape::Partite(None) => {
            for r in ranks(config) {
                let per_class = (config.max_n / r).max(1);
                let total = (per_class as u128).pow(r as u32);
                if config.m.is_some_and(|m| m as u128 > total) {
                    return Err(format!("m too large for rank {r} with max-n {}", config.max_n));
                }
            }
        }
    }
    Ok(())
}

fn ranks(config: &VerifyConfig) -> Vec<usize> {
    match config.rank {
        Some(r) => vec![r],
        None => vec![2, 3, 4],
    }
}

fn candidate_ns(config: &VerifyConfig, r: usize) -> Vec<usize> {
    let range: Vec<usize> = match config.n {
        Some(n) => vec![n],
        None => (r..=config.max_n).collect(),
    };
    range
        .into_iter()
        .filter(|&n| n >= r)
        .filter(|&n| config.m.is_none_or(|m| m as u128 <= binomial(n, r)))
        .collect()
}

fn draw_instance(config: &VerifyConfig, index: usize) -> Instance {
    let instance_seed = config.seed.wrapping_add(index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed);
    let rs = ranks(config);
    let r = rs[rng.gen_range(0..rs.len())];
    let graph_seed = RngSeed(rng.gen());
    match &config.shape {
        VerifyShape::Uniform => {
            let ns = candidate_ns(config, r);
            let n = ns[rng.gen_range(0..ns.len())];
            let max_m = binomial(n, r) as usize;
            let m = config.m.unwrap_or_else(|| rng.gen_range(0..=max_m));
            let h = random_uniform(n, m, r, graph_seed).expect("parameters checked");
            Instance {
                label: format!("#{index} (seed {instance_seed}, r={r} n={n} m={m})"),
                h,
                partition: None,
                rng,
            }
        }
        VerifyShape::Partite(sizes) => {
            let sizes = sizes.clone().unwrap_or_else(|| {
                let per_class = (config.max_n / r).max(1);
                (0..r).map(|_| rng.gen_range(1..=per_class)).collect()
            });
            let total: usize = sizes.iter().product();
            let m = config.m.unwrap_or_else(|| rng.gen_range(0..=total));
            let (h, p) = random_r_partite(&sizes, m, graph_seed).expect("parameters checked");
            Instance {
                label: format!("#{index} (seed {instance_seed}, sizes {sizes:?} m={m})"),
                h,
                partition: Some(p),
                rng,
            }
        }
    }
}

fn relative_law(actual: f64, factor: f64, base: f64) -> f64 {
    (actual - factor * base).abs() / (factor * base.max(1.0))
}

fn run_instance(config: &VerifyConfig, index: usize) -> InstanceOutcome {
    let Instance {
        h,
        partition,
        mut rng,
        label,
    } = draw_instance(config, index);
    let opts = &config.options;
    let mut records = Vec::new();
    let mut push = |name, slack: f64, holds: bool, detail: String| {
        records.push(Record {
            name,
            outcome: Some((slack, holds)),
            detail,
        })
    };

    let report = match IrregularityReport::compute(&h, partition.as_ref(), opts) {
        Ok(r) => r,
        Err(e) => {
            push(SOLVER, f64::NEG_INFINITY, false, format!("error: {e}"));
            return InstanceOutcome { label, records };
        }
    };
    push(
        SOLVER,
        f64::NAN,
        report.spectral.converged,
        format!("not converged after {} iterations", report.spectral.iterations),
    );
    for c in &report.bounds.checks {
        push(
            c.name,
            c.slack,
            c.holds,
            format!("lhs {:.17e} rhs {:.17e} tol {:.3e}", c.lhs, c.rhs, c.tolerance),
        );
    }
    for s in &report.bounds.skipped {
        records.push(Record {
            name: s.name,
            outcome: None,
            detail: String::new(),
        });
    }

    if index.is_multiple_of(config.extra_every) {
        extra_checks(&h, partition.as_ref(), report.rho, opts, &mut rng, &mut records);
    } else {
        for name in EXTRA_NAMES {
            records.push(Record {
                name,
                outcome: None,
                detail: String::new(),
            });
        }
    }
    InstanceOutcome { label, records }
}

fn extra_checks(
    h: &UniformHypergraph,
    partition: Option<&Partition>,
    rho: f64,
    opts: &SuiteOptions<f64>,
    rng: &mut ChaCha8Rng,
    records: &mut Vec<Record>,
) {
    let r = h.rank();
    let (n, m) = (h.vertex_count(), h.edge_count());
    let mut push = |name, slack: f64, holds: bool, detail: String| {
        records.push(Record {
            name,
            outcome: Some((slack, holds)),
            detail,
        })
    };

    // blow-up: ρ(H(k,…,k)) = k^{r−1} ρ(H)
    let k = rng.gen_range(2..=3usize);
    let b = blow_up_uniform(h, k).expect("k positive");
    let counts_ok = b.vertex_count() == k * n && b.edge_count() == k.pow(r as u32) * m;
    match spectral_radius(&b, &opts.spectral) {
        Ok(res) => {
            let err = relative_law(res.rho, (k as f64).powi(r as i32 - 1), rho);
            let slack = LAW_RELATIVE_TOLERANCE - err;
            push(
                "blowup_law",
                slack,
                counts_ok && slack >= 0.0 && res.converged,
                format!("k={k} relative error {err:.3e} counts_ok={counts_ok}"),
            );
        }
        Err(e) => push("blowup_law", f64::NEG_INFINITY, false, e.to_string()),
    }

    // direct product with K_r^r: ρ = (r−1)! ρ(H), |E| = r! m
    let fact = |k: usize| (1..=k).product::<usize>();
    let kr = single_edge(r).expect("rank at least 2");
    let p = direct_product(h, &kr).expect("same rank");
    let count_ok = p.edge_count() == fact(r) * m;
    match spectral_radius(&p, &opts.spectral) {
        Ok(res) => {
            let err = relative_law(res.rho, fact(r - 1) as f64, rho);
            let slack = LAW_RELATIVE_TOLERANCE - err;
            push(
                "product_law",
                slack,
                count_ok && slack >= 0.0 && res.converged,
                format!("relative error {err:.3e} count_ok={count_ok}"),
            );
        }
        Err(e) => push("product_law", f64::NEG_INFINITY, false, e.to_string()),
    }

    // Weyl against a second instance on the same universe
    let other_seed = RngSeed(rng.gen());
    let other = match partition {
        Some(p) => {
            let sizes = p.class_sizes();
            let total: usize = sizes.iter().product();
            random_r_partite(&sizes, rng.gen_range(0..=total), other_seed).map(|(g, _)| g)
        }
        None => random_uniform(n, rng.gen_range(0..=binomial(n, r) as usize), r, other_seed),
    }
    .expect("feasible by construction");
    match weyl_check(h, &other, opts) {
        Ok(c) => push(
            "weyl",
            c.slack,
            c.holds,
            format!("lhs {:.17e} rhs {:.17e}", c.lhs, c.rhs),
        ),
        Err(e) => push("weyl", f64::NEG_INFINITY, false, e.to_string()),
    }

    // global rewiring postconditions
    match regularize(h) {
        Ok((g, trace)) => {
            let s_in = s_measure::<f64>(h);
            let s_out = s_measure::<f64>(&g);
            let diff = h.symmetric_difference_size(&g).expect("same rank");
            let spread = g.max_degree() - g.min_degree();
            let replay_ok = trace.replay(h).as_ref() == Ok(&g);
            let ok = spread <= 1
                && g.edge_count() == m
                && g.vertex_count() == n
                && diff as f64 <= s_in + 1e-9
                && s_out <= s_in + 1e-9
                && replay_ok;
            push(
                "regularize",
                s_in - diff as f64,
                ok,
                format!("spread {spread} edits {diff} s {s_in:.6} -> {s_out:.6} replay_ok={replay_ok}"),
            );
        }
        Err(e) => push("regularize", f64::NEG_INFINITY, false, e.to_string()),
    }

    match partition {
        Some(p) => match regularize_partitewise(h, p) {
            Ok((g, trace)) => {
                let s_r: f64 = s_r_measure(h, p).expect("valid partition");
                let diff = h.symmetric_difference_size(&g).expect("same rank");
                let d = g.degrees();
                let class_spread = (1..=p.class_count())
                    .map(|c| {
                        let ds: Vec<usize> =
                            p.members(c).iter().map(|&v| d[v as usize - 1]).collect();
                        ds.iter().max().unwrap_or(&0) - ds.iter().min().unwrap_or(&0)
                    })
                    .max()
                    .unwrap_or(0);
                let ok = g.validate_partition(p)
                    && class_spread <= 1
                    && g.edge_count() == m
                    && diff as f64 <= s_r + 1e-9
                    && trace.replay(h).as_ref() == Ok(&g);
                push(
                    "regularize_partitewise",
                    s_r - diff as f64,
                    ok,
                    format!("class spread {class_spread} edits {diff} s_r {s_r:.6}"),
                );
            }
            Err(e) => push("regularize_partitewise", f64::NEG_INFINITY, false, e.to_string()),
        },
        None => records.push(Record {
            name: "regularize_partitewise",
            outcome: None,
            detail: String::new(),
        }),
    }
}

/// Runs the whole fuzz campaign. Fails only on invalid parameters.
pub fn verify(config: &VerifyConfig) -> Result<VerifySummary, String> {
    check_config(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    let outcomes: Vec<InstanceOutcome> = pool.install(|| {
        (0..config.count)
            .into_par_iter()
            .map(|i| run_instance(config, i))
            .collect()
    });

    let mut stats: Vec<CheckStats> = std::iter::once(SOLVER)
        .chain(BOUND_NAMES)
        .chain(EXTRA_NAMES)
        .map(|name| CheckStats {
            name,
            checked: 0,
            failed: 0,
            skipped: 0,
            min_slack: None,
        })
        .collect();
    let mut failures = Vec::new();
    for outcome in &outcomes {
        for rec in &outcome.records {
            let stat = stats
                .iter_mut()
                .find(|s| s.name == rec.name)
                .expect("known check name");
            match rec.outcome {
                None => stat.skipped += 1,
                Some((slack, holds)) => {
                    stat.checked += 1;
                    if !slack.is_nan() {
                        stat.min_slack = Some(stat.min_slack.map_or(slack, |s: f64| s.min(slack)));
                    }
                    if !holds {
                        stat.failed += 1;
                        failures.push(format!("{} {}: {}", outcome.label, rec.name, rec.detail));
                    }
                }
            }
        }
    }

    let shape = match &config.shape {
        VerifyShape::Uniform => "uniform".to_string(),
        VerifyShape::Partite(None) => "partite auto".to_string(),
        VerifyShape::Partite(Some(s)) => format!(
            "partite {}",
            s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        ),
    };
    let fmt_opt = |x: Option<usize>| x.map_or_else(|| "any".to_string(), |v| v.to_string());
    let config_line = format!(
        "shape={shape} r={} n={} m={} count={} seed={} max_n={} extra_every={} tol={:e} solver_tol={:e}",
        fmt_opt(config.rank),
        fmt_opt(config.n),
        fmt_opt(config.m),
        config.count,
        config.seed,
        config.max_n,
        config.extra_every,
        config.options.check_tolerance,
        config.options.spectral.tolerance,
    );
    Ok(VerifySummary {
        config_line,
        instances: config.count,
        stats,
        failures,
    })
}

pub(crate) fn run(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let shape = match args.partite.as_deref() {
        None => VerifyShape::Uniform,
        Some("auto") => VerifyShape::Partite(None),
        Some(list) => VerifyShape::Partite(Some(
            list.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::input(format!("bad --partite sizes {list:?}")))?,
        )),
    };
    let jobs = args.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    });
    let config = VerifyConfig {
        rank: args.rank,
        n: args.n,
        m: args.m,
        count: args.count,
        seed: args.seed,
        shape,
        max_n: args.max_n,
        extra_every: args.extra_every,
        jobs,
        options: suite_options(args.tol, &args.solver)?,
    };
    let summary = verify(&config).map_err(Failure::input)?;
    out.write_all(summary.render().as_bytes())
        .map_err(|e| Failure::input(format!("stdout: {e}")))?;
    let solver_failed = summary.stat(SOLVER).map_or(0, |s| s.failed);
    Ok(if summary.total_failures() == 0 {
        EXIT_OK
    } else if summary.total_failures() == solver_failed {
        EXIT_NONCONVERGENCE
    } else {
        EXIT_BOUND_VIOLATION
    })
}

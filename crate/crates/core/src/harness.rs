//! Randomized verification of every implemented inequality.
//!
//! Each check draws fresh random instances per trial from a generator seeded
//! by `(seed, trial, check name)`. Trials may run on a thread pool; results
//! are collected in trial order and reduced serially, so the summary does not
//! depend on the degree of parallelism.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix};
use crate::numradius::{numerical_radius_default, numerical_radius_oracle};
use crate::opbounds::{self, slack_allowance, BoundEntry, OpBoundReport, SandwichResult};
use crate::poly::{aberth_roots_default, shift_coefficients, MonicPolynomial};
use crate::random::{gaussian_matrix, gaussian_monic, name_tag, psd_matrix, trial_rng};
use crate::zerobounds::{ReportConfig, ZeroBoundReport};

/// Grid size of the brute-force numerical radius in the radius suite.
pub const RADIUS_ORACLE_GRID: usize = 100_000;
/// Absolute agreement required between the engine and the grid.
pub const RADIUS_ORACLE_TOL: f64 = 1e-7;
/// `max |p(root)| <= ROOT_RESIDUAL_TOL * (1 + sum |a_k|)`
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;
/// Absolute root-matching tolerance for the shift check.
pub const SHIFT_ROOT_TOL: f64 = 1e-8;
pub const MAX_HARNESS_DIM: usize = 8;

pub const ZERO_BOUND_DEGREES: (usize, usize) = (2, 12);
pub const SHIFT_DEGREES: (usize, usize) = (2, 10);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Opbounds,
    Polybounds,
    Radius,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Opbounds => "opbounds",
            Suite::Polybounds => "polybounds",
            Suite::Radius => "radius",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "opbounds" => Ok(Suite::Opbounds),
            "polybounds" => Ok(Suite::Polybounds),
            "radius" => Ok(Suite::Radius),
            "all" => Ok(Suite::All),
            _ => Err(Error::Config(format!(
                "unknown suite `{s}` (expected opbounds, polybounds, radius or all)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarnessConfig {
    pub seed: u64,
    pub trials: usize,
    /// Largest block dimension drawn for matrix checks.
    pub max_dim: usize,
    /// Relative slack allowed for the inequalities.
    pub tol: f64,
    pub suite: Suite,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 42,
            trials: 500,
            max_dim: 6,
            tol: 1e-8,
            suite: Suite::All,
        }
    }
}

impl HarnessConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if !(1..=MAX_HARNESS_DIM).contains(&self.max_dim) {
            return Err(Error::Config(format!(
                "max_dim must be in 1..={MAX_HARNESS_DIM}, got {}",
                self.max_dim
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Enough to regenerate a trial: the generator is `trial_rng(seed, trial,
/// name_tag(check))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reproducer {
    pub check: String,
    pub seed: u64,
    pub trial: usize,
    pub dims: Vec<usize>,
    pub detail: Option<String>,
}

impl fmt::Display for Reproducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "check={} seed={} trial={} dims={}",
            self.check,
            self.seed,
            self.trial,
            dims.join("x")
        )?;
        if let Some(detail) = &self.detail {
            write!(f, " ({detail})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityStats {
    pub suite: Suite,
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Smallest normalized margin seen; negative values are violations
    /// (possibly within tolerance).
    pub worst_slack: Option<f64>,
    pub worst_trial: Option<Reproducer>,
    pub first_failure: Option<Reproducer>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessSummary {
    pub config: HarnessConfig,
    pub inequalities: Vec<InequalityStats>,
}

impl HarnessSummary {
    pub fn total_failures(&self) -> usize {
        self.inequalities.iter().map(|s| s.failed).sum()
    }

    pub fn first_failure(&self) -> Option<&Reproducer> {
        self.inequalities
            .iter()
            .find_map(|s| s.first_failure.as_ref())
    }

    pub fn get(&self, name: &str) -> Option<&InequalityStats> {
        self.inequalities.iter().find(|s| s.name == name)
    }
}

#[derive(Debug, Clone, Copy)]
struct Outcome {
    margin: f64,
    pass: bool,
}

fn sandwich(s: SandwichResult, tol: f64) -> Outcome {
    Outcome {
        margin: s.worst_relative_slack(),
        pass: s.holds(tol),
    }
}

fn entry(e: &BoundEntry, tol: f64) -> Outcome {
    Outcome {
        margin: e.slack() / e.measured.abs().max(1.0),
        pass: e.holds(tol),
    }
}

/// `bound >= measured` up to the relative allowance.
fn upper(bound: f64, measured: f64, tol: f64) -> Outcome {
    Outcome {
        margin: (bound - measured) / measured.abs().max(1.0),
        pass: bound - measured >= -slack_allowance(tol, measured),
    }
}

/// `|diff| <= allowed`, margin `allowed - |diff|`.
fn within(diff: f64, allowed: f64) -> Outcome {
    Outcome {
        margin: allowed - diff.abs(),
        pass: diff.abs() <= allowed,
    }
}

type Outcomes = Vec<(String, Outcome)>;

fn report_outcomes(report: &OpBoundReport, tol: f64) -> Outcomes {
    report
        .entries
        .iter()
        .map(|e| (e.name.clone(), entry(e, tol)))
        .collect()
}

fn single(name: &str, o: Outcome) -> Outcomes {
    vec![(name.to_string(), o)]
}

type CheckFn = fn(&mut ChaCha8Rng, &HarnessConfig, &mut Vec<usize>) -> Result<Outcomes>;

struct Check {
    suite: Suite,
    name: &'static str,
    run: CheckFn,
}

fn dim(rng: &mut ChaCha8Rng, cfg: &HarnessConfig, dims: &mut Vec<usize>) -> usize {
    let d = rng.random_range(1..=cfg.max_dim);
    dims.push(d);
    d
}

fn square(rng: &mut ChaCha8Rng, cfg: &HarnessConfig, dims: &mut Vec<usize>) -> ComplexMatrix {
    let n = dim(rng, cfg, dims);
    gaussian_matrix(rng, n, n)
}

/// `X` of shape `n1 x n2` and `Y` of shape `n2 x n1`.
fn offdiag_pair(
    rng: &mut ChaCha8Rng,
    cfg: &HarnessConfig,
    dims: &mut Vec<usize>,
) -> (ComplexMatrix, ComplexMatrix) {
    let n1 = dim(rng, cfg, dims);
    let n2 = dim(rng, cfg, dims);
    (gaussian_matrix(rng, n1, n2), gaussian_matrix(rng, n2, n1))
}

fn degree(rng: &mut ChaCha8Rng, range: (usize, usize), dims: &mut Vec<usize>) -> usize {
    let d = rng.random_range(range.0..=range.1);
    dims.push(d);
    d
}

/// Largest distance in a greedy closest-pair matching of two equal-size
/// point sets.
fn multiset_distance(a: &[Complex], b: &[Complex]) -> f64 {
    let mut left: Vec<Complex> = a.to_vec();
    let mut right: Vec<Complex> = b.to_vec();
    let mut worst = 0.0f64;
    while !left.is_empty() {
        let mut best = (0, 0, f64::INFINITY);
        for (i, x) in left.iter().enumerate() {
            for (j, y) in right.iter().enumerate() {
                let d = (x - y).norm();
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        worst = worst.max(best.2);
        left.swap_remove(best.0);
        right.swap_remove(best.1);
    }
    worst
}

const CHECKS: &[Check] = &[
    Check {
        suite: Suite::Opbounds,
        name: "offdiag_sandwich",
        run: |rng, cfg, dims| {
            let (x, y) = offdiag_pair(rng, cfg, dims);
            Ok(single(
                "offdiag_sandwich",
                sandwich(opbounds::offdiag_sandwich(&x, &y)?, cfg.tol),
            ))
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "offdiag_sandwich_fourth",
        run: |rng, cfg, dims| {
            let (x, y) = offdiag_pair(rng, cfg, dims);
            let s = opbounds::offdiag_sandwich_fourth(&x, &y)?;
            Ok(single("offdiag_sandwich_fourth", sandwich(s, cfg.tol)))
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "corollary_sandwich",
        run: |rng, cfg, dims| {
            let t = square(rng, cfg, dims);
            Ok(single(
                "corollary_sandwich",
                sandwich(opbounds::corollary_sandwich(&t)?, cfg.tol),
            ))
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "sum_norm",
        run: |rng, cfg, dims| {
            let n = dim(rng, cfg, dims);
            let x = gaussian_matrix(rng, n, n);
            let y = gaussian_matrix(rng, n, n);
            Ok(report_outcomes(
                &opbounds::sum_norm_bounds(&x, &y)?,
                cfg.tol,
            ))
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "product_w",
        run: |rng, cfg, dims| {
            let (x, y) = offdiag_pair(rng, cfg, dims);
            Ok(report_outcomes(
                &opbounds::product_w_bounds(&x, &y)?,
                cfg.tol,
            ))
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "positive_product",
        run: |rng, cfg, dims| {
            let n = dim(rng, cfg, dims);
            let x = psd_matrix(rng, n);
            let y = psd_matrix(rng, n);
            Ok(report_outcomes(
                &opbounds::positive_product_bounds(&x, &y)?,
                cfg.tol,
            ))
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "general_2x2_upper",
        run: |rng, cfg, dims| {
            let n1 = dim(rng, cfg, dims);
            let n2 = dim(rng, cfg, dims);
            let x = gaussian_matrix(rng, n1, n1);
            let y = gaussian_matrix(rng, n1, n2);
            let z = gaussian_matrix(rng, n2, n1);
            let w = gaussian_matrix(rng, n2, n2);
            let b = opbounds::general2x2_bounds(&x, &y, &z, &w)?;
            Ok(vec![
                (
                    "general_2x2_upper_square".into(),
                    upper(b.upper_square, b.measured, cfg.tol),
                ),
                (
                    "general_2x2_upper_fourth".into(),
                    upper(b.upper_fourth, b.measured, cfg.tol),
                ),
            ])
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "general_2x2_lower",
        run: |rng, cfg, dims| {
            let n = dim(rng, cfg, dims);
            let blocks: Vec<ComplexMatrix> = (0..4).map(|_| gaussian_matrix(rng, n, n)).collect();
            let b = opbounds::general2x2_bounds(&blocks[0], &blocks[1], &blocks[2], &blocks[3])?;
            let lower = |lo: Option<f64>| -> Outcome {
                let lo = lo.expect("equal diagonal blocks give lower bounds");
                upper(b.measured, lo, cfg.tol)
            };
            Ok(vec![
                ("general_2x2_lower_square".into(), lower(b.lower_square)),
                ("general_2x2_lower_fourth".into(), lower(b.lower_fourth)),
            ])
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "remark_improvement",
        run: |rng, cfg, dims| {
            let t = square(rng, cfg, dims);
            let r = opbounds::remark_improvement_check(&t)?;
            Ok(single(
                "remark_improvement",
                Outcome {
                    margin: r.worst_relative_slack(),
                    pass: r.holds(cfg.tol),
                },
            ))
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "kittaneh_sandwich",
        run: |rng, cfg, dims| {
            let t = square(rng, cfg, dims);
            Ok(single(
                "kittaneh_sandwich",
                sandwich(opbounds::kittaneh_sandwich(&t)?, cfg.tol),
            ))
        },
    },
    Check {
        suite: Suite::Opbounds,
        name: "basic_sandwich",
        run: |rng, cfg, dims| {
            let t = square(rng, cfg, dims);
            Ok(single(
                "basic_sandwich",
                sandwich(opbounds::basic_sandwich(&t)?, cfg.tol),
            ))
        },
    },
    Check {
        suite: Suite::Polybounds,
        name: "zero_bounds",
        run: |rng, cfg, dims| {
            let n = degree(rng, ZERO_BOUND_DEGREES, dims);
            let p = gaussian_monic(rng, n);
            zero_bound_outcomes(&p, cfg.tol)
        },
    },
    Check {
        suite: Suite::Polybounds,
        name: "shift_roots",
        run: |rng, _cfg, dims| {
            let n = degree(rng, SHIFT_DEGREES, dims);
            let p = gaussian_monic(rng, n);
            Ok(single(
                "shift_roots",
                within(shift_root_distance(&p)?, SHIFT_ROOT_TOL),
            ))
        },
    },
    Check {
        suite: Suite::Radius,
        name: "radius_oracle",
        run: |rng, cfg, dims| {
            let lo = cfg.max_dim.min(2);
            let n = rng.random_range(lo..=cfg.max_dim);
            dims.push(n);
            let t = gaussian_matrix(rng, n, n);
            let diff =
                numerical_radius_default(&t)? - numerical_radius_oracle(&t, RADIUS_ORACLE_GRID)?;
            Ok(single("radius_oracle", within(diff, RADIUS_ORACLE_TOL)))
        },
    },
];

/// Dominance of every applicable bound, the oracle residual, and
/// `max |root| <= w(C(p))`.
fn zero_bound_outcomes(p: &MonicPolynomial, tol: f64) -> Result<Outcomes> {
    let report = ZeroBoundReport::evaluate(p, &ReportConfig::default())?;
    let max_mod = report.oracle_max_modulus;
    let mut out: Outcomes = report
        .entries
        .iter()
        .filter_map(|e| e.value.map(|v| (e.name.clone(), upper(v, max_mod, tol))))
        .collect();

    let scale = 1.0 + p.abs_coeffs().iter().sum::<f64>();
    let residual = report
        .oracle_roots
        .iter()
        .map(|&z| p.eval(z).norm())
        .fold(0.0, f64::max);
    let allowed = ROOT_RESIDUAL_TOL * scale;
    out.push((
        "oracle_residual".into(),
        Outcome {
            margin: (allowed - residual) / scale,
            pass: residual <= allowed,
        },
    ));

    let wc = numerical_radius_default(&p.companion())?;
    out.push(("companion_radius".into(), upper(wc, max_mod, tol)));
    Ok(out)
}

/// Largest mismatch between the roots of the shifted polynomial and the
/// translated roots of `p`.
pub fn shift_root_distance(p: &MonicPolynomial) -> Result<f64> {
    let sc = shift_coefficients(p)?;
    let q = sc.polynomial();
    // z = eta + shift, so eta = z - shift
    let translated: Vec<Complex> = aberth_roots_default(p)?
        .into_iter()
        .map(|z| z - sc.shift)
        .collect();
    let q_roots = aberth_roots_default(&q)?;
    Ok(multiset_distance(&translated, &q_roots))
}

/// `NRB_THREADS`: unset means the default pool, `0` means serial.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("NRB_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::Config(format!("NRB_THREADS: {e}"))),
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Error::Config(format!(
                "NRB_THREADS must be a non-negative integer, got `{v}`"
            ))
        }),
    }
}

fn run_indexed<T: Send>(
    count: usize,
    threads: Option<usize>,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Result<Vec<T>> {
    match threads {
        Some(0) => Ok((0..count).map(f).collect()),
        None => Ok((0..count).into_par_iter().map(f).collect()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(|| (0..count).into_par_iter().map(f).collect()))
        }
    }
}

struct Accumulator {
    stats: Vec<InequalityStats>,
}

impl Accumulator {
    fn slot(&mut self, suite: Suite, name: &str) -> &mut InequalityStats {
        let idx = match self.stats.iter().position(|s| s.name == name) {
            Some(i) => i,
            None => {
                self.stats.push(InequalityStats {
                    suite,
                    name: name.to_string(),
                    trials: 0,
                    passed: 0,
                    failed: 0,
                    worst_slack: None,
                    worst_trial: None,
                    first_failure: None,
                });
                self.stats.len() - 1
            }
        };
        &mut self.stats[idx]
    }

    fn record(
        &mut self,
        suite: Suite,
        name: &str,
        outcome: Outcome,
        repro: impl Fn() -> Reproducer,
    ) {
        let s = self.slot(suite, name);
        s.trials += 1;
        if outcome.pass {
            s.passed += 1;
        } else {
            s.failed += 1;
            if s.first_failure.is_none() {
                s.first_failure = Some(repro());
            }
        }
        if outcome.margin.is_finite() && s.worst_slack.is_none_or(|w| outcome.margin < w) {
            s.worst_slack = Some(outcome.margin);
            s.worst_trial = Some(repro());
        }
    }
}

/// Runs the configured suites; `threads` follows [`threads_from_env`].
pub fn run(cfg: &HarnessConfig, threads: Option<usize>) -> Result<HarnessSummary> {
    cfg.validate()?;
    let mut acc = Accumulator { stats: Vec::new() };
    for check in CHECKS.iter().filter(|c| cfg.suite.includes(c.suite)) {
        let tag = name_tag(check.name);
        let results = run_indexed(cfg.trials, threads, |trial| {
            let mut rng = trial_rng(cfg.seed, trial as u64, tag);
            let mut dims = Vec::new();
            let outcome = (check.run)(&mut rng, cfg, &mut dims);
            (dims, outcome)
        })?;
        for (trial, (dims, outcome)) in results.into_iter().enumerate() {
            let repro = |detail: Option<String>| Reproducer {
                check: check.name.to_string(),
                seed: cfg.seed,
                trial,
                dims: dims.clone(),
                detail,
            };
            match outcome {
                Ok(list) => {
                    for (name, o) in list {
                        acc.record(check.suite, &name, o, || repro(None));
                    }
                }
                Err(e) => {
                    let failed = Outcome {
                        margin: f64::NAN,
                        pass: false,
                    };
                    acc.record(check.suite, check.name, failed, || {
                        repro(Some(e.to_string()))
                    });
                }
            }
        }
    }
    Ok(HarnessSummary {
        config: *cfg,
        inequalities: acc.stats,
    })
}

//! `nrb`: zero bounds, numerical radii, operator-matrix bounds and the
//! randomized checker from the command line.
//!
//! Exit codes: 0 success, 1 usage/input error, 2 numerical failure,
//! 3 an inequality was violated beyond tolerance.

mod output;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nrbounds::eigen::{
    hermitian_eigenvalues, hermitian_norm, operator_norm, DEFAULT_EIG_TOL, PSD_CLAMP,
};
use nrbounds::harness::{self, HarnessConfig, HarnessSummary, Suite};
use nrbounds::numradius::{numerical_radius, RadiusConfig};
use nrbounds::opbounds::{self, slack_allowance, BoundEntry, BoundKind, SandwichResult};
use nrbounds::parse::{parse_matrix, parse_poly};
use nrbounds::poly::MonicPolynomial;
use nrbounds::zerobounds::{ReportConfig, ZeroBoundReport};
use nrbounds::{Complex, ComplexMatrix, Error};
use serde::Serialize;

use output::{Format, Table};

#[derive(Parser)]
#[command(
    name = "nrb",
    version,
    about = "Numerical radius bounds and polynomial zero bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Upper bounds for the moduli of the zeros of a monic polynomial.
    Zeros(ZerosArgs),
    /// Numerical radius of a square matrix.
    Wradius(WradiusArgs),
    /// Numerical-radius and norm bounds for 2x2 operator matrices.
    Opbounds(OpboundsArgs),
    /// Randomized verification of every inequality.
    Check(CheckArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Relative slack allowed when checking inequalities.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct ZerosArgs {
    /// Coefficients a_0 ... a_{n-1}, e.g. "3 1 1 1 1" or "1+2i -0.5".
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "poly_file",
        conflicts_with = "poly_file"
    )]
    coeffs: Option<String>,
    /// File holding coefficients as text or as a JSON array of [re, im].
    #[arg(long)]
    poly_file: Option<PathBuf>,
    /// The input includes the leading coefficient a_n (divided out if not 1).
    #[arg(long)]
    with_leading: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct WradiusArgs {
    /// Matrix file: a "rows cols" header, then one row per line as re/im pairs
    #[arg(long)]
    matrix: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct OpboundsArgs {
    /// X: the upper-right block of [[0, X], [Y, 0]], or the upper-left block of [[X, Y], [Z, W]]
    #[arg(long)]
    x: Option<PathBuf>,
    /// Y: lower-left of [[0, X], [Y, 0]], or upper-right of [[X, Y], [Z, W]]
    #[arg(long)]
    y: Option<PathBuf>,
    /// Z: lower-left of [[X, Y], [Z, W]]
    #[arg(long)]
    z: Option<PathBuf>,
    /// W: lower-right of [[X, Y], [Z, W]]
    #[arg(long)]
    w: Option<PathBuf>,
    /// Blocks in the order X, Y[, Z, W], instead of --x/--y/--z/--w.
    #[arg(long = "matrix", conflicts_with_all = ["x", "y", "z", "w"])]
    matrices: Vec<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Opbounds,
    Polybounds,
    Radius,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Opbounds => Suite::Opbounds,
            SuiteArg::Polybounds => Suite::Polybounds,
            SuiteArg::Radius => Suite::Radius,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Random trials per inequality
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Largest block dimension drawn (at most 8)
    #[arg(long, default_value_t = 6)]
    max_dim: usize,
    #[command(flatten)]
    common: Common,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotHermitian { .. }
            | Error::NoConvergence { .. }
            | Error::NegativeEigenvalue { .. }
            | Error::RootsNoConvergence { .. } => 2,
            Error::BoundViolation { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<ComplexMatrix, Failure> {
    parse_matrix(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn check_tol(tol: f64) -> CmdResult {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::usage(format!("--tol must be positive, got {tol}")))
    }
}

fn push_json<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string_pretty(value).expect("report serializes"));
    out.push('\n');
}

#[derive(Serialize)]
struct ZeroRow {
    name: String,
    /// `bound`, `oracle` or `not_applicable`
    kind: &'static str,
    value: Option<f64>,
    note: Option<String>,
}

#[derive(Serialize)]
struct ZerosOutput {
    degree: usize,
    coefficients: Vec<[f64; 2]>,
    normalized: bool,
    rows: Vec<ZeroRow>,
    oracle_max_modulus: f64,
    oracle_roots: Vec<[f64; 2]>,
}

fn pairs(z: &[Complex]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

fn cmd_zeros(args: ZerosArgs, out: &mut String) -> CmdResult {
    check_tol(args.common.tol)?;
    let (text, origin) = match (&args.coeffs, &args.poly_file) {
        (Some(c), _) => (c.clone(), "--coeffs".to_string()),
        (None, Some(path)) => (read(path)?, path.display().to_string()),
        (None, None) => return Err(Failure::usage("one of --coeffs or --poly-file is required")),
    };
    let coeffs = parse_poly(&text).map_err(|e| Failure::usage(format!("{origin}: {e}")))?;
    let (p, normalized) = if args.with_leading {
        MonicPolynomial::normalized(&coeffs)?
    } else {
        (MonicPolynomial::new(coeffs)?, false)
    };
    if normalized {
        eprintln!("note: divided all coefficients by the leading coefficient");
    }

    let cfg = ReportConfig {
        slack_tol: args.common.tol,
        ..ReportConfig::default()
    };
    let report = ZeroBoundReport::evaluate(&p, &cfg)?;

    let mut applicable: Vec<ZeroRow> = report
        .entries
        .iter()
        .filter_map(|e| {
            e.value.map(|v| ZeroRow {
                name: e.name.clone(),
                kind: "bound",
                value: Some(v),
                note: None,
            })
        })
        .collect();
    applicable.push(ZeroRow {
        name: "oracle_max_modulus".into(),
        kind: "oracle",
        value: Some(report.oracle_max_modulus),
        note: Some("largest root modulus (Aberth-Ehrlich)".into()),
    });
    // Stable sort keeps report order among equal values.
    applicable.sort_by(|a, b| a.value.unwrap().total_cmp(&b.value.unwrap()));
    let mut rows = applicable;
    rows.extend(
        report
            .entries
            .iter()
            .filter(|e| e.value.is_none())
            .map(|e| ZeroRow {
                name: e.name.clone(),
                kind: "not_applicable",
                value: None,
                note: e.reason.clone(),
            }),
    );

    let format = args.common.format;
    match format {
        Format::Json => push_json(
            out,
            &ZerosOutput {
                degree: report.degree,
                coefficients: pairs(p.coeffs()),
                normalized,
                rows,
                oracle_max_modulus: report.oracle_max_modulus,
                oracle_roots: pairs(&report.oracle_roots),
            },
        ),
        _ => {
            let mut t = Table::new(vec!["name", "kind", "value", "note"]);
            for r in &rows {
                t.push(vec![
                    r.name.clone(),
                    r.kind.to_string(),
                    r.value.map_or("n/a".into(), |v| format.num(v)),
                    r.note.clone().unwrap_or_default(),
                ]);
            }
            if format == Format::Table {
                let _ = writeln!(out, "degree {}", report.degree);
            }
            out.push_str(&t.render(format));
            let mut roots = Table::new(vec!["root", "re", "im", "modulus"]);
            for (i, z) in report.oracle_roots.iter().enumerate() {
                roots.push(vec![
                    i.to_string(),
                    format.num(z.re),
                    format.num(z.im),
                    format.num(z.norm()),
                ]);
            }
            if format == Format::Table {
                out.push('\n');
            }
            out.push_str(&roots.render(format));
        }
    }
    report.verify(args.common.tol)?;
    Ok(())
}

#[derive(Serialize)]
struct WradiusOutput {
    rows: usize,
    w: f64,
    theta_star: f64,
    norm: f64,
    w_squared: f64,
    kittaneh_lower: f64,
    kittaneh_upper: f64,
    grid_size: usize,
    refinement_width: f64,
}

fn cmd_wradius(args: WradiusArgs, out: &mut String) -> CmdResult {
    check_tol(args.common.tol)?;
    let t = load_matrix(&args.matrix)?;
    t.require_square("wradius")?;
    let r = numerical_radius(&t, &RadiusConfig::default())?;
    let gram = hermitian_norm(&t.gram_left().add(&t.gram_right())?)?;
    let res = WradiusOutput {
        rows: t.rows(),
        w: r.w,
        theta_star: r.theta_star,
        norm: operator_norm(&t)?,
        w_squared: r.w * r.w,
        kittaneh_lower: 0.25 * gram,
        kittaneh_upper: 0.5 * gram,
        grid_size: r.grid_size,
        refinement_width: r.refinement_width,
    };
    let format = args.common.format;
    match format {
        Format::Json => push_json(out, &res),
        _ => {
            let mut t = Table::new(vec!["quantity", "value"]);
            for (name, v) in [
                ("w", res.w),
                ("theta_star", res.theta_star),
                ("norm", res.norm),
                ("w_squared", res.w_squared),
                ("kittaneh_lower", res.kittaneh_lower),
                ("kittaneh_upper", res.kittaneh_upper),
                ("refinement_width", res.refinement_width),
            ] {
                t.push(vec![name.into(), format.num(v)]);
            }
            t.push(vec!["grid_size".into(), res.grid_size.to_string()]);
            out.push_str(&t.render(format));
        }
    }
    SandwichResult::new(res.kittaneh_lower, res.w_squared, res.kittaneh_upper)
        .verify("kittaneh_sandwich", args.common.tol)?;
    SandwichResult::new(0.5 * res.norm, res.w, res.norm)
        .verify("basic_sandwich", args.common.tol)?;
    Ok(())
}

#[derive(Serialize)]
struct BoundRow {
    name: String,
    kind: BoundKind,
    bound: f64,
    quantity: String,
    measured: f64,
    slack: f64,
    holds: bool,
}

#[derive(Serialize)]
struct OpboundsOutput<'a> {
    blocks: Vec<(usize, usize)>,
    rows: &'a [BoundRow],
}

struct Rows {
    tol: f64,
    rows: Vec<BoundRow>,
}

impl Rows {
    fn one(&mut self, name: &str, kind: BoundKind, bound: f64, quantity: &str, measured: f64) {
        let slack = match kind {
            BoundKind::Upper => bound - measured,
            BoundKind::Lower => measured - bound,
        };
        self.rows.push(BoundRow {
            name: name.into(),
            kind,
            bound,
            quantity: quantity.into(),
            measured,
            slack,
            holds: slack >= -slack_allowance(self.tol, measured),
        });
    }

    fn sandwich(&mut self, name: &str, quantity: &str, s: SandwichResult) {
        self.one(
            &format!("{name}_lower"),
            BoundKind::Lower,
            s.lower,
            quantity,
            s.measured,
        );
        self.one(
            &format!("{name}_upper"),
            BoundKind::Upper,
            s.upper,
            quantity,
            s.measured,
        );
    }

    fn entries(&mut self, quantity: &str, entries: &[BoundEntry]) {
        for e in entries {
            self.one(&e.name, e.kind, e.bound, quantity, e.measured);
        }
    }

    /// Sandwiches and baselines that only need the full operator matrix.
    fn whole(&mut self, t: &ComplexMatrix) -> Result<(), Error> {
        self.sandwich("corollary", "w^4(T)", opbounds::corollary_sandwich(t)?);
        self.sandwich("kittaneh", "w^2(T)", opbounds::kittaneh_sandwich(t)?);
        self.sandwich("basic", "w(T)", opbounds::basic_sandwich(t)?);
        let r = opbounds::remark_improvement_check(t)?;
        self.one(
            "remark_norm",
            BoundKind::Lower,
            r.rhs,
            "||(TT*+T*T)^2+4Re(T^2)^2||",
            r.lhs,
        );
        self.one(
            "remark_w",
            BoundKind::Upper,
            r.gram_norm,
            "2w(T^2)",
            r.two_w_t2,
        );
        Ok(())
    }
}

fn is_psd(m: &ComplexMatrix) -> bool {
    m.is_square()
        && hermitian_eigenvalues(m, DEFAULT_EIG_TOL)
            .map(|ev| ev.min() >= -PSD_CLAMP * ev.max().abs().max(ev.min().abs()))
            .unwrap_or(false)
}

fn cmd_opbounds(args: OpboundsArgs, out: &mut String) -> CmdResult {
    check_tol(args.common.tol)?;
    let paths: Vec<PathBuf> = if args.matrices.is_empty() {
        match (args.x, args.y, args.z, args.w) {
            (Some(x), Some(y), None, None) => vec![x, y],
            (Some(x), Some(y), Some(z), Some(w)) => vec![x, y, z, w],
            _ => {
                return Err(Failure::usage(
                    "give --x and --y, optionally with both --z and --w",
                ))
            }
        }
    } else {
        args.matrices
    };
    if paths.len() != 2 && paths.len() != 4 {
        return Err(Failure::usage(format!(
            "expected 2 or 4 matrices, got {}",
            paths.len()
        )));
    }
    let m: Vec<ComplexMatrix> = paths
        .iter()
        .map(|p| load_matrix(p))
        .collect::<Result<_, _>>()?;

    let mut rows = Rows {
        tol: args.common.tol,
        rows: Vec::new(),
    };
    if m.len() == 2 {
        let (x, y) = (&m[0], &m[1]);
        rows.sandwich(
            "offdiag",
            "w^2([[0,X],[Y,0]])",
            opbounds::offdiag_sandwich(x, y)?,
        );
        rows.sandwich(
            "offdiag_fourth",
            "w^4([[0,X],[Y,0]])",
            opbounds::offdiag_sandwich_fourth(x, y)?,
        );
        rows.entries("w(XY)", &opbounds::product_w_bounds(x, y)?.entries);
        if x.is_square() && x.shape() == y.shape() {
            rows.entries("||X+Y||", &opbounds::sum_norm_bounds(x, y)?.entries);
            if is_psd(x) && is_psd(y) {
                let r = opbounds::positive_product_bounds(x, y)?;
                rows.entries("||X^(1/2)Y^(1/2)||^2", &r.entries);
            }
        }
        rows.whole(&ComplexMatrix::offdiag_block(x, y)?)?;
    } else {
        let b = opbounds::general2x2_bounds(&m[0], &m[1], &m[2], &m[3])?;
        let q = "w([[X,Y],[Z,W]])";
        rows.one(
            "general_2x2_upper_square",
            BoundKind::Upper,
            b.upper_square,
            q,
            b.measured,
        );
        rows.one(
            "general_2x2_upper_fourth",
            BoundKind::Upper,
            b.upper_fourth,
            q,
            b.measured,
        );
        if let Some(lo) = b.lower_square {
            rows.one(
                "general_2x2_lower_square",
                BoundKind::Lower,
                lo,
                q,
                b.measured,
            );
        }
        if let Some(lo) = b.lower_fourth {
            rows.one(
                "general_2x2_lower_fourth",
                BoundKind::Lower,
                lo,
                q,
                b.measured,
            );
        }
        rows.one(
            "general_2x2_diagonal",
            BoundKind::Lower,
            b.diagonal_w,
            q,
            b.measured,
        );
        rows.whole(&ComplexMatrix::block_2x2(&m[0], &m[1], &m[2], &m[3])?)?;
    }

    let format = args.common.format;
    match format {
        Format::Json => push_json(
            out,
            &OpboundsOutput {
                blocks: m.iter().map(|b| b.shape()).collect(),
                rows: &rows.rows,
            },
        ),
        _ => {
            let mut t = Table::new(vec![
                "name", "kind", "bound", "measured", "quantity", "slack", "holds",
            ]);
            for r in &rows.rows {
                t.push(vec![
                    r.name.clone(),
                    match r.kind {
                        BoundKind::Upper => "upper".into(),
                        BoundKind::Lower => "lower".into(),
                    },
                    format.num(r.bound),
                    format.num(r.measured),
                    r.quantity.clone(),
                    format.num(r.slack),
                    if r.holds { "yes".into() } else { "NO".into() },
                ]);
            }
            out.push_str(&t.render(format));
        }
    }
    if let Some(r) = rows.rows.iter().find(|r| !r.holds) {
        return Err(Failure {
            code: 3,
            message: format!(
                "inequality violated: {} ({} = {:e}, bound {:e})",
                r.name, r.quantity, r.measured, r.bound
            ),
        });
    }
    Ok(())
}

fn render_check(out: &mut String, summary: &HarnessSummary, format: Format) {
    if format == Format::Json {
        push_json(out, summary);
        return;
    }
    let mut t = Table::new(vec![
        "suite",
        "name",
        "trials",
        "passed",
        "failed",
        "worst_slack",
        "worst_trial",
    ]);
    for s in &summary.inequalities {
        t.push(vec![
            s.suite.to_string(),
            s.name.clone(),
            s.trials.to_string(),
            s.passed.to_string(),
            s.failed.to_string(),
            s.worst_slack.map_or("n/a".into(), |v| format.num(v)),
            s.worst_trial
                .as_ref()
                .map_or(String::new(), |r| r.trial.to_string()),
        ]);
    }
    out.push_str(&t.render(format));
    if format == Format::Table {
        let total: usize = summary.inequalities.iter().map(|s| s.trials).sum();
        let _ = writeln!(
            out,
            "{} checks, {} failures",
            total,
            summary.total_failures()
        );
    }
}

fn cmd_check(args: CheckArgs, out: &mut String) -> CmdResult {
    check_tol(args.common.tol)?;
    let cfg = HarnessConfig {
        seed: args.seed,
        trials: args.trials,
        max_dim: args.max_dim,
        tol: args.common.tol,
        suite: args.suite.into(),
    };
    cfg.validate()?;
    let threads = harness::threads_from_env()?;
    let summary = harness::run(&cfg, threads)?;
    render_check(out, &summary, args.common.format);
    if let Some(r) = summary.first_failure() {
        return Err(Failure {
            code: 3,
            message: format!("{} failures; reproducer: {r}", summary.total_failures()),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = match cli.command {
        Command::Zeros(a) => cmd_zeros(a, &mut out),
        Command::Wradius(a) => cmd_wradius(a, &mut out),
        Command::Opbounds(a) => cmd_opbounds(a, &mut out),
        Command::Check(a) => cmd_check(a, &mut out),
    };
    // A closed pipe (e.g. `| head`) is not an error of ours.
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout
        .write_all(out.as_bytes())
        .and_then(|()| stdout.flush())
    {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(1);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

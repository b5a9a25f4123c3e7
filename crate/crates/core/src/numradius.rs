//! Numerical radius `w(T) = sup { |<Tx, x>| : ||x|| = 1 }`.
//!
//! `w(T)` is the maximum over `theta` of `||Re(e^{i theta} T)||`. Since
//! `||H|| = max(lambda_max(H), -lambda_min(H))` and
//! `Re(e^{i(theta + pi)} T) = -Re(e^{i theta} T)`, it is enough to maximize
//! the support function `g(theta) = lambda_max(Re(e^{i theta} T))` over one
//! period `[0, 2 pi)`.
//!
//! `g` is continuous but generally not unimodal, so the engine scans a
//! uniform grid and then runs a golden-section refinement from every grid
//! point that is a local maximum.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::eigen::lambda_max_hermitian;
use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix};

pub const DEFAULT_GRID: usize = 1024;
pub const DEFAULT_THETA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusConfig {
    /// Number of uniformly spaced angles in the coarse scan.
    pub grid: usize,
    /// Golden-section refinement stops once the angle bracket is narrower.
    pub theta_tol: f64,
}

impl Default for RadiusConfig {
    fn default() -> Self {
        RadiusConfig {
            grid: DEFAULT_GRID,
            theta_tol: DEFAULT_THETA_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusResult {
    pub w: f64,
    /// Maximizing angle in `[0, 2 pi)`.
    pub theta_star: f64,
    pub grid_size: usize,
    /// Width of the final bracket around `theta_star`, zero when the best
    /// value came straight from the grid.
    pub refinement_width: f64,
}

/// `theta -> lambda_max(cos(theta) Re(T) - sin(theta) Im(T))`, which equals
/// `lambda_max(Re(e^{i theta} T))`.
#[derive(Debug, Clone)]
pub struct SupportFunction {
    n: usize,
    re: Vec<Complex>,
    im: Vec<Complex>,
    scratch_len: usize,
}

impl SupportFunction {
    pub fn new(t: &ComplexMatrix) -> Result<Self> {
        let n = t.require_square("support function")?;
        Ok(SupportFunction {
            n,
            re: t.real_part()?.as_slice().to_vec(),
            im: t.imag_part()?.as_slice().to_vec(),
            scratch_len: n * n,
        })
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        if self.n == 1 {
            return c * self.re[0].re - s * self.im[0].re;
        }
        let mut a = Vec::with_capacity(self.scratch_len);
        a.extend(self.re.iter().zip(&self.im).map(|(&h, &k)| h * c - k * s));
        lambda_max_hermitian(a, self.n)
    }
}

/// Support function `g(theta) = lambda_max(Re(e^{i theta} T))`.
pub fn support(t: &ComplexMatrix, theta: f64) -> Result<f64> {
    Ok(SupportFunction::new(t)?.eval(theta))
}

fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Maximizes `f` on `[a, b]` by golden-section search, returning the best
/// evaluated point, its value and the final bracket width.
fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f2 > f1 { (x2, f2) } else { (x1, f1) };
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            if x1 <= a || x1 >= x2 {
                break;
            }
            f1 = f(x1);
            if f1 > best.1 {
                best = (x1, f1);
            }
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            if x2 >= b || x2 <= x1 {
                break;
            }
            f2 = f(x2);
            if f2 > best.1 {
                best = (x2, f2);
            }
        }
    }
    (best.0, best.1, b - a)
}

/// Picks the better of two `(theta, value)` candidates: larger value, then
/// smaller angle.
fn better(cand: (f64, f64), cur: (f64, f64)) -> bool {
    cand.1 > cur.1 || (cand.1 == cur.1 && cand.0 < cur.0)
}

pub fn numerical_radius(t: &ComplexMatrix, cfg: &RadiusConfig) -> Result<RadiusResult> {
    let n = t.require_square("numerical_radius")?;
    if cfg.grid < 4 {
        return Err(Error::Config(format!(
            "radius grid must be >= 4, got {}",
            cfg.grid
        )));
    }
    if !(cfg.theta_tol > 0.0) {
        return Err(Error::Config(format!(
            "theta_tol must be positive, got {}",
            cfg.theta_tol
        )));
    }
    if n == 1 {
        let c = t[(0, 0)];
        return Ok(RadiusResult {
            w: c.norm(),
            theta_star: normalize_angle(-c.arg()),
            grid_size: cfg.grid,
            refinement_width: 0.0,
        });
    }

    let g = SupportFunction::new(t)?;
    let m = cfg.grid;
    let step = TAU / m as f64;
    let values: Vec<f64> = (0..m).map(|j| g.eval(j as f64 * step)).collect();

    let mut best = (0.0, values[0]);
    for (j, &v) in values.iter().enumerate().skip(1) {
        if better((j as f64 * step, v), best) {
            best = (j as f64 * step, v);
        }
    }
    let mut width = 0.0;

    // |g'| <= ||T||_F, so a grid value more than one Lipschitz step below the
    // best cannot hide a better maximum in its neighbourhood.
    let scale = t.frobenius_norm();
    let reach = scale * step;
    let flat = 1e-13 * scale.max(1.0);
    let grid_best = best.1;
    for j in 0..m {
        let prev = values[(j + m - 1) % m];
        let next = values[(j + 1) % m];
        let v = values[j];
        if v < prev || v < next || v - prev.min(next) <= flat || v + reach < grid_best {
            continue;
        }
        let center = j as f64 * step;
        let (theta, value, w) =
            golden_section_max(|x| g.eval(x), center - step, center + step, cfg.theta_tol);
        let cand = (normalize_angle(theta), value);
        if better(cand, best) {
            best = cand;
            width = w;
        }
    }

    Ok(RadiusResult {
        w: best.1.max(0.0),
        theta_star: best.0,
        grid_size: m,
        refinement_width: width,
    })
}

pub fn numerical_radius_default(t: &ComplexMatrix) -> Result<f64> {
    numerical_radius(t, &RadiusConfig::default()).map(|r| r.w)
}

/// Brute-force check: maximum of the support function over `grid` uniformly
/// spaced angles, without refinement.
pub fn numerical_radius_oracle(t: &ComplexMatrix, grid: usize) -> Result<f64> {
    t.require_square("numerical_radius_oracle")?;
    if grid < 4 {
        return Err(Error::Config(format!(
            "oracle grid must be >= 4, got {grid}"
        )));
    }
    let g = SupportFunction::new(t)?;
    let step = TAU / grid as f64;
    Ok((0..grid)
        .map(|j| g.eval(j as f64 * step))
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0))
}

/// `cos(pi / (n + 1))`, the numerical radius of the `n x n` lower shift.
pub fn shift_radius(n: usize) -> f64 {
    (PI / (n as f64 + 1.0)).cos()
}

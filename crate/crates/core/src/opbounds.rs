//! Numerical-radius inequalities for 2x2 operator matrices and the norm and
//! numerical-radius bounds that follow from them.
//!
//! Every function returns both sides of an inequality together with the
//! measured quantity, so callers can check it. Report entries use these
//! names:
//!
//! | name | bounds |
//! |------|--------|
//! | `sum_norm_square`, `sum_norm_fourth` | `\|\|X+Y\|\|` from the off-diagonal sandwich and its fourth-power form |
//! | `sum_norm_abu_omar_kittaneh`, `sum_norm_shebrawi` | `\|\|X+Y\|\|`, baselines built from `\|X\|^{1/2}\|Y\|^{1/2}` |
//! | `product_w_square`, `product_w_fourth` | `w(XY)` |
//! | `positive_product_square`, `positive_product_fourth` | `\|\|X^{1/2} Y^{1/2}\|\|^2` |

use serde::Serialize;

use crate::eigen::{crawford_psd, hermitian_norm, operator_norm, psd_sqrt, DEFAULT_EIG_TOL};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::numradius::numerical_radius_default as w;

/// Relative slack allowed when checking an inequality.
pub const DEFAULT_SLACK_TOL: f64 = 1e-8;

/// Absolute slack for a comparison involving `measured`.
pub fn slack_allowance(tol: f64, measured: f64) -> f64 {
    tol * measured.abs().max(1.0)
}

/// `lower <= measured <= upper`, with signed slacks
/// `slack_low = measured - lower` and `slack_high = upper - measured`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichResult {
    pub lower: f64,
    pub measured: f64,
    pub upper: f64,
    pub slack_low: f64,
    pub slack_high: f64,
}

impl SandwichResult {
    pub fn new(lower: f64, measured: f64, upper: f64) -> Self {
        SandwichResult {
            lower,
            measured,
            upper,
            slack_low: measured - lower,
            slack_high: upper - measured,
        }
    }

    /// Smaller of the two slacks, divided by the comparison scale.
    pub fn worst_relative_slack(&self) -> f64 {
        self.slack_low.min(self.slack_high) / self.measured.abs().max(1.0)
    }

    pub fn holds(&self, tol: f64) -> bool {
        let allowance = slack_allowance(tol, self.measured);
        self.slack_low >= -allowance && self.slack_high >= -allowance
    }

    pub fn verify(self, name: &str, tol: f64) -> Result<Self> {
        if self.holds(tol) {
            Ok(self)
        } else {
            Err(Error::BoundViolation {
                name: name.to_string(),
                detail: format!(
                    "expected {:e} <= {:e} <= {:e}",
                    self.lower, self.measured, self.upper
                ),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    pub bound: f64,
    pub measured_name: String,
    pub measured: f64,
}

impl BoundEntry {
    fn upper(name: &str, bound: f64, measured_name: &str, measured: f64) -> Self {
        BoundEntry {
            name: name.to_string(),
            kind: BoundKind::Upper,
            bound,
            measured_name: measured_name.to_string(),
            measured,
        }
    }

    /// Signed margin by which the bound holds (negative when violated).
    pub fn slack(&self) -> f64 {
        match self.kind {
            BoundKind::Upper => self.bound - self.measured,
            BoundKind::Lower => self.measured - self.bound,
        }
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack() >= -slack_allowance(tol, self.measured)
    }
}

/// Named bound values with the ground-truth quantities they bound.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct OpBoundReport {
    pub entries: Vec<BoundEntry>,
}

impl OpBoundReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.bound)
    }

    pub fn measured(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.measured_name == name)
            .map(|e| e.measured)
    }

    pub fn extend(&mut self, other: OpBoundReport) {
        self.entries.extend(other.entries);
    }

    pub fn verify(&self, tol: f64) -> Result<()> {
        match self.entries.iter().find(|e| !e.holds(tol)) {
            None => Ok(()),
            Some(e) => Err(Error::BoundViolation {
                name: e.name.clone(),
                detail: format!(
                    "{} = {:e} is not bounded by {:e}",
                    e.measured_name, e.measured, e.bound
                ),
            }),
        }
    }
}

/// `(||X X* + Y* Y||, ||X* X + Y Y*||)`, the two norms shared by most bounds.
fn cross_gram_norms(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<(f64, f64)> {
    let a = x.gram_left().add(&y.gram_right())?;
    let b = x.gram_right().add(&y.gram_left())?;
    Ok((hermitian_norm(&a)?, hermitian_norm(&b)?))
}

fn check_offdiag_shapes(x: &ComplexMatrix, y: &ComplexMatrix, op: &'static str) -> Result<()> {
    if y.shape() != (x.cols(), x.rows()) {
        return Err(Error::DimensionMismatch {
            op,
            left: x.shape(),
            right: y.shape(),
        });
    }
    Ok(())
}

/// `1/4 max{||XX*+Y*Y||, ||X*X+YY*||} <= w^2([[0,X],[Y,0]]) <= 1/2 max{...}`.
pub fn offdiag_sandwich(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<SandwichResult> {
    check_offdiag_shapes(x, y, "offdiag_sandwich")?;
    let (a, b) = cross_gram_norms(x, y)?;
    let lower = 0.25 * a.max(b);
    let wt = w(&ComplexMatrix::offdiag_block(x, y)?)?;
    Ok(SandwichResult::new(lower, wt * wt, 2.0 * lower))
}

/// Fourth-power sandwich for `w^4([[0,X],[Y,0]])`:
/// lower `max{||A0||, ||B0||}/16` with `A0 = (XX*+Y*Y)^2 + 4 Re(XY)^2`,
/// `B0 = (X*X+YY*)^2 + 4 Re(YX)^2`; upper
/// `max{||XX*+Y*Y||^2 + 4 w^2(XY), ||X*X+YY*||^2 + 4 w^2(YX)} / 8`.
pub fn offdiag_sandwich_fourth(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<SandwichResult> {
    check_offdiag_shapes(x, y, "offdiag_sandwich_fourth")?;
    let a = x.gram_left().add(&y.gram_right())?;
    let b = x.gram_right().add(&y.gram_left())?;
    let xy = x.mul(y)?;
    let yx = y.mul(x)?;

    let fourth_term = |gram: &ComplexMatrix, prod: &ComplexMatrix| -> Result<f64> {
        let re = prod.real_part()?;
        let m = gram.square()?.add(&re.square()?.scale_real(4.0))?;
        hermitian_norm(&m)
    };
    let lower = fourth_term(&a, &xy)?.max(fourth_term(&b, &yx)?) / 16.0;

    let (na, nb) = (hermitian_norm(&a)?, hermitian_norm(&b)?);
    let (wxy, wyx) = (w(&xy)?, w(&yx)?);
    let upper = (na * na + 4.0 * wxy * wxy).max(nb * nb + 4.0 * wyx * wyx) / 8.0;

    let wt = w(&ComplexMatrix::offdiag_block(x, y)?)?;
    Ok(SandwichResult::new(lower, wt.powi(4), upper))
}

/// `||(TT*+T*T)^2 + 4 Re(T^2)^2|| / 16 <= w^4(T) <= ||TT*+T*T||^2/8 + w^2(T^2)/2`.
pub fn corollary_sandwich(t: &ComplexMatrix) -> Result<SandwichResult> {
    t.require_square("corollary_sandwich")?;
    let gram = t.gram_left().add(&t.gram_right())?;
    let t2 = t.square()?;
    let re2 = t2.real_part()?;
    let inner = gram.square()?.add(&re2.square()?.scale_real(4.0))?;
    let lower = hermitian_norm(&inner)? / 16.0;
    let ng = hermitian_norm(&gram)?;
    let wt2 = w(&t2)?;
    let upper = ng * ng / 8.0 + 0.5 * wt2 * wt2;
    Ok(SandwichResult::new(lower, w(t)?.powi(4), upper))
}

/// Both sides of the two inequalities showing that the corollary sandwich
/// improves on the Kittaneh sandwich.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemarkCheck {
    /// `||(TT*+T*T)^2 + 4 Re(T^2)^2||`
    pub lhs: f64,
    /// `||TT*+T*T||^2 + 4 m(Re(T^2)^2)`, `m` the Crawford number.
    pub rhs: f64,
    /// `2 w(T^2)`
    pub two_w_t2: f64,
    /// `||TT*+T*T||`
    pub gram_norm: f64,
}

impl RemarkCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs - self.rhs >= -slack_allowance(tol, self.lhs)
            && self.gram_norm - self.two_w_t2 >= -slack_allowance(tol, self.two_w_t2)
    }

    /// Smallest relative margin of the two inequalities.
    pub fn worst_relative_slack(&self) -> f64 {
        let first = (self.lhs - self.rhs) / self.lhs.abs().max(1.0);
        let second = (self.gram_norm - self.two_w_t2) / self.two_w_t2.abs().max(1.0);
        first.min(second)
    }
}

pub fn remark_improvement_check(t: &ComplexMatrix) -> Result<RemarkCheck> {
    t.require_square("remark_improvement_check")?;
    let gram = t.gram_left().add(&t.gram_right())?;
    let t2 = t.square()?;
    let re2_sq = t2.real_part()?.square()?;
    let lhs = hermitian_norm(&gram.square()?.add(&re2_sq.scale_real(4.0))?)?;
    let gram_norm = hermitian_norm(&gram)?;
    let rhs = gram_norm * gram_norm + 4.0 * crawford_psd(&re2_sq)?;
    Ok(RemarkCheck {
        lhs,
        rhs,
        two_w_t2: 2.0 * w(&t2)?,
        gram_norm,
    })
}

/// Kittaneh's sandwich `||T*T+TT*||/4 <= w^2(T) <= ||T*T+TT*||/2`.
pub fn kittaneh_sandwich(t: &ComplexMatrix) -> Result<SandwichResult> {
    t.require_square("kittaneh_sandwich")?;
    let n = hermitian_norm(&t.gram_left().add(&t.gram_right())?)?;
    let wt = w(t)?;
    Ok(SandwichResult::new(0.25 * n, wt * wt, 0.5 * n))
}

/// `||T||/2 <= w(T) <= ||T||`.
pub fn basic_sandwich(t: &ComplexMatrix) -> Result<SandwichResult> {
    t.require_square("basic_sandwich")?;
    let n = operator_norm(t)?;
    Ok(SandwichResult::new(0.5 * n, w(t)?, n))
}

/// `||P^{1/2} Q^{1/2}||` for PSD `P`, `Q`.
fn sqrt_product_norm(p: &ComplexMatrix, q: &ComplexMatrix) -> Result<f64> {
    let ps = psd_sqrt(p, DEFAULT_EIG_TOL)?;
    let qs = psd_sqrt(q, DEFAULT_EIG_TOL)?;
    operator_norm(&ps.mul(&qs)?)
}

/// Bounds on `||X + Y||` for square `X`, `Y` of equal shape.
pub fn sum_norm_bounds(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<OpBoundReport> {
    x.require_square("sum_norm_bounds")?;
    if x.shape() != y.shape() {
        return Err(Error::DimensionMismatch {
            op: "sum_norm_bounds",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let measured = operator_norm(&x.add(y)?)?;
    const M: &str = "sum_norm";

    // ||XX*+YY*|| and ||X*X+Y*Y|| are the cross Gram norms of (X, Y*).
    let ystar = y.adjoint();
    let (a, b) = cross_gram_norms(x, &ystar)?;
    let square = (2.0 * a.max(b)).sqrt();

    let wxy = w(&x.mul(&ystar)?)?;
    let wyx = w(&ystar.mul(x)?)?;
    let fourth = (2.0 * (a * a + 4.0 * wxy * wxy).max(b * b + 4.0 * wyx * wyx)).powf(0.25);

    let (abs_x, abs_y) = (x.gram_right(), y.gram_right());
    let (abs_xs, abs_ys) = (x.gram_left(), y.gram_left());
    // |X|^{1/2} = (X*X)^{1/4}
    let right = sqrt_product_norm(
        &psd_sqrt(&abs_x, DEFAULT_EIG_TOL)?,
        &psd_sqrt(&abs_y, DEFAULT_EIG_TOL)?,
    )?;
    let left = sqrt_product_norm(
        &psd_sqrt(&abs_xs, DEFAULT_EIG_TOL)?,
        &psd_sqrt(&abs_ys, DEFAULT_EIG_TOL)?,
    )?;
    let norm_max = operator_norm(x)?.max(operator_norm(y)?);
    let abu_omar_kittaneh = norm_max + right.max(left);
    let shebrawi = norm_max + 0.5 * (right + left);

    Ok(OpBoundReport {
        entries: vec![
            BoundEntry::upper("sum_norm_square", square, M, measured),
            BoundEntry::upper("sum_norm_fourth", fourth, M, measured),
            BoundEntry::upper("sum_norm_abu_omar_kittaneh", abu_omar_kittaneh, M, measured),
            BoundEntry::upper("sum_norm_shebrawi", shebrawi, M, measured),
        ],
    })
}

/// Upper bounds for `w(XY)`, both expressed in units of `w(XY)`.
fn product_bounds(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<(f64, f64)> {
    let (a, b) = cross_gram_norms(x, y)?;
    let wxy = w(&x.mul(y)?)?;
    let wyx = w(&y.mul(x)?)?;
    let square = 0.5 * a.max(b);
    let fourth = ((a * a + 4.0 * wxy * wxy).max(b * b + 4.0 * wyx * wyx) / 8.0).sqrt();
    Ok((square, fourth))
}

/// Bounds on `w(XY)` for `X` of shape `n1 x n2` and `Y` of shape `n2 x n1`.
pub fn product_w_bounds(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<OpBoundReport> {
    check_offdiag_shapes(x, y, "product_w_bounds")?;
    let measured = w(&x.mul(y)?)?;
    let (square, fourth) = product_bounds(x, y)?;
    const M: &str = "product_w";
    Ok(OpBoundReport {
        entries: vec![
            BoundEntry::upper("product_w_square", square, M, measured),
            BoundEntry::upper("product_w_fourth", fourth, M, measured),
        ],
    })
}

/// Bounds on `||X^{1/2} Y^{1/2}||^2` for positive semidefinite `X`, `Y`.
pub fn positive_product_bounds(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<OpBoundReport> {
    x.require_square("positive_product_bounds")?;
    if x.shape() != y.shape() {
        return Err(Error::DimensionMismatch {
            op: "positive_product_bounds",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let n = sqrt_product_norm(x, y)?;
    let measured = n * n;
    let (square, fourth) = product_bounds(x, y)?;
    const M: &str = "positive_product";
    Ok(OpBoundReport {
        entries: vec![
            BoundEntry::upper("positive_product_square", square, M, measured),
            BoundEntry::upper("positive_product_fourth", fourth, M, measured),
        ],
    })
}

/// Estimates of `w([[X, Y], [Z, W]])` from the diagonal blocks and the
/// off-diagonal pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct General2x2Bounds {
    pub measured: f64,
    pub upper_square: f64,
    pub upper_fourth: f64,
    /// Present only when the diagonal blocks have equal size.
    pub lower_square: Option<f64>,
    pub lower_fourth: Option<f64>,
    /// `max{w(X), w(W)}`
    pub diagonal_w: f64,
}

impl General2x2Bounds {
    pub fn square(&self) -> Option<SandwichResult> {
        self.lower_square
            .map(|lo| SandwichResult::new(lo, self.measured, self.upper_square))
    }

    pub fn fourth(&self) -> Option<SandwichResult> {
        self.lower_fourth
            .map(|lo| SandwichResult::new(lo, self.measured, self.upper_fourth))
    }

    pub fn holds(&self, tol: f64) -> bool {
        let allow = slack_allowance(tol, self.measured);
        let upper_ok = self.upper_square - self.measured >= -allow
            && self.upper_fourth - self.measured >= -allow;
        let lower_ok = [self.lower_square, self.lower_fourth]
            .iter()
            .flatten()
            .all(|&lo| self.measured - lo >= -allow);
        upper_ok && lower_ok
    }

    pub fn worst_relative_slack(&self) -> f64 {
        let mut worst = (self.upper_square - self.measured).min(self.upper_fourth - self.measured);
        for lo in [self.lower_square, self.lower_fourth].into_iter().flatten() {
            worst = worst.min(self.measured - lo);
        }
        worst / self.measured.abs().max(1.0)
    }
}

/// `X` is `n1 x n1`, `W` is `n2 x n2`, `Y` is `n1 x n2` and `Z` is `n2 x n1`.
/// Lower bounds are only produced when `n1 == n2`.
pub fn general2x2_bounds(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    z: &ComplexMatrix,
    wb: &ComplexMatrix,
) -> Result<General2x2Bounds> {
    x.require_square("general2x2_bounds (X)")?;
    wb.require_square("general2x2_bounds (W)")?;
    let block = ComplexMatrix::block_2x2(x, y, z, wb)?;
    let measured = w(&block)?;
    let diagonal_w = w(x)?.max(w(wb)?);

    let a = y.gram_left().add(&z.gram_right())?;
    let b = y.gram_right().add(&z.gram_left())?;
    let (na, nb) = (hermitian_norm(&a)?, hermitian_norm(&b)?);
    let yz = y.mul(z)?;
    let zy = z.mul(y)?;
    let (wyz, wzy) = (w(&yz)?, w(&zy)?);

    let upper_square = diagonal_w + (0.5 * na.max(nb)).sqrt();
    let alpha = na * na + 4.0 * wyz * wyz;
    let beta = nb * nb + 4.0 * wzy * wzy;
    let upper_fourth = diagonal_w + (alpha.max(beta) / 8.0).powf(0.25);

    let (lower_square, lower_fourth) = if x.rows() == wb.rows() {
        let term = |gram: &ComplexMatrix, prod: &ComplexMatrix| -> Result<f64> {
            let re = prod.real_part()?;
            hermitian_norm(&gram.square()?.add(&re.square()?.scale_real(4.0))?)
        };
        let a0 = term(&a, &yz)?;
        let b0 = term(&b, &zy)?;
        (
            Some(diagonal_w.max((0.25 * na.max(nb)).sqrt())),
            Some(diagonal_w.max((a0.max(b0) / 16.0).powf(0.25))),
        )
    } else {
        (None, None)
    };

    Ok(General2x2Bounds {
        measured,
        upper_square,
        upper_fourth,
        lower_square,
        lower_fourth,
        diagonal_w,
    })
}

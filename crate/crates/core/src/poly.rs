//! Monic polynomials, their companion matrices, a simultaneous root finder
//! used as ground truth, and the translation that removes the `z^{n-1}` term.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix};

/// Largest degree for which binomial coefficients are computed exactly.
pub const MAX_SHIFT_DEGREE: usize = 64;
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_ROOT_MAX_ITER: usize = 200;
/// Angular offset of the initial root guesses, breaks symmetric starts.
const START_ANGLE: f64 = 0.4;

/// `p(z) = z^n + a_{n-1} z^{n-1} + ... + a_1 z + a_0`, stored as
/// `[a_0, ..., a_{n-1}]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex>,
}

impl MonicPolynomial {
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeTooSmall {
                what: "a monic polynomial",
                degree: 0,
                min: 1,
            });
        }
        if let Some((index, value)) = coeffs.iter().enumerate().find(|(_, z)| !z.is_finite()) {
            return Err(Error::NonFinite {
                index,
                value: value.to_string(),
            });
        }
        Ok(MonicPolynomial { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        MonicPolynomial::new(coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// Divides `[a_0, ..., a_n]` by `a_n`. The flag reports whether `a_n`
    /// differed from one.
    pub fn normalized(all: &[Complex]) -> Result<(Self, bool)> {
        let (&lead, rest) = all.split_last().ok_or(Error::DegreeTooSmall {
            what: "a polynomial",
            degree: 0,
            min: 1,
        })?;
        if !lead.is_finite() {
            return Err(Error::NonFinite {
                index: all.len() - 1,
                value: lead.to_string(),
            });
        }
        if lead.norm() == 0.0 {
            return Err(Error::ZeroLeading);
        }
        let one = Complex::new(1.0, 0.0);
        let p = MonicPolynomial::new(rest.iter().map(|&a| a / lead).collect())?;
        Ok((p, lead != one))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `[a_0, ..., a_{n-1}]`
    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// `a_k` for `k <= n`, with `a_n = 1`.
    pub fn coeff(&self, k: usize) -> Complex {
        if k == self.degree() {
            Complex::new(1.0, 0.0)
        } else {
            self.coeffs[k]
        }
    }

    /// `|a_k|` for `k < n`.
    pub fn abs_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|a| a.norm()).collect()
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(1.0, 0.0), |acc, &a| acc * z + a)
    }

    /// `(p(z), p'(z))` by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex) -> (Complex, Complex) {
        let mut p = Complex::new(1.0, 0.0);
        let mut dp = Complex::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// `sum_k |a_k| |z|^k` including the leading term; the scale of the
    /// rounding error in `eval`.
    pub fn abs_eval(&self, z: Complex) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(1.0, |acc, a| acc * r + a.norm())
    }

    /// Frobenius companion matrix: first row `(-a_{n-1}, ..., -a_0)`, ones on
    /// the subdiagonal.
    pub fn companion(&self) -> ComplexMatrix {
        let n = self.degree();
        let mut c = ComplexMatrix::lower_shift(n);
        for j in 0..n {
            c[(0, j)] = -self.coeffs[n - 1 - j];
        }
        c
    }
}

fn sort_roots(roots: &mut [Complex]) {
    roots.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(a.arg().total_cmp(&b.arg()))
    });
}

/// All roots of `p` by the Aberth-Ehrlich simultaneous iteration.
///
/// A root estimate `z` is accepted once
/// `|p(z)| <= tol * (1 + sum_k |a_k| |z|^k)`. Roots are returned sorted by
/// modulus (descending), then argument (ascending).
pub fn aberth_roots(p: &MonicPolynomial, tol: f64, max_iter: usize) -> Result<Vec<Complex>> {
    let n = p.degree();
    let radius = 1.0 + p.abs_coeffs().iter().cloned().fold(0.0, f64::max);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| Complex::from_polar(radius, TAU * k as f64 / n as f64 + START_ANGLE))
        .collect();
    let accepted = |z: Complex, value: Complex| value.norm() <= tol * (1.0 + p.abs_eval(z));

    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < max_iter && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (value, deriv) = p.eval_with_derivative(z[i]);
            if accepted(z[i], value) {
                done[i] = true;
                continue;
            }
            let ratio = if deriv.norm() == 0.0 {
                // Stationary point: nudge off it.
                Complex::new(1e-8 * (1.0 + z[i].norm()), 0.0)
            } else {
                value / deriv
            };
            let repulsion: Complex = (0..n)
                .filter(|&j| j != i && z[j] != z[i])
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let denom = Complex::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 {
                ratio
            } else {
                ratio / denom
            };
            if step.is_finite() {
                z[i] -= step;
            }
        }
    }

    let residual_ratio = |z: Complex| p.eval(z).norm() / (1.0 + p.abs_eval(z));
    if done.iter().any(|d| !d) {
        let worst = z.iter().map(|&r| residual_ratio(r)).fold(0.0, f64::max);
        if worst > tol {
            return Err(Error::RootsNoConvergence {
                iterations,
                residual: worst,
            });
        }
    }

    // One polishing pass, kept only where it lowers the residual.
    for i in 0..n {
        let (value, deriv) = p.eval_with_derivative(z[i]);
        if deriv.norm() == 0.0 || value.norm() == 0.0 {
            continue;
        }
        let ratio = value / deriv;
        let repulsion: Complex = (0..n)
            .filter(|&j| j != i && z[j] != z[i])
            .map(|j| (z[i] - z[j]).inv())
            .sum();
        let candidate = z[i] - ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
        if candidate.is_finite() && p.eval(candidate).norm() < value.norm() {
            z[i] = candidate;
        }
    }

    sort_roots(&mut z);
    Ok(z)
}

pub fn aberth_roots_default(p: &MonicPolynomial) -> Result<Vec<Complex>> {
    aberth_roots(p, DEFAULT_ROOT_TOL, DEFAULT_ROOT_MAX_ITER)
}

/// Coefficients of `q(eta) = p(eta + shift)` with `shift = -a_{n-1}/n`,
/// which has no `eta^{n-1}` term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftedCoefficients {
    /// `alpha_0, ..., alpha_{n-2}`
    pub alphas: Vec<Complex>,
    pub shift: Complex,
    /// `sum_r |alpha_r|^2` over `r = 0..n-2`
    pub alpha_sum: f64,
}

impl ShiftedCoefficients {
    /// `q` as a monic polynomial, with the vanished `eta^{n-1}` coefficient
    /// restored as zero.
    pub fn polynomial(&self) -> MonicPolynomial {
        let mut coeffs = self.alphas.clone();
        coeffs.push(Complex::new(0.0, 0.0));
        MonicPolynomial { coeffs }
    }
}

/// Row `n` of Pascal's triangle up to `n = MAX_SHIFT_DEGREE`, exact.
fn binomial_table(n: usize) -> Result<Vec<Vec<u64>>> {
    if n > MAX_SHIFT_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: MAX_SHIFT_DEGREE,
        });
    }
    let mut rows: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![1u64; k + 1];
        for r in 1..k {
            row[r] = prev[r - 1]
                .checked_add(prev[r])
                .ok_or(Error::DegreeTooLarge {
                    degree: n,
                    max: MAX_SHIFT_DEGREE,
                })?;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// `alpha_r = sum_{k=r}^{n} C(k, r) shift^{k-r} a_k`, `a_n = 1`.
pub fn shift_coefficients(p: &MonicPolynomial) -> Result<ShiftedCoefficients> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall {
            what: "the coefficient shift",
            degree: n,
            min: 2,
        });
    }
    let binom = binomial_table(n)?;
    let shift = -p.coeff(n - 1) / n as f64;
    let mut powers = vec![Complex::new(1.0, 0.0); n + 1];
    for k in 1..=n {
        powers[k] = powers[k - 1] * shift;
    }
    let alpha = |r: usize| -> Complex {
        (r..=n)
            .map(|k| powers[k - r] * p.coeff(k) * binom[k][r] as f64)
            .sum()
    };

    // alpha_{n-1} = a_{n-1} + n * shift vanishes by construction.
    let vanished = alpha(n - 1);
    let scale = 1.0 + p.abs_coeffs().iter().sum::<f64>();
    debug_assert!(vanished.norm() <= 1e-12 * scale, "alpha_(n-1) = {vanished}");

    let alphas: Vec<Complex> = (0..n - 1).map(alpha).collect();
    let alpha_sum = alphas.iter().map(|a| a.norm_sqr()).sum();
    Ok(ShiftedCoefficients {
        alphas,
        shift,
        alpha_sum,
    })
}

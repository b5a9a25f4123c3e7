//! Hermitian eigenvalue problems.
//!
//! The general solver is cyclic complex Jacobi. The numerical-radius search
//! evaluates only the largest eigenvalue, thousands of times per matrix, and
//! uses [`largest_eigenvalue`] instead: Householder reduction to a real
//! symmetric tridiagonal followed by Sturm-sequence bisection.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix};

/// Default Jacobi convergence tolerance, relative to the Frobenius norm.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;
/// Asymmetry above this fraction of the Frobenius norm is rejected; below it
/// the input is symmetrized.
pub const HERMITIAN_TOL: f64 = 1e-8;
/// Maximum number of Jacobi sweeps.
pub const SWEEP_CAP: usize = 100;
/// Negative eigenvalues down to this fraction of the spectral norm are
/// treated as round-off and clamped to zero.
pub const PSD_CLAMP: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Largest off-diagonal magnitude left when iteration stopped.
    pub offdiag_residual: f64,
}

impl HermitianEigen {
    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }
}

/// Eigenvalues and unitary eigenvectors (columns of `vectors`, in the order
/// of `values`).
#[derive(Debug, Clone)]
pub struct HermitianEigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub offdiag_residual: f64,
}

/// Checks the Hermitian precondition and returns `(M + M*)/2`.
fn symmetrized(m: &ComplexMatrix, op: &'static str) -> Result<ComplexMatrix> {
    m.require_square(op)?;
    let allowed = HERMITIAN_TOL * m.frobenius_norm();
    let asymmetry = m.hermitian_asymmetry()?;
    if asymmetry > allowed {
        return Err(Error::NotHermitian { asymmetry, allowed });
    }
    m.real_part()
}

struct Jacobi {
    n: usize,
    a: Vec<Complex>,
    v: Option<Vec<Complex>>,
}

impl Jacobi {
    /// Applies `A <- U* A U` (and `V <- V U`) for the unitary acting on
    /// coordinates `p < q` that annihilates `A[p][q]`.
    fn rotate(&mut self, p: usize, q: usize) {
        let n = self.n;
        let apq = self.a[p * n + q];
        let r = apq.norm();
        let phase = apq / r; // e^{i phi}
        let app = self.a[p * n + p].re;
        let aqq = self.a[q * n + q].re;

        let theta = (aqq - app) / (2.0 * r);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            let sign = if theta < 0.0 { -1.0 } else { 1.0 };
            sign / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;

        let u_pp = Complex::new(c, 0.0);
        let u_pq = Complex::new(s, 0.0);
        let u_qp = -phase.conj() * s;
        let u_qq = phase.conj() * c;

        for k in 0..n {
            let akp = self.a[k * n + p];
            let akq = self.a[k * n + q];
            self.a[k * n + p] = akp * u_pp + akq * u_qp;
            self.a[k * n + q] = akp * u_pq + akq * u_qq;
        }
        for k in 0..n {
            let apk = self.a[p * n + k];
            let aqk = self.a[q * n + k];
            self.a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
            self.a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
        }
        self.a[p * n + q] = Complex::new(0.0, 0.0);
        self.a[q * n + p] = Complex::new(0.0, 0.0);
        self.a[p * n + p] = Complex::new(app - t * r, 0.0);
        self.a[q * n + q] = Complex::new(aqq + t * r, 0.0);

        if let Some(v) = self.v.as_mut() {
            for k in 0..n {
                let vkp = v[k * n + p];
                let vkq = v[k * n + q];
                v[k * n + p] = vkp * u_pp + vkq * u_qp;
                v[k * n + q] = vkp * u_pq + vkq * u_qq;
            }
        }
    }

    fn max_offdiag(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max(self.a[i * n + j].norm());
            }
        }
        worst
    }

    fn run(&mut self, threshold: f64) -> Result<f64> {
        let n = self.n;
        for _ in 0..SWEEP_CAP {
            let residual = self.max_offdiag();
            if residual <= threshold {
                return Ok(residual);
            }
            for p in 0..n {
                for q in p + 1..n {
                    if self.a[p * n + q].norm() > threshold {
                        self.rotate(p, q);
                    }
                }
            }
        }
        let residual = self.max_offdiag();
        if residual <= threshold {
            Ok(residual)
        } else {
            Err(Error::NoConvergence {
                sweeps: SWEEP_CAP,
                residual,
            })
        }
    }
}

fn jacobi(
    m: &ComplexMatrix,
    tol: f64,
    vectors: bool,
    op: &'static str,
) -> Result<HermitianEigenDecomposition> {
    let h = symmetrized(m, op)?;
    let n = h.rows();
    let threshold = tol * h.frobenius_norm();
    let mut solver = Jacobi {
        n,
        a: h.as_slice().to_vec(),
        v: vectors.then(|| ComplexMatrix::identity(n).as_slice().to_vec()),
    };
    let offdiag_residual = solver.run(threshold)?;

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| solver.a[i * n + i].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();

    let vectors = match solver.v {
        Some(v) => {
            let mut sorted = vec![Complex::new(0.0, 0.0); n * n];
            for (col, &src) in order.iter().enumerate() {
                for row in 0..n {
                    sorted[row * n + col] = v[row * n + src];
                }
            }
            ComplexMatrix::from_parts(n, n, sorted)
        }
        None => ComplexMatrix::zeros(1, 1),
    };
    Ok(HermitianEigenDecomposition {
        values,
        vectors,
        offdiag_residual,
    })
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic complex Jacobi.
///
/// The input is symmetrized first; asymmetry beyond [`HERMITIAN_TOL`] times
/// the Frobenius norm is an error. Iteration stops once every off-diagonal
/// entry is below `tol * ||M||_F`.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let d = jacobi(m, tol, false, "hermitian_eigenvalues")?;
    Ok(HermitianEigen {
        values: d.values,
        offdiag_residual: d.offdiag_residual,
    })
}

pub fn hermitian_eigen_decomposition(
    m: &ComplexMatrix,
    tol: f64,
) -> Result<HermitianEigenDecomposition> {
    jacobi(m, tol, true, "hermitian_eigen_decomposition")
}

/// Largest eigenvalue of a Hermitian matrix via tridiagonalization and
/// bisection.
pub fn largest_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    let h = symmetrized(m, "largest_eigenvalue")?;
    Ok(lambda_max_hermitian(h.as_slice().to_vec(), h.rows()))
}

/// Reduces a Hermitian matrix (row-major, consumed) to a real symmetric
/// tridiagonal with the same spectrum. Returns `(diagonal, |subdiagonal|)`.
///
/// Only the lower triangle is read, and the matrix is assumed Hermitian.
pub(crate) fn tridiagonalize(mut a: Vec<Complex>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let zero = Complex::new(0.0, 0.0);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];
    for k in 0..n.saturating_sub(1) {
        d[k] = a[k * n + k].re;
        let m = n - k - 1;
        let x0 = a[(k + 1) * n + k];
        let xnorm = (k + 1..n)
            .map(|i| a[i * n + k].norm_sqr())
            .sum::<f64>()
            .sqrt();
        e[k] = xnorm;
        if m == 1 || xnorm == 0.0 {
            continue;
        }
        // v = x - alpha e1 with alpha = -phase(x0) |x|, so H x = alpha e1.
        let phase = if x0.norm() == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let v = &mut v[..m];
        for (i, vi) in v.iter_mut().enumerate() {
            *vi = a[(k + 1 + i) * n + k];
        }
        v[0] += phase * xnorm;
        let tau = 1.0 / (xnorm * (xnorm + x0.norm()));

        // p = tau * S v with S the trailing block (Hermitian, lower triangle).
        let p = &mut p[..m];
        for i in 0..m {
            let mut acc = zero;
            for (j, &vj) in v.iter().enumerate() {
                let (r, c) = (k + 1 + i, k + 1 + j);
                let s = if i >= j {
                    a[r * n + c]
                } else {
                    a[c * n + r].conj()
                };
                acc += s * vj;
            }
            p[i] = acc * tau;
        }
        let vp: f64 = v
            .iter()
            .zip(p.iter())
            .map(|(vi, pi)| (vi.conj() * pi).re)
            .sum();
        let kappa = 0.5 * tau * vp;
        for (pi, &vi) in p.iter_mut().zip(v.iter()) {
            *pi -= vi * kappa;
        }
        // S <- S - v q* - q v*, lower triangle only.
        for i in 0..m {
            for j in 0..=i {
                let idx = (k + 1 + i) * n + (k + 1 + j);
                a[idx] -= v[i] * p[j].conj() + p[i] * v[j].conj();
            }
        }
    }
    if n > 0 {
        d[n - 1] = a[(n - 1) * n + (n - 1)].re;
    }
    (d, e)
}

/// Number of eigenvalues of the symmetric tridiagonal `(d, e)` strictly
/// below `x`.
fn sturm_count(d: &[f64], e2: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        q = d[i] - x - e2[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of a symmetric tridiagonal matrix by bisection.
pub(crate) fn tridiagonal_lambda_max(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    if n == 1 {
        return d[0];
    }
    let e2: Vec<f64> = e.iter().map(|x| x * x).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius = if i > 0 { e[i - 1] } else { 0.0 } + if i + 1 < n { e[i] } else { 0.0 };
        lo = lo.min(d[i] - radius);
        hi = hi.max(d[i] + radius);
    }
    let scale = lo.abs().max(hi.abs());
    if scale == 0.0 {
        return 0.0;
    }
    let pivmin = f64::MIN_POSITIVE * e2.iter().cloned().fold(1.0, f64::max);
    // Widen slightly so the Gershgorin endpoints themselves bracket.
    let pad = 2.0 * f64::EPSILON * scale;
    lo -= pad;
    hi += pad;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
            break;
        }
        if sturm_count(d, &e2, mid, pivmin) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest eigenvalue of a row-major matrix known to be Hermitian.
pub(crate) fn lambda_max_hermitian(a: Vec<Complex>, n: usize) -> f64 {
    let (d, e) = tridiagonalize(a, n);
    tridiagonal_lambda_max(&d, &e)
}

/// Spectral norm `sqrt(lambda_max(M* M))`, using whichever Gram matrix is
/// smaller.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    let gram = if m.rows() < m.cols() {
        m.gram_left()
    } else {
        m.gram_right()
    };
    let eig = hermitian_eigenvalues(&gram, DEFAULT_EIG_TOL)?;
    Ok(eig.max().max(0.0).sqrt())
}

/// Spectral norm of a Hermitian matrix, `max |lambda|`.
pub fn hermitian_norm(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigenvalues(m, DEFAULT_EIG_TOL)?;
    Ok(eig.max().abs().max(eig.min().abs()))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-PSD_CLAMP * ||M||, 0)` are clamped to zero; anything
/// more negative is an error.
pub fn psd_sqrt(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let dec = hermitian_eigen_decomposition(m, tol)?;
    let n = m.rows();
    let norm = dec.values.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()));
    let threshold = PSD_CLAMP * norm;
    if dec.values[0] < -threshold {
        return Err(Error::NegativeEigenvalue {
            value: dec.values[0],
            threshold,
        });
    }
    let roots: Vec<f64> = dec.values.iter().map(|&x| x.max(0.0).sqrt()).collect();
    let v = &dec.vectors;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let s: Complex = (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * roots[k])
                .sum();
            out[(i, j)] = s;
            out[(j, i)] = s.conj();
        }
        out[(i, i)] = Complex::new(out[(i, i)].re, 0.0);
    }
    Ok(out)
}

/// Absolute value `|M| = (M* M)^{1/2}`.
pub fn modulus(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_sqrt(&m.gram_right(), DEFAULT_EIG_TOL)
}

/// Crawford number `min { |z| : z in W(M) }` of a Hermitian matrix, where
/// `W(M) = [lambda_min, lambda_max]`. For PSD input this is `lambda_min`
/// clamped at zero.
pub fn crawford_psd(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigenvalues(m, DEFAULT_EIG_TOL)?;
    let (lo, hi) = (eig.min(), eig.max());
    Ok(if lo >= 0.0 {
        lo
    } else if hi <= 0.0 {
        -hi
    } else {
        0.0
    })
}

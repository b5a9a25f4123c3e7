//! Dense row-major complex matrices.
//!
//! Every operator in the crate is a finite-dimensional `ComplexMatrix`.
//! Rectangular shapes are first class: an operator from an `n2`-dimensional
//! space into an `n1`-dimensional one is an `n1 x n2` matrix.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result, Shape};

pub type Complex = Complex64;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, rejecting empty shapes and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::DataLength {
                rows,
                cols,
                got: data.len(),
            });
        }
        if let Some((index, value)) = data.iter().enumerate().find(|(_, z)| !z.is_finite()) {
            return Err(Error::NonFinite {
                index,
                value: value.to_string(),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Internal constructor for shapes and data already known to be valid.
    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<Complex>) -> Self {
        debug_assert!(rows > 0 && cols > 0 && data.len() == rows * cols);
        ComplexMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zero-dimensional matrix");
        ComplexMatrix::from_parts(rows, cols, vec![Complex::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[Complex]) -> Self {
        let n = diag.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let diag: Vec<Complex> = diag.iter().map(|&d| Complex::new(d, 0.0)).collect();
        ComplexMatrix::from_diag(&diag)
    }

    /// Builds a matrix from nested rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (rows.len(), cols),
                right: (1, bad.len()),
            });
        }
        ComplexMatrix::new(rows.len(), cols, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows)
    }

    /// The `n x n` lower shift: ones on the first subdiagonal.
    pub fn lower_shift(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Shape {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                shape: self.shape(),
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].conj());
            }
        }
        ComplexMatrix::from_parts(self.cols, self.rows, data)
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "multiply",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (n, m) = (self.rows, other.cols);
        let mut data = vec![Complex::new(0.0, 0.0); n * m];
        for i in 0..n {
            let out = &mut data[i * m..(i + 1) * m];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                for (o, &b) in out.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(ComplexMatrix::from_parts(n, m, data))
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        op: &'static str,
        f: impl Fn(Complex, Complex) -> Complex,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(ComplexMatrix::from_parts(self.rows, self.cols, data))
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, "subtract", |a, b| a - b)
    }

    pub fn scale(&self, c: Complex) -> Self {
        let data = self.data.iter().map(|&z| z * c).collect();
        ComplexMatrix::from_parts(self.rows, self.cols, data)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex::new(c, 0.0))
    }

    /// `M M*`.
    pub fn gram_left(&self) -> Self {
        self.mul(&self.adjoint())
            .expect("conformal by construction")
    }

    /// `M* M`.
    pub fn gram_right(&self) -> Self {
        self.adjoint().mul(self).expect("conformal by construction")
    }

    /// `M^2` for square `M`.
    pub fn square(&self) -> Result<Self> {
        self.require_square("square")?;
        self.mul(self)
    }

    /// Hermitian part `(M + M*)/2`.
    pub fn real_part(&self) -> Result<Self> {
        let n = self.require_square("real_part")?;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        Ok(out)
    }

    /// Skew part `(M - M*)/(2i)`, itself Hermitian.
    pub fn imag_part(&self) -> Result<Self> {
        let n = self.require_square("imag_part")?;
        let mut out = ComplexMatrix::zeros(n, n);
        // 1/(2i) = -i/2
        let factor = Complex::new(0.0, -0.5);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (self[(i, j)] - self[(j, i)].conj()) * factor;
            }
        }
        Ok(out)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Result<Complex> {
        let n = self.require_square("trace")?;
        Ok((0..n).map(|i| self[(i, i)]).sum())
    }

    /// Largest entrywise distance `|M[i][j] - conj(M[j][i])|`.
    pub fn hermitian_asymmetry(&self) -> Result<f64> {
        let n = self.require_square("hermitian_asymmetry")?;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(worst)
    }

    /// Assembles `[[x, y], [z, w]]`. `x` is `n1 x m1`, `w` is `n2 x m2`;
    /// `y` must be `n1 x m2` and `z` must be `n2 x m1`.
    pub fn block_2x2(
        x: &ComplexMatrix,
        y: &ComplexMatrix,
        z: &ComplexMatrix,
        w: &ComplexMatrix,
    ) -> Result<Self> {
        let (n1, m1) = x.shape();
        let (n2, m2) = w.shape();
        if y.shape() != (n1, m2) {
            return Err(Error::DimensionMismatch {
                op: "block_2x2 (top row)",
                left: x.shape(),
                right: y.shape(),
            });
        }
        if z.shape() != (n2, m1) {
            return Err(Error::DimensionMismatch {
                op: "block_2x2 (bottom row)",
                left: z.shape(),
                right: w.shape(),
            });
        }
        let (rows, cols) = (n1 + n2, m1 + m2);
        let mut out = ComplexMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = match (i < n1, j < m1) {
                    (true, true) => x[(i, j)],
                    (true, false) => y[(i, j - m1)],
                    (false, true) => z[(i - n1, j)],
                    (false, false) => w[(i - n1, j - m1)],
                };
            }
        }
        Ok(out)
    }

    /// `[[0, x], [y, 0]]` with `x` of shape `n1 x n2` and `y` of shape `n2 x n1`.
    pub fn offdiag_block(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<Self> {
        let (n1, n2) = x.shape();
        if y.shape() != (n2, n1) {
            return Err(Error::DimensionMismatch {
                op: "offdiag_block",
                left: x.shape(),
                right: y.shape(),
            });
        }
        ComplexMatrix::block_2x2(
            &ComplexMatrix::zeros(n1, n1),
            x,
            y,
            &ComplexMatrix::zeros(n2, n2),
        )
    }

    /// Entrywise comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.shape() == other.shape()
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm() <= tol)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn nilpotent() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap()
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(
            ComplexMatrix::new(0, 3, vec![]),
            Err(Error::EmptyMatrix { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 2, vec![c(1.0, 0.0)]),
            Err(Error::DataLength { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { index: 0, .. })
        ));
    }

    #[test]
    fn adjoint_examples() {
        let m = ComplexMatrix::new(1, 1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(m.adjoint()[(0, 0)], c(0.0, -1.0));
        assert_eq!(
            ComplexMatrix::identity(3).adjoint(),
            ComplexMatrix::identity(3)
        );
        let n = nilpotent();
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(n.adjoint(), expected);

        let rect = ComplexMatrix::new(1, 2, vec![c(1.0, 2.0), c(3.0, -4.0)]).unwrap();
        assert_eq!(rect.adjoint().shape(), (2, 1));
        assert_eq!(rect.adjoint().adjoint(), rect);
    }

    #[test]
    fn products() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0), c(3.0, 0.0)],
        )
        .unwrap();
        assert_eq!(ComplexMatrix::identity(2).mul(&m).unwrap(), m);
        let n = nilpotent();
        assert_eq!(n.mul(&n).unwrap(), ComplexMatrix::zeros(2, 2));
        let a = ComplexMatrix::from_real_diag(&[2.0, 0.0]);
        let b = ComplexMatrix::from_real_diag(&[3.0, 0.0]);
        assert_eq!(
            a.mul(&b).unwrap(),
            ComplexMatrix::from_real_diag(&[6.0, 0.0])
        );
    }

    #[test]
    fn mismatch_names_both_shapes() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        match a.mul(&b) {
            Err(Error::DimensionMismatch { left, right, .. }) => {
                assert_eq!(left, (2, 3));
                assert_eq!(right, (2, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(a.add(&ComplexMatrix::zeros(3, 2)).is_err());
        assert!(a.sub(&ComplexMatrix::zeros(2, 2)).is_err());
        assert!(a.add(&b).is_ok());
    }

    #[test]
    fn cartesian_parts() {
        let n = nilpotent();
        let re = n.real_part().unwrap();
        let half = ComplexMatrix::from_real_rows(&[vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        assert!(re.approx_eq(&half, 0.0));

        let re_i = ComplexMatrix::identity(2)
            .scale(c(0.0, 1.0))
            .real_part()
            .unwrap();
        assert!(re_i.approx_eq(&ComplexMatrix::zeros(2, 2), 0.0));

        // (N - N*)/(2i): entry (0,1) is 1/(2i) = -i/2.
        let im = n.imag_part().unwrap();
        let expected = ComplexMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0)],
        )
        .unwrap();
        assert!(im.approx_eq(&expected, 1e-15));

        // M = Re(M) + i Im(M)
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 2.0), c(0.5, -3.0), c(-1.0, 1.0), c(3.0, 0.7)],
        )
        .unwrap();
        let back = m
            .real_part()
            .unwrap()
            .add(&m.imag_part().unwrap().scale(c(0.0, 1.0)))
            .unwrap();
        assert!(back.approx_eq(&m, 1e-15));
        assert!(m.real_part().unwrap().hermitian_asymmetry().unwrap() == 0.0);
        assert!(m.imag_part().unwrap().hermitian_asymmetry().unwrap() == 0.0);
        assert!(matches!(
            ComplexMatrix::zeros(1, 2).real_part(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn block_assembly() {
        let one = ComplexMatrix::identity(1);
        let swap = ComplexMatrix::offdiag_block(&one, &one).unwrap();
        assert_eq!(
            swap,
            ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
        );

        let row = ComplexMatrix::new(1, 2, vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let col = ComplexMatrix::new(2, 1, vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let t = ComplexMatrix::offdiag_block(&row, &col).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            vec![0.0, 1.0, 2.0],
            vec![3.0, 0.0, 0.0],
            vec![4.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(t, expected);
        assert!(ComplexMatrix::offdiag_block(&row, &row).is_err());

        let s = |x: f64| ComplexMatrix::new(1, 1, vec![c(x, 0.0)]).unwrap();
        let b = ComplexMatrix::block_2x2(&s(1.0), &s(2.0), &s(3.0), &s(4.0)).unwrap();
        assert_eq!(
            b,
            ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap()
        );
        assert!(ComplexMatrix::block_2x2(&s(1.0), &row, &s(3.0), &s(4.0)).is_err());
    }
}

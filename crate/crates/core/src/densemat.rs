//! Dense complex matrices sized for a handful of qubits.
//!
//! Basis convention: qubit 0 (`a`) is the most significant bit of a basis
//! index, so `|abcd>` sits at row `8a + 4b + 2c + d`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result, DIM};

pub type C64 = Complex64;

/// Maximum entrywise deviation from Hermiticity accepted by the eigensolver.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
/// Sweep cap for the Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues in `[-PSD_TOL, 0)` are treated as roundoff and clamped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Hermiticity tolerance for a [`DensityMatrix`].
pub const STATE_HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance for a [`DensityMatrix`].
pub const STATE_TRACE_TOL: f64 = 1e-12;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch("entries do not match rows x cols"));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Real-valued matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Outer product `|psi><psi|`.
    pub fn projector(psi: &[C64]) -> Self {
        let n = psi.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch("matmul inner dimensions differ"));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += aik * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(
                "elementwise operands differ in shape",
            ));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Largest `|M[i][j] - conj(M[j][i])|`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(
                "compared matrices differ in shape",
            ));
        }
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Pauli X.
pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static shape")
}

/// Tensor (Kronecker) product.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `Tr(a * b)` without materialising the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    if !a.is_square() || a.rows != b.cols || a.cols != b.rows {
        return Err(Error::DimensionMismatch("trace_product needs a n x n pair"));
    }
    let n = a.rows;
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    Ok(acc)
}

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic complex
/// Jacobi rotations.
pub fn hermitian_eigvals(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "eigensolver needs a square matrix",
        ));
    }
    let dev = m.hermitian_deviation();
    if dev > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.rows;
    let mut a = m.clone();
    // Start from an exactly Hermitian copy with a real diagonal.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let tol = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

/// One unitary similarity `A <- J^H A J` annihilating `A[p][q]`.
///
/// With `A[p][q] = r e^{i phi}`, `J = diag(1, e^{-i phi}) R(c, s)` on the
/// `(p, q)` plane, where `R` is the real Jacobi rotation for the 2x2 block
/// `[[a_pp, r], [r, a_qq]]`.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{i phi}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let ph_conj = phase.conj();
    let n = a.rows;

    // Columns: A <- A J.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ph_conj * s;
        a[(k, q)] = akp * s + akq * ph_conj * c;
    }
    // Rows: A <- J^H A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// Bit mask of a validated qubit subset for an `n_qubits` register.
pub(crate) fn qubit_mask(n_qubits: usize, subset: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &q in subset {
        if q >= n_qubits {
            return Err(Error::IndexOutOfRange(q));
        }
        mask |= 1 << (n_qubits - 1 - q);
    }
    Ok(mask)
}

/// Partial transpose over the qubits in `subset` of a `2^n x 2^n` matrix.
///
/// Entry `(i, j)` of the output is entry `(i', j')` of the input, where the
/// bits of `i` and `j` belonging to `subset` are exchanged.
pub fn partial_transpose_qubits(
    m: &ComplexMatrix,
    n_qubits: usize,
    subset: &[usize],
) -> Result<ComplexMatrix> {
    let dim = 1usize << n_qubits;
    if m.rows != dim || m.cols != dim {
        return Err(Error::DimensionMismatch("matrix is not 2^n x 2^n"));
    }
    let mask = qubit_mask(n_qubits, subset)?;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let swap = (i ^ j) & mask;
            out[(i, j)] = m[(i ^ swap, j ^ swap)];
        }
    }
    Ok(out)
}

/// A validated four-qubit state: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    label: Option<String>,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.rows != DIM || mat.cols != DIM {
            return Err(Error::DimensionMismatch("density matrix must be 16 x 16"));
        }
        let dev = mat.hermitian_deviation();
        if dev > STATE_HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = mat.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > STATE_TRACE_TOL {
            return Err(Error::TraceNotOne(tr.re));
        }
        let eig = hermitian_eigvals(&mat)?;
        if eig[0] < -PSD_TOL {
            return Err(Error::NegativeEigenvalue(eig[0]));
        }
        Ok(Self { mat, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    /// Ascending spectrum with roundoff negatives in `[-PSD_TOL, 0)` set to 0.
    pub fn clamped_spectrum(&self) -> Result<Vec<f64>> {
        clamp_spectrum(hermitian_eigvals(&self.mat)?)
    }
}

pub(crate) fn clamp_spectrum(mut eig: Vec<f64>) -> Result<Vec<f64>> {
    for l in eig.iter_mut() {
        if *l < -PSD_TOL {
            return Err(Error::NegativeEigenvalue(*l));
        }
        if *l < 0.0 {
            *l = 0.0;
        }
    }
    Ok(eig)
}

/// Partial transpose of a four-qubit state over `subset`.
pub fn partial_transpose(rho: &DensityMatrix, subset: &[usize]) -> Result<ComplexMatrix> {
    partial_transpose_qubits(&rho.mat, crate::QUBITS, subset)
}

//! Dense complex linear algebra for qubit (2×2) and two-qubit (4×4) operators.
//!
//! Everything here is small and fixed-size in practice, so matrices are stored
//! row-major in a flat vector and all operations allocate freely. Logarithms are
//! base 2 throughout, and fidelity uses the squared convention
//! `F(ρ, σ) = ‖√ρ √σ‖₁²`.

mod eig;
mod info;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eig::{eig_hermitian, matrix_function, matrix_function_complex, Spectrum};
pub use info::{
    fidelity, majorizes, partial_transpose, relative_entropy, renyi_entropy, trace_norm,
    von_neumann_entropy,
};

/// Tolerance for Hermiticity, trace and positivity checks on states.
pub const STATE_TOL: f64 = 1e-12;

/// Eigenvalues at or below this are treated as outside the support.
pub const SUPPORT_TOL: f64 = 1e-12;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix of dimension 2 or 4, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Builds a 2×2 matrix from its rows.
    pub fn mat2(rows: [[C64; 2]; 2]) -> Self {
        Self {
            dim: 2,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn identity2() -> Self {
        Self::mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn pauli_x() -> Self {
        Self::mat2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        Self::mat2([[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self::mat2([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// `n·σ` for a real 3-vector `n`.
    pub fn bloch_operator(n: [f64; 3]) -> Self {
        &(&Self::pauli_x().scale_re(n[0]) + &Self::pauli_y().scale_re(n[1]))
            + &Self::pauli_z().scale_re(n[2])
    }

    /// `|i⟩⟨j|` in dimension `dim`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        m[(i, j)] = ONE;
        Ok(m)
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector.
    pub fn outer(psi: &[C64]) -> Result<Self> {
        let dim = psi.len();
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { dim: n, data }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { dim: n, data }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Kronecker product of two 2×2 matrices.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.dim != 2 || other.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: if self.dim != 2 { self.dim } else { other.dim },
            });
        }
        let mut m = Self::zeros(4)?;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m[(2 * i + k, 2 * j + l)] = self[(i, j)] * other[(k, l)];
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-abs deviation from Hermiticity, `max |M − M†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_re(0.5)
    }

    /// Operator norm (largest singular value).
    pub fn operator_norm(&self) -> f64 {
        let gram = &self.adjoint() * self;
        eig_hermitian(&gram.hermitian_part())
            .map(|s| s.eigenvalues()[0].max(0.0).sqrt())
            .unwrap_or(f64::NAN)
    }

    /// `max |U†U − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let id = Self::identity(self.dim).expect("valid dim");
        (&self.adjoint() * self).max_abs_diff(&id)
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        ComplexMatrix { dim: n, data }
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Hermitian, positive semi-definite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (eigenvalues ≥ −1e−12).
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let dev = mat.hermitian_deviation();
        if dev > STATE_TOL {
            return Err(Error::NonHermitian(dev));
        }
        let mat = mat.hermitian_part();
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let spec = eig_hermitian(&mat)?;
        let min = *spec.eigenvalues().last().expect("non-empty spectrum");
        if min < -STATE_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { mat })
    }

    /// Qubit state `(I + r·σ)/2`; requires `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let m = &ComplexMatrix::identity2() + &ComplexMatrix::bloch_operator(r);
        Self::new(m.scale_re(0.5))
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalized first.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&psi)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(ComplexMatrix::identity(dim)?.scale_re(1.0 / dim as f64))
    }

    pub fn diagonal(p: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(p)?)
    }

    /// `|g⟩⟨g| = |0⟩⟨0|`, the +1 eigenstate of σz.
    pub fn ground() -> Self {
        Self::diagonal(&[1.0, 0.0]).expect("valid state")
    }

    /// `|e⟩⟨e| = |1⟩⟨1|`.
    pub fn excited() -> Self {
        Self::diagonal(&[0.0, 1.0]).expect("valid state")
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Descending eigenvalues with small negatives clamped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eig_hermitian(&self.mat)
            .expect("density matrix is Hermitian")
            .eigenvalues()
            .iter()
            .map(|&l| l.max(0.0))
            .collect()
    }

    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// Bloch vector of a qubit state.
    pub fn bloch(&self) -> [f64; 3] {
        assert_eq!(self.dim(), 2, "Bloch vector only defined for qubits");
        let m = &self.mat;
        [2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re]
    }

    /// Reduced state on the first qubit of a 4×4 state.
    pub fn partial_trace_second(&self) -> Result<DensityMatrix> {
        if self.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: self.dim(),
            });
        }
        let mut r = ComplexMatrix::zeros(2)?;
        for i in 0..2 {
            for j in 0..2 {
                r[(i, j)] = (0..2).map(|k| self.mat[(2 * i + k, 2 * j + k)]).sum();
            }
        }
        DensityMatrix::new(r)
    }
}

impl TryFrom<ComplexMatrix> for DensityMatrix {
    type Error = Error;
    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

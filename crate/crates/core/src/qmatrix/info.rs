use super::{eig_hermitian, matrix_function, ComplexMatrix, DensityMatrix, SUPPORT_TOL};
use crate::error::{Error, Result};

const MAJORIZATION_TOL: f64 = 1e-10;

/// Squared fidelity `F(ρ, σ) = ‖√ρ √σ‖₁² = (tr √(√ρ σ √ρ))²`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.matrix().check_same_dim(sigma.matrix())?;
    if rho.dim() == 2 {
        // closed form; avoids the square root of a nearly singular matrix
        let (a, b) = (rho.matrix(), sigma.matrix());
        let det = |m: &ComplexMatrix| (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re.max(0.0);
        let overlap = (a * b).trace().re;
        return Ok((overlap + 2.0 * (det(a) * det(b)).sqrt()).clamp(0.0, 1.0));
    }
    let sqrt_rho = matrix_function(rho.matrix(), f64::sqrt, true)?;
    let inner = &(&sqrt_rho * sigma.matrix()) * &sqrt_rho;
    let spec = eig_hermitian(&inner.hermitian_part())?;
    let root_sum: f64 = spec.eigenvalues().iter().map(|&l| l.max(0.0).sqrt()).sum();
    Ok((root_sum * root_sum).clamp(0.0, 1.0))
}

/// Quantum relative entropy `D(ρ‖σ) = tr ρ(log₂ρ − log₂σ)` in bits.
///
/// Returns `+∞` when the support of `rho` is not contained in that of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.matrix().check_same_dim(sigma.matrix())?;
    let neg_entropy: f64 = rho
        .eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.log2())
        .sum();
    let spec = eig_hermitian(sigma.matrix())?;
    let mut cross = 0.0;
    for (k, &s) in spec.eigenvalues().iter().enumerate() {
        let v = spec.eigenvector(k);
        let n = v.len();
        let mut w = 0.0;
        for i in 0..n {
            for j in 0..n {
                w += (v[i].conj() * rho.matrix()[(i, j)] * v[j]).re;
            }
        }
        if s <= SUPPORT_TOL {
            if w > SUPPORT_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += w * s.log2();
    }
    let d = neg_entropy - cross;
    Ok(if d < 0.0 && d > -1e-12 { 0.0 } else { d })
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// Rényi entropy `S_α(ρ) = log₂ tr ρ^α / (1 − α)` in bits.
pub fn renyi_entropy(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::InvalidAlpha(alpha));
    }
    let power_sum: f64 = rho
        .eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l.powf(alpha))
        .sum();
    Ok((power_sum.log2() / (1.0 - alpha)).max(0.0))
}

/// Trace norm, the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    if m.hermitian_deviation() <= 1e-12 * m.max_abs().max(1.0) {
        let spec = eig_hermitian(m).expect("checked Hermitian");
        return spec.eigenvalues().iter().map(|l| l.abs()).sum();
    }
    let gram = (&m.adjoint() * m).hermitian_part();
    let spec = eig_hermitian(&gram).expect("Gram matrix is Hermitian");
    spec.eigenvalues().iter().map(|&l| l.max(0.0).sqrt()).sum()
}

/// Transpose on the second factor of a 2⊗2 operator.
pub fn partial_transpose(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: m.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + j, 2 * k + l)] = m[(2 * i + l, 2 * k + j)];
                }
            }
        }
    }
    Ok(out)
}

/// True when `sigma` majorizes `rho` (`rho ≺ sigma`): every partial sum of the
/// descending spectrum of `sigma` dominates that of `rho` and the totals agree.
pub fn majorizes(sigma: &DensityMatrix, rho: &DensityMatrix) -> bool {
    if sigma.dim() != rho.dim() {
        return false;
    }
    let (ls, lr) = (sigma.eigenvalues(), rho.eigenvalues());
    let (mut ps, mut pr) = (0.0, 0.0);
    for k in 0..ls.len() {
        ps += ls[k];
        pr += lr[k];
        if k + 1 < ls.len() && ps < pr - MAJORIZATION_TOL {
            return false;
        }
    }
    (ps - pr).abs() <= MAJORIZATION_TOL
}

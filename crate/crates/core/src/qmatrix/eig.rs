use super::{ComplexMatrix, C64, ONE, SUPPORT_TOL, ZERO};
use crate::error::{Error, Result};

/// Hermiticity tolerance relative to the matrix scale.
const HERMITIAN_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix; eigenvalues descending,
/// eigenvectors stored as the columns of a unitary matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let n = self.eigenvalues.len();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// `Σ_k g(λ_k) |v_k⟩⟨v_k|`.
    pub fn map(&self, mut g: impl FnMut(f64) -> C64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n).expect("valid dim");
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = g(lambda);
            if w == ZERO {
                continue;
            }
            for i in 0..n {
                let vi = self.eigenvectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * self.eigenvectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| C64::new(l, 0.0))
    }
}

/// Unitary eigendecomposition of a Hermitian matrix.
///
/// 2×2 matrices use the closed-form quadratic solution; 4×4 matrices use
/// cyclic complex Jacobi rotations.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Spectrum> {
    let dev = m.hermitian_deviation();
    if dev > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(Error::NonHermitian(dev));
    }
    let h = m.hermitian_part();
    let (values, vectors) = match h.dim() {
        2 => eig2(&h),
        _ => jacobi(h),
    };
    Ok(sort_descending(values, vectors))
}

fn eig2(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = half.hypot(b.norm());
    if b.norm() == 0.0 {
        return (vec![a, d], ComplexMatrix::identity2());
    }
    let (l1, l2) = (mean + r, mean - r);
    // pick the better-conditioned of the two equivalent null vectors
    let v = if half >= 0.0 {
        [C64::new(l1 - d, 0.0), b.conj()]
    } else {
        [b, C64::new(l1 - a, 0.0)]
    };
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v1 = [v[0] / norm, v[1] / norm];
    let v2 = [-v1[1].conj(), v1[0].conj()];
    let vecs = ComplexMatrix::mat2([[v1[0], v2[0]], [v1[1], v2[1]]]);
    (vec![l1, l2], vecs)
}

fn jacobi(mut a: ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n).expect("valid dim");
    let frob2: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum();
    let target = (1e-15f64).powi(2) * frob2;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= target || off < 1e-300 {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let values = (0..n).map(|i| a[(i, i)].re).collect();
    (values, v)
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

fn sort_descending(values: Vec<f64>, vectors: ComplexMatrix) -> Spectrum {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut sorted = ComplexMatrix::zeros(n).expect("valid dim");
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            sorted[(i, new)] = vectors[(i, old)];
        }
    }
    Spectrum {
        eigenvalues: order.iter().map(|&i| values[i]).collect(),
        eigenvectors: sorted,
    }
}

/// Applies a real function to the spectrum of a Hermitian matrix.
///
/// With `support_only`, eigenvalues `≤ 1e−12` map to zero and `f` is never
/// evaluated there.
pub fn matrix_function(
    m: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    support_only: bool,
) -> Result<ComplexMatrix> {
    matrix_function_complex(m, |x| C64::new(f(x), 0.0), support_only)
}

/// Complex-valued variant of [`matrix_function`], e.g. for `σ^{it}`.
pub fn matrix_function_complex(
    m: &ComplexMatrix,
    f: impl Fn(f64) -> C64,
    support_only: bool,
) -> Result<ComplexMatrix> {
    let spec = eig_hermitian(m)?;
    let mut values = Vec::with_capacity(spec.eigenvalues.len());
    for &lambda in &spec.eigenvalues {
        if support_only && lambda <= SUPPORT_TOL {
            values.push(ZERO);
            continue;
        }
        let y = f(lambda);
        if !y.re.is_finite() || !y.im.is_finite() {
            return Err(Error::DomainError(lambda));
        }
        values.push(y);
    }
    let mut it = values.into_iter();
    Ok(spec.map(|_| it.next().unwrap_or(ONE)))
}

//! Petz recovery maps and the data-processing recovery gap.
//!
//! `R_{σ,ℰ}(X) = σ^{1/2} ℰ†(ℰ(σ)^{−1/2} X ℰ(σ)^{−1/2}) σ^{1/2}` is stored in
//! Kraus form `R_j = σ^{1/2} K_j† ℰ(σ)^{−1/2}`, with inverse powers taken on
//! the support of `ℰ(σ)`. The rotated map `U_{σ,t} ∘ R ∘ U_{ℰ(σ),−t}` has
//! Kraus operators `σ^{it} R_j ℰ(σ)^{−it}`.
//!
//! Bounds use the squared fidelity evaluated through the composed map
//! `R ∘ ℰ`, so they remain valid for any channel and reference state.

use serde::Serialize;

use crate::channel::{build_channel, ChannelParams, KrausSet, AXIS_X};
use crate::error::{Error, Result};
use crate::field::{integrate, QuadratureConfig};
use crate::par::{self, Execution};
use crate::qmatrix::{
    eig_hermitian, fidelity, matrix_function, matrix_function_complex, relative_entropy,
    ComplexMatrix, DensityMatrix, C64, SUPPORT_TOL,
};

/// Half-width of the window used when integrating over the twirl density.
pub const TWIRL_WINDOW: f64 = 30.0;

#[derive(Clone, Debug)]
pub struct PetzMap {
    reference: DensityMatrix,
    forward: KrausSet,
    rotation_t: f64,
    kraus: KrausSet,
    /// Projector onto the kernel of `ℰ(σ)`.
    kernel: ComplexMatrix,
}

impl PetzMap {
    pub fn new(reference: DensityMatrix, forward: KrausSet) -> Result<Self> {
        Self::rotated(reference, forward, 0.0)
    }

    pub fn rotated(reference: DensityMatrix, forward: KrausSet, t: f64) -> Result<Self> {
        forward.check_complete()?;
        if reference.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: reference.dim(),
            });
        }
        let image = forward.apply_to_operator(reference.matrix()).hermitian_part();
        let sqrt_sigma = matrix_function(reference.matrix(), f64::sqrt, true)?;
        let inv_sqrt_image = matrix_function(&image, |x| 1.0 / x.sqrt(), true)?;
        let mut left = sqrt_sigma;
        let mut right = inv_sqrt_image;
        if t != 0.0 {
            let power = |s: f64| move |x: f64| C64::from_polar(1.0, s * x.ln());
            left = &matrix_function_complex(reference.matrix(), power(t), true)? * &left;
            right = &right * &matrix_function_complex(&image, power(-t), true)?;
        }
        let ops = forward
            .ops()
            .iter()
            .map(|k| &(&left * &k.adjoint()) * &right)
            .collect();
        let labels = forward.labels().iter().map(|l| format!("R[{l}]")).collect();
        let spec = eig_hermitian(&image)?;
        let kernel = spec.map(|l| C64::new(if l <= SUPPORT_TOL { 1.0 } else { 0.0 }, 0.0));
        Ok(Self {
            reference,
            forward,
            rotation_t: t,
            kraus: KrausSet::new(ops, labels),
            kernel,
        })
    }

    pub fn reference(&self) -> &DensityMatrix {
        &self.reference
    }

    pub fn forward(&self) -> &KrausSet {
        &self.forward
    }

    pub fn rotation_t(&self) -> f64 {
        self.rotation_t
    }

    pub fn kraus(&self) -> &KrausSet {
        &self.kraus
    }

    /// `R ∘ ℰ` applied to `rho`.
    pub fn recover(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = DensityMatrix::new(self.forward.apply_to_operator(rho.matrix()).hermitian_part())?;
        petz_apply(self, &out)
    }
}

/// Applies the recovery map to a state on the channel's output space.
///
/// Fails with `SupportViolation` when `rho` has weight outside `supp ℰ(σ)`.
pub fn petz_apply(map: &PetzMap, rho: &DensityMatrix) -> Result<DensityMatrix> {
    rho.matrix().check_same_dim(&map.kernel)?;
    let outside = (&map.kernel * rho.matrix()).trace().re;
    if outside > SUPPORT_TOL {
        return Err(Error::SupportViolation);
    }
    DensityMatrix::new(map.kraus.apply_to_operator(rho.matrix()).hermitian_part())
}

/// `D(ρ‖σ) − D(ℰρ‖ℰσ)` in bits.
pub fn entropy_gap(forward: &KrausSet, sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<f64> {
    forward.check_complete()?;
    let image = |x: &DensityMatrix| DensityMatrix::new(forward.apply_to_operator(x.matrix()).hermitian_part());
    let before = relative_entropy(rho, sigma)?;
    let after = relative_entropy(&image(rho)?, &image(sigma)?)?;
    Ok(before - after)
}

/// `−log₂ F(ρ, (R_{σ,ℰ} ∘ ℰ)(ρ))`.
pub fn petz_bound(forward: &KrausSet, sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<f64> {
    let map = PetzMap::new(sigma.clone(), forward.clone())?;
    let f = fidelity(rho, &map.recover(rho)?)?;
    Ok(-f.log2())
}

/// Twirl density `π/2 (cosh πt + 1)^{−1}`.
pub fn twirl_density(t: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 / ((std::f64::consts::PI * t).cosh() + 1.0)
}

/// `−∫ dt 𝔭(t) log₂ F(ρ, (R^{t/2} ∘ ℰ)(ρ))` over `[−30, 30]`.
pub fn twirled_petz_bound(
    forward: &KrausSet,
    sigma: &DensityMatrix,
    rho: &DensityMatrix,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let failure = std::cell::RefCell::new(None);
    let integrand = |t: f64| {
        let value = PetzMap::rotated(sigma.clone(), forward.clone(), 0.5 * t)
            .and_then(|m| m.recover(rho))
            .and_then(|out| fidelity(rho, &out));
        match value {
            Ok(f) => -twirl_density(t) * f.log2(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let q = integrate(integrand, -TWIRL_WINDOW, TWIRL_WINDOW, cfg)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(q.value)
}

/// Largest change, over `t_grid` and the matrix-unit basis, between the
/// rotated and plain Petz maps.
pub fn rotation_deviation(forward: &KrausSet, sigma: &DensityMatrix, t_grid: &[f64]) -> Result<f64> {
    let plain = PetzMap::new(sigma.clone(), forward.clone())?;
    let mut worst = 0.0f64;
    for &t in t_grid {
        let rotated = PetzMap::rotated(sigma.clone(), forward.clone(), t)?;
        for a in 0..2 {
            for b in 0..2 {
                let e = ComplexMatrix::unit(2, a, b)?;
                let d = rotated
                    .kraus
                    .apply_to_operator(&e)
                    .max_abs_diff(&plain.kraus.apply_to_operator(&e));
                worst = worst.max(d);
            }
        }
    }
    Ok(worst)
}

/// Whether the rotated Petz map with `σ = I/2` coincides with the plain one
/// at every `t` in the grid.
pub fn rotated_petz_collapse_check(params: &ChannelParams, t_grid: &[f64]) -> Result<bool> {
    let sigma = DensityMatrix::maximally_mixed(2)?;
    Ok(rotation_deviation(&build_channel(params), &sigma, t_grid)? <= 1e-10)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroundRow {
    pub p: f64,
    pub entropy_diff: f64,
    pub bound: f64,
    /// The closed form `(1−p)²` as printed for this fidelity; comparison only.
    pub printed_fidelity: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThermalRow {
    pub beta_omega: f64,
    pub p: f64,
    pub entropy_diff: f64,
    pub bound: f64,
    pub closed_form_diff: f64,
    pub closed_form_fidelity: f64,
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.5 && p <= 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

fn flip_channel(p: f64) -> Result<KrausSet> {
    Ok(build_channel(&ChannelParams::from_flip_probability(p, AXIS_X)?))
}

fn gap_and_bound(p: f64, rho: &DensityMatrix) -> Result<(f64, f64)> {
    let k = flip_channel(p)?;
    let sigma = DensityMatrix::maximally_mixed(2)?;
    Ok((entropy_gap(&k, &sigma, rho)?, petz_bound(&k, &sigma, rho)?))
}

/// Recovery gap for `ρ = |g⟩⟨g|`, `σ = I/2` and a σx flip channel.
pub fn recovery_gap_ground(p_grid: &[f64], exec: Execution) -> Result<Vec<GroundRow>> {
    p_grid.iter().try_for_each(|&p| check_p(p))?;
    par::try_map(p_grid, exec, |&p| {
        let (entropy_diff, bound) = gap_and_bound(p, &DensityMatrix::ground())?;
        Ok(GroundRow {
            p,
            entropy_diff,
            bound,
            printed_fidelity: (1.0 - p).powi(2),
        })
    })
}

/// Detector Gibbs state `diag(1/(1+e^{βΩ}), 1/(1+e^{−βΩ}))`.
pub fn gibbs_state(beta_omega: f64) -> Result<DensityMatrix> {
    if !(beta_omega > 0.0) || !beta_omega.is_finite() {
        return Err(Error::InvalidBeta(beta_omega));
    }
    DensityMatrix::diagonal(&[
        1.0 / (1.0 + beta_omega.exp()),
        1.0 / (1.0 + (-beta_omega).exp()),
    ])
}

/// Closed-form entropy difference for the Gibbs input, converted to bits.
///
/// The expression is in natural units throughout (its `βΩ e^{βΩ}` term is a
/// natural logarithm of `e^{βΩ}`), so the whole value is divided by `ln 2`.
pub fn thermal_closed_form_diff(beta_omega: f64, p: f64) -> f64 {
    let x = beta_omega.exp();
    let first = beta_omega * x + ((p - 1.0) * x - p) * (p - (p - 1.0) * x).ln();
    let second = (p - 1.0 - p * x) * (p * (x - 1.0) + 1.0).ln();
    (first + second) / (x + 1.0) / std::f64::consts::LN_2
}

/// Closed-form fidelity `F(ρ_β, (R ∘ Φ)(ρ_β))`.
pub fn thermal_closed_form_fidelity(beta_omega: f64, p: f64) -> f64 {
    let x = beta_omega.exp();
    let q = 2.0 * (p - 1.0) * p;
    let a = (0.5 * beta_omega).exp() * ((q + 1.0) * x - q).sqrt() / (x + 1.0);
    let b = (1.0 - q * (x - 1.0)).sqrt() / (x + 1.0);
    (a + b).powi(2)
}

/// Recovery gap for the detector Gibbs state at `βΩ`, with the printed closed
/// forms alongside the numeric values.
pub fn recovery_gap_thermal(beta_omega: f64, p_grid: &[f64], exec: Execution) -> Result<Vec<ThermalRow>> {
    let rho = gibbs_state(beta_omega)?;
    p_grid.iter().try_for_each(|&p| check_p(p))?;
    par::try_map(p_grid, exec, |&p| {
        let (entropy_diff, bound) = gap_and_bound(p, &rho)?;
        Ok(ThermalRow {
            beta_omega,
            p,
            entropy_diff,
            bound,
            closed_form_diff: thermal_closed_form_diff(beta_omega, p),
            closed_form_fidelity: thermal_closed_form_fidelity(beta_omega, p),
        })
    })
}

//! Smeared two-point function of a free scalar field in flat space for a
//! Gaussian-switched detector.
//!
//! ```text
//! W_β(f,f) = λ²/(4π²) ∫₀^∞ dk k²/ω_k |χ̃(ω_k)|² |F̃(k)|² coth(βω_k/2)
//! ```
//!
//! with `χ̃(ω) = T√π e^{−ω²T²/4}` and `ω_k = √(k² + m²)`. In the variable
//! `u = kT` this is `λ²/(4π) · I(mT, σ/T, β/T)` where
//!
//! ```text
//! I = ∫₀^∞ du u²/ν_u e^{−ν_u²/2} e^{−u²s²/2} coth(bν_u/2),   ν_u = √(u² + M²)
//! ```
//!
//! so the massless pointlike vacuum gives exactly `λ²/(4π)`.

use std::f64::consts::PI;

use super::quadrature::{integrate, QuadratureConfig};
use crate::error::{Error, Result};
use crate::par::{try_map, Execution};

/// Underflow threshold used to place the upper cutoff.
const GAUSS_FLOOR: f64 = 1e-300;
/// Below this `bν/2` the thermal factor `ν coth(bν/2)` uses its series.
const SERIES_EPS: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spatial {
    Pointlike,
    /// Unit-normalized Gaussian of width `σ`; `|F̃(k)|² = e^{−k²σ²/2}`.
    GaussianBall(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmearingProfile {
    pub coupling: f64,
    pub switching_width: f64,
    pub spatial: Spatial,
    pub mass: f64,
    /// Inverse temperature; `f64::INFINITY` is the vacuum.
    pub beta: f64,
}

impl SmearingProfile {
    /// Massless, pointlike, vacuum.
    pub fn new(coupling: f64, switching_width: f64) -> Self {
        Self {
            coupling,
            switching_width,
            spatial: Spatial::Pointlike,
            mass: 0.0,
            beta: f64::INFINITY,
        }
    }

    pub fn with_mass(mut self, mass: f64) -> Self {
        self.mass = mass;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_spatial(mut self, spatial: Spatial) -> Self {
        self.spatial = spatial;
        self
    }

    pub fn is_vacuum(&self) -> bool {
        self.beta == f64::INFINITY
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidProfile(msg));
        if !(self.coupling >= 0.0) || !self.coupling.is_finite() {
            return bad(format!("coupling must be finite and non-negative, got {}", self.coupling));
        }
        if !(self.switching_width > 0.0) || !self.switching_width.is_finite() {
            return bad(format!("switching width must be positive, got {}", self.switching_width));
        }
        if !(self.mass >= 0.0) || !self.mass.is_finite() {
            return bad(format!("mass must be non-negative, got {}", self.mass));
        }
        if !(self.beta > 0.0) {
            return bad(format!("inverse temperature must be positive, got {}", self.beta));
        }
        if let Spatial::GaussianBall(sigma) = self.spatial {
            if !(sigma > 0.0) || !sigma.is_finite() {
                return bad(format!("spatial width must be positive, got {sigma}"));
            }
        }
        Ok(())
    }

    fn spatial_ratio(&self) -> f64 {
        match self.spatial {
            Spatial::Pointlike => 0.0,
            Spatial::GaussianBall(sigma) => sigma / self.switching_width,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WightmanEstimate {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
    /// Momentum beyond which the Gaussian factor is below 1e−300.
    pub cutoff_k: f64,
}

/// `ν coth(bν/2)`, finite as `ν → 0`; equals `ν` in the vacuum.
fn thermal_factor(nu: f64, b: f64) -> f64 {
    if b == f64::INFINITY {
        return nu;
    }
    let x = 0.5 * b * nu;
    if x < SERIES_EPS {
        (2.0 / b) * (1.0 + x * x / 3.0)
    } else if x > 40.0 {
        nu
    } else {
        nu / x.tanh()
    }
}

/// Smeared Wightman value `W(f,f)` for the profile.
pub fn smeared_wightman(profile: &SmearingProfile, cfg: &QuadratureConfig) -> Result<WightmanEstimate> {
    profile.validate()?;
    let t = profile.switching_width;
    let s2 = profile.spatial_ratio().powi(2);
    let m = profile.mass * t;
    let b = profile.beta / t;
    let u_max = (-2.0 * GAUSS_FLOOR.ln() / (1.0 + s2)).sqrt();
    let cutoff_k = u_max / t;
    let prefactor = profile.coupling.powi(2) / (4.0 * PI);
    let mass_damping = (-0.5 * m * m).exp();
    if prefactor == 0.0 || mass_damping == 0.0 {
        return Ok(WightmanEstimate {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
            cutoff_k,
        });
    }
    let integrand = |u: f64| {
        let nu = u.hypot(m);
        let ratio = if m == 0.0 { 1.0 } else { (u / nu).powi(2) };
        ratio * thermal_factor(nu, b) * (-0.5 * u * u * (1.0 + s2)).exp()
    };
    // the integrand is concentrated on u ≲ few; the tolerance is judged
    // against the full integral, so relative accuracy carries over
    let q = integrate(integrand, 0.0, u_max, cfg)?;
    let scale = prefactor * mass_damping;
    Ok(WightmanEstimate {
        value: (scale * q.value).max(0.0),
        abs_error: scale * q.abs_error,
        subdivisions: q.subdivisions,
        cutoff_k,
    })
}

/// Evaluates a batch of profiles; results keep the input order.
pub fn wightman_sweep(
    profiles: &[SmearingProfile],
    cfg: &QuadratureConfig,
    exec: Execution,
) -> Result<Vec<WightmanEstimate>> {
    cfg.validate()?;
    try_map(profiles, exec, |p| smeared_wightman(p, cfg))
}

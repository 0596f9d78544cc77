//! Field side of the detector–field interaction.
//!
//! The qubit channel depends on the field state only through
//! `ν = ω(e^{2iφ(f)})`. This module produces `ν` from smeared two-point data
//! and describes what happens to the field: Weyl expectations are modulated by
//! the causal pairing `E(f,g)` and the detector polarization, and local
//! fluctuations grow by `E(f,g)²`.

mod quadrature;
mod wightman;

pub use quadrature::{integrate, Quadrature, QuadratureConfig};
pub use wightman::{smeared_wightman, wightman_sweep, SmearingProfile, Spatial, WightmanEstimate};

use serde::Serialize;

use crate::channel::{ChannelParams, Regime};
use crate::error::{Error, Result};
use crate::qmatrix::C64;

/// Sign `s` in `ω′(W(g)) = ω(W(g))(cos E + i s a sin E)` where
/// `a = tr(μρ_D)` and `[φ(f), φ(g)] = iE(f,g)`.
///
/// Conjugating by `e^{−iμ⊗φ(f)}` shifts `φ(g)` by `−μE(f,g)`, which gives
/// `s = −1`; the truncated-mode oracle reproduces this.
pub const MODULATION_SIGN: f64 = -1.0;

/// Tolerance below zero tolerated in the squeezed bilinear form.
const SQUEEZE_TOL: f64 = 1e-10;

fn check_w(w: f64) -> Result<()> {
    if !(w >= 0.0) {
        return Err(Error::NegativeW(w));
    }
    Ok(())
}

/// `ν = e^{−2W}`.
pub fn nu_from_wightman(w: f64) -> Result<f64> {
    check_w(w)?;
    Ok((-2.0 * w).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoherentCoefficients {
    /// `ω_α(C_f²)`
    pub c2: f64,
    /// `ω_α(S_f²)`
    pub s2: f64,
    /// `ω_α(S_f C_f)`
    pub sc: f64,
    #[serde(skip)]
    pub nu: C64,
}

/// Channel coefficients for a coherent state displaced from a quasifree
/// reference with `ν₀`, given the pairing `E(α̃, f)`.
pub fn coherent_channel_coefficients(nu0: f64, e_alpha_f: f64) -> CoherentCoefficients {
    let (s, c) = (2.0 * e_alpha_f).sin_cos();
    let c2 = 0.5 * (1.0 + nu0 * c);
    CoherentCoefficients {
        c2,
        s2: 1.0 - c2,
        sc: 0.5 * nu0 * s,
        nu: C64::new(nu0 * c, nu0 * s),
    }
}

/// `W₀(h, h)` with `h = f + 2E(ζ̃,f) ζ̃`, expanded bilinearly:
/// `W_ff + 4E·Re W₀(f,ζ̃) + 4E²·W₀(ζ̃,ζ̃)`.
pub fn squeezed_wightman(w_ff: f64, e_zeta_f: f64, w_zeta_zeta: f64, re_w_f_zeta: f64) -> Result<f64> {
    check_w(w_ff)?;
    check_w(w_zeta_zeta)?;
    let w = w_ff + 4.0 * e_zeta_f * re_w_f_zeta + 4.0 * e_zeta_f * e_zeta_f * w_zeta_zeta;
    if w < -SQUEEZE_TOL {
        return Err(Error::InconsistentSqueezing(w));
    }
    Ok(w.max(0.0))
}

/// Folds a sequence of displacements into one causal pairing.
pub fn displacement_compose(pairings: &[f64]) -> f64 {
    pairings.iter().sum()
}

/// Post-interaction Weyl expectation `ω′(W(g)) = base·(cos E + i s a sin E)`.
pub fn evolved_weyl_expectation(base: C64, e_fg: f64, polarization: f64) -> C64 {
    let (s, c) = e_fg.sin_cos();
    base * C64::new(c, MODULATION_SIGN * polarization * s)
}

/// `s ↦ ω′(e^{isφ(g)})` for a quasifree reference with `W(g,g) = w_gg`.
pub fn weyl_generating_function(s: f64, w_gg: f64, e_fg: f64, polarization: f64) -> C64 {
    let base = C64::new((-0.5 * s * s * w_gg).exp(), 0.0);
    evolved_weyl_expectation(base, s * e_fg, polarization)
}

/// `W′(g,g) = W(g,g) + E(f,g)²`.
pub fn updated_fluctuation(w_gg: f64, e_fg: f64) -> Result<f64> {
    check_w(w_gg)?;
    Ok(w_gg + e_fg * e_fg)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MixednessWeights {
    pub w1: f64,
    pub w2: f64,
}

impl MixednessWeights {
    /// Whether the post-interaction field state is a proper mixture.
    pub fn is_mixed(&self) -> bool {
        self.w2 > 0.0
    }
}

/// Weights `((1+ν)/2, (1−ν)/2)` of the two field states in `ω′` for an
/// unpolarized detector.
pub fn field_mixedness_weights(nu: f64) -> Result<MixednessWeights> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::InvalidNu(nu));
    }
    let w1 = 0.5 * (1.0 + nu);
    Ok(MixednessWeights { w1, w2: 1.0 - w1 })
}

/// Rényi-2 entropy of the field after the interaction, in bits:
/// `1 − log₂(1 + e^{−4W})`.
pub fn field_renyi2(w: f64) -> Result<f64> {
    check_w(w)?;
    Ok(1.0 - (-4.0 * w).exp().ln_1p() / std::f64::consts::LN_2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldStateKind {
    Vacuum,
    Thermal { beta: f64 },
    Coherent,
    Squeezed,
    Custom,
}

/// Field data that fixes the channel. Pairings not used by `kind` are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FieldStateSpec {
    pub kind: FieldStateKind,
    /// `W(f,f)` of the quasifree reference state.
    pub w_ff: f64,
    /// `E(α̃, f)`, coherent states.
    pub e_alpha_f: f64,
    /// `E(ζ̃, f)`, squeezed states.
    pub e_zeta_f: f64,
    /// `W₀(ζ̃, ζ̃)`, squeezed states.
    pub w_zeta_zeta: f64,
    /// `Re W₀(f, ζ̃)`, squeezed states.
    pub re_w_f_zeta: f64,
    /// `a = tr(μρ_D)`.
    pub polarization: f64,
}

impl FieldStateSpec {
    fn base(kind: FieldStateKind, w_ff: f64) -> Self {
        Self {
            kind,
            w_ff,
            e_alpha_f: 0.0,
            e_zeta_f: 0.0,
            w_zeta_zeta: 0.0,
            re_w_f_zeta: 0.0,
            polarization: 0.0,
        }
    }

    pub fn vacuum(w_ff: f64) -> Self {
        Self::base(FieldStateKind::Vacuum, w_ff)
    }

    pub fn thermal(beta: f64, w_ff: f64) -> Self {
        Self::base(FieldStateKind::Thermal { beta }, w_ff)
    }

    pub fn custom(w_ff: f64) -> Self {
        Self::base(FieldStateKind::Custom, w_ff)
    }

    pub fn coherent(w_ff: f64, e_alpha_f: f64) -> Self {
        Self {
            e_alpha_f,
            ..Self::base(FieldStateKind::Coherent, w_ff)
        }
    }

    pub fn squeezed(w_ff: f64, e_zeta_f: f64, w_zeta_zeta: f64, re_w_f_zeta: f64) -> Self {
        Self {
            e_zeta_f,
            w_zeta_zeta,
            re_w_f_zeta,
            ..Self::base(FieldStateKind::Squeezed, w_ff)
        }
    }

    pub fn with_polarization(mut self, a: f64) -> Self {
        self.polarization = a;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_w(self.w_ff)?;
        if !(self.polarization.abs() <= 1.0) {
            return Err(Error::InvalidPolarization(self.polarization));
        }
        if let FieldStateKind::Thermal { beta } = self.kind {
            if !(beta > 0.0) {
                return Err(Error::InvalidBeta(beta));
            }
        }
        self.effective_w().map(|_| ())
    }

    /// Two-point value that controls the channel noise.
    pub fn effective_w(&self) -> Result<f64> {
        match self.kind {
            FieldStateKind::Squeezed => {
                squeezed_wightman(self.w_ff, self.e_zeta_f, self.w_zeta_zeta, self.re_w_f_zeta)
            }
            _ => {
                check_w(self.w_ff)?;
                Ok(self.w_ff)
            }
        }
    }

    /// `ν = ω(e^{2iφ(f)})`; complex only for coherent states.
    pub fn nu(&self) -> Result<C64> {
        self.validate()?;
        let nu0 = nu_from_wightman(self.effective_w()?)?;
        Ok(match self.kind {
            FieldStateKind::Coherent => coherent_channel_coefficients(nu0, self.e_alpha_f).nu,
            _ => C64::new(nu0, 0.0),
        })
    }

    pub fn channel_params(&self, axis: [f64; 3], regime: Regime) -> Result<ChannelParams> {
        ChannelParams::new(self.nu()?, axis, regime)
    }
}

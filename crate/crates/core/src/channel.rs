//! The Unruh–DeWitt qubit channel.
//!
//! For a detector coupled through a monopole `μ = n·σ` to a smeared field
//! `φ(f)`, the reduced dynamics depend on the field state only through
//! `ν = ω(e^{2iφ(f)})`:
//!
//! ```text
//! Ψ(ρ) = ½(1 + Re ν) ρ + ½(1 − Re ν) μρμ + ½ i Im ν [ρ, μ]
//! ```
//!
//! For quasifree field states `ν = e^{−2W(f,f)}` is real and the channel is a
//! rotated bit flip with no-flip probability `p = (1 + ν)/2`. The delta-coupled
//! and gapless detector models share this form; [`Regime`] is carried only as
//! a label.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmatrix::{eig_hermitian, ComplexMatrix, DensityMatrix, C64};

/// Completeness tolerance for Kraus sets.
pub const KRAUS_TOL: f64 = 1e-10;
/// `|ν|` in `(1, 1 + NU_RENORM_TOL]` is pulled back onto the unit circle.
pub const NU_RENORM_TOL: f64 = 1e-9;
const AXIS_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Delta,
    #[default]
    Gapless,
}

/// Complete parameterization of the qubit channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    nu: C64,
    axis: [f64; 3],
    regime: Regime,
}

impl ChannelParams {
    pub fn new(nu: C64, axis: [f64; 3], regime: Regime) -> Result<Self> {
        let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > AXIS_TOL {
            return Err(Error::InvalidAxis(norm));
        }
        let r = nu.norm();
        if !r.is_finite() || r > 1.0 + NU_RENORM_TOL {
            return Err(Error::InvalidNu(r));
        }
        let nu = if r > 1.0 { nu / r } else { nu };
        Ok(Self { nu, axis, regime })
    }

    /// Quasifree field state: real `ν ∈ [0, 1]`.
    pub fn quasifree(nu: f64, axis: [f64; 3]) -> Result<Self> {
        Self::new(C64::new(nu, 0.0), axis, Regime::Gapless)
    }

    /// Quasifree channel with `ν = e^{−2W}`.
    pub fn from_wightman(w: f64, axis: [f64; 3]) -> Result<Self> {
        if !(w >= 0.0) {
            return Err(Error::NegativeW(w));
        }
        Self::quasifree((-2.0 * w).exp(), axis)
    }

    /// Quasifree channel with no-flip probability `p = (1 + ν)/2`.
    pub fn from_flip_probability(p: f64, axis: [f64; 3]) -> Result<Self> {
        Self::quasifree(2.0 * p - 1.0, axis)
    }

    pub fn with_regime(mut self, regime: Regime) -> Self {
        self.regime = regime;
        self
    }

    pub fn nu(&self) -> C64 {
        self.nu
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `μ = n·σ`.
    pub fn monopole(&self) -> ComplexMatrix {
        ComplexMatrix::bloch_operator(self.axis)
    }

    /// `ω(C_f²) = (1 + Re ν)/2`; equals `p` for quasifree states.
    pub fn no_flip_weight(&self) -> f64 {
        0.5 * (1.0 + self.nu.re)
    }

    /// `ω(S_f C_f) = Im ν / 2`.
    pub fn coherence_weight(&self) -> f64 {
        0.5 * self.nu.im
    }
}

pub const AXIS_X: [f64; 3] = [1.0, 0.0, 0.0];
pub const AXIS_Y: [f64; 3] = [0.0, 1.0, 0.0];
pub const AXIS_Z: [f64; 3] = [0.0, 0.0, 1.0];

/// Finite list of 2×2 Kraus operators.
#[derive(Clone, Debug)]
pub struct KrausSet {
    ops: Vec<ComplexMatrix>,
    labels: Vec<String>,
}

impl KrausSet {
    pub fn new(ops: Vec<ComplexMatrix>, labels: Vec<String>) -> Self {
        assert_eq!(ops.len(), labels.len(), "one label per operator");
        Self { ops, labels }
    }

    pub fn identity() -> Self {
        Self::new(vec![ComplexMatrix::identity2()], vec!["I".into()])
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `max |Σ K†K − I|`.
    pub fn completeness_error(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2).expect("valid dim");
        for k in &self.ops {
            sum = &sum + &(&k.adjoint() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity2())
    }

    pub fn check_complete(&self) -> Result<()> {
        let err = self.completeness_error();
        if err > KRAUS_TOL {
            return Err(Error::IncompleteKraus(err));
        }
        Ok(())
    }

    /// Drops operators whose entries are all below `tol` in magnitude.
    pub fn without_zero_ops(&self, tol: f64) -> Self {
        let (ops, labels) = self
            .ops
            .iter()
            .zip(&self.labels)
            .filter(|(k, _)| k.max_abs() > tol)
            .map(|(k, l)| (k.clone(), l.clone()))
            .unzip();
        Self { ops, labels }
    }

    /// `Σ K X K†` for an arbitrary operator `X` (no completeness check).
    pub fn apply_to_operator(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(x.dim()).expect("valid dim");
        for k in &self.ops {
            out = &out + &(&(k * x) * &k.adjoint());
        }
        out
    }
}

/// Kraus operators of the channel.
///
/// `K₀ = √((1−|ν|)/2) I`, `K₁ = √((1−|ν|)/2) μ`,
/// `K₂ = √((|ν|+Re ν)/2) I − i sgn(Im ν) √((|ν|−Re ν)/2) μ`.
///
/// The sign factor makes the cross term reproduce `½ i Im ν [ρ, μ]` for either
/// sign of `Im ν`.
pub fn build_channel(params: &ChannelParams) -> KrausSet {
    let nu = params.nu;
    let r = nu.norm();
    let mu = params.monopole();
    let id = ComplexMatrix::identity2();
    let w = (0.5 * (1.0 - r)).max(0.0).sqrt();
    let a = (0.5 * (r + nu.re)).max(0.0).sqrt();
    let b = (0.5 * (r - nu.re)).max(0.0).sqrt();
    let sign = if nu.im < 0.0 { -1.0 } else { 1.0 };
    let k2 = &id.scale_re(a) + &mu.scale(C64::new(0.0, -sign * b));
    KrausSet::new(
        vec![id.scale_re(w), mu.scale_re(w), k2],
        vec!["K0".into(), "K1".into(), "K2".into()],
    )
}

/// Two-operator form `A₀ = √((1+ν)/2) I`, `A₁ = √((1−ν)/2) μ` for real `ν`.
pub fn build_quasifree_channel(nu: f64, axis: [f64; 3]) -> Result<KrausSet> {
    let params = ChannelParams::quasifree(nu, axis)?;
    let nu = params.nu.re;
    let mu = params.monopole();
    Ok(KrausSet::new(
        vec![
            ComplexMatrix::identity2().scale_re((0.5 * (1.0 + nu)).sqrt()),
            mu.scale_re((0.5 * (1.0 - nu)).max(0.0).sqrt()),
        ],
        vec!["A0".into(), "A1".into()],
    ))
}

/// `Ψ(ρ) = Σ K ρ K†`.
pub fn apply_channel(k: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    k.check_complete()?;
    DensityMatrix::new(k.apply_to_operator(rho.matrix()).hermitian_part())
}

/// Channel action written directly from the field coefficients, without
/// going through Kraus operators.
pub fn apply_direct(params: &ChannelParams, x: &ComplexMatrix) -> ComplexMatrix {
    let mu = params.monopole();
    let c2 = params.no_flip_weight();
    let sc = params.coherence_weight();
    let flipped = &(&mu * x) * &mu;
    let comm = &(x * &mu) - &(&mu * x);
    &(&x.scale_re(c2) + &flipped.scale_re(1.0 - c2)) + &comm.scale(C64::new(0.0, sc))
}

/// Kraus operators of the adjoint map, `K → K†`.
pub fn adjoint_channel(k: &KrausSet) -> KrausSet {
    KrausSet::new(
        k.ops.iter().map(ComplexMatrix::adjoint).collect(),
        k.labels.iter().map(|l| format!("{l}†")).collect(),
    )
}

/// Choi state `J = ½ Σ_{ij} |i⟩⟨j| ⊗ Ψ(|i⟩⟨j|)`.
pub fn choi_matrix(k: &KrausSet) -> Result<DensityMatrix> {
    k.check_complete()?;
    let mut j = ComplexMatrix::zeros(4)?;
    for a in 0..2 {
        for b in 0..2 {
            let out = k.apply_to_operator(&ComplexMatrix::unit(2, a, b)?);
            for c in 0..2 {
                for d in 0..2 {
                    j[(2 * a + c, 2 * b + d)] = out[(c, d)] * 0.5;
                }
            }
        }
    }
    DensityMatrix::new(j.hermitian_part())
}

/// `(‖ρ^Γ‖₁ − 1)/2` with the partial transpose on the second qubit.
pub fn negativity(rho4: &DensityMatrix) -> Result<f64> {
    let pt = crate::qmatrix::partial_transpose(rho4.matrix())?;
    let n = 0.5 * (crate::qmatrix::trace_norm(&pt) - 1.0);
    Ok(if n < 0.0 && n > -1e-10 { 0.0 } else { n })
}

/// Largest eigenvalue of the Choi state.
pub fn choi_max_eigenvalue(k: &KrausSet) -> Result<f64> {
    let j = choi_matrix(k)?;
    Ok(eig_hermitian(j.matrix())?.eigenvalues()[0])
}

/// Qubit entanglement-breaking test: `J(Ψ) ≤ I₄/2`.
pub fn is_entanglement_breaking(k: &KrausSet) -> Result<bool> {
    Ok(choi_max_eigenvalue(k)? <= 0.5 + KRAUS_TOL)
}

/// Convex decomposition `Ψ(ρ) = Σ p_j U_j ρ U_j†` into unitaries.
#[derive(Clone, Debug)]
pub struct MixedUnitaryDecomposition {
    pub probabilities: Vec<f64>,
    pub unitaries: Vec<ComplexMatrix>,
    pub labels: Vec<String>,
}

impl MixedUnitaryDecomposition {
    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(x.dim()).expect("valid dim");
        for (p, u) in self.probabilities.iter().zip(&self.unitaries) {
            out = &out + &(&(u * x) * &u.adjoint()).scale_re(*p);
        }
        out
    }
}

/// Weights `p₀ = p₁ = (1−|ν|)/2`, `p₂ = |ν|` with `U_j = K_j/√p_j`.
///
/// Zero-weight terms are omitted; at `ν = 0` this leaves `{½: I, ½: μ}` and
/// at `ν = 1` just `{1: I}`.
pub fn mixed_unitary_decomposition(params: &ChannelParams) -> MixedUnitaryDecomposition {
    let kraus = build_channel(params);
    let r = params.nu.norm();
    let weights = [0.5 * (1.0 - r), 0.5 * (1.0 - r), r];
    let mut out = MixedUnitaryDecomposition {
        probabilities: vec![],
        unitaries: vec![],
        labels: vec![],
    };
    for (j, (&p, k)) in weights.iter().zip(kraus.ops()).enumerate() {
        if p <= 1e-15 {
            continue;
        }
        out.probabilities.push(p);
        out.unitaries.push(k.scale_re(1.0 / p.sqrt()));
        out.labels.push(format!("U{j}"));
    }
    out
}

/// States commuting with the monopole: Bloch vectors `t·n`, `t ∈ [−1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FixedPointFamily {
    pub axis: [f64; 3],
    pub t_min: f64,
    pub t_max: f64,
}

impl FixedPointFamily {
    pub fn member(&self, t: f64) -> Result<DensityMatrix> {
        let t = t.clamp(self.t_min, self.t_max);
        DensityMatrix::from_bloch([t * self.axis[0], t * self.axis[1], t * self.axis[2]])
    }

    /// Largest deviation `max |Ψ(ρ_t) − ρ_t|` over `samples` evenly spaced
    /// family members.
    pub fn verify(&self, k: &KrausSet, samples: usize) -> Result<f64> {
        let mut worst = 0.0f64;
        for i in 0..samples.max(2) {
            let t = self.t_min + (self.t_max - self.t_min) * i as f64 / (samples.max(2) - 1) as f64;
            let rho = self.member(t)?;
            let out = apply_channel(k, &rho)?;
            worst = worst.max(out.matrix().max_abs_diff(rho.matrix()));
        }
        Ok(worst)
    }
}

/// Fixed points of the channel. The commutant of `μ` is fixed for every `ν`,
/// complex or not.
pub fn fixed_points(params: &ChannelParams) -> FixedPointFamily {
    FixedPointFamily {
        axis: params.axis,
        t_min: -1.0,
        t_max: 1.0,
    }
}

/// ℓ1 cohering power `|ω(sin 2φ(f))|`.
pub fn cohering_power(s2f: C64) -> f64 {
    s2f.norm()
}

/// ℓ1 cohering power from `ν`, using `ω(sin 2φ(f)) = Im ν`.
pub fn cohering_power_from_nu(nu: C64) -> f64 {
    nu.im.abs()
}

/// ℓ1 decohering power `1 − e^{−2W}` of a quasifree channel.
pub fn decohering_power(w: f64) -> Result<f64> {
    if !(w >= 0.0) {
        return Err(Error::NegativeW(w));
    }
    Ok(-(-2.0 * w).exp_m1())
}

/// ℓ1 decohering power `1 − |ω(cos 2φ(f))| = 1 − |Re ν|`.
pub fn decohering_power_from_nu(nu: C64) -> f64 {
    1.0 - nu.re.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn params_validation() {
        assert!(matches!(
            ChannelParams::quasifree(0.5, [1.0, 1.0, 0.0]),
            Err(Error::InvalidAxis(_))
        ));
        assert!(matches!(
            ChannelParams::new(C64::new(1.1, 0.0), AXIS_X, Regime::Delta),
            Err(Error::InvalidNu(_))
        ));
        let p = ChannelParams::new(C64::new(0.0, 1.0 + 5e-10), AXIS_X, Regime::Delta).unwrap();
        assert!((p.nu().norm() - 1.0).abs() < 1e-15);
        assert!(matches!(
            ChannelParams::from_wightman(-0.1, AXIS_X),
            Err(Error::NegativeW(_))
        ));
    }

    #[test]
    fn kraus_at_unit_nu_is_identity() {
        let k = build_channel(&ChannelParams::quasifree(1.0, AXIS_X).unwrap());
        assert_eq!(k.ops()[0].max_abs(), 0.0);
        assert_eq!(k.ops()[1].max_abs(), 0.0);
        assert!(close(&k.ops()[2], &ComplexMatrix::identity2(), 0.0));
        assert_eq!(k.without_zero_ops(1e-15).len(), 1);
    }

    #[test]
    fn quasifree_kraus_example() {
        let k = build_quasifree_channel(0.5, AXIS_X).unwrap();
        let want0 = ComplexMatrix::identity2().scale_re(0.75f64.sqrt());
        let want1 = ComplexMatrix::pauli_x().scale_re(0.5);
        assert!(close(&k.ops()[0], &want0, 1e-15));
        assert!(close(&k.ops()[1], &want1, 1e-15));
    }

    #[test]
    fn complex_nu_kraus_example() {
        let nu = C64::from_polar(0.5, std::f64::consts::FRAC_PI_2);
        let params = ChannelParams::new(nu, AXIS_X, Regime::Delta).unwrap();
        let k = build_channel(&params);
        let id = ComplexMatrix::identity2();
        let x = ComplexMatrix::pauli_x();
        assert!(close(&k.ops()[0], &id.scale_re(0.5), 1e-15));
        assert!(close(&k.ops()[1], &x.scale_re(0.5), 1e-15));
        let k2 = &id.scale_re(0.5) + &x.scale(C64::new(0.0, -0.5));
        assert!(close(&k.ops()[2], &k2, 1e-15));
        // Kraus action matches the coefficient formula on a full operator basis
        for a in 0..2 {
            for b in 0..2 {
                let e = ComplexMatrix::unit(2, a, b).unwrap();
                assert!(close(&k.apply_to_operator(&e), &apply_direct(&params, &e), 1e-15));
            }
        }
    }

    #[test]
    fn negative_imaginary_nu_matches_direct_form() {
        let nu = C64::new(0.2, -0.6);
        let params = ChannelParams::new(nu, [0.6, 0.0, 0.8], Regime::Gapless).unwrap();
        let k = build_channel(&params);
        for a in 0..2 {
            for b in 0..2 {
                let e = ComplexMatrix::unit(2, a, b).unwrap();
                assert!(close(&k.apply_to_operator(&e), &apply_direct(&params, &e), 1e-15));
            }
        }
    }

    #[test]
    fn apply_examples() {
        let id = KrausSet::identity();
        let rho = DensityMatrix::from_bloch([0.1, 0.2, 0.3]).unwrap();
        assert!(close(apply_channel(&id, &rho).unwrap().matrix(), rho.matrix(), 0.0));

        let k = build_channel(&ChannelParams::quasifree(0.5, AXIS_X).unwrap());
        let out = apply_channel(&k, &DensityMatrix::ground()).unwrap();
        let want = ComplexMatrix::from_real_diagonal(&[0.75, 0.25]).unwrap();
        assert!(close(out.matrix(), &want, 1e-15));

        let mm = DensityMatrix::maximally_mixed(2).unwrap();
        let k = build_channel(
            &ChannelParams::new(C64::new(-0.3, 0.4), AXIS_Y, Regime::Delta).unwrap(),
        );
        assert!(close(apply_channel(&k, &mm).unwrap().matrix(), mm.matrix(), 1e-15));
    }

    #[test]
    fn incomplete_kraus_is_rejected() {
        let k = KrausSet::new(
            vec![ComplexMatrix::identity2().scale_re(0.9)],
            vec!["half".into()],
        );
        assert!(matches!(
            apply_channel(&k, &DensityMatrix::ground()),
            Err(Error::IncompleteKraus(_))
        ));
        assert!(matches!(choi_matrix(&k), Err(Error::IncompleteKraus(_))));
    }

    #[test]
    fn adjoint_examples() {
        // real ν: self-dual
        let k = build_quasifree_channel(0.3, [0.0, 0.6, 0.8]).unwrap();
        let ka = adjoint_channel(&k);
        for a in 0..2 {
            for b in 0..2 {
                let e = ComplexMatrix::unit(2, a, b).unwrap();
                assert!(close(&k.apply_to_operator(&e), &ka.apply_to_operator(&e), 1e-15));
            }
        }
        // complex ν: adjoint acts like ν → ν*
        let nu = C64::new(0.3, 0.5);
        let p = ChannelParams::new(nu, AXIS_X, Regime::Gapless).unwrap();
        let pc = ChannelParams::new(nu.conj(), AXIS_X, Regime::Gapless).unwrap();
        let ka = adjoint_channel(&build_channel(&p));
        for a in 0..2 {
            for b in 0..2 {
                let e = ComplexMatrix::unit(2, a, b).unwrap();
                assert!(close(&ka.apply_to_operator(&e), &apply_direct(&pc, &e), 1e-15));
            }
        }
        let id = adjoint_channel(&KrausSet::identity());
        assert!(close(&id.ops()[0], &ComplexMatrix::identity2(), 0.0));
    }

    #[test]
    fn choi_examples() {
        let j = choi_matrix(&KrausSet::identity()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        let bell = ComplexMatrix::outer(&[C64::new(h, 0.0), z, z, C64::new(h, 0.0)]).unwrap();
        assert!(close(j.matrix(), &bell, 1e-15));
        assert!((negativity(&j).unwrap() - 0.5).abs() < 1e-14);

        let k = build_channel(&ChannelParams::quasifree(0.0, AXIS_X).unwrap());
        let spec = eig_hermitian(choi_matrix(&k).unwrap().matrix()).unwrap();
        let w = spec.eigenvalues();
        assert!((w[0] - 0.5).abs() < 1e-14 && (w[1] - 0.5).abs() < 1e-14);
        assert!(w[2].abs() < 1e-14 && w[3].abs() < 1e-14);

        let k = build_channel(&ChannelParams::quasifree(0.5, AXIS_X).unwrap());
        let j = choi_matrix(&k).unwrap();
        assert!((negativity(&j).unwrap() - 0.25).abs() < 1e-14);
        let reduced = j.partial_trace_second().unwrap();
        assert!(close(reduced.matrix(), &ComplexMatrix::identity2().scale_re(0.5), 1e-15));
    }

    #[test]
    fn negativity_of_product_state_is_zero() {
        let a = DensityMatrix::from_bloch([0.3, 0.1, 0.2]).unwrap();
        let b = DensityMatrix::from_bloch([0.0, 0.5, -0.5]).unwrap();
        let ab = DensityMatrix::new(a.matrix().kron(b.matrix()).unwrap()).unwrap();
        assert_eq!(negativity(&ab).unwrap(), 0.0);
    }

    #[test]
    fn entanglement_breaking_examples() {
        let eb = |nu: f64| {
            is_entanglement_breaking(&build_channel(&ChannelParams::quasifree(nu, AXIS_X).unwrap()))
                .unwrap()
        };
        assert!(eb(0.0));
        assert!(!eb(1.0));
        assert!(!eb(0.5));
    }

    #[test]
    fn mixed_unitary_examples() {
        let d = mixed_unitary_decomposition(&ChannelParams::quasifree(1.0, AXIS_X).unwrap());
        assert_eq!(d.probabilities, vec![1.0]);

        let params = ChannelParams::quasifree(0.5, AXIS_X).unwrap();
        let d = mixed_unitary_decomposition(&params);
        assert_eq!(d.probabilities, vec![0.25, 0.25, 0.5]);
        assert!(close(&d.unitaries[1], &ComplexMatrix::pauli_x(), 1e-15));
        for u in &d.unitaries {
            assert!(u.unitarity_deviation() < 1e-14);
        }

        let d = mixed_unitary_decomposition(&ChannelParams::quasifree(0.0, AXIS_Z).unwrap());
        assert_eq!(d.probabilities, vec![0.5, 0.5]);
        assert!(close(&d.unitaries[1], &ComplexMatrix::pauli_z(), 1e-15));

        let params = ChannelParams::new(C64::new(0.1, -0.7), AXIS_Y, Regime::Delta).unwrap();
        let d = mixed_unitary_decomposition(&params);
        let k = build_channel(&params);
        let rho = DensityMatrix::from_bloch([0.4, -0.3, 0.5]).unwrap();
        assert!(close(&d.apply(rho.matrix()), &k.apply_to_operator(rho.matrix()), 1e-14));
    }

    #[test]
    fn fixed_point_examples() {
        let params = ChannelParams::quasifree(0.5, AXIS_X).unwrap();
        let k = build_channel(&params);
        let rho = DensityMatrix::from_bloch([0.3, 0.0, 0.0]).unwrap();
        assert!(close(apply_channel(&k, &rho).unwrap().matrix(), rho.matrix(), 1e-15));
        assert!(fixed_points(&params).verify(&k, 11).unwrap() < 1e-15);

        let rho = DensityMatrix::from_bloch([0.0, 0.0, 0.5]).unwrap();
        let out = apply_channel(&k, &rho).unwrap().bloch();
        assert!((out[2] - 0.25).abs() < 1e-15);

        let params = ChannelParams::new(C64::new(0.2, 0.5), [0.0, 0.6, 0.8], Regime::Delta).unwrap();
        let k = build_channel(&params);
        assert!(fixed_points(&params).verify(&k, 11).unwrap() < 1e-14);
    }

    #[test]
    fn coherence_power_examples() {
        assert_eq!(cohering_power(C64::new(0.0, 0.0)), 0.0);
        assert_eq!(cohering_power_from_nu(C64::new(0.7, 0.0)), 0.0);
        let nu = C64::from_polar(0.5, 2.0 * std::f64::consts::FRAC_PI_4);
        assert!((cohering_power_from_nu(nu) - 0.5).abs() < 1e-15);

        assert_eq!(decohering_power(0.0).unwrap(), 0.0);
        assert!((decohering_power(LN2 / 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((decohering_power(1e6).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(decohering_power(-1.0), Err(Error::NegativeW(_))));
    }
}

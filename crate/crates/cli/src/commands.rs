use clap::Args;
use serde_json::{json, Map, Value};

use udw_core::channel::{
    apply_channel, build_channel, choi_matrix, cohering_power_from_nu, decohering_power_from_nu, fixed_points,
    is_entanglement_breaking, mixed_unitary_decomposition, negativity, ChannelParams, Regime,
};
use udw_core::field::{
    field_renyi2, smeared_wightman, wightman_sweep, FieldStateSpec, QuadratureConfig, SmearingProfile, Spatial,
};
use udw_core::oracle::{compare_point, equivalence_report, oracle_nu, tail_population, ModeState, OracleConfig, OracleGrid};
use udw_core::par::{self, Execution};
use udw_core::qmatrix::{eig_hermitian, renyi_entropy, von_neumann_entropy};
use udw_core::recovery::{recovery_gap_ground, recovery_gap_thermal};
use udw_core::{ComplexMatrix, DensityMatrix, C64};

use crate::args::{invalid, Axis, Complex, Grid, NumberList, Vector3};
use crate::config::FileConfig;
use crate::output::Output;

pub const FIG1_GRID: &str = "0.500001:1:200";
pub const FIG2_GRID: &str = "0.500001:1:100";
pub const FIG2_BETA_OMEGA: &str = "0.1,1,5";
pub const FIG3_GRID: &str = "0.01:100:41:log";
pub const SWEEP_GRID: &str = "1e-4:10:50:log";

/// Settings shared by every command once flags and config are merged.
pub struct Context<'a> {
    pub command: &'static str,
    pub file: &'a FileConfig,
    pub exec: Execution,
    pub quad: QuadratureConfig,
}

impl Context<'_> {
    fn pick<T>(&self, flag: Option<T>, key: &str) -> anyhow::Result<Option<T>>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        self.file.pick(flag, self.command, key)
    }

    fn pick_or<T>(&self, flag: Option<T>, key: &str, default: &str) -> anyhow::Result<T>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        match self.pick(flag, key)? {
            Some(v) => Ok(v),
            None => default
                .parse()
                .map_err(|e: T::Err| invalid(format!("default for {key}: {e}"))),
        }
    }
}

fn row(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("rows are built from object literals"),
    }
}

#[derive(Args, Debug, Default)]
pub struct Fig1Args {
    /// No-flip probability grid, start:stop:count[:log]
    #[arg(long)]
    pub grid: Option<Grid>,
}

pub fn fig1(a: Fig1Args, ctx: &Context) -> anyhow::Result<Output> {
    let grid = ctx.pick_or(a.grid, "grid", FIG1_GRID)?;
    let rows = recovery_gap_ground(&grid.points(), ctx.exec)?;
    Ok(Output::Rows(
        rows.iter()
            .map(|r| {
                row(json!({
                    "p": r.p,
                    "entropy_diff": r.entropy_diff,
                    "petz_bound": r.bound,
                    "printed_fidelity": r.printed_fidelity,
                }))
            })
            .collect(),
    ))
}

#[derive(Args, Debug, Default)]
pub struct Fig2Args {
    /// No-flip probability grid
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Comma separated βΩ values
    #[arg(long)]
    pub beta: Option<NumberList>,
}

pub fn fig2(a: Fig2Args, ctx: &Context) -> anyhow::Result<Output> {
    let grid = ctx.pick_or(a.grid, "grid", FIG2_GRID)?.points();
    let betas: NumberList = ctx.pick_or(a.beta, "beta", FIG2_BETA_OMEGA)?;
    let mut rows = Vec::new();
    for &b in &betas.0 {
        for r in recovery_gap_thermal(b, &grid, ctx.exec)? {
            rows.push(row(json!({
                "beta_omega": r.beta_omega,
                "p": r.p,
                "entropy_diff": r.entropy_diff,
                "bound": r.bound,
                "closed_form_diff": r.closed_form_diff,
                "closed_form_fidelity": r.closed_form_fidelity,
            })));
        }
    }
    Ok(Output::Rows(rows))
}

#[derive(Args, Debug, Default)]
pub struct Fig3Args {
    /// Temperature grid (1/β)
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Comma separated field masses [default: 0, 1/T, 5/T]
    #[arg(long)]
    pub mass: Option<NumberList>,
    /// Coupling strength [default: 0.1]
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Gaussian switching width [default: 1]
    #[arg(long = "T")]
    pub t: Option<f64>,
}

pub fn fig3(a: Fig3Args, ctx: &Context) -> anyhow::Result<Output> {
    let temps = ctx.pick_or(a.grid, "grid", FIG3_GRID)?.points();
    let lambda = ctx.pick_or(a.lambda, "lambda", "0.1")?;
    let t = ctx.pick_or(a.t, "T", "1")?;
    if !(t > 0.0) {
        return Err(invalid(format!("--T must be positive, got {t}")));
    }
    let masses = ctx.pick(a.mass, "mass")?.map_or_else(|| vec![0.0, 1.0 / t, 5.0 / t], |m| m.0);
    if let Some(&bad) = temps.iter().find(|&&x| !(x > 0.0)) {
        return Err(invalid(format!("temperatures must be positive, got {bad}")));
    }
    let mut profiles = Vec::with_capacity(masses.len() * temps.len());
    for &m in &masses {
        for &temp in &temps {
            profiles.push(SmearingProfile::new(lambda, t).with_mass(m).with_beta(1.0 / temp));
        }
    }
    let estimates = wightman_sweep(&profiles, &ctx.quad, ctx.exec)?;
    let mut rows = Vec::with_capacity(profiles.len());
    for (i, est) in estimates.iter().enumerate() {
        rows.push(row(json!({
            "temperature": temps[i % temps.len()],
            "mass": masses[i / temps.len()],
            "W": est.value,
            "S2_field": field_renyi2(est.value)?,
        })));
    }
    Ok(Output::Rows(rows))
}

#[derive(Args, Debug, Default)]
pub struct AnalyzeArgs {
    /// Raw ν as `re` or `re,im`; overrides the field-state options
    #[arg(long)]
    pub nu: Option<Complex>,
    /// Smeared two-point value W(f,f) [default: 0]
    #[arg(long)]
    pub w: Option<f64>,
    /// Field state: vacuum, thermal, coherent, squeezed or custom [default: vacuum]
    #[arg(long)]
    pub state: Option<String>,
    /// Inverse temperature label for thermal states
    #[arg(long)]
    pub beta: Option<f64>,
    /// Causal pairing E(α, f) of a coherent state
    #[arg(long)]
    pub e_alpha: Option<f64>,
    /// Causal pairing E(ζ, f) of a squeezed state
    #[arg(long)]
    pub e_zeta: Option<f64>,
    /// W(ζ, ζ) of a squeezed state
    #[arg(long)]
    pub w_zeta: Option<f64>,
    /// Re W(f, ζ) of a squeezed state
    #[arg(long)]
    pub re_w_f_zeta: Option<f64>,
    /// Monopole axis: x, y, z or nx,ny,nz [default: x]
    #[arg(long)]
    pub axis: Option<Axis>,
    /// delta or gapless [default: gapless]
    #[arg(long)]
    pub regime: Option<String>,
    /// Bloch vector of the detector input state [default: ground state 0,0,1]
    #[arg(long)]
    pub input: Option<Vector3>,
}

fn field_spec(a: &AnalyzeArgs, ctx: &Context) -> anyhow::Result<FieldStateSpec> {
    let w = ctx.pick_or(a.w, "w", "0")?;
    let kind: String = ctx.pick_or(a.state.clone(), "state", "vacuum")?;
    let zero = |v: Option<f64>, key: &str| ctx.pick_or(v, key, "0");
    let spec = match kind.as_str() {
        "vacuum" => FieldStateSpec::vacuum(w),
        "thermal" => FieldStateSpec::thermal(ctx.pick_or(a.beta, "beta", "1")?, w),
        "coherent" => FieldStateSpec::coherent(w, zero(a.e_alpha, "e_alpha")?),
        "squeezed" => FieldStateSpec::squeezed(
            w,
            zero(a.e_zeta, "e_zeta")?,
            zero(a.w_zeta, "w_zeta")?,
            zero(a.re_w_f_zeta, "re_w_f_zeta")?,
        ),
        "custom" => FieldStateSpec::custom(w),
        other => return Err(invalid(format!("unknown field state '{other}'"))),
    };
    spec.validate()?;
    Ok(spec)
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    let n = m.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

pub fn analyze(a: AnalyzeArgs, ctx: &Context) -> anyhow::Result<Output> {
    let axis = ctx.pick_or(a.axis, "axis", "x")?.0;
    let regime = match ctx.pick_or(a.regime.clone(), "regime", "gapless")?.as_str() {
        "gapless" => Regime::Gapless,
        "delta" => Regime::Delta,
        other => return Err(invalid(format!("unknown regime '{other}'"))),
    };
    let input = ctx.pick_or(a.input, "input", "0,0,1")?.0;
    let rho = DensityMatrix::from_bloch(input).map_err(|e| invalid(format!("--input: {e}")))?;

    let (params, w, state) = match ctx.pick(a.nu, "nu")? {
        Some(Complex(nu)) => {
            let params = ChannelParams::new(nu, axis, regime)?;
            // quasifree reading of |ν| for the field entropy
            let r = params.nu().norm();
            let w = if r > 0.0 { -0.5 * r.ln() } else { f64::INFINITY };
            (params, w, "raw_nu".to_string())
        }
        None => {
            let spec = field_spec(&a, ctx)?;
            let params = spec.channel_params(axis, regime)?;
            let kind = serde_json::to_value(spec.kind)?["kind"].as_str().unwrap_or("custom").to_string();
            (params, spec.effective_w()?, kind)
        }
    };

    let kraus = build_channel(&params);
    let choi = choi_matrix(&kraus)?;
    let choi_eigs = eig_hermitian(choi.matrix())?.eigenvalues().to_vec();
    let decomposition = mixed_unitary_decomposition(&params);
    let fixed = fixed_points(&params);
    let out = apply_channel(&kraus, &rho)?;
    let nu = params.nu();
    let report = json!({
        "state": state,
        "w": if w.is_finite() { Some(w) } else { None },
        "nu_re": nu.re,
        "nu_im": nu.im,
        "p": params.no_flip_weight(),
        "axis": axis,
        "regime": params.regime(),
        "kraus_labels": kraus.labels(),
        "kraus": kraus.ops().iter().map(matrix_json).collect::<Vec<_>>(),
        "mixed_unitary_labels": decomposition.labels,
        "mixed_unitary_weights": decomposition.probabilities,
        "choi_eigenvalues": choi_eigs,
        "negativity": negativity(&choi)?,
        "entanglement_breaking": is_entanglement_breaking(&kraus)?,
        "fixed_point_axis": fixed.axis,
        "fixed_point_t_min": fixed.t_min,
        "fixed_point_t_max": fixed.t_max,
        "cohering_power": cohering_power_from_nu(nu),
        "decohering_power": decohering_power_from_nu(nu),
        "field_renyi2": field_renyi2(w)?,
        "input_bloch": input,
        "output_bloch": out.bloch(),
        "detector_entropy": von_neumann_entropy(&out),
        "detector_renyi2": renyi_entropy(&out, 2.0)?,
    });
    Ok(Output::Report(row(report)))
}

#[derive(Args, Debug, Default)]
pub struct WightmanArgs {
    /// Coupling strength [default: 1]
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Gaussian switching width [default: 1]
    #[arg(long = "T")]
    pub t: Option<f64>,
    /// Field mass [default: 0]
    #[arg(long)]
    pub mass: Option<NumberList>,
    /// Inverse temperature; omit for the vacuum
    #[arg(long)]
    pub beta: Option<NumberList>,
    /// Width of a Gaussian spatial profile; omit for a pointlike detector
    #[arg(long)]
    pub sigma: Option<f64>,
}

pub fn wightman(a: WightmanArgs, ctx: &Context) -> anyhow::Result<Output> {
    let lambda = ctx.pick_or(a.lambda, "lambda", "1")?;
    let t = ctx.pick_or(a.t, "T", "1")?;
    let mass = ctx.pick_or(a.mass, "mass", "0")?.single("mass")?;
    let beta = match ctx.pick(a.beta, "beta")? {
        Some(b) => Some(b.single("beta")?),
        None => None,
    };
    let sigma = ctx.pick(a.sigma, "sigma")?;
    let mut profile = SmearingProfile::new(lambda, t).with_mass(mass);
    if let Some(b) = beta {
        profile = profile.with_beta(b);
    }
    if let Some(s) = sigma {
        profile = profile.with_spatial(Spatial::GaussianBall(s));
    }
    let est = smeared_wightman(&profile, &ctx.quad)?;
    let nu = (-2.0 * est.value).exp();
    Ok(Output::Report(row(json!({
        "lambda": lambda,
        "T": t,
        "mass": mass,
        "beta": beta,
        "sigma": sigma,
        "W": est.value,
        "abs_error": est.abs_error,
        "subdivisions": est.subdivisions,
        "cutoff_k": est.cutoff_k,
        "nu": nu,
        "p": 0.5 * (1.0 + nu),
    }))))
}

#[derive(Args, Debug, Default)]
pub struct OracleArgs {
    /// Field smearing φ_f = r_f x [default: √ln2]
    #[arg(long)]
    pub r_f: Option<f64>,
    /// Fock truncation [default: 64]
    #[arg(long)]
    pub dim: Option<usize>,
    /// vacuum, thermal, coherent or squeezed [default: vacuum]
    #[arg(long)]
    pub mode_state: Option<String>,
    /// Mode inverse temperature for thermal states [default: 1]
    #[arg(long)]
    pub beta: Option<NumberList>,
    /// Coherent amplitude `re,im` [default: 0.4,-0.3]
    #[arg(long)]
    pub alpha: Option<Complex>,
    /// Squeezing parameter [default: 0.3]
    #[arg(long)]
    pub squeeze: Option<f64>,
    /// Monopole axis [default: z]
    #[arg(long)]
    pub axis: Option<Axis>,
    /// Comma separated probe momenta v in φ_g = u x + v p [default: 0,0.7,-1.1]
    #[arg(long)]
    pub probe_v: Option<NumberList>,
    /// Run the full comparison grid instead of a single point
    #[arg(long)]
    pub full: bool,
}

fn report_fields(r: &udw_core::oracle::EquivalenceReport) -> anyhow::Result<Map<String, Value>> {
    let mut m = row(serde_json::to_value(r)?);
    m.insert("max_dev".into(), json!(r.max_dev()));
    Ok(m)
}

pub fn oracle(a: OracleArgs, ctx: &Context) -> anyhow::Result<Output> {
    let dim = ctx.pick_or(a.dim, "dim", &udw_core::oracle::DEFAULT_DIM.to_string())?;
    let full = a.full || ctx.pick::<bool>(None, "full")?.unwrap_or(false);
    if full {
        let grid = OracleGrid {
            dim,
            ..OracleGrid::default()
        };
        let mut m = Map::new();
        m.insert("dim".into(), json!(dim));
        m.extend(report_fields(&equivalence_report(&grid, ctx.exec)?)?);
        return Ok(Output::Report(m));
    }
    let r_f = ctx.pick_or(a.r_f, "r_f", &std::f64::consts::LN_2.sqrt().to_string())?;
    let state = match ctx.pick_or(a.mode_state.clone(), "mode_state", "vacuum")?.as_str() {
        "vacuum" => ModeState::Vacuum,
        "thermal" => ModeState::Thermal {
            beta: ctx.pick_or(a.beta, "beta", "1")?.single("beta")?,
        },
        "coherent" => {
            let z = ctx.pick_or(a.alpha, "alpha", "0.4,-0.3")?.0;
            ModeState::Coherent { re: z.re, im: z.im }
        }
        "squeezed" => ModeState::Squeezed {
            r: ctx.pick_or(a.squeeze, "squeeze", "0.3")?,
        },
        other => return Err(invalid(format!("unknown mode state '{other}'"))),
    };
    let axis = ctx.pick_or(a.axis, "axis", "z")?.0;
    let probes = ctx.pick_or(a.probe_v, "probe_v", "0,0.7,-1.1")?.0;
    let cfg = OracleConfig {
        r_f,
        dim,
        state,
        ..OracleConfig::default()
    };
    let report = compare_point(&cfg, axis, &probes)?;
    let oracle = oracle_nu(&cfg)?;
    let analytic: C64 = state.analytic_nu(r_f);
    let mut m = row(json!({
        "r_f": r_f,
        "dim": dim,
        "mode_state": state,
        "axis": axis,
        "tail_population": tail_population(&state.density(dim)?),
        "analytic_w": state.analytic_w(r_f),
        "oracle_nu_re": oracle.re,
        "oracle_nu_im": oracle.im,
        "analytic_nu_re": analytic.re,
        "analytic_nu_im": analytic.im,
    }));
    m.extend(report_fields(&report)?);
    Ok(Output::Report(m))
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    /// Grid of smeared two-point values W(f,f)
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Monopole axis [default: x]
    #[arg(long)]
    pub axis: Option<Axis>,
    /// Bloch vector of the detector input state [default: ground state 0,0,1]
    #[arg(long)]
    pub input: Option<Vector3>,
}

pub fn sweep(a: SweepArgs, ctx: &Context) -> anyhow::Result<Output> {
    let ws = ctx.pick_or(a.grid, "grid", SWEEP_GRID)?.points();
    let axis = ctx.pick_or(a.axis, "axis", "x")?.0;
    let input = ctx.pick_or(a.input, "input", "0,0,1")?.0;
    let rho = DensityMatrix::from_bloch(input).map_err(|e| invalid(format!("--input: {e}")))?;
    let rows = par::try_map(&ws, ctx.exec, |&w| -> anyhow::Result<Map<String, Value>> {
        let params = ChannelParams::from_wightman(w, axis)?;
        let kraus = build_channel(&params);
        let out = apply_channel(&kraus, &rho)?;
        Ok(row(json!({
            "W": w,
            "nu": params.nu().re,
            "p": params.no_flip_weight(),
            "negativity": negativity(&choi_matrix(&kraus)?)?,
            "entanglement_breaking": is_entanglement_breaking(&kraus)?,
            "decohering_power": decohering_power_from_nu(params.nu()),
            "S2_field": field_renyi2(w)?,
            "S2_detector": renyi_entropy(&out, 2.0)?,
        })))
    })?;
    Ok(Output::Rows(rows))
}

//! Tolerances and reporting for the acceptance checks.

use std::time::{Duration, Instant};

pub mod tolerances {
    /// Massless pointlike vacuum two-point value against `λ²/(4π)`.
    pub const WIGHTMAN_CLOSED_FORM: f64 = 1e-8;
    pub const WIGHTMAN_RUNTIME_S: f64 = 1.0;

    /// Detector Rényi-2 against `1 − log₂(1 + e^{−4W})`.
    pub const ENTROPY_PRODUCTION: f64 = 1e-12;

    pub const FIG3_LOW_T_MAX: f64 = 0.02;
    pub const FIG3_HIGH_T_MIN: f64 = 0.98;
    pub const FIG3_LOW_T: f64 = 0.01;
    pub const FIG3_HIGH_T: f64 = 100.0;
    pub const FIG3_LAMBDA: f64 = 0.1;
    /// Allowed decrease between neighbouring temperatures.
    pub const FIG3_MONOTONE_SLACK: f64 = 1e-9;
    pub const FIG3_RUNTIME_S: f64 = 60.0;

    pub const PETZ_MARGIN: f64 = -1e-9;
    pub const FIG1_POINTS: usize = 200;

    pub const FIG2_POINTS: usize = 50;
    pub const FIG2_LOW_T_AGREEMENT: f64 = 1e-3;
    pub const FIG2_HIGH_T_DIFF_MAX: f64 = 0.02;

    pub const RANDOM_SAMPLES: usize = 1000;
    pub const KRAUS_COMPLETENESS: f64 = 1e-10;
    /// "Exact" unitality, read as agreement to a few ulps of the entries of I/2.
    pub const UNITALITY: f64 = 4.0 * f64::EPSILON;
    pub const NEGATIVITY: f64 = 1e-10;
    pub const NEGATIVITY_POINTS: usize = 50;
    pub const EB_NU: f64 = 1e-10;

    pub const ORACLE_MAX_DEV: f64 = 1e-6;
    pub const ORACLE_RUNTIME_S: f64 = 120.0;

    pub const COHERENCE_POWER: f64 = 1e-12;
    pub const COHERENCE_POINTS: usize = 20;

    pub const DETERMINISM_JOBS: usize = 4;
}

pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {}: {} [{:.2}s] {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Runs one check. Errors count as failures.
pub fn check<F>(id: u32, title: &'static str, f: F) -> Outcome
where
    F: FnOnce() -> Result<(bool, String), String>,
{
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Log-spaced grid including both end points.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Simple header-plus-rows CSV as produced by `udwlab`.
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Csv {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or("empty csv")?
            .split(',')
            .map(String::from)
            .collect();
        let rows = lines
            .map(|l| {
                l.split(',')
                    .map(|c| c.parse::<f64>().map_err(|e| format!("{c}: {e}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { header, rows })
    }

    pub fn col(&self, name: &str) -> Result<Vec<f64>, String> {
        let i = self
            .header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| format!("missing column {name}"))?;
        Ok(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Runs `udwlab` in-process with the given arguments.
pub fn udwlab(args: &[&str]) -> Result<String, String> {
    let argv = std::iter::once("udwlab").chain(args.iter().copied());
    udwlab::render_args(argv).map_err(|e| format!("udwlab {}: {e:#}", args.join(" ")))
}

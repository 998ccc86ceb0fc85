//! Self-validation: the oracle checks behind `fgnsim validate`.

use std::fmt::Write as _;

use fgnsim_core::channels::{
    apply_fgn_map, initial_state, ChannelPartition, ConfigKind, InitialStateSpec, McPlan,
};
use fgnsim_core::closedform::{asymptote, eval_closed, ClosedFormId, ClosedMeasure};
use fgnsim_core::densemat::DensityMatrix;
use fgnsim_core::measures::{npartite_negativity, purity, vn_entropy, witness};
use fgnsim_core::noise::{beta_fgn, beta_quadrature, BetaValue};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::Result;

/// Signature of the noise map under test.
pub type MapFn = dyn Fn(&DensityMatrix, &ChannelPartition, &BetaValue) -> fgnsim_core::Result<DensityMatrix>
    + Sync;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const QUADRATURE_GRID: usize = 4096;
pub const QUADRATURE_REL_TOL: f64 = 1e-4;
pub const ZERO_PATTERN_TOL: f64 = 1e-12;
pub const MC_SAMPLES: usize = 10_000;
pub const MC_SEEDS: u64 = 20;
pub const MC_BETA: f64 = 0.25;
pub const REGRESSION_POINTS: usize = 51;
pub const REGRESSION_BETA_MAX: f64 = 10.0;
pub const ASYMPTOTE_BETA: f64 = 20.0;

// The Hurst exponent only labels a BetaValue here; every check is stated in beta.
const LABEL_HURST: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: impl Into<String>, worst: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            worst,
            tolerance,
            passed: worst <= tolerance,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Fixed-width pass/fail table.
    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{:<24} {:>12} {:>12}  result",
            "check", "worst", "tolerance"
        )
        .unwrap();
        for c in &self.checks {
            writeln!(
                s,
                "{:<24} {:>12.3e} {:>12.3e}  {}",
                c.name,
                c.worst,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
        let failed = self.failed().count();
        writeln!(s, "{} checks, {} failed", self.checks.len(), failed).unwrap();
        s
    }
}

/// Reference support of the evolved pure-GHZ state: entry `(u, v)` may be
/// nonzero only when `u ^ v` is in the returned set.
pub fn reference_support(kind: ConfigKind, x: usize) -> bool {
    match kind {
        ConfigKind::Clcq | ConfigKind::Tlcq => x.count_ones().is_multiple_of(2),
        ConfigKind::Blcq => matches!(x, 0b0000 | 0b0011 | 0b1100 | 0b1111),
        ConfigKind::Ilcq => matches!(x, 0b0000 | 0b1111),
        ConfigKind::Custom => true,
    }
}

fn ghz() -> DensityMatrix {
    initial_state(InitialStateSpec::new(1.0).expect("p = 1 is valid"))
}

fn beta(v: f64) -> Result<BetaValue> {
    Ok(BetaValue::from_variance(v, LABEL_HURST)?)
}

fn max_dev(it: impl Iterator<Item = f64>) -> f64 {
    // NaN deviations must fail, so they are mapped to infinity.
    it.map(|d| if d.is_nan() { f64::INFINITY } else { d.abs() })
        .fold(0.0, f64::max)
}

/// Worst relative error of the quadrature against the closed-form beta over
/// `tau in {0.5, 1, 2}`, `H in {0.01, 0.3, 0.5, 0.7, 0.9}`.
pub fn quadrature_deviation() -> Result<f64> {
    let grid: Vec<(f64, f64)> = [0.5, 1.0, 2.0]
        .iter()
        .flat_map(|&t| [0.01, 0.3, 0.5, 0.7, 0.9].map(|h| (t, h)))
        .collect();
    let devs: Vec<f64> = grid
        .par_iter()
        .map(|&(t, h)| -> Result<f64> {
            let exact = beta_fgn(t, h)?.value();
            Ok((beta_quadrature(t, h, QUADRATURE_GRID)? - exact) / exact)
        })
        .collect::<Result<_>>()?;
    Ok(max_dev(devs.into_iter()))
}

fn measure_of(id: ClosedFormId, rho: &DensityMatrix, rho0: &DensityMatrix) -> Result<f64> {
    Ok(match id.measure() {
        ClosedMeasure::Witness => witness(rho, rho0)?,
        ClosedMeasure::Purity => purity(rho),
    })
}

/// Worst `|simulated - printed|` over the regression grid.
pub fn closed_form_deviation(id: ClosedFormId, map: &MapFn) -> Result<f64> {
    let rho0 = ghz();
    let part = ChannelPartition::preset(id.config());
    let mut devs = Vec::with_capacity(REGRESSION_POINTS);
    for i in 0..REGRESSION_POINTS {
        let b = REGRESSION_BETA_MAX * i as f64 / (REGRESSION_POINTS - 1) as f64;
        let rho = map(&rho0, &part, &beta(b)?)?;
        devs.push(measure_of(id, &rho, &rho0)? - eval_closed(id, b)?);
    }
    Ok(max_dev(devs.into_iter()))
}

/// Worst `|simulated - limit|` at `beta = 20`.
pub fn asymptote_deviation(id: ClosedFormId, map: &MapFn) -> Result<f64> {
    let rho0 = ghz();
    let part = ChannelPartition::preset(id.config());
    let rho = map(&rho0, &part, &beta(ASYMPTOTE_BETA)?)?;
    Ok(max_dev(std::iter::once(
        measure_of(id, &rho, &rho0)? - asymptote(id),
    )))
}

/// Worst deviation of `(ER, NY, PY, VE)` from `(1/2, 1, 1, 0)` at `beta = 0`.
pub fn anchor_deviation(kind: ConfigKind, map: &MapFn) -> Result<f64> {
    let rho0 = ghz();
    let rho = map(&rho0, &ChannelPartition::preset(kind), &beta(0.0)?)?;
    Ok(max_dev(
        [
            witness(&rho, &rho0)? - 0.5,
            npartite_negativity(&rho)? - 1.0,
            purity(&rho) - 1.0,
            vn_entropy(&rho)?,
        ]
        .into_iter(),
    ))
}

/// Largest entry outside the reference support over `beta in {0.2, 2, 20}`.
pub fn zero_pattern_deviation(kind: ConfigKind, map: &MapFn) -> Result<f64> {
    let rho0 = ghz();
    let part = ChannelPartition::preset(kind);
    let mut worst: f64 = 0.0;
    for b in [0.2, 2.0, 20.0] {
        let rho = map(&rho0, &part, &beta(b)?)?;
        for u in 0..16 {
            for v in 0..16 {
                if !reference_support(kind, u ^ v) {
                    worst = worst.max(max_dev(std::iter::once(rho.get(u, v).norm())));
                }
            }
        }
    }
    Ok(worst)
}

/// Median over seeds `0..20` of the max-entry deviation between an
/// `M`-trajectory Monte Carlo estimate and the map, at `beta = 0.25`.
pub fn mc_median_deviation(kind: ConfigKind, samples: usize, map: &MapFn) -> Result<f64> {
    let rho0 = ghz();
    let part = ChannelPartition::preset(kind);
    let b = beta(MC_BETA)?;
    let exact = map(&rho0, &part, &b)?;
    let mut devs: Vec<f64> = (0..MC_SEEDS)
        .into_par_iter()
        .map(|seed| -> Result<f64> {
            let mc = McPlan::new(samples, seed).run::<ChaCha8Rng>(&rho0, &part, &b)?;
            Ok(mc.matrix().max_abs_diff(exact.matrix())?)
        })
        .collect::<Result<_>>()?;
    devs.sort_by(f64::total_cmp);
    let n = devs.len();
    Ok(if n % 2 == 1 {
        devs[n / 2]
    } else {
        0.5 * (devs[n / 2 - 1] + devs[n / 2])
    })
}

/// Runs every check against the production map.
pub fn run_checks(tol: f64) -> Result<ValidationReport> {
    run_checks_with(tol, &apply_fgn_map)
}

/// Runs every check against `map`. `tol` applies to the closed-form
/// regressions, anchors and asymptotes; the remaining checks carry their
/// own fixed tolerances.
pub fn run_checks_with(tol: f64, map: &MapFn) -> Result<ValidationReport> {
    if !(tol > 0.0) {
        return Err(fgnsim_core::Error::Domain("tolerance must be positive").into());
    }
    let mut checks = vec![CheckResult::new(
        "beta_quadrature",
        quadrature_deviation()?,
        QUADRATURE_REL_TOL,
    )];
    for id in ClosedFormId::all() {
        checks.push(CheckResult::new(
            format!("closed_form {id}"),
            closed_form_deviation(id, map)?,
            tol,
        ));
    }
    for kind in ConfigKind::PRESETS {
        checks.push(CheckResult::new(
            format!("anchor {kind}"),
            anchor_deviation(kind, map)?,
            tol,
        ));
    }
    for id in ClosedFormId::all() {
        checks.push(CheckResult::new(
            format!("asymptote {id}"),
            asymptote_deviation(id, map)?,
            tol,
        ));
    }
    for kind in ConfigKind::PRESETS {
        checks.push(CheckResult::new(
            format!("zero_pattern {kind}"),
            zero_pattern_deviation(kind, map)?,
            ZERO_PATTERN_TOL,
        ));
    }
    let mc_tol = 3.0 / (MC_SAMPLES as f64).sqrt();
    for kind in ConfigKind::PRESETS {
        checks.push(CheckResult::new(
            format!("mc_convergence {kind}"),
            mc_median_deviation(kind, MC_SAMPLES, map)?,
            mc_tol,
        ));
    }
    Ok(ValidationReport { checks })
}

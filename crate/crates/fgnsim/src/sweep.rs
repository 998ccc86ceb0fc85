//! Parameter sweeps over `(H, tau)` for one channel preset.

use std::env;

use fgnsim_core::channels::{
    apply_fgn_map, initial_state, mix64, ChannelPartition, InitialStateSpec, McPlan,
};
use fgnsim_core::measures::{evaluate_all, MeasureRecord, RecordMeta};
use fgnsim_core::noise::beta_fgn;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::SweepSpec;
use crate::{csv, svg, Result};

/// Environment variable capping the worker count (0 or unset: rayon default).
pub const THREADS_ENV: &str = "FGNSIM_THREADS";

/// One grid point: the exact record and, if requested, its Monte Carlo twin.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub exact: MeasureRecord,
    pub mc: Option<MeasureRecord>,
}

fn worker_count() -> usize {
    env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0)
}

/// Evaluates every grid point in `(H-major, tau-ascending)` order.
///
/// Rows are computed in parallel; row `i` seeds its Monte Carlo plan with
/// `mix64(seed, i)`, so the result does not depend on the thread count.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let rho0 = initial_state(InitialStateSpec::new(spec.p)?);
    let part = ChannelPartition::preset(spec.config);
    let taus = spec.taus();
    let grid: Vec<(f64, f64)> = spec
        .hurst
        .iter()
        .flat_map(|&h| taus.iter().map(move |&t| (h, t)))
        .collect();

    let eval_row = |(row, &(hurst, tau)): (usize, &(f64, f64))| -> Result<SweepRow> {
        let beta = beta_fgn(tau, hurst)?;
        let meta = RecordMeta {
            config: spec.config,
            hurst,
            p: spec.p,
            tau,
            beta: beta.value(),
        };
        let exact = evaluate_all(&apply_fgn_map(&rho0, &part, &beta)?, &rho0, meta)?;
        exact.check_bounds()?;
        let mc = if spec.mc_samples > 0 {
            let plan = McPlan::new(spec.mc_samples, mix64(spec.seed, row as u64));
            let state = plan.run::<ChaCha8Rng>(&rho0, &part, &beta)?;
            let mc = evaluate_all(&state, &rho0, meta)?;
            mc.check_bounds()?;
            Some(mc)
        } else {
            None
        };
        Ok(SweepRow { exact, mc })
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    pool.install(|| grid.par_iter().enumerate().map(eval_row).collect())
}

/// Runs the sweep and writes the CSV (and SVG panels if configured).
pub fn run_sweep_to_files(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let rows = run_sweep(spec)?;
    csv::write_atomic(&spec.out_csv, &csv::render(&rows))?;
    if let Some(prefix) = &spec.out_svg {
        let exact: Vec<MeasureRecord> = rows.iter().map(|r| r.exact).collect();
        svg::emit_svg(&exact, prefix)?;
    }
    Ok(rows)
}

/// Monte Carlo tolerance for `samples` trajectories: `5 / sqrt(M)`.
pub fn mc_tolerance(samples: usize) -> f64 {
    5.0 / (samples as f64).sqrt()
}

/// Largest `|x_mc - x|` over the four measures of every row with MC data.
pub fn mc_worst_deviation(rows: &[SweepRow]) -> Option<f64> {
    rows.iter()
        .filter_map(|r| {
            let m = r.mc.as_ref()?;
            let e = &r.exact;
            Some(
                [m.er - e.er, m.ny - e.ny, m.py - e.py, m.ve - e.ve]
                    .iter()
                    .fold(0.0f64, |acc, d| acc.max(d.abs())),
            )
        })
        .reduce(f64::max)
}

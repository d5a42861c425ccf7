//! The four subcommands as pure functions from settings to output text.

use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::RunConfig;
use super::csv::{heat_row, real, Cell, Table, AVERAGE_HEADER, HEAT_HEADER};
use crate::analytic::{heat_at, time_averaged_series, DEFAULT_QUAD_TOL};
use crate::diagnostics::{decomposition_audit, scan_violations, uniform_grid};
use crate::error::{Error, Result};
use crate::fock::{FockConfig, FockSimulation};
use crate::model::{HeatReport, Interaction, InteractionKind, OscillatorSystem, ThermalPreparation};

/// Presets shared by every figure: `ω = 1` and the pair `T = 100, 50` in both orders.
pub const FIGURE_OMEGA: f64 = 1.0;
pub const HOT_A: (f64, f64) = (100.0, 50.0);
pub const FIGURE_T_MAX: f64 = 50.0;
pub const FIGURE_SAMPLES: usize = 1001;
pub const AVERAGE_SAMPLES: usize = 500;
pub const COMPARE_T_MAX: f64 = 10.0;
pub const COMPARE_SAMPLES: usize = 101;
pub const COMPARE_TOLERANCE: f64 = 1e-6;
pub const SWEEP_T_MAX: f64 = 50.0;
pub const SWEEP_SAMPLES: usize = 501;
pub const AUDIT_LEVELS: usize = 20;
/// Environment variable capping the sweep's worker threads.
pub const THREADS_ENV: &str = "QSUB_THERMO_THREADS";

/// Text produced by a subcommand plus its exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Main output (CSV or report), written to `--out` or stdout.
    pub body: String,
    /// Summary lines for the terminal; empty when there are none.
    pub summary: String,
    pub code: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            body,
            summary: String::new(),
            code: 0,
        }
    }
}

fn hot_a() -> ThermalPreparation {
    ThermalPreparation::from_temperatures(HOT_A.0, HOT_A.1).expect("preset temperatures are valid")
}

fn series(sys: &OscillatorSystem, prep: &ThermalPreparation, grid: &[f64]) -> Result<Vec<HeatReport>> {
    grid.iter().map(|&t| heat_at(sys, prep, t)).collect()
}

/// Averaging windows `τ_k = k·t_max/n` for `k = 1..=n`.
fn tau_grid(t_max: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|k| t_max * k as f64 / n as f64).collect()
}

/// Analytic curves of figure `n` with the preset parameters.
pub fn figure(n: u8, run: &RunConfig) -> Result<Outcome> {
    let t_max = run.t_max.unwrap_or(FIGURE_T_MAX);
    let hot_a = hot_a();
    let hot_b = hot_a.swapped();
    let rwa = OscillatorSystem::rwa(FIGURE_OMEGA, 0.1)?;
    let table = match n {
        1 => {
            let grid = uniform_grid(t_max, run.samples.unwrap_or(FIGURE_SAMPLES));
            let mut table = Table::new(&["t", "dQ_ab_hot_a", "dQ_ab_hot_b"]);
            for (a, b) in series(&rwa, &hot_a, &grid)?.iter().zip(series(&rwa, &hot_b, &grid)?) {
                table.push(vec![a.t.into(), a.dq_ab.into(), b.dq_ab.into()]);
            }
            table
        }
        2 => {
            let grid = uniform_grid(t_max, run.samples.unwrap_or(FIGURE_SAMPLES));
            let linear = OscillatorSystem::linear(FIGURE_OMEGA, 0.1)?;
            let columns = [
                series(&linear, &hot_a, &grid)?,
                series(&linear, &hot_b, &grid)?,
                series(&rwa, &hot_a, &grid)?,
                series(&rwa, &hot_b, &grid)?,
            ];
            let mut table = Table::new(&[
                "t",
                "dQ_a_linear_hot_a",
                "dQ_a_linear_hot_b",
                "dQ_a_rwa_hot_a",
                "dQ_a_rwa_hot_b",
            ]);
            for (k, &t) in grid.iter().enumerate() {
                let mut row = vec![Cell::Real(t)];
                row.extend(columns.iter().map(|c| Cell::Real(c[k].dq_a)));
                table.push(row);
            }
            table
        }
        3 => {
            let grid = uniform_grid(t_max, run.samples.unwrap_or(FIGURE_SAMPLES));
            let sys = OscillatorSystem::linear(FIGURE_OMEGA, 0.49)?;
            let mut table = Table::new(&HEAT_HEADER);
            for r in series(&sys, &hot_a, &grid)? {
                table.push(heat_row(&r));
            }
            table
        }
        4 | 5 => {
            let g = if n == 4 { 0.49 } else { 0.51 };
            let taus = tau_grid(t_max, run.samples.unwrap_or(AVERAGE_SAMPLES));
            let linear = OscillatorSystem::linear(FIGURE_OMEGA, g)?;
            let avg = time_averaged_series(&linear, &hot_a, &taus, DEFAULT_QUAD_TOL)?;
            if n == 4 {
                let rwa = OscillatorSystem::rwa(FIGURE_OMEGA, g)?;
                let avg_rwa = time_averaged_series(&rwa, &hot_a, &taus, DEFAULT_QUAD_TOL)?;
                let mut table = Table::new(&["tau", "avg_dQ_ab", "avg_dQ_ab_rwa"]);
                for k in 0..taus.len() {
                    table.push(vec![taus[k].into(), avg[k].into(), avg_rwa[k].into()]);
                }
                table
            } else {
                let mut table = Table::new(&AVERAGE_HEADER);
                for (tau, a) in taus.iter().zip(&avg) {
                    table.push(vec![(*tau).into(), (*a).into()]);
                }
                table
            }
        }
        other => return Err(Error::Domain(format!("figure must be 1 to 5, got {other}"))),
    };
    Ok(Outcome::ok(table.render()))
}

/// Largest deviation of `oracle` from `analytic`, relative to the analytic peak
/// with an absolute floor.
fn column_deviation(analytic: &[f64], oracle: &[f64], floor: f64) -> f64 {
    let peak = analytic.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(floor);
    analytic
        .iter()
        .zip(oracle)
        .map(|(a, o)| (a - o).abs() / peak)
        .fold(0.0, f64::max)
}

/// Closed form against the Fock oracle on a uniform time grid.
pub fn compare(run: &RunConfig, tolerance: f64) -> Result<Outcome> {
    if !(tolerance > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tolerance}")));
    }
    let sys = run.system()?;
    let prep = run.preparation()?;
    heat_at(&sys, &prep, 0.0)?;
    let cfg = run.fock_config(&sys, &prep)?;
    let grid = uniform_grid(run.t_max.unwrap_or(COMPARE_T_MAX), run.samples.unwrap_or(COMPARE_SAMPLES));
    let oracle = FockSimulation::new(&sys, &prep, &cfg)?;

    let analytic = series(&sys, &prep, &grid)?;
    let numeric: Vec<HeatReport> = grid.iter().map(|&t| oracle.heat_report(t)).collect();

    let mut header: Vec<&str> = HEAT_HEADER.to_vec();
    header.extend(["oracle_dQ_a", "oracle_dQ_b", "oracle_dQ_ab", "oracle_dS0", "oracle_csl_ok"]);
    let mut table = Table::new(&header);
    for (a, o) in analytic.iter().zip(&numeric) {
        let mut row = heat_row(a);
        row.extend(heat_row(o).into_iter().skip(1));
        table.push(row);
    }

    let energy_floor = 1e-6 * sys.energy_scale();
    let entropy_floor = energy_floor * prep.beta_a().max(prep.beta_b());
    let pick = |rs: &[HeatReport], f: fn(&HeatReport) -> f64| rs.iter().map(f).collect::<Vec<_>>();
    let deviation = [
        column_deviation(&pick(&analytic, |r| r.dq_a), &pick(&numeric, |r| r.dq_a), energy_floor),
        column_deviation(&pick(&analytic, |r| r.dq_b), &pick(&numeric, |r| r.dq_b), energy_floor),
        column_deviation(&pick(&analytic, |r| r.ds0), &pick(&numeric, |r| r.ds0), entropy_floor),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let breach = !(deviation <= tolerance);
    let mut summary = String::new();
    let _ = writeln!(summary, "levels={}x{}", cfg.n_a, cfg.n_b);
    let _ = writeln!(summary, "max_rel_dev={}", real(deviation));
    let _ = writeln!(summary, "tolerance={}", real(tolerance));
    let _ = writeln!(summary, "status={}", if breach { "breach" } else { "ok" });
    Ok(Outcome {
        body: table.render(),
        summary,
        code: if breach { 4 } else { 0 },
    })
}

/// Commutator norms of the bare/interaction split.
pub fn audit(run: &RunConfig) -> Result<Outcome> {
    let sys = run.system()?;
    let cfg = FockConfig::uniform(run.fock_n.unwrap_or(AUDIT_LEVELS), run.tail_tol)?;
    let report = decomposition_audit(&sys, &cfg)?;
    let mut body = String::new();
    let _ = writeln!(body, "kind={}", sys.kind());
    let _ = writeln!(body, "levels={}", cfg.n_a);
    let _ = writeln!(body, "norm_H0V={}", real(report.norm_h0_v));
    let _ = writeln!(body, "norm_HV={}", real(report.norm_h_v));
    let _ = writeln!(body, "norm_H0H={}", real(report.norm_h0_h));
    let _ = writeln!(body, "csl_safe={}", report.csl_safe);
    Ok(Outcome::ok(body))
}

/// Grid of a sweep: coupling strengths and inverse-temperature gaps `β_b − β_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub g: Vec<f64>,
    pub dbeta: Vec<f64>,
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    match n {
        0 => Err(Error::Domain("a sweep axis needs at least one point".into())),
        1 => Ok(vec![lo]),
        _ => Ok((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()),
    }
}

/// Reads [`THREADS_ENV`]; `None` leaves the choice to rayon.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::Domain(format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))),
        },
    }
}

enum CellResult {
    Gap,
    Done {
        violations: usize,
        class: &'static str,
        worst: f64,
    },
}

/// Violation profile for every `(g, β_b − β_a)` cell, rows in grid order.
/// For the linear coupling, cells at `g = ω/2` are recorded as gaps.
pub fn sweep(run: &RunConfig, grid: &SweepGrid, threads: Option<usize>) -> Result<Outcome> {
    let t_max = run.t_max.unwrap_or(SWEEP_T_MAX);
    let samples = run.samples.unwrap_or(SWEEP_SAMPLES);
    let tau_threshold = run.tau_threshold();
    let mut cells = Vec::with_capacity(grid.g.len() * grid.dbeta.len());
    for &g in &grid.g {
        for &db in &grid.dbeta {
            let beta_b = run.beta_a + db;
            if !(beta_b > 0.0) {
                return Err(Error::Domain(format!(
                    "beta-b = beta-a + dbeta must stay positive, got {beta_b} at dbeta = {db}"
                )));
            }
            cells.push((g, beta_b));
        }
    }
    // Validate the settings once so that errors surface before any work is queued.
    let base = RunConfig { g: grid.g[0], ..run.clone() };
    base.system()?;
    base.preparation()?;
    if matches!(run.kind, InteractionKind::MinimalA | InteractionKind::MinimalB) {
        return Err(Error::Unsupported("sweeps use the closed forms (rwa, linear, none)".into()));
    }

    let evaluate = |&(g, beta_b): &(f64, f64)| -> Result<CellResult> {
        let cell = RunConfig { g, beta_b, ..run.clone() };
        let sys = cell.system()?;
        if let Interaction::Linear { g } = sys.interaction() {
            if (g - 0.5 * sys.omega_a()).abs() <= 1e-12 * sys.omega_a() {
                return Ok(CellResult::Gap);
            }
        }
        let profile = scan_violations(&sys, &cell.preparation()?, t_max, samples, tau_threshold)?;
        Ok(CellResult::Done {
            violations: profile.violations.len(),
            class: profile.classification.as_str(),
            worst: profile.worst_average_margin,
        })
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let results: Vec<CellResult> = pool.install(|| cells.par_iter().map(evaluate).collect::<Result<_>>())?;

    let mut table = Table::new(&[
        "g",
        "beta_a",
        "beta_b",
        "status",
        "violations",
        "classification",
        "worst_avg_margin",
    ]);
    let mut gaps = 0;
    for (&(g, beta_b), result) in cells.iter().zip(&results) {
        let mut row = vec![Cell::Real(g), Cell::Real(run.beta_a), Cell::Real(beta_b)];
        match result {
            CellResult::Gap => {
                gaps += 1;
                row.extend([
                    Cell::Text("gap".into()),
                    Cell::Text(String::new()),
                    Cell::Text(String::new()),
                    Cell::Text(String::new()),
                ]);
            }
            CellResult::Done {
                violations,
                class,
                worst,
            } => row.extend([
                Cell::Text("ok".into()),
                Cell::Int(*violations as i64),
                Cell::Text((*class).into()),
                Cell::Real(*worst),
            ]),
        }
        table.push(row);
    }
    let summary = format!("cells={}\ngaps={gaps}\n", table.len());
    Ok(Outcome {
        body: table.render(),
        summary,
        code: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(0.0, 1.0, 3).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(linspace(2.0, 5.0, 1).unwrap(), vec![2.0]);
        assert!(linspace(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn deviation_is_relative_to_peak() {
        assert_eq!(column_deviation(&[0.0, 2.0], &[0.0, 2.2], 1e-6), 0.10000000000000009);
        assert_eq!(column_deviation(&[0.0, 0.0], &[1e-12, 0.0], 1e-6), 1e-6);
    }

    #[test]
    fn tau_grid_excludes_zero() {
        assert_eq!(tau_grid(10.0, 4), vec![2.5, 5.0, 7.5, 10.0]);
    }
}

//! Branching-count sweep over random instances, reported as CSV.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::das::build_das;
use crate::dps::{build_dps_with, DpsOptions};
use crate::error::Result;
use crate::instances::{gen_random, Flavor};
use crate::subgraph::{verify_approx, verify_preserving};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub ks: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Vertices per terminal.
    pub density: usize,
    pub flavor: Flavor,
    /// Also count cross-window pairs lost at each recursion level.
    pub check_levels: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            ks: vec![4, 8, 16, 32, 64, 128],
            trials: 10,
            seed: 1,
            density: 4,
            flavor: Flavor::UnitPoint,
            check_levels: false,
        }
    }
}

/// One trial's measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trial {
    pub k: usize,
    pub seed: u64,
    pub das_branching: usize,
    pub dps_branching: usize,
    pub das_ok: bool,
    pub dps_ok: bool,
    /// Windows exceeding the per-window budget of added non-terminals.
    pub budget_violations: usize,
    pub level_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub k: usize,
    pub n: usize,
    pub trials: usize,
    pub das_mean: f64,
    pub das_max: usize,
    pub dps_mean: f64,
    pub dps_max: usize,
    /// `dps_max / (k log2 k)`.
    pub dps_max_ratio: f64,
    /// Least-squares `c` in `dps ~ c k log2 k` over the whole sweep.
    pub c_fit: f64,
    pub all_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub trials: Vec<Trial>,
    pub rows: Vec<Row>,
    pub c_fit: f64,
    /// Largest `dps_max_ratio` over the rows.
    pub c_max: f64,
}

pub fn k_log_k(k: usize) -> f64 {
    let k = k as f64;
    if k <= 1.0 {
        1.0
    } else {
        k * k.log2()
    }
}

/// Trial seeds are `seed * 1_000_003 + k * 1009 + trial`, so each cell of
/// the sweep is reproducible on its own.
pub fn run_trial(k: usize, trial: usize, cfg: &ExperimentConfig) -> Result<Trial> {
    let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(k as u64 * 1009).wrapping_add(trial as u64);
    let n = cfg.density.max(1) * k;
    let g = gen_random(n, k, seed, cfg.flavor)?;
    let das = build_das(&g)?;
    let dps = build_dps_with(&g, DpsOptions { check_levels: cfg.check_levels })?;
    Ok(Trial {
        k,
        seed,
        das_branching: das.subgraph.branching_vertices().0,
        dps_branching: dps.subgraph.branching_vertices().0,
        das_ok: verify_approx(&g, &das.subgraph, 1)?.ok,
        dps_ok: verify_preserving(&g, &dps.subgraph)?.ok,
        budget_violations: dps.stats.windows.iter().filter(|w| !w.within_budget()).count(),
        level_violations: dps.stats.level_violations,
    })
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let cells: Vec<(usize, usize)> = cfg.ks.iter().flat_map(|&k| (0..cfg.trials).map(move |t| (k, t))).collect();
    let trials = cells.par_iter().map(|&(k, t)| run_trial(k, t, cfg)).collect::<Result<Vec<_>>>()?;

    let (num, den) = trials.iter().fold((0.0, 0.0), |(a, b), t| {
        let x = k_log_k(t.k);
        (a + x * t.dps_branching as f64, b + x * x)
    });
    let c_fit = if den > 0.0 { num / den } else { 0.0 };

    let mut rows = Vec::new();
    for &k in &cfg.ks {
        let ts: Vec<&Trial> = trials.iter().filter(|t| t.k == k).collect();
        if ts.is_empty() {
            continue;
        }
        let cnt = ts.len() as f64;
        let dps_max = ts.iter().map(|t| t.dps_branching).max().unwrap();
        rows.push(Row {
            k,
            n: cfg.density.max(1) * k,
            trials: ts.len(),
            das_mean: ts.iter().map(|t| t.das_branching as f64).sum::<f64>() / cnt,
            das_max: ts.iter().map(|t| t.das_branching).max().unwrap(),
            dps_mean: ts.iter().map(|t| t.dps_branching as f64).sum::<f64>() / cnt,
            dps_max,
            dps_max_ratio: dps_max as f64 / k_log_k(k),
            c_fit,
            all_ok: ts.iter().all(|t| t.das_ok && t.dps_ok && t.budget_violations == 0 && t.level_violations == 0),
        });
    }
    let c_max = rows.iter().map(|r| r.dps_max_ratio).fold(0.0, f64::max);
    Ok(ExperimentReport { trials, rows, c_fit, c_max })
}

pub const CSV_HEADER: &str = "k,n,trials,das_mean,das_max,dps_mean,dps_max,dps_max_ratio,c_fit,all_ok";

pub fn to_csv(rep: &ExperimentReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &rep.rows {
        out.push_str(&format!(
            "{},{},{},{:.4},{},{:.4},{},{:.4},{:.4},{}\n",
            r.k, r.n, r.trials, r.das_mean, r.das_max, r.dps_mean, r.dps_max, r.dps_max_ratio, r.c_fit, r.all_ok
        ));
    }
    out
}

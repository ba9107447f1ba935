//! Experiment driver: problem setup, single runs, refinement and timing
//! studies, and CSV output.

pub mod config;
pub mod metrics;
pub mod problems;
pub mod studies;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use crate::error::Result;
use crate::grid::StateField;
use crate::solver::{integrate, SolverConfig};

pub use config::RunConfig;
pub use metrics::{
    dyadic_rates, dyadic_rates_above_floor, error_norms, overshoot, terminal_rate, total_variation,
    ERROR_FLOOR,
};
pub use problems::{exact_field, init_problem, AccuracyFunction, ProblemId, ProblemSpec};
pub use studies::{
    convergence_study, project, reconstruction_accuracy_study, reference_solution, timing_study,
};

/// Metrics for one grid of a run or study.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridResult {
    pub cells: usize,
    pub dx: f64,
    pub error_l1: Option<f64>,
    pub error_linf: Option<f64>,
    /// Rate against the previous (coarser) entry.
    pub rate_l1: Option<f64>,
    pub rate_linf: Option<f64>,
    /// Excursion of component 0 above / below the range of the initial data.
    pub overshoot: f64,
    pub undershoot: f64,
    pub total_variation: f64,
    pub fallbacks: u64,
    pub steps: usize,
    pub seconds: f64,
    pub weight_sets_per_reconstruction: f64,
}

/// One line of a timing study.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub scheme: String,
    pub cells: usize,
    pub median_seconds: f64,
    pub overhead_pct: f64,
    /// `(max - min) / median` of the timed repeats.
    pub spread: f64,
    pub weight_sets_per_reconstruction: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub label: String,
    pub grids: Vec<GridResult>,
    pub timings: Vec<TimingRow>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            ..Self::default()
        }
    }

    /// Fills `rate_l1`/`rate_linf` from consecutive errors, skipping pairs
    /// whose coarser error is at or below [`ERROR_FLOOR`].
    pub fn compute_rates(&mut self) {
        self.fill_rates(dyadic_rates);
    }

    /// Same, but levels with an error at or below [`ERROR_FLOOR`] take no
    /// part in any rate.
    pub fn compute_rates_above_floor(&mut self) {
        self.fill_rates(dyadic_rates_above_floor);
    }

    fn fill_rates(&mut self, rates: fn(&[f64], f64) -> Vec<Option<f64>>) {
        let l1: Vec<f64> = self
            .grids
            .iter()
            .map(|g| g.error_l1.unwrap_or(0.0))
            .collect();
        let li: Vec<f64> = self
            .grids
            .iter()
            .map(|g| g.error_linf.unwrap_or(0.0))
            .collect();
        let r1 = rates(&l1, ERROR_FLOOR);
        let ri = rates(&li, ERROR_FLOOR);
        for (i, g) in self.grids.iter_mut().enumerate() {
            g.rate_l1 = i.checked_sub(1).and_then(|k| r1[k]);
            g.rate_linf = i.checked_sub(1).and_then(|k| ri[k]);
        }
    }

    pub fn terminal_rate_l1(&self) -> Option<f64> {
        self.grids.iter().rev().find_map(|g| g.rate_l1)
    }

    pub fn terminal_rate_linf(&self) -> Option<f64> {
        self.grids.iter().rev().find_map(|g| g.rate_linf)
    }

    pub fn convergence_csv(&self) -> String {
        let mut s = String::from("dx,error_L1,rate_L1,error_Linf,rate_Linf\n");
        for g in &self.grids {
            let _ = writeln!(
                s,
                "{:e},{},{},{},{}",
                g.dx,
                opt(g.error_l1),
                g.rate_l1.map_or(String::new(), |r| format!("{r:.4}")),
                opt(g.error_linf),
                g.rate_linf.map_or(String::new(), |r| format!("{r:.4}"))
            );
        }
        s
    }

    pub fn timing_csv(&self) -> String {
        let mut s = String::from("scheme,cells,median_seconds,overhead_pct\n");
        for t in &self.timings {
            let _ = writeln!(
                s,
                "{},{},{:.6},{:.3}",
                t.scheme, t.cells, t.median_seconds, t.overhead_pct
            );
        }
        s
    }

    /// Human-readable summary.
    pub fn summary(&self) -> String {
        let mut s = format!("{}\n", self.label);
        if !self.grids.is_empty() {
            let _ = writeln!(
                s,
                "{:>8} {:>12} {:>12} {:>7} {:>12} {:>7} {:>10} {:>6}",
                "cells", "dx", "err_L1", "rate", "err_Linf", "rate", "seconds", "fallb"
            );
            for g in &self.grids {
                let _ = writeln!(
                    s,
                    "{:>8} {:>12.4e} {:>12} {:>7} {:>12} {:>7} {:>10.3} {:>6}",
                    g.cells,
                    g.dx,
                    g.error_l1.map_or("-".into(), |e| format!("{e:.4e}")),
                    g.rate_l1.map_or("-".into(), |r| format!("{r:.2}")),
                    g.error_linf.map_or("-".into(), |e| format!("{e:.4e}")),
                    g.rate_linf.map_or("-".into(), |r| format!("{r:.2}")),
                    g.seconds,
                    g.fallbacks
                );
            }
        }
        if !self.timings.is_empty() {
            let _ = writeln!(
                s,
                "{:>10} {:>8} {:>12} {:>10} {:>8} {:>8}",
                "scheme", "cells", "median_s", "overhead", "spread", "sets"
            );
            for t in &self.timings {
                let _ = writeln!(
                    s,
                    "{:>10} {:>8} {:>12.4} {:>9.2}% {:>7.1}% {:>8.3}",
                    t.scheme,
                    t.cells,
                    t.median_seconds,
                    t.overhead_pct,
                    100.0 * t.spread,
                    t.weight_sets_per_reconstruction
                );
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x:e}"))
}

/// `x_center,comp0[,comp1,comp2]` rows of the interior cells.
pub fn solution_csv(field: &StateField) -> String {
    let nc = field.n_comp();
    let mut s = String::from("x_center");
    for c in 0..nc {
        let _ = write!(s, ",comp{c}");
    }
    s.push('\n');
    let grid = field.grid();
    for i in 0..field.n_cells() {
        let _ = write!(s, "{:e}", grid.center(i as isize));
        for v in field.cell(i as isize) {
            let _ = write!(s, ",{v:e}");
        }
        s.push('\n');
    }
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

/// Solver settings for `spec` with the problem's own boundaries and final
/// time.
pub fn solver_config(spec: &ProblemSpec, run: &RunConfig) -> SolverConfig {
    let mut cfg = SolverConfig::new(run.recon(), spec.bcs, spec.final_time);
    cfg.cfl = run.cfl.unwrap_or(spec.cfl);
    cfg.char_projection = run.char_proj;
    cfg
}

/// Integrates `spec` on `cells` cells and measures the outcome. Errors are
/// filled in when the problem has a closed-form solution.
pub fn run_simulation(
    spec: &ProblemSpec,
    cells: usize,
    cfg: &SolverConfig,
) -> Result<(StateField, RunReport)> {
    let grid = spec.grid(cells)?;
    let mut field = init_problem(spec, &grid)?;
    let init0 = field.component(0);
    let lo = init0.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = init0.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut cfg = cfg.clone();
    cfg.bcs = spec.bcs;
    let start = Instant::now();
    let stats = integrate(&mut field, spec.model, &cfg)?;
    let seconds = start.elapsed().as_secs_f64();

    let (error_l1, error_linf) = match exact_field(spec, &grid, stats.time) {
        Some(exact) => {
            let (a, b) = error_norms(&field, &exact)?;
            (Some(a), Some(b))
        }
        None => (None, None),
    };
    let c0 = field.component(0);
    let (over, under) = metrics::over_under(&c0, lo, hi);
    let mut report = RunReport::new(format!(
        "{} N={} scheme={} cfl={}{}",
        spec.id,
        cells,
        cfg.recon.scheme,
        cfg.cfl,
        if cfg.char_projection { " char" } else { "" }
    ));
    report.grids.push(GridResult {
        cells,
        dx: grid.dx(),
        error_l1,
        error_linf,
        rate_l1: None,
        rate_linf: None,
        overshoot: over,
        undershoot: under,
        total_variation: total_variation(&c0),
        fallbacks: stats.fallbacks,
        steps: stats.steps,
        seconds,
        weight_sets_per_reconstruction: stats.counters.weight_sets_per_reconstruction(),
    });
    Ok((field, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruct::Scheme;

    #[test]
    fn smooth_advection_smoke() {
        let spec = ProblemSpec::new(ProblemId::SmoothAdvection);
        let run = RunConfig::default();
        let (field, rep) =
            run_simulation(&spec, run.cells_or(50), &solver_config(&spec, &run)).unwrap();
        let g = &rep.grids[0];
        assert!(g.error_l1.unwrap().is_finite() && g.error_l1.unwrap() < 1e-4);
        assert_eq!(g.fallbacks, 0);
        assert_eq!(g.weight_sets_per_reconstruction, 1.0);
        let csv = solution_csv(&field);
        assert!(csv.starts_with("x_center,comp0\n"));
        assert_eq!(csv.lines().count(), 51);
    }

    #[test]
    fn csv_headers() {
        let mut r = RunReport::new("t");
        for (n, e) in [(10, 1e-2), (20, 1e-2 / 128.0), (40, 1e-13)] {
            r.grids.push(GridResult {
                cells: n,
                dx: 1.0 / n as f64,
                error_l1: Some(e),
                error_linf: Some(e),
                ..GridResult::default()
            });
        }
        r.compute_rates();
        assert_eq!(r.grids[0].rate_l1, None);
        assert!((r.grids[1].rate_l1.unwrap() - 7.0).abs() < 1e-12);
        assert!(r.grids[2].rate_l1.is_some());
        r.compute_rates_above_floor();
        assert_eq!(r.grids[2].rate_l1, None);
        let csv = r.convergence_csv();
        assert!(csv.starts_with("dx,error_L1,rate_L1,error_Linf,rate_Linf\n"));
        assert_eq!(csv.lines().count(), 4);
        r.timings.push(TimingRow {
            scheme: Scheme::Cwz753.to_string(),
            cells: 200,
            median_seconds: 1.0,
            overhead_pct: 0.0,
            spread: 0.0,
            weight_sets_per_reconstruction: 1.0,
        });
        assert!(r
            .timing_csv()
            .starts_with("scheme,cells,median_seconds,overhead_pct\ncwz753,200,"));
    }
}

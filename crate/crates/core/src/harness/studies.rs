//! Grid-refinement, reference-solution and timing studies.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::grid::{StateField, GHOST_WIDTH};
use crate::reconstruct::{Counters, ReconstructionConfig, Scheme};
use crate::solver::{integrate, SolverConfig, GAUSS4_NODES, GAUSS4_WEIGHTS};

use super::metrics::error_norms;
use super::problems::{exact_field, init_problem, AccuracyFunction, ProblemSpec};
use super::{run_simulation, GridResult, RunReport, TimingRow};

/// Offset of the measurement point from the center of the reconstructed
/// cell, in units of `dx`. The cell is `[x - 0.45 dx, x + 0.55 dx]`.
pub const ACCURACY_OFFSET: f64 = -0.05;

/// Pointwise reconstruction error at the critical point of `f` for
/// `dx = 2^-j`, `j = j0..=j1`.
pub fn reconstruction_accuracy_study(
    f: AccuracyFunction,
    recon: &ReconstructionConfig,
    refinements: (u32, u32),
) -> Result<RunReport> {
    let (j0, j1) = refinements;
    if j0 > j1 || j1 > 40 {
        return Err(Error::InvalidArgument(format!(
            "bad refinement range {j0}..{j1}"
        )));
    }
    let x = f.critical_point();
    let mut report = RunReport::new(format!(
        "accuracy {} scheme={} mhat={} ell={} r={}",
        f.name(),
        recon.scheme,
        recon.mhat,
        recon.ell,
        recon.rexp[0]
    ));
    for j in j0..=j1 {
        let dx = 0.5f64.powi(j as i32);
        let center = x - ACCURACY_OFFSET * dx;
        let mut w = [0.0; 7];
        for (i, v) in w.iter_mut().enumerate() {
            let c = center + (i as f64 - 3.0) * dx;
            *v = GAUSS4_NODES
                .iter()
                .zip(GAUSS4_WEIGHTS)
                .map(|(t, wt)| wt * f.eval(c + t * dx))
                .sum();
        }
        let rec = recon.build(dx)?;
        let mut counters = Counters::default();
        let p = rec.reconstruct(&w, &mut counters).poly;
        let err = (p.eval(ACCURACY_OFFSET) - f.eval(x)).abs();
        report.grids.push(GridResult {
            cells: 1usize << j.min(63),
            dx,
            error_l1: Some(err),
            error_linf: Some(err),
            weight_sets_per_reconstruction: counters.weight_sets_per_reconstruction(),
            ..GridResult::default()
        });
    }
    report.compute_rates_above_floor();
    Ok(report)
}

/// Checks that `grids` is an increasing sequence of successive doublings.
pub fn check_dyadic(grids: &[usize]) -> Result<()> {
    if grids.len() < 2 {
        return Err(Error::InvalidArgument(
            "a refinement study needs at least two grids".into(),
        ));
    }
    for w in grids.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(Error::InvalidArgument(format!(
                "grids must double: {} -> {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Runs every grid and measures the error against the exact solution, or
/// against a reference on `8 * max(grids)` cells when none is known.
pub fn convergence_study(
    spec: &ProblemSpec,
    grids: &[usize],
    cfg: &SolverConfig,
) -> Result<RunReport> {
    check_dyadic(grids)?;
    let finest = *grids.last().expect("checked non-empty");
    let reference = match exact_field(spec, &spec.grid(1)?, 0.0) {
        Some(_) => None,
        None => Some(reference_solution(spec, 8 * finest)?),
    };
    let mut report = RunReport::new(format!(
        "convergence {} scheme={} cfl={}",
        spec.id, cfg.recon.scheme, cfg.cfl
    ));
    for &n in grids {
        let (field, mut rep) = run_simulation(spec, n, cfg)?;
        let mut g = rep.grids.remove(0);
        if let Some(r) = &reference {
            let (a, b) = error_norms(&field, &project(r, n)?)?;
            g.error_l1 = Some(a);
            g.error_linf = Some(b);
        }
        report.grids.push(g);
    }
    report.compute_rates();
    Ok(report)
}

/// Settings used for reference solutions: third-order CWENO in conservative
/// variables.
pub fn reference_config(spec: &ProblemSpec) -> SolverConfig {
    let recon = ReconstructionConfig::with_params(Scheme::Cweno { order: 3 }, 2, 2, 1.0);
    let mut cfg = SolverConfig::new(recon, spec.bcs, spec.final_time);
    cfg.cfl = spec.cfl;
    cfg
}

/// Fine-grid solution on `n_ref` cells.
pub fn reference_solution(spec: &ProblemSpec, n_ref: usize) -> Result<StateField> {
    let grid = spec.grid(n_ref)?;
    let mut field = init_problem(spec, &grid)?;
    integrate(&mut field, spec.model, &reference_config(spec))?;
    Ok(field)
}

/// Averages groups of `fine.n_cells() / n` consecutive cells.
pub fn project(fine: &StateField, n: usize) -> Result<StateField> {
    let nf = fine.n_cells();
    if n == 0 || nf % n != 0 {
        return Err(Error::InvalidGrid(format!(
            "cannot project {nf} cells onto {n}: not a divisor"
        )));
    }
    let k = nf / n;
    let nc = fine.n_comp();
    let g = fine.grid();
    let coarse = crate::grid::Grid::new(g.x_left(), g.x_right(), n)?;
    let src = fine.interior();
    let mut vals = vec![0.0; n * nc];
    for (i, out) in vals.chunks_exact_mut(nc).enumerate() {
        for cell in src[i * k * nc..(i + 1) * k * nc].chunks_exact(nc) {
            for (o, v) in out.iter_mut().zip(cell) {
                *o += v;
            }
        }
        for o in out.iter_mut() {
            *o /= k as f64;
        }
    }
    StateField::from_interior(coarse, nc, GHOST_WIDTH, &vals)
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Wall-clock comparison of `schemes` on each grid. Every configuration is
/// run once untimed, then `repeats` times; the median is reported.
/// Overheads are relative to CWZ(7;5;3x3) on the same grid when it is among
/// `schemes`, otherwise to the first scheme.
pub fn timing_study(
    spec: &ProblemSpec,
    grids: &[usize],
    schemes: &[Scheme],
    repeats: usize,
    base: &SolverConfig,
) -> Result<RunReport> {
    if repeats == 0 || schemes.is_empty() || grids.is_empty() {
        return Err(Error::InvalidArgument(
            "timing needs at least one grid, scheme and repeat".into(),
        ));
    }
    let mut report = RunReport::new(format!(
        "timing {} cfl={} repeats={repeats}{}",
        spec.id,
        base.cfl,
        if base.char_projection { " char" } else { "" }
    ));
    for &n in grids {
        let grid = spec.grid(n)?;
        let init = init_problem(spec, &grid)?;
        let mut rows = Vec::with_capacity(schemes.len());
        for &scheme in schemes {
            let mut cfg = base.clone();
            cfg.recon.scheme = scheme;
            cfg.bcs = spec.bcs;
            cfg.final_time = spec.final_time;
            let mut counters = Counters::default();
            let mut times = Vec::with_capacity(repeats);
            for rep in 0..=repeats {
                let mut field = init.clone();
                let start = Instant::now();
                let stats = integrate(&mut field, spec.model, &cfg)?;
                let t = start.elapsed().as_secs_f64();
                if rep > 0 {
                    times.push(t);
                }
                counters = stats.counters;
            }
            let lo = times.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = times.iter().copied().fold(0.0, f64::max);
            let med = median(&mut times);
            let spread = (hi - lo) / med;
            if spread > 0.1 {
                report.warnings.push(format!(
                    "{scheme} N={n}: run-to-run spread {:.1}% of the median",
                    100.0 * spread
                ));
            }
            rows.push(TimingRow {
                scheme: scheme.to_string(),
                cells: n,
                median_seconds: med,
                overhead_pct: 0.0,
                spread,
                weight_sets_per_reconstruction: counters.weight_sets_per_reconstruction(),
            });
        }
        let base_idx = schemes
            .iter()
            .position(|s| *s == Scheme::Cwz753)
            .unwrap_or(0);
        let t0 = rows[base_idx].median_seconds;
        for r in &mut rows {
            r.overhead_pct = (r.median_seconds / t0 - 1.0) * 100.0;
        }
        rows[base_idx].overhead_pct = 0.0;
        report.timings.extend(rows);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::problems::ProblemId;

    #[test]
    fn projection_identities() {
        let spec = ProblemSpec::new(ProblemId::ShuOsher);
        let grid = spec.grid(80).unwrap();
        let fine = init_problem(&spec, &grid).unwrap();
        let coarse = project(&fine, 4).unwrap();
        for i in 0..4isize {
            for c in 0..3 {
                let mean: f64 = (0..20).map(|k| fine.cell(20 * i + k)[c]).sum::<f64>() / 20.0;
                assert!((coarse.cell(i)[c] - mean).abs() < 1e-14);
            }
        }
        assert!(project(&fine, 7).is_err());

        let flat = StateField::from_interior(grid, 1, GHOST_WIDTH, &[0.7; 80]).unwrap();
        assert!(project(&flat, 10)
            .unwrap()
            .interior()
            .iter()
            .all(|v| (v - 0.7).abs() < 1e-15));
    }

    #[test]
    fn dyadic_check() {
        assert!(check_dyadic(&[25, 50, 100]).is_ok());
        assert!(check_dyadic(&[25, 50, 90]).is_err());
        assert!(check_dyadic(&[25]).is_err());
    }

    #[test]
    fn accuracy_study_smooth_function() {
        let rep = reconstruction_accuracy_study(
            AccuracyFunction::U0,
            &ReconstructionConfig::default(),
            (2, 6),
        )
        .unwrap();
        assert_eq!(rep.grids.len(), 5);
        assert!(rep.terminal_rate_linf().unwrap() > 6.0);
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}

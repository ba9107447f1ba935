//! wasm-bindgen entry points for the static demo page in `www/`.

use aorecon::grid::GHOST_WIDTH;
use aorecon::harness::{init_problem, ProblemId, ProblemSpec};
use aorecon::reconstruct::{validate_cwz753, Counters, ReconstructionConfig, Scheme};
use aorecon::solver::{integrate, SolverConfig};
use wasm_bindgen::prelude::*;

/// Largest grid the page may request; keeps a run under a few seconds.
pub const MAX_CELLS: usize = 1600;

/// Result of reconstructing one cell from seven averages.
#[derive(Debug, Clone, PartialEq)]
pub struct CellReconstruction {
    /// Nonlinear weights in the scheme's own order.
    pub weights: Vec<f64>,
    /// `samples` values of the polynomial on `[-1/2, 1/2]`, endpoints
    /// included.
    pub values: Vec<f64>,
}

fn recon_config(scheme: &str, mhat: i32, ell: i32, rexp: f64) -> Result<ReconstructionConfig, String> {
    let scheme: Scheme = scheme.parse().map_err(|e: aorecon::Error| e.to_string())?;
    Ok(ReconstructionConfig::with_params(scheme, mhat, ell, rexp))
}

pub fn reconstruct_cell(
    averages: &[f64],
    scheme: &str,
    mhat: i32,
    ell: i32,
    rexp: f64,
    dx: f64,
    samples: usize,
) -> Result<CellReconstruction, String> {
    let window: [f64; 7] = averages
        .try_into()
        .map_err(|_| format!("expected 7 cell averages, got {}", averages.len()))?;
    if samples < 2 {
        return Err("need at least two samples".into());
    }
    let rec = recon_config(scheme, mhat, ell, rexp)?
        .build(dx)
        .map_err(|e| e.to_string())?;
    let out = rec.reconstruct(&window, &mut Counters::default());
    let values = (0..samples)
        .map(|i| out.poly.eval(i as f64 / (samples - 1) as f64 - 0.5))
        .collect();
    Ok(CellReconstruction {
        weights: out.weights().to_vec(),
        values,
    })
}

/// Final first component (density or the advected scalar), interleaved as
/// `[x0, u0, x1, u1, ...]`.
pub fn simulate_problem(
    problem: &str,
    cells: usize,
    scheme: &str,
    char_proj: bool,
    final_time: Option<f64>,
) -> Result<Vec<f64>, String> {
    if cells == 0 || cells > MAX_CELLS {
        return Err(format!("cells must be in 1..={MAX_CELLS}"));
    }
    let id: ProblemId = problem.parse().map_err(|e: aorecon::Error| e.to_string())?;
    if matches!(id, ProblemId::Accuracy(_)) {
        return Err("accuracy functions are not time-dependent problems".into());
    }
    let spec = ProblemSpec::new(id);
    let grid = spec.grid(cells).map_err(|e| e.to_string())?;
    let mut field = init_problem(&spec, &grid).map_err(|e| e.to_string())?;
    debug_assert_eq!(field.ghost_width(), GHOST_WIDTH);
    let t = final_time.unwrap_or(spec.final_time).clamp(0.0, spec.final_time);
    let mut cfg = SolverConfig::new(recon_config(scheme, 4, 2, 1.0)?, spec.bcs, t);
    cfg.cfl = spec.cfl;
    cfg.char_projection = char_proj;
    integrate(&mut field, spec.model, &cfg).map_err(|e| e.to_string())?;
    let u = field.component(0);
    Ok((0..cells).flat_map(|i| [grid.center(i as isize), u[i]]).collect())
}

/// One line per critical-point order, preceded by a verdict line.
pub fn validation_text(mhat: i32, ell: i32, rexp: f64) -> Result<String, String> {
    let rep = validate_cwz753(mhat, ell, rexp).map_err(|e| e.to_string())?;
    let mut lines = vec![format!(
        "mhat={mhat} ell={ell} r={rexp}: {}",
        if rep.satisfied { "optimal order guaranteed" } else { "conditions violated" }
    )];
    for row in &rep.per_ncp {
        lines.push(format!(
            "n_cp={}{}: case {:?}, theta={} {}",
            row.n_cp,
            if row.open_ended { "+" } else { "" },
            row.case,
            row.theta,
            if row.satisfied { "ok".to_string() } else { format!("fails {:?}", row.violated) }
        ));
    }
    Ok(lines.join("\n"))
}

fn js_err(e: String) -> JsError {
    JsError::new(&e)
}

/// Returns the weights followed by the sampled polynomial:
/// `[n_weights, w..., v...]`.
#[wasm_bindgen]
pub fn reconstruct(
    averages: &[f64],
    scheme: &str,
    mhat: i32,
    ell: i32,
    rexp: f64,
    dx: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    let r = reconstruct_cell(averages, scheme, mhat, ell, rexp, dx, samples).map_err(js_err)?;
    let mut out = vec![r.weights.len() as f64];
    out.extend(r.weights);
    out.extend(r.values);
    Ok(out)
}

/// Negative `final_time` means the problem's own final time.
#[wasm_bindgen]
pub fn simulate(
    problem: &str,
    cells: usize,
    scheme: &str,
    char_proj: bool,
    final_time: f64,
) -> Result<Vec<f64>, JsError> {
    let t = (final_time >= 0.0).then_some(final_time);
    simulate_problem(problem, cells, scheme, char_proj, t).map_err(js_err)
}

#[wasm_bindgen]
pub fn validate(mhat: i32, ell: i32, rexp: f64) -> Result<String, JsError> {
    validation_text(mhat, ell, rexp).map_err(js_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_data_reconstructs_to_a_constant() {
        let r = reconstruct_cell(&[2.5; 7], "cwz753", 4, 2, 1.0, 0.01, 5).unwrap();
        assert_eq!(r.weights.len(), 5);
        assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(r.values.iter().all(|v| (v - 2.5).abs() < 1e-13));
    }

    #[test]
    fn step_data_shifts_weight_to_a_parabola() {
        let w = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0];
        let r = reconstruct_cell(&w, "cwz753", 4, 2, 1.0, 0.01, 3).unwrap();
        let q_left = r.weights[2];
        assert!(q_left > 0.9, "{:?}", r.weights);
    }

    #[test]
    fn bad_inputs_are_reported() {
        assert!(reconstruct_cell(&[1.0; 6], "cwz753", 4, 2, 1.0, 0.01, 5).is_err());
        assert!(reconstruct_cell(&[1.0; 7], "nope", 4, 2, 1.0, 0.01, 5).is_err());
        assert!(simulate_problem("jiang_shu", 0, "cwz753", false, None).is_err());
        assert!(simulate_problem("accuracy_u0", 50, "cwz753", false, None).is_err());
        assert!(validation_text(4, 0, 1.0).is_err());
    }

    #[test]
    fn short_advection_run_moves_the_profile() {
        let out = simulate_problem("smooth_advection", 40, "wao-ahz", false, Some(0.5)).unwrap();
        assert_eq!(out.len(), 80);
        // cell averages of sin(pi (x - 1/2)) = -cos(pi x)
        let h = std::f64::consts::PI * 0.05 / 2.0;
        for pair in out.chunks_exact(2) {
            let exact = -(std::f64::consts::PI * pair[0]).cos() * h.sin() / h;
            assert!((pair[1] - exact).abs() < 1e-6, "{pair:?}");
        }
    }

    #[test]
    fn sod_run_is_positive() {
        let out = simulate_problem("sod_spherical", 100, "cwz753", false, Some(0.1)).unwrap();
        assert!(out.chunks_exact(2).all(|p| p[1] > 0.0 && p[1].is_finite()));
    }

    #[test]
    fn validation_lines() {
        let text = validation_text(6, 1, 1.0).unwrap();
        assert!(text.starts_with("mhat=6 ell=1 r=1: conditions violated"));
        assert_eq!(text.lines().count(), 5);
    }
}

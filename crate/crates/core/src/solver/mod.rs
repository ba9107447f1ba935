//! Method-of-lines finite-volume solver: reconstruction at cell interfaces,
//! local Lax-Friedrichs fluxes, Gauss quadrature of sources, and explicit
//! Runge-Kutta time stepping.

pub mod quadrature;
pub mod rk;

use crate::error::{Error, Result};
use crate::grid::{apply_boundary_slice, Boundaries, Grid, StateField, GHOST_WIDTH};
use crate::physics::Model;
use crate::polykernel::Polynomial;
use crate::reconstruct::{Counters, ReconstructionConfig, Reconstructor};

pub use quadrature::{GaussRule, GAUSS4_NODES, GAUSS4_WEIGHTS};
pub use rk::{rk_step, RkTableau, RkWorkspace};

const MAX_COMP: usize = 3;

/// Settings of one time-dependent run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub cfl: f64,
    pub final_time: f64,
    pub recon: ReconstructionConfig,
    /// Reconstruct in the local characteristic variables of each cell.
    pub char_projection: bool,
    pub bcs: Boundaries,
}

impl SolverConfig {
    /// CFL 0.9, conservative variables.
    pub fn new(recon: ReconstructionConfig, bcs: Boundaries, final_time: f64) -> Self {
        Self {
            cfl: 0.9,
            final_time,
            recon,
            char_projection: false,
            bcs,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if !(self.final_time >= 0.0) || !self.final_time.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "final time must be finite and >= 0, got {}",
                self.final_time
            )));
        }
        Ok(())
    }
}

/// `(f(uL) + f(uR))/2 - alpha (uR - uL)/2` with `alpha` the larger of the
/// two maximal wave speeds.
pub fn llf_flux(ul: &[f64], ur: &[f64], model: &Model, out: &mut [f64]) -> Result<()> {
    let n = model.n_comp();
    if ul.len() != n || ur.len() != n || out.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: ul.len().min(ur.len()).min(out.len()),
        });
    }
    for u in [ul, ur] {
        if !model.is_admissible(u) {
            let p = model
                .gamma()
                .map(|g| (g - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]))
                .unwrap_or(f64::NAN);
            return Err(Error::Inadmissible { rho: u[0], p });
        }
    }
    llf(ul, ur, model, out);
    Ok(())
}

#[inline]
fn llf(ul: &[f64], ur: &[f64], model: &Model, out: &mut [f64]) {
    let n = out.len();
    let mut fl = [0.0; MAX_COMP];
    let mut fr = [0.0; MAX_COMP];
    model.flux(ul, &mut fl[..n]);
    model.flux(ur, &mut fr[..n]);
    let alpha = model.max_speed(ul).max(model.max_speed(ur));
    for c in 0..n {
        out[c] = 0.5 * (fl[c] + fr[c]) - 0.5 * alpha * (ur[c] - ul[c]);
    }
}

/// `cfl dx / max speed`, clamped to `remaining`. Non-finite speeds are
/// ignored here and caught by the non-finite check of the time loop.
pub fn stable_dt(field: &StateField, model: &Model, cfl: f64, remaining: f64) -> f64 {
    stable_dt_slice(field.interior(), model, cfl, field.grid().dx(), remaining)
}

fn stable_dt_slice(interior: &[f64], model: &Model, cfl: f64, dx: f64, remaining: f64) -> f64 {
    let speed = interior
        .chunks_exact(model.n_comp())
        .map(|u| model.max_speed(u))
        .fold(0.0f64, f64::max);
    if speed > 0.0 {
        (cfl * dx / speed).min(remaining)
    } else {
        remaining
    }
}

/// Cell averages of a pointwise initial condition by 4-node Gauss
/// quadrature. `f(x, out)` writes the state at `x`; ghosts are left zero.
pub fn cell_average_init<F>(grid: &Grid, n_comp: usize, f: F) -> StateField
where
    F: Fn(f64, &mut [f64]),
{
    let mut field = StateField::zeros(grid.clone(), n_comp, GHOST_WIDTH);
    let dx = grid.dx();
    let mut point = vec![0.0; n_comp];
    for i in 0..grid.n_cells() {
        let xc = grid.center(i as isize);
        let cell = field.cell_mut(i as isize);
        for (xi, w) in GAUSS4_NODES.iter().zip(GAUSS4_WEIGHTS) {
            f(xc + xi * dx, &mut point);
            for (c, p) in cell.iter_mut().zip(&point) {
                *c += w * p;
            }
        }
    }
    field
}

/// Scalar version of [`cell_average_init`].
pub fn cell_average_init_scalar(grid: &Grid, f: impl Fn(f64) -> f64) -> StateField {
    cell_average_init(grid, 1, |x, out| out[0] = f(x))
}

/// Semi-discrete operator `dU_i/dt = -(F_{i+1/2} - F_{i-1/2})/dx + S_i`,
/// with scratch space for one grid.
#[derive(Debug, Clone)]
pub struct Semidiscretization {
    grid: Grid,
    model: Model,
    bcs: Boundaries,
    char_projection: bool,
    rec: Reconstructor,
    /// Values at `xi = -1/2` and `xi = +1/2` of cells `-1..=n`.
    left: Vec<f64>,
    right: Vec<f64>,
    /// Source cell averages of cells `0..n`.
    source: Vec<f64>,
    pub counters: Counters,
    /// Cells reset to their average because a reconstructed value was
    /// inadmissible.
    pub fallbacks: u64,
}

impl Semidiscretization {
    pub fn new(grid: &Grid, model: Model, cfg: &SolverConfig) -> Result<Self> {
        cfg.validate()?;
        let n = grid.n_cells();
        let nc = model.n_comp();
        let rec = cfg.recon.build(grid.dx())?;
        Ok(Self {
            grid: grid.clone(),
            model,
            bcs: cfg.bcs,
            char_projection: cfg.char_projection && nc > 1,
            rec,
            left: vec![0.0; (n + 2) * nc],
            right: vec![0.0; (n + 2) * nc],
            source: vec![0.0; n * nc],
            counters: Counters::default(),
            fallbacks: 0,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    /// Length of the state vector including ghosts.
    pub fn state_len(&self) -> usize {
        (self.grid.n_cells() + 2 * GHOST_WIDTH) * self.model.n_comp()
    }

    /// Fills the ghosts of `values` (cell-major, [`GHOST_WIDTH`] ghosts) and
    /// writes the time derivative to `out`; ghost entries of `out` are zero.
    pub fn rhs(&mut self, values: &mut [f64], out: &mut [f64]) -> Result<()> {
        let n = self.grid.n_cells();
        let nc = self.model.n_comp();
        let len = self.state_len();
        if values.len() != len || out.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: values.len().min(out.len()),
            });
        }
        apply_boundary_slice(
            values,
            n,
            nc,
            GHOST_WIDTH,
            self.bcs,
            self.model.momentum_index(),
        )?;

        let dx = self.grid.dx();
        let with_source = self.model.has_source();
        for j in 0..n + 2 {
            let i = j as isize - 1;
            let base = (j + GHOST_WIDTH - 1 - 3) * nc;
            let mut polys = [Polynomial::constant(0.0); MAX_COMP];
            let basis = if self.char_projection {
                let avg = &values[(j + GHOST_WIDTH - 1) * nc..][..nc];
                self.model.char_basis(avg).ok().flatten()
            } else {
                None
            };
            let mut ok = true;
            for (q, poly) in polys.iter_mut().enumerate().take(nc) {
                let mut w = [0.0; 7];
                match &basis {
                    Some(b) => {
                        for (k, wk) in w.iter_mut().enumerate() {
                            let u = &values[base + k * nc..][..nc];
                            *wk = b.l[q][0] * u[0] + b.l[q][1] * u[1] + b.l[q][2] * u[2];
                        }
                    }
                    None => {
                        for (k, wk) in w.iter_mut().enumerate() {
                            *wk = values[base + k * nc + q];
                        }
                    }
                }
                *poly = self.rec.reconstruct(&w, &mut self.counters).poly;
            }

            let eval = |xi: f64, dst: &mut [f64]| {
                let mut v = [0.0; MAX_COMP];
                for q in 0..nc {
                    v[q] = polys[q].eval(xi);
                }
                match &basis {
                    Some(b) => {
                        for (c, d) in dst.iter_mut().enumerate() {
                            *d = b.r[c][0] * v[0] + b.r[c][1] * v[1] + b.r[c][2] * v[2];
                        }
                    }
                    None => dst.copy_from_slice(&v[..nc]),
                }
            };

            let interior = (0..n as isize).contains(&i);
            let mut nodes = [[0.0; MAX_COMP]; 4];
            if ok {
                eval(-0.5, &mut self.left[j * nc..(j + 1) * nc]);
                eval(0.5, &mut self.right[j * nc..(j + 1) * nc]);
                ok = self.model.is_admissible(&self.left[j * nc..(j + 1) * nc])
                    && self.model.is_admissible(&self.right[j * nc..(j + 1) * nc]);
                if ok && with_source && interior {
                    for (k, xi) in GAUSS4_NODES.iter().enumerate() {
                        eval(*xi, &mut nodes[k][..nc]);
                        ok &= self.model.is_admissible(&nodes[k][..nc]);
                    }
                }
            }
            if !ok {
                self.fallbacks += 1;
                let avg = &values[(j + GHOST_WIDTH - 1) * nc..][..nc];
                self.left[j * nc..(j + 1) * nc].copy_from_slice(avg);
                self.right[j * nc..(j + 1) * nc].copy_from_slice(avg);
                for node in nodes.iter_mut() {
                    node[..nc].copy_from_slice(avg);
                }
            }
            if with_source && interior {
                let xc = self.grid.center(i);
                let dst = &mut self.source[i as usize * nc..][..nc];
                dst.iter_mut().for_each(|d| *d = 0.0);
                let mut s = [0.0; MAX_COMP];
                for (k, (xi, w)) in GAUSS4_NODES.iter().zip(GAUSS4_WEIGHTS).enumerate() {
                    self.model
                        .source(&nodes[k][..nc], xc + xi * dx, &mut s[..nc]);
                    for c in 0..nc {
                        dst[c] += w * s[c];
                    }
                }
            }
        }

        out.iter_mut().for_each(|o| *o = 0.0);
        let inv_dx = 1.0 / dx;
        let mut f_prev = [0.0; MAX_COMP];
        let mut f_next = [0.0; MAX_COMP];
        // interface -1/2 between cells -1 and 0
        llf(
            &self.right[..nc],
            &self.left[nc..2 * nc],
            &self.model,
            &mut f_prev[..nc],
        );
        for i in 0..n {
            let jr = i + 1;
            llf(
                &self.right[jr * nc..(jr + 1) * nc],
                &self.left[(jr + 1) * nc..(jr + 2) * nc],
                &self.model,
                &mut f_next[..nc],
            );
            let o = &mut out[(i + GHOST_WIDTH) * nc..][..nc];
            for c in 0..nc {
                o[c] = -(f_next[c] - f_prev[c]) * inv_dx;
            }
            if with_source {
                for c in 0..nc {
                    o[c] += self.source[i * nc + c];
                }
            }
            f_prev = f_next;
        }
        Ok(())
    }
}

/// Outcome of [`integrate`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub steps: usize,
    pub fallbacks: u64,
    pub counters: Counters,
    pub time: f64,
}

/// Advances `field` to `cfg.final_time`, recomputing the time step from
/// the current state at every step.
pub fn integrate(field: &mut StateField, model: Model, cfg: &SolverConfig) -> Result<RunStats> {
    if field.ghost_width() != GHOST_WIDTH {
        return Err(Error::InvalidGrid(format!(
            "solver needs {GHOST_WIDTH} ghost cells, field has {}",
            field.ghost_width()
        )));
    }
    if field.n_comp() != model.n_comp() {
        return Err(Error::LengthMismatch {
            expected: model.n_comp(),
            got: field.n_comp(),
        });
    }
    let grid = field.grid().clone();
    let mut semi = Semidiscretization::new(&grid, model, cfg)?;
    let tab = RkTableau::rk7();
    let mut ws = RkWorkspace::new(semi.state_len());
    let nc = model.n_comp();
    let dx = grid.dx();

    check_finite(field.interior(), nc, 0)?;
    let mut t = 0.0;
    let mut steps = 0;
    while t < cfg.final_time {
        let remaining = cfg.final_time - t;
        let dt = stable_dt_slice(field.interior(), &model, cfg.cfl, dx, remaining);
        rk_step(&tab, field.values_mut(), t, dt, &mut ws, |_, y, k| {
            semi.rhs(y, k)
        })?;
        steps += 1;
        check_finite(field.interior(), nc, steps)?;
        t = if dt == remaining {
            cfg.final_time
        } else {
            t + dt
        };
    }
    field.apply_boundary(cfg.bcs, model.momentum_index())?;
    Ok(RunStats {
        steps,
        fallbacks: semi.fallbacks,
        counters: semi.counters,
        time: t,
    })
}

fn check_finite(interior: &[f64], nc: usize, step: usize) -> Result<()> {
    match interior.iter().position(|v| !v.is_finite()) {
        Some(pos) => Err(Error::NonFinite {
            cell: pos / nc,
            component: pos % nc,
            step,
        }),
        None => Ok(()),
    }
}

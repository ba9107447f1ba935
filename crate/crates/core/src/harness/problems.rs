//! Test problems: initial data, domains, boundary conditions.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Boundaries, BoundaryCondition, Grid, StateField};
use crate::physics::{prim_to_cons, Model, GAMMA};
use crate::solver::cell_average_init;

/// Smooth functions of the reconstruction accuracy study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AccuracyFunction {
    /// `exp(-x^2)` at `x = 0.2`, no critical point.
    U0,
    /// `sin(pi x - sin(pi x)/pi)` at its first-order critical point.
    U1,
    /// `1 + sin^3(pi x)` at `x = 0`, a critical point of order 2.
    U2,
}

impl AccuracyFunction {
    pub const ALL: [AccuracyFunction; 3] = [Self::U0, Self::U1, Self::U2];

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::U0 => (-x * x).exp(),
            Self::U1 => (PI * x - (PI * x).sin() / PI).sin(),
            Self::U2 => 1.0 + (PI * x).sin().powi(3),
        }
    }

    /// The point at which the reconstruction error is measured.
    pub fn critical_point(&self) -> f64 {
        match self {
            Self::U0 => 0.2,
            Self::U1 => 0.596_683_186_911_209,
            Self::U2 => 0.0,
        }
    }

    /// Order of the critical point (number of vanishing derivatives).
    pub fn n_cp(&self) -> usize {
        match self {
            Self::U0 => 0,
            Self::U1 => 1,
            Self::U2 => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::U0 => "u0",
            Self::U1 => "u1",
            Self::U2 => "u2",
        }
    }
}

impl FromStr for AccuracyFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "u0" | "accuracy_u0" => Ok(Self::U0),
            "u1" | "accuracy_u1" => Ok(Self::U1),
            "u2" | "accuracy_u2" => Ok(Self::U2),
            other => Err(Error::InvalidArgument(format!(
                "unknown function '{other}'"
            ))),
        }
    }
}

/// Problem identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    Accuracy(AccuracyFunction),
    JiangShu,
    ShuOsher,
    Lax,
    SodSpherical,
    SmoothAdvection,
}

impl ProblemId {
    pub const ALL: [ProblemId; 8] = [
        ProblemId::Accuracy(AccuracyFunction::U0),
        ProblemId::Accuracy(AccuracyFunction::U1),
        ProblemId::Accuracy(AccuracyFunction::U2),
        ProblemId::JiangShu,
        ProblemId::ShuOsher,
        ProblemId::Lax,
        ProblemId::SodSpherical,
        ProblemId::SmoothAdvection,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProblemId::Accuracy(AccuracyFunction::U0) => "accuracy_u0",
            ProblemId::Accuracy(AccuracyFunction::U1) => "accuracy_u1",
            ProblemId::Accuracy(AccuracyFunction::U2) => "accuracy_u2",
            ProblemId::JiangShu => "jiang_shu",
            ProblemId::ShuOsher => "shu_osher",
            ProblemId::Lax => "lax",
            ProblemId::SodSpherical => "sod_spherical",
            ProblemId::SmoothAdvection => "smooth_advection",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        ProblemId::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown problem '{s}'")))
    }
}

/// Everything needed to set up a run apart from the grid size and scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub domain: (f64, f64),
    pub final_time: f64,
    pub bcs: Boundaries,
    pub model: Model,
    pub cfl: f64,
}

const JS_A: f64 = 0.5;
const JS_Z: f64 = -0.7;
const JS_DELTA: f64 = 0.005;
const JS_ALPHA: f64 = 10.0;

fn js_g(x: f64, z: f64) -> f64 {
    let beta = std::f64::consts::LN_2 / (36.0 * JS_DELTA * JS_DELTA);
    (-beta * (x - z).powi(2)).exp()
}

fn js_f(x: f64, a: f64) -> f64 {
    (1.0 - JS_ALPHA * JS_ALPHA * (x - a).powi(2))
        .max(0.0)
        .sqrt()
}

/// Gaussian, square wave, triangle and half ellipse on `[-1, 1]`.
pub fn jiang_shu_profile(x: f64) -> f64 {
    if (-0.8..=-0.6).contains(&x) {
        (js_g(x, JS_Z - JS_DELTA) + js_g(x, JS_Z + JS_DELTA) + 4.0 * js_g(x, JS_Z)) / 6.0
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (js_f(x, JS_A - JS_DELTA) + js_f(x, JS_A + JS_DELTA) + 4.0 * js_f(x, JS_A)) / 6.0
    } else {
        0.0
    }
}

impl ProblemSpec {
    pub fn new(id: ProblemId) -> Self {
        let free = Boundaries::both(BoundaryCondition::FreeFlow);
        let (domain, final_time, bcs, model, cfl) = match id {
            ProblemId::Accuracy(_) => (
                (-1.0, 1.0),
                0.0,
                Boundaries::periodic(),
                Model::advection(),
                0.9,
            ),
            ProblemId::JiangShu => (
                (-1.0, 1.0),
                8.0,
                Boundaries::periodic(),
                Model::advection(),
                0.9,
            ),
            ProblemId::SmoothAdvection => (
                (-1.0, 1.0),
                2.0,
                Boundaries::periodic(),
                Model::advection(),
                0.9,
            ),
            ProblemId::ShuOsher => ((-5.0, 5.0), 1.8, free, Model::euler(), 0.75),
            ProblemId::Lax => ((0.0, 1.0), 0.15, free, Model::euler(), 0.9),
            ProblemId::SodSpherical => (
                (0.0, 1.0),
                0.5,
                Boundaries {
                    left: BoundaryCondition::ReflectingWall,
                    right: BoundaryCondition::FreeFlow,
                },
                Model::RadialEuler {
                    gamma: GAMMA,
                    dim: 3,
                },
                0.9,
            ),
        };
        Self {
            id,
            domain,
            final_time,
            bcs,
            model,
            cfl,
        }
    }

    pub fn grid(&self, n_cells: usize) -> Result<Grid> {
        Grid::new(self.domain.0, self.domain.1, n_cells)
    }

    /// Pointwise initial state at `x` in conserved variables.
    pub fn initial_state(&self, x: f64, out: &mut [f64]) {
        let euler = |rho: f64, u: f64, p: f64, out: &mut [f64]| {
            let s = prim_to_cons(rho, u, p, GAMMA).expect("initial data is admissible");
            out.copy_from_slice(&s.to_array());
        };
        match self.id {
            ProblemId::Accuracy(f) => out[0] = f.eval(x),
            ProblemId::JiangShu => out[0] = jiang_shu_profile(x),
            ProblemId::SmoothAdvection => out[0] = (PI * x).sin(),
            ProblemId::ShuOsher => {
                if x < -4.0 {
                    euler(3.857143, 2.629369, 10.333333, out)
                } else {
                    euler(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0, out)
                }
            }
            ProblemId::Lax => {
                if x < 0.5 {
                    euler(0.445, 0.6989, 3.5277, out)
                } else {
                    euler(0.5, 0.0, 0.571, out)
                }
            }
            ProblemId::SodSpherical => {
                if x < 0.5 {
                    euler(1.0, 0.0, 1.0, out)
                } else {
                    euler(0.125, 0.0, 0.1, out)
                }
            }
        }
    }

    /// Exact solution at time `t`, when one is known in closed form.
    pub fn exact_state(&self, x: f64, t: f64, out: &mut [f64]) -> bool {
        match (self.id, self.model) {
            (ProblemId::JiangShu | ProblemId::SmoothAdvection, Model::Advection { velocity }) => {
                let (a, b) = self.domain;
                let y = (x - velocity * t - a).rem_euclid(b - a) + a;
                self.initial_state(y, out);
                true
            }
            _ => false,
        }
    }
}

/// Cell averages of the initial data by 4-node Gauss quadrature.
pub fn init_problem(spec: &ProblemSpec, grid: &Grid) -> Result<StateField> {
    let (a, b) = spec.domain;
    let tol = 1e-12 * (b - a);
    if (grid.x_left() - a).abs() > tol || (grid.x_right() - b).abs() > tol {
        return Err(Error::InvalidGrid(format!(
            "grid [{}, {}] does not cover the domain [{a}, {b}] of {}",
            grid.x_left(),
            grid.x_right(),
            spec.id
        )));
    }
    Ok(cell_average_init(grid, spec.model.n_comp(), |x, out| {
        spec.initial_state(x, out)
    }))
}

/// Cell averages of the exact solution at time `t`, if available.
pub fn exact_field(spec: &ProblemSpec, grid: &Grid, t: f64) -> Option<StateField> {
    let mut probe = vec![0.0; spec.model.n_comp()];
    if !spec.exact_state(grid.x_left(), t, &mut probe) {
        return None;
    }
    Some(cell_average_init(grid, spec.model.n_comp(), |x, out| {
        spec.exact_state(x, t, out);
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::{cons_to_prim, EulerState};

    #[test]
    fn names_round_trip() {
        for id in ProblemId::ALL {
            assert_eq!(id.name().parse::<ProblemId>().unwrap(), id);
        }
        assert!("riemann".parse::<ProblemId>().is_err());
    }

    #[test]
    fn jiang_shu_values() {
        assert_eq!(jiang_shu_profile(-0.3), 1.0);
        assert_eq!(jiang_shu_profile(0.9), 0.0);
        assert!((jiang_shu_profile(0.1) - 1.0).abs() < 1e-14);
        // at the centers the side terms are exp(-ln2/36) and sqrt(1 - 100 delta^2)
        let g = (2.0 * 2f64.powf(-1.0 / 36.0) + 4.0) / 6.0;
        assert!((jiang_shu_profile(-0.7) - g).abs() < 1e-14);
        let f = (2.0 * (1.0f64 - 0.0025).sqrt() + 4.0) / 6.0;
        assert!((jiang_shu_profile(0.5) - f).abs() < 1e-14);
    }

    #[test]
    fn euler_initial_states() {
        let spec = ProblemSpec::new(ProblemId::ShuOsher);
        let mut u = [0.0; 3];
        spec.initial_state(-4.5, &mut u);
        let (r, v, p) = cons_to_prim(&EulerState::from_slice(&u), GAMMA).unwrap();
        assert!((r - 3.857143).abs() < 1e-14);
        assert!((v - 2.629369).abs() < 1e-14);
        assert!((p - 10.333333).abs() < 1e-13);

        let spec = ProblemSpec::new(ProblemId::SodSpherical);
        spec.initial_state(0.25, &mut u);
        let (r, v, p) = cons_to_prim(&EulerState::from_slice(&u), GAMMA).unwrap();
        assert_eq!((r, v), (1.0, 0.0));
        assert!((p - 1.0).abs() < 1e-15);
        assert!(spec.model.has_source());
    }

    #[test]
    fn accuracy_critical_points() {
        // u1' vanishes at the tabulated point
        let f = AccuracyFunction::U1;
        let x = f.critical_point();
        let h = 1e-6;
        let d = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
        assert!(d.abs() < 1e-8);
    }

    #[test]
    fn advection_exact_is_periodic_shift() {
        let spec = ProblemSpec::new(ProblemId::SmoothAdvection);
        let mut a = [0.0];
        let mut b = [0.0];
        spec.exact_state(0.3, 2.0, &mut a);
        spec.initial_state(0.3, &mut b);
        assert!((a[0] - b[0]).abs() < 1e-14);
        spec.exact_state(0.3, 0.5, &mut a);
        assert!((a[0] - (PI * -0.2).sin()).abs() < 1e-14);
        assert!(exact_field(
            &ProblemSpec::new(ProblemId::Lax),
            &Grid::new(0.0, 1.0, 4).unwrap(),
            0.1
        )
        .is_none());
    }

    #[test]
    fn grid_must_match_domain() {
        let spec = ProblemSpec::new(ProblemId::Lax);
        assert!(init_problem(&spec, &Grid::new(0.0, 2.0, 8).unwrap()).is_err());
        let f = init_problem(&spec, &spec.grid(8).unwrap()).unwrap();
        assert_eq!(f.n_comp(), 3);
    }
}

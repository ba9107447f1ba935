//! Flux models: scalar advection, the 1D Euler equations of an ideal gas,
//! and radially symmetric Euler with its geometric source.

use crate::error::{Error, Result};

/// Ratio of specific heats used throughout.
pub const GAMMA: f64 = 1.4;

/// Conserved Euler variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerState {
    pub rho: f64,
    /// Momentum `rho u`.
    pub m: f64,
    /// Total energy per unit volume.
    pub e: f64,
}

impl EulerState {
    pub fn new(rho: f64, m: f64, e: f64) -> Self {
        Self { rho, m, e }
    }

    pub fn from_slice(u: &[f64]) -> Self {
        Self::new(u[0], u[1], u[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.rho, self.m, self.e]
    }

    pub fn pressure(&self, gamma: f64) -> f64 {
        (gamma - 1.0) * (self.e - 0.5 * self.m * self.m / self.rho)
    }

    pub fn is_admissible(&self, gamma: f64) -> bool {
        self.rho > 0.0 && self.pressure(gamma) > 0.0 && self.e.is_finite() && self.m.is_finite()
    }

    fn checked(&self, gamma: f64) -> Result<(f64, f64, f64)> {
        let p = self.pressure(gamma);
        if !(self.rho > 0.0 && p > 0.0) || !self.m.is_finite() || !self.e.is_finite() {
            return Err(Error::Inadmissible { rho: self.rho, p });
        }
        Ok((self.rho, self.m / self.rho, p))
    }
}

pub fn prim_to_cons(rho: f64, u: f64, p: f64, gamma: f64) -> Result<EulerState> {
    if !(rho > 0.0 && p > 0.0) || !u.is_finite() {
        return Err(Error::Inadmissible { rho, p });
    }
    Ok(EulerState::new(
        rho,
        rho * u,
        p / (gamma - 1.0) + 0.5 * rho * u * u,
    ))
}

pub fn cons_to_prim(state: &EulerState, gamma: f64) -> Result<(f64, f64, f64)> {
    state.checked(gamma)
}

/// `(rho u, rho u^2 + p, u (E + p))`.
pub fn euler_flux(state: &EulerState, gamma: f64) -> Result<[f64; 3]> {
    let (_, u, p) = state.checked(gamma)?;
    Ok([state.m, state.m * u + p, u * (state.e + p)])
}

/// `|u| + c`.
pub fn euler_max_speed(state: &EulerState, gamma: f64) -> Result<f64> {
    let (rho, u, p) = state.checked(gamma)?;
    Ok(u.abs() + (gamma * p / rho).sqrt())
}

/// `-(d-1)/sigma (rho u, rho u^2, u p)`.
pub fn radial_source(state: &EulerState, sigma: f64, dim: u32, gamma: f64) -> Result<[f64; 3]> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {sigma}"
        )));
    }
    let (_, u, p) = state.checked(gamma)?;
    let f = -(dim as f64 - 1.0) / sigma;
    Ok([f * state.m, f * state.m * u, f * u * p])
}

/// Left and right eigenvectors; `r` holds the right eigenvectors as
/// columns, ordered by eigenvalue `u-c, u, u+c`, and `l = r^-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharBasis {
    pub l: [[f64; 3]; 3],
    pub r: [[f64; 3]; 3],
}

pub fn char_basis(state: &EulerState, gamma: f64) -> Result<CharBasis> {
    let (rho, u, p) = state.checked(gamma)?;
    let c2 = gamma * p / rho;
    let c = c2.sqrt();
    let h = (state.e + p) / rho;
    let b1 = (gamma - 1.0) / c2;
    let b2 = 0.5 * b1 * u * u;
    let r = [
        [1.0, 1.0, 1.0],
        [u - c, u, u + c],
        [h - u * c, 0.5 * u * u, h + u * c],
    ];
    let l = [
        [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), 0.5 * b1],
        [1.0 - b2, b1 * u, -b1],
        [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), 0.5 * b1],
    ];
    Ok(CharBasis { l, r })
}

/// PDE model driven by the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// `u_t + a u_x = 0`.
    Advection {
        velocity: f64,
    },
    Euler {
        gamma: f64,
    },
    /// Euler in `dim` space dimensions with radial symmetry; the
    /// coordinate is the radius.
    RadialEuler {
        gamma: f64,
        dim: u32,
    },
}

impl Model {
    pub fn advection() -> Self {
        Model::Advection { velocity: 1.0 }
    }

    pub fn euler() -> Self {
        Model::Euler { gamma: GAMMA }
    }

    pub fn n_comp(&self) -> usize {
        match self {
            Model::Advection { .. } => 1,
            _ => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Advection { .. } => "advection",
            Model::Euler { .. } => "euler",
            Model::RadialEuler { .. } => "radial-euler",
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match *self {
            Model::Advection { .. } => None,
            Model::Euler { gamma } | Model::RadialEuler { gamma, .. } => Some(gamma),
        }
    }

    /// Component negated by reflecting walls.
    pub fn momentum_index(&self) -> Option<usize> {
        match self {
            Model::Advection { .. } => None,
            _ => Some(1),
        }
    }

    pub fn has_source(&self) -> bool {
        matches!(self, Model::RadialEuler { dim, .. } if *dim > 1)
    }

    #[inline]
    pub fn is_admissible(&self, u: &[f64]) -> bool {
        match *self {
            Model::Advection { .. } => u[0].is_finite(),
            Model::Euler { gamma } | Model::RadialEuler { gamma, .. } => {
                EulerState::from_slice(u).is_admissible(gamma)
            }
        }
    }

    /// Physical flux; the state must be admissible.
    #[inline]
    pub fn flux(&self, u: &[f64], out: &mut [f64]) {
        match *self {
            Model::Advection { velocity } => out[0] = velocity * u[0],
            Model::Euler { gamma } | Model::RadialEuler { gamma, .. } => {
                let v = u[1] / u[0];
                let p = (gamma - 1.0) * (u[2] - 0.5 * u[1] * v);
                out[0] = u[1];
                out[1] = u[1] * v + p;
                out[2] = v * (u[2] + p);
            }
        }
    }

    /// Spectral radius of the flux Jacobian; the state must be admissible.
    #[inline]
    pub fn max_speed(&self, u: &[f64]) -> f64 {
        match *self {
            Model::Advection { velocity } => velocity.abs(),
            Model::Euler { gamma } | Model::RadialEuler { gamma, .. } => {
                let v = u[1] / u[0];
                let p = (gamma - 1.0) * (u[2] - 0.5 * u[1] * v);
                // intermediate stage values may be inadmissible: no sound speed
                v.abs() + (gamma * p / u[0]).max(0.0).sqrt()
            }
        }
    }

    /// Geometric source at radius `x > 0`; zero for planar models.
    #[inline]
    pub fn source(&self, u: &[f64], x: f64, out: &mut [f64]) {
        match *self {
            Model::RadialEuler { gamma, dim } if dim > 1 => {
                let v = u[1] / u[0];
                let p = (gamma - 1.0) * (u[2] - 0.5 * u[1] * v);
                let f = -(dim as f64 - 1.0) / x;
                out[0] = f * u[1];
                out[1] = f * u[1] * v;
                out[2] = f * v * p;
            }
            _ => out.iter_mut().for_each(|o| *o = 0.0),
        }
    }

    /// Characteristic basis at `u`; `None` for scalar models.
    pub fn char_basis(&self, u: &[f64]) -> Result<Option<CharBasis>> {
        match *self {
            Model::Advection { .. } => Ok(None),
            Model::Euler { gamma } | Model::RadialEuler { gamma, .. } => {
                char_basis(&EulerState::from_slice(u), gamma).map(Some)
            }
        }
    }
}

//! Uniform one-dimensional grids, cell-average storage with ghost layers,
//! and boundary filling.

use crate::error::{Error, Result};

/// Ghost layers used by every seventh-order run.
///
/// A seven-cell stencil reaches three cells to each side, and the interface
/// flux at the domain edge also needs the reconstruction inside the first
/// ghost cell, hence one extra layer.
pub const GHOST_WIDTH: usize = 4;

/// A uniform partition of `[x_left, x_right]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_left: f64,
    x_right: f64,
    n_cells: usize,
    dx: f64,
}

impl Grid {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize) -> Result<Self> {
        if n_cells == 0 {
            return Err(Error::InvalidGrid("n_cells must be positive".into()));
        }
        if !(x_left.is_finite() && x_right.is_finite()) || x_left >= x_right {
            return Err(Error::InvalidGrid(format!(
                "empty interval [{x_left}, {x_right}]"
            )));
        }
        Ok(Self {
            x_left,
            x_right,
            n_cells,
            dx: (x_right - x_left) / n_cells as f64,
        })
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Center of cell `i`; negative or out-of-range indices address ghosts.
    pub fn center(&self, i: isize) -> f64 {
        self.x_left + (i as f64 + 0.5) * self.dx
    }

    pub fn left_edge(&self, i: isize) -> f64 {
        self.x_left + i as f64 * self.dx
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_cells as isize).map(|i| self.center(i))
    }
}

/// Shorthand for [`Grid::new`].
pub fn build_grid(x_left: f64, x_right: f64, n_cells: usize) -> Result<Grid> {
    Grid::new(x_left, x_right, n_cells)
}

/// Boundary treatment at one end of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Periodic,
    FreeFlow,
    ReflectingWall,
}

impl BoundaryCondition {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryCondition::Periodic => "periodic",
            BoundaryCondition::FreeFlow => "free_flow",
            BoundaryCondition::ReflectingWall => "reflecting_wall",
        }
    }
}

/// Conditions at the left and right ends of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Boundaries {
    pub left: BoundaryCondition,
    pub right: BoundaryCondition,
}

impl Boundaries {
    pub fn both(bc: BoundaryCondition) -> Self {
        Self {
            left: bc,
            right: bc,
        }
    }

    pub fn periodic() -> Self {
        Self::both(BoundaryCondition::Periodic)
    }

    fn check(&self) -> Result<()> {
        let lp = self.left == BoundaryCondition::Periodic;
        let rp = self.right == BoundaryCondition::Periodic;
        if lp != rp {
            return Err(Error::Boundary(
                "periodic conditions must be set on both ends".into(),
            ));
        }
        Ok(())
    }
}

/// Per-cell, per-component cell averages with `ghost_width` ghost cells on
/// each side. Storage is cell-major: component `c` of cell `i` lives at
/// `(i + ghost_width) * n_comp + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateField {
    grid: Grid,
    n_comp: usize,
    ghost_width: usize,
    values: Vec<f64>,
}

impl StateField {
    pub fn zeros(grid: Grid, n_comp: usize, ghost_width: usize) -> Self {
        let len = (grid.n_cells() + 2 * ghost_width) * n_comp;
        Self {
            grid,
            n_comp,
            ghost_width,
            values: vec![0.0; len],
        }
    }

    /// Builds a field from interior values (cell-major, `n_cells * n_comp`).
    pub fn from_interior(
        grid: Grid,
        n_comp: usize,
        ghost_width: usize,
        interior: &[f64],
    ) -> Result<Self> {
        let expected = grid.n_cells() * n_comp;
        if interior.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: interior.len(),
            });
        }
        let mut f = Self::zeros(grid, n_comp, ghost_width);
        f.interior_mut().copy_from_slice(interior);
        Ok(f)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n_comp(&self) -> usize {
        self.n_comp
    }

    pub fn ghost_width(&self) -> usize {
        self.ghost_width
    }

    pub fn n_cells(&self) -> usize {
        self.grid.n_cells()
    }

    /// All storage, ghosts included.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    fn offset(&self, i: isize) -> usize {
        let k = i + self.ghost_width as isize;
        debug_assert!(k >= 0 && (k as usize) < self.n_cells() + 2 * self.ghost_width);
        k as usize * self.n_comp
    }

    /// State of cell `i` (`-ghost_width <= i < n_cells + ghost_width`).
    pub fn cell(&self, i: isize) -> &[f64] {
        let o = self.offset(i);
        &self.values[o..o + self.n_comp]
    }

    pub fn cell_mut(&mut self, i: isize) -> &mut [f64] {
        let o = self.offset(i);
        let n = self.n_comp;
        &mut self.values[o..o + n]
    }

    pub fn interior(&self) -> &[f64] {
        let o = self.ghost_width * self.n_comp;
        &self.values[o..o + self.n_cells() * self.n_comp]
    }

    pub fn interior_mut(&mut self) -> &mut [f64] {
        let o = self.ghost_width * self.n_comp;
        let n = self.n_cells() * self.n_comp;
        &mut self.values[o..o + n]
    }

    /// Interior values of one component.
    pub fn component(&self, c: usize) -> Vec<f64> {
        self.interior()
            .chunks_exact(self.n_comp)
            .map(|s| s[c])
            .collect()
    }

    /// Fills the ghost cells in place. `momentum` names the component that
    /// flips sign under reflection, if the model has one.
    pub fn apply_boundary(&mut self, bcs: Boundaries, momentum: Option<usize>) -> Result<()> {
        apply_boundary_slice(
            &mut self.values,
            self.grid.n_cells(),
            self.n_comp,
            self.ghost_width,
            bcs,
            momentum,
        )
    }
}

/// Returns a copy of `field` with ghosts filled.
pub fn apply_boundary(
    field: &StateField,
    bcs: Boundaries,
    momentum: Option<usize>,
) -> Result<StateField> {
    let mut out = field.clone();
    out.apply_boundary(bcs, momentum)?;
    Ok(out)
}

/// Ghost filling on raw cell-major storage; used by the time integrator on
/// its stage buffers.
pub fn apply_boundary_slice(
    values: &mut [f64],
    n_cells: usize,
    n_comp: usize,
    ghost_width: usize,
    bcs: Boundaries,
    momentum: Option<usize>,
) -> Result<()> {
    bcs.check()?;
    for bc in [bcs.left, bcs.right] {
        if bc == BoundaryCondition::ReflectingWall && momentum.is_none() {
            return Err(Error::Boundary(
                "reflecting wall requires a model with a momentum component".into(),
            ));
        }
    }
    // periodic wrap and mirroring read ghost_width interior cells
    let needs_depth = [bcs.left, bcs.right]
        .iter()
        .any(|bc| *bc != BoundaryCondition::FreeFlow);
    if needs_depth && n_cells < ghost_width {
        return Err(Error::Boundary(format!(
            "{n_cells} cells cannot fill {ghost_width} ghost layers"
        )));
    }
    let g = ghost_width;
    let idx = |cell: usize, c: usize| cell * n_comp + c;
    // storage index of interior cell i is g + i
    for k in 1..=g {
        let ghost = g - k;
        let src = match bcs.left {
            BoundaryCondition::Periodic => g + n_cells - k,
            BoundaryCondition::FreeFlow => g,
            BoundaryCondition::ReflectingWall => g + k - 1,
        };
        for c in 0..n_comp {
            let mut v = values[idx(src, c)];
            if bcs.left == BoundaryCondition::ReflectingWall && Some(c) == momentum {
                v = -v;
            }
            values[idx(ghost, c)] = v;
        }
    }
    for k in 1..=g {
        let ghost = g + n_cells - 1 + k;
        let src = match bcs.right {
            BoundaryCondition::Periodic => g + k - 1,
            BoundaryCondition::FreeFlow => g + n_cells - 1,
            BoundaryCondition::ReflectingWall => g + n_cells - k,
        };
        for c in 0..n_comp {
            let mut v = values[idx(src, c)];
            if bcs.right == BoundaryCondition::ReflectingWall && Some(c) == momentum {
                v = -v;
            }
            values[idx(ghost, c)] = v;
        }
    }
    Ok(())
}

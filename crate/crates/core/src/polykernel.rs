//! Conservative interpolation from cell averages and Jiang-Shu smoothness
//! indicators.
//!
//! Polynomials live in the scaled coordinate `xi = (x - x_c) / dx`, where
//! `x_c` is the center of the reconstruction cell. Cell `j` of a stencil
//! occupies `[j - 1/2, j + 1/2]` in that coordinate, so interpolation and
//! indicator matrices do not depend on `dx`.

use std::sync::OnceLock;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Highest degree handled (seven-cell stencils).
pub const MAX_DEGREE: usize = 6;
const N: usize = MAX_DEGREE + 1;

/// A polynomial of degree at most [`MAX_DEGREE`] in the scaled coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polynomial {
    degree: usize,
    coeffs: [f64; N],
}

impl Polynomial {
    pub fn new(coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > N {
            return Err(Error::InvalidArgument(format!(
                "polynomial needs 1..={} coefficients, got {}",
                N,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        let mut c = [0.0; N];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self {
            degree: coeffs.len() - 1,
            coeffs: c,
        })
    }

    pub fn constant(value: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = value;
        Self {
            degree: 0,
            coeffs: c,
        }
    }

    pub(crate) fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: [0.0; N],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..=self.degree]
    }

    /// Horner evaluation at `xi`; the cell interfaces are `xi = -1/2, +1/2`.
    #[inline]
    pub fn eval(&self, xi: f64) -> f64 {
        let mut acc = self.coeffs[self.degree];
        for k in (0..self.degree).rev() {
            acc = acc * xi + self.coeffs[k];
        }
        acc
    }

    /// Mean over the cell centered at integer offset `j`.
    pub fn cell_average(&self, j: i32) -> f64 {
        let lo = j as f64 - 0.5;
        let hi = j as f64 + 0.5;
        let mut acc = 0.0;
        let (mut plo, mut phi) = (lo, hi);
        for p in 0..=self.degree {
            acc += self.coeffs[p] * (phi - plo) / (p + 1) as f64;
            plo *= lo;
            phi *= hi;
        }
        acc
    }

    /// `self += a * other`, growing the degree if needed.
    #[inline]
    pub fn add_scaled(&mut self, a: f64, other: &Polynomial) {
        for k in 0..=other.degree {
            self.coeffs[k] += a * other.coeffs[k];
        }
        if other.degree > self.degree {
            self.degree = other.degree;
        }
    }

    /// Returns `a * self`.
    #[inline]
    pub fn scaled(&self, a: f64) -> Polynomial {
        let mut out = *self;
        for k in 0..=self.degree {
            out.coeffs[k] *= a;
        }
        out
    }
}

/// Free-function form of [`Polynomial::eval`].
pub fn evaluate(p: &Polynomial, xi: f64) -> f64 {
    p.eval(xi)
}

/// A contiguous range of cell offsets containing 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StencilSpec {
    first: i32,
    last: i32,
}

impl StencilSpec {
    pub fn new(first: i32, last: i32) -> Result<Self> {
        if first > last {
            return Err(Error::InvalidStencil(format!(
                "empty range {first}..={last}"
            )));
        }
        if first > 0 || last < 0 {
            return Err(Error::InvalidStencil(format!(
                "range {first}..={last} does not contain the reconstruction cell"
            )));
        }
        if (last - first) as usize > MAX_DEGREE {
            return Err(Error::InvalidStencil(format!(
                "range {first}..={last} exceeds {N} cells"
            )));
        }
        Ok(Self { first, last })
    }

    /// Stencil centered on the reconstruction cell with `2 * half + 1` cells.
    pub fn centered(half: i32) -> Result<Self> {
        Self::new(-half, half)
    }

    pub fn first(&self) -> i32 {
        self.first
    }

    pub fn last(&self) -> i32 {
        self.last
    }

    pub fn len(&self) -> usize {
        (self.last - self.first + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.len() - 1
    }

    pub fn offsets(&self) -> impl Iterator<Item = i32> {
        self.first..=self.last
    }
}

/// `((j + 1/2)^(p+1) - (j - 1/2)^(p+1)) / (p + 1)`: the average of `xi^p`
/// over cell `j`.
fn monomial_average(j: i32, p: usize) -> f64 {
    let hi = j as f64 + 0.5;
    let lo = j as f64 - 0.5;
    (hi.powi(p as i32 + 1) - lo.powi(p as i32 + 1)) / (p + 1) as f64
}

/// Precomputed map from the cell averages of a stencil to the coefficients
/// of its conservative interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpOperator {
    stencil: StencilSpec,
    matrix: [[f64; N]; N],
}

impl InterpOperator {
    pub fn new(stencil: StencilSpec) -> Result<Self> {
        let n = stencil.len();
        let a = DMatrix::from_fn(n, n, |row, p| {
            monomial_average(stencil.first + row as i32, p)
        });
        let inv = a.try_inverse().ok_or_else(|| {
            Error::InvalidStencil(format!("singular averaging matrix for {stencil:?}"))
        })?;
        let mut matrix = [[0.0; N]; N];
        for (p, row) in matrix.iter_mut().enumerate().take(n) {
            for (j, m) in row.iter_mut().enumerate().take(n) {
                *m = inv[(p, j)];
            }
        }
        Ok(Self { stencil, matrix })
    }

    pub fn stencil(&self) -> StencilSpec {
        self.stencil
    }

    /// Row `p` maps the stencil averages to the coefficient of `xi^p`.
    pub fn matrix(&self) -> &[[f64; N]; N] {
        &self.matrix
    }

    pub fn apply(&self, averages: &[f64]) -> Result<Polynomial> {
        let n = self.stencil.len();
        if averages.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: averages.len(),
            });
        }
        Ok(self.apply_unchecked(averages))
    }

    /// Interpolant from a seven-cell window centered on the reconstruction
    /// cell (window index 3 is offset 0).
    #[inline]
    pub fn apply_window(&self, window: &[f64; 7]) -> Polynomial {
        let start = (3 + self.stencil.first) as usize;
        let w = &window[start..];
        match self.stencil.len() {
            7 => self.apply_fixed::<7>(w),
            5 => self.apply_fixed::<5>(w),
            3 => self.apply_fixed::<3>(w),
            2 => self.apply_fixed::<2>(w),
            4 => self.apply_fixed::<4>(w),
            _ => self.apply_unchecked(&w[..self.stencil.len()]),
        }
    }

    #[inline(always)]
    fn apply_fixed<const M: usize>(&self, averages: &[f64]) -> Polynomial {
        let a: &[f64; M] = averages[..M].try_into().expect("window holds the stencil");
        let mut out = Polynomial::zero(M - 1);
        for p in 0..M {
            let row = &self.matrix[p];
            let mut acc = 0.0;
            for j in 0..M {
                acc += row[j] * a[j];
            }
            out.coeffs[p] = acc;
        }
        out
    }

    #[inline]
    fn apply_unchecked(&self, averages: &[f64]) -> Polynomial {
        let n = self.stencil.len();
        let mut out = Polynomial::zero(n - 1);
        for p in 0..n {
            let row = &self.matrix[p];
            let mut acc = 0.0;
            for j in 0..n {
                acc += row[j] * averages[j];
            }
            out.coeffs[p] = acc;
        }
        out
    }
}

/// Conservative interpolant of `averages` on `spec`.
pub fn interpolate_from_averages(spec: StencilSpec, averages: &[f64]) -> Result<Polynomial> {
    InterpOperator::new(spec)?.apply(averages)
}

/// Quadratic form `c^T M c` on scaled coefficients equal to the Jiang-Shu
/// indicator `sum_i dx^(2i-1) int_cell (d^i P / dx^i)^2 dx`.
///
/// With scaled coefficients every power of `dx` cancels, so a single matrix
/// serves every grid; the form for a lower degree is the leading block.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorForm {
    matrix: [[f64; N]; N],
    // (j, k, weight) with j <= k, off-diagonal weights already doubled
    terms: Vec<(usize, usize, f64)>,
}

impl IndicatorForm {
    pub fn new() -> Self {
        let mut matrix = [[0.0; N]; N];
        for (j, row) in matrix.iter_mut().enumerate() {
            for (k, m) in row.iter_mut().enumerate() {
                *m = indicator_entry(j, k);
            }
        }
        let mut terms = Vec::new();
        for j in 1..N {
            for k in j..N {
                let w = matrix[j][k];
                if w != 0.0 {
                    terms.push((j, k, if j == k { w } else { 2.0 * w }));
                }
            }
        }
        // sort by the larger index so evaluation can stop at the degree
        terms.sort_by_key(|&(j, k, _)| (k, j));
        Self { matrix, terms }
    }

    /// Shared instance.
    pub fn global() -> &'static IndicatorForm {
        static FORM: OnceLock<IndicatorForm> = OnceLock::new();
        FORM.get_or_init(IndicatorForm::new)
    }

    /// Matrix of the form for polynomials of degree `degree`.
    pub fn matrix(&self, degree: usize) -> Vec<Vec<f64>> {
        let n = degree.min(MAX_DEGREE) + 1;
        self.matrix[..n].iter().map(|r| r[..n].to_vec()).collect()
    }

    #[inline]
    pub fn eval(&self, p: &Polynomial) -> f64 {
        let c = &p.coeffs;
        let mut acc = 0.0;
        for &(j, k, w) in &self.terms {
            if k > p.degree {
                break;
            }
            acc += w * c[j] * c[k];
        }
        acc
    }
}

impl Default for IndicatorForm {
    fn default() -> Self {
        Self::new()
    }
}

/// `M[j][k] = sum_{i=1}^{min(j,k)} j!/(j-i)! * k!/(k-i)! * int_{-1/2}^{1/2} xi^(j+k-2i)`.
fn indicator_entry(j: usize, k: usize) -> f64 {
    let mut acc = 0.0;
    for i in 1..=j.min(k) {
        let n = j + k - 2 * i;
        if n % 2 == 1 {
            continue;
        }
        let integral = 2.0 * 0.5f64.powi(n as i32 + 1) / (n + 1) as f64;
        acc += falling(j, i) * falling(k, i) * integral;
    }
    acc
}

fn falling(n: usize, i: usize) -> f64 {
    ((n - i + 1)..=n).map(|v| v as f64).product()
}

/// Jiang-Shu smoothness indicator of `p`.
pub fn smoothness_indicator(p: &Polynomial) -> f64 {
    IndicatorForm::global().eval(p)
}

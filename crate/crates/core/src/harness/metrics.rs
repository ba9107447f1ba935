//! Error norms, convergence rates, and oscillation measures.

use crate::error::{Error, Result};
use crate::grid::StateField;

/// Errors below this are treated as round-off and excluded from rates.
pub const ERROR_FLOOR: f64 = 1e-12;

/// `(L1, Linf)` of `numeric - reference`; L1 is `dx sum |diff|` summed over
/// components.
pub fn error_norms(numeric: &StateField, reference: &StateField) -> Result<(f64, f64)> {
    let (g1, g2) = (numeric.grid(), reference.grid());
    if g1.n_cells() != g2.n_cells()
        || numeric.n_comp() != reference.n_comp()
        || (g1.x_left() - g2.x_left()).abs() > 1e-12 * g1.dx()
        || (g1.dx() - g2.dx()).abs() > 1e-12 * g1.dx()
    {
        return Err(Error::InvalidGrid("fields live on different grids".into()));
    }
    Ok(norms_of(numeric.interior(), reference.interior(), g1.dx()))
}

/// Same as [`error_norms`] restricted to one component.
pub fn component_error_norms(
    numeric: &StateField,
    reference: &StateField,
    component: usize,
) -> Result<(f64, f64)> {
    error_norms(numeric, reference)?;
    let a = numeric.component(component);
    let b = reference.component(component);
    Ok(norms_of(&a, &b, numeric.grid().dx()))
}

fn norms_of(a: &[f64], b: &[f64], dx: f64) -> (f64, f64) {
    let mut l1 = 0.0;
    let mut linf = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let d = (x - y).abs();
        l1 += d;
        linf = linf.max(d);
    }
    (l1 * dx, linf)
}

/// `log2(e_coarse / e_fine)` for consecutive entries of a dyadic sequence,
/// or `None` when the coarser error is at or below `floor`.
pub fn dyadic_rates(errors: &[f64], floor: f64) -> Vec<Option<f64>> {
    errors
        .windows(2)
        .map(|w| (w[0] > floor && w[1] > 0.0).then(|| (w[0] / w[1]).log2()))
        .collect()
}

/// Like [`dyadic_rates`], but a level whose error is at or below `floor` is
/// dropped entirely, so the finer error must clear it as well.
pub fn dyadic_rates_above_floor(errors: &[f64], floor: f64) -> Vec<Option<f64>> {
    errors
        .windows(2)
        .map(|w| (w[0] > floor && w[1] > floor).then(|| (w[0] / w[1]).log2()))
        .collect()
}

/// The last available rate.
pub fn terminal_rate(rates: &[Option<f64>]) -> Option<f64> {
    rates.iter().rev().find_map(|r| *r)
}

/// Largest excursion of `values` outside `[lo, hi]`, zero if none.
pub fn overshoot(values: &[f64], lo: f64, hi: f64) -> f64 {
    values
        .iter()
        .map(|&v| (v - hi).max(lo - v))
        .fold(0.0, f64::max)
}

/// `(max - hi, lo - min)`, each clipped at zero.
pub fn over_under(values: &[f64], lo: f64, hi: f64) -> (f64, f64) {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    ((max - hi).max(0.0), (lo - min).max(0.0))
}

pub fn total_variation(values: &[f64]) -> f64 {
    values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn field(n: usize, vals: &[f64]) -> StateField {
        StateField::from_interior(Grid::new(0.0, 1.0, n).unwrap(), 1, 4, vals).unwrap()
    }

    #[test]
    fn norm_examples() {
        let a = field(4, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(error_norms(&a, &a).unwrap(), (0.0, 0.0));
        let b = field(4, &[2.0, 3.0, 4.0, 5.0]);
        let (l1, li) = error_norms(&a, &b).unwrap();
        assert!((l1 - 1.0).abs() < 1e-15);
        assert_eq!(li, 1.0);

        let mut v = vec![0.0; 100];
        let z = field(100, &v);
        v[17] = 2.0;
        let (l1, li) = error_norms(&field(100, &v), &z).unwrap();
        assert!((l1 - 0.02).abs() < 1e-15);
        assert_eq!(li, 2.0);
        assert!(error_norms(&a, &z).is_err());
    }

    #[test]
    fn rates() {
        let r = dyadic_rates(&[1.0, 0.125, 1e-13, 1e-14], 1e-12);
        assert_eq!(r[0], Some(3.0));
        assert!(r[1].is_some());
        assert_eq!(r[2], None);
        assert_eq!(terminal_rate(&r), r[1]);
        let s = dyadic_rates_above_floor(&[1.0, 0.125, 1e-13, 1e-14], 1e-12);
        assert_eq!(s, [Some(3.0), None, None]);
    }

    #[test]
    fn oscillation_measures() {
        let v = [0.0, -0.02, 0.5, 1.03, 1.0];
        assert!((overshoot(&v, 0.0, 1.0) - 0.03).abs() < 1e-15);
        let (o, u) = over_under(&v, 0.0, 1.0);
        assert!((o - 0.03).abs() < 1e-15 && (u - 0.02).abs() < 1e-15);
        assert_eq!(overshoot(&[0.2, 0.8], 0.0, 1.0), 0.0);
        assert!((total_variation(&v) - (0.02 + 0.52 + 0.53 + 0.03)).abs() < 1e-14);
    }
}

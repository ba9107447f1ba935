//! CWENO, CWENOZ and CWENOZ-AO blending of candidate polynomials.

use crate::error::{Error, Result};
use crate::polykernel::Polynomial;

use super::Counters;

/// Maximum number of candidates in one blend (optimal + lower degree).
pub const MAX_CANDIDATES: usize = 8;

/// A candidate polynomial together with its smoothness indicator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub poly: Polynomial,
    pub indicator: f64,
}

impl Candidate {
    pub fn new(poly: Polynomial, indicator: f64) -> Self {
        Self { poly, indicator }
    }
}

/// The polynomials entering one blend: the optimal polynomial, the `O(1)`
/// weighted candidates and the infinitesimally weighted ones.
#[derive(Debug, Clone, Copy)]
pub struct CandidateSet<'a> {
    pub p_opt: Candidate,
    pub p_high: &'a [Candidate],
    pub q_low: &'a [Candidate],
}

/// Weight parameters of one blend.
///
/// `d` holds the linear weights of `P_0..P_m` (index 0 is the companion of
/// the optimal polynomial), `delta` those of `Q_1..Q_n`, and `lambda` the
/// coefficients of the global indicator over `I_0..I_m`.
#[derive(Debug, Clone, Copy)]
pub struct BlendParams<'a> {
    pub d: &'a [f64],
    pub delta: &'a [f64],
    pub lambda: &'a [f64],
    pub eps: f64,
    pub ell: i32,
}

/// Output of a blend: the reconstruction polynomial and the nonlinear
/// weights, ordered `P_0..P_m, Q_1..Q_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blended {
    pub poly: Polynomial,
    weights: [f64; MAX_CANDIDATES],
    len: usize,
}

impl Blended {
    pub(crate) fn single(poly: Polynomial) -> Self {
        let mut weights = [0.0; MAX_CANDIDATES];
        weights[0] = 1.0;
        Self {
            poly,
            weights,
            len: 1,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights[..self.len]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum WeightKind {
    Classic,
    Z,
}

/// CWENO blend: `alpha_k = d_k / (I_k + eps)^ell`.
pub fn cweno_blend(
    params: &BlendParams<'_>,
    cands: &CandidateSet<'_>,
    counters: &mut Counters,
) -> Result<Blended> {
    check_counts(params, cands, false)?;
    Ok(blend(WeightKind::Classic, params, cands, counters))
}

/// CWENOZ blend: `alpha_k = d_k (1 + (tau / (I_k + eps))^ell)` with
/// `tau = |sum_k lambda_k I_k|`.
pub fn cwenoz_blend(
    params: &BlendParams<'_>,
    cands: &CandidateSet<'_>,
    counters: &mut Counters,
) -> Result<Blended> {
    check_counts(params, cands, true)?;
    Ok(blend(WeightKind::Z, params, cands, counters))
}

/// CWENOZ-AO blend: a CWENOZ blend over `P_opt; P_1..P_m, Q_1..Q_n` whose
/// low-degree candidates carry the small weights `delta`. The global
/// indicator only sees `I_0..I_m`.
pub fn cwenoz_ao_blend(
    params: &BlendParams<'_>,
    cands: &CandidateSet<'_>,
    counters: &mut Counters,
) -> Result<Blended> {
    if cands.q_low.is_empty() {
        return Err(Error::InvalidConfig(
            "adaptive-order blend needs at least one low-degree candidate".into(),
        ));
    }
    let big = cands.p_opt.poly.degree();
    for p in cands.p_high {
        let g = p.poly.degree();
        if 2 * g < big || g >= big {
            return Err(Error::InvalidConfig(format!(
                "high candidate of degree {g} outside [{}/2, {big})",
                big
            )));
        }
    }
    for q in cands.q_low {
        if 2 * q.poly.degree() >= big {
            return Err(Error::InvalidConfig(format!(
                "low candidate of degree {} is not below {big}/2",
                q.poly.degree()
            )));
        }
    }
    check_counts(params, cands, true)?;
    Ok(blend(WeightKind::Z, params, cands, counters))
}

fn check_counts(params: &BlendParams<'_>, cands: &CandidateSet<'_>, z: bool) -> Result<()> {
    check_params(params, cands.p_high.len(), cands.q_low.len(), z)?;
    let opt = cands.p_opt.poly.degree();
    if cands
        .p_high
        .iter()
        .chain(cands.q_low)
        .any(|c| c.poly.degree() > opt)
    {
        return Err(Error::InvalidConfig(
            "a candidate exceeds the degree of the optimal polynomial".into(),
        ));
    }
    Ok(())
}

/// Checks weight counts and values for `m` high and `n` low candidates.
pub(crate) fn check_params(params: &BlendParams<'_>, m: usize, n: usize, z: bool) -> Result<()> {
    if params.d.len() != m + 1 {
        return Err(Error::LengthMismatch {
            expected: m + 1,
            got: params.d.len(),
        });
    }
    if params.delta.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: params.delta.len(),
        });
    }
    if z && params.lambda.len() != m + 1 {
        return Err(Error::LengthMismatch {
            expected: m + 1,
            got: params.lambda.len(),
        });
    }
    if 1 + m + n > MAX_CANDIDATES {
        return Err(Error::InvalidConfig(format!(
            "{} candidates exceed the limit of {MAX_CANDIDATES}",
            1 + m + n
        )));
    }
    if params.d.iter().chain(params.delta).any(|w| *w <= 0.0) {
        return Err(Error::InvalidConfig(
            "linear weights must be positive".into(),
        ));
    }
    let total: f64 = params.d.iter().chain(params.delta).sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidConfig(format!(
            "linear weights sum to {total}, not 1"
        )));
    }
    if !(params.eps > 0.0) || params.ell < 1 {
        return Err(Error::InvalidConfig(format!(
            "need eps > 0 and ell >= 1 (eps = {}, ell = {})",
            params.eps, params.ell
        )));
    }
    Ok(())
}

#[inline(always)]
fn pow_ell(x: f64, ell: i32) -> f64 {
    match ell {
        1 => x,
        2 => x * x,
        3 => x * x * x,
        4 => {
            let y = x * x;
            y * y
        }
        _ => x.powi(ell),
    }
}

/// Blending kernel without argument checks. `P_0` is never formed: with
/// `P_0 = (P_opt - sum d_k P_k - sum delta_k Q_k) / d_0` the blend equals
/// `(w_0/d_0) P_opt + sum (w_k - w_0 d_k/d_0) P_k + sum (v_k - w_0 delta_k/d_0) Q_k`.
#[inline]
pub(crate) fn blend(
    kind: WeightKind,
    params: &BlendParams<'_>,
    cands: &CandidateSet<'_>,
    counters: &mut Counters,
) -> Blended {
    counters.weight_sets += 1;
    let m = cands.p_high.len();
    let n = cands.q_low.len();
    let len = 1 + m + n;

    let mut lin = [0.0; MAX_CANDIDATES];
    let mut ind = [0.0; MAX_CANDIDATES];
    lin[0] = params.d[0];
    ind[0] = cands.p_opt.indicator;
    for (k, c) in cands.p_high.iter().enumerate() {
        lin[1 + k] = params.d[1 + k];
        ind[1 + k] = c.indicator;
    }
    for (k, c) in cands.q_low.iter().enumerate() {
        lin[1 + m + k] = params.delta[k];
        ind[1 + m + k] = c.indicator;
    }

    let eps = params.eps;
    let ell = params.ell;
    let mut alpha = [0.0; MAX_CANDIDATES];
    match kind {
        WeightKind::Z => {
            let mut t = params.lambda[0] * ind[0];
            for k in 1..=m {
                t += params.lambda[k] * ind[k];
            }
            let tau = t.abs();
            let mut ratio = [0.0; MAX_CANDIDATES];
            let mut rmax = 0.0f64;
            for k in 0..len {
                ratio[k] = tau / (ind[k] + eps);
                rmax = rmax.max(ratio[k]);
            }
            if pow_ell(rmax, ell) < 1e250 {
                for k in 0..len {
                    alpha[k] = lin[k] * (1.0 + pow_ell(ratio[k], ell));
                }
            } else {
                // the unit term is negligible next to the ratios here
                for k in 0..len {
                    alpha[k] = lin[k] * pow_ell(ratio[k] / rmax, ell);
                }
            }
        }
        WeightKind::Classic => {
            // common factor (min_k I_k + eps)^ell cancels in the normalization
            let floor = ind[..len].iter().fold(f64::INFINITY, |a, &b| a.min(b)) + eps;
            for k in 0..len {
                alpha[k] = lin[k] * pow_ell(floor / (ind[k] + eps), ell);
            }
        }
    }
    let total: f64 = alpha[..len].iter().sum();
    let inv = 1.0 / total;
    let mut weights = [0.0; MAX_CANDIDATES];
    for k in 0..len {
        weights[k] = alpha[k] * inv;
    }

    let w0_over_d0 = weights[0] / lin[0];
    let mut poly = cands.p_opt.poly.scaled(w0_over_d0);
    for (k, c) in cands.p_high.iter().enumerate() {
        poly.add_scaled(weights[1 + k] - w0_over_d0 * lin[1 + k], &c.poly);
    }
    for (k, c) in cands.q_low.iter().enumerate() {
        poly.add_scaled(weights[1 + m + k] - w0_over_d0 * lin[1 + m + k], &c.poly);
    }
    Blended { poly, weights, len }
}

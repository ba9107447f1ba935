//! Concrete reconstructions on a seven-cell window: CWZ(7;5;3x3), the two
//! WENO-AO(7,5,3) variants, and plain CWENO / CWENOZ of orders 3, 5 and 7.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::polykernel::{IndicatorForm, InterpOperator, Polynomial, StencilSpec};

use super::blend::{
    blend, check_params, BlendParams, Blended, Candidate, CandidateSet, WeightKind,
};
use super::Counters;

/// Smallest admissible regularization.
pub const EPS_FLOOR: f64 = 1e-300;
/// Saturation value of the infinitesimal linear weights.
pub const DELTA_CAP: f64 = 0.01;

/// Reconstruction scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// CWENO of order 3, 5 or 7.
    Cweno { order: u8 },
    /// CWENOZ of order 3, 5 or 7.
    Cwenoz { order: u8 },
    /// The adaptive-order CWENOZ-AO(P_opt; P_1; Q_1, Q_2, Q_3).
    Cwz753,
    /// Hierarchic WENO-AO(7,5,3) with three sets of nonlinear weights.
    WaoBgs,
    /// Recursive WENO-AO(7,5,3) with two sets of nonlinear weights.
    WaoAhz,
    /// Piecewise-constant reconstruction, for debugging.
    FirstOrder,
}

impl Scheme {
    pub const ADAPTIVE_ORDER: [Scheme; 3] = [Scheme::Cwz753, Scheme::WaoBgs, Scheme::WaoAhz];

    pub fn name(&self) -> String {
        match self {
            Scheme::Cweno { order } => format!("cweno{order}"),
            Scheme::Cwenoz { order } => format!("cwenoz{order}"),
            Scheme::Cwz753 => "cwz753".into(),
            Scheme::WaoBgs => "wao-bgs".into(),
            Scheme::WaoAhz => "wao-ahz".into(),
            Scheme::FirstOrder => "first-order".into(),
        }
    }

    /// Nominal order of accuracy on smooth data.
    pub fn order(&self) -> u8 {
        match self {
            Scheme::Cweno { order } | Scheme::Cwenoz { order } => *order,
            Scheme::Cwz753 | Scheme::WaoBgs | Scheme::WaoAhz => 7,
            Scheme::FirstOrder => 1,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let scheme = match s.as_str() {
            "cwz753" | "cwenoz-ao" | "cwz" => Scheme::Cwz753,
            "wao-bgs" | "waobgs" => Scheme::WaoBgs,
            "wao-ahz" | "waoahz" => Scheme::WaoAhz,
            "first-order" | "constant" => Scheme::FirstOrder,
            "cweno" => Scheme::Cweno { order: 7 },
            "cwenoz" => Scheme::Cwenoz { order: 7 },
            other => {
                let (z, digits) = if let Some(rest) = other.strip_prefix("cwenoz") {
                    (true, rest)
                } else if let Some(rest) = other.strip_prefix("cweno") {
                    (false, rest)
                } else {
                    return Err(Error::InvalidConfig(format!("unknown scheme '{other}'")));
                };
                let order: u8 = digits
                    .parse()
                    .map_err(|_| Error::InvalidConfig(format!("unknown scheme '{other}'")))?;
                if !matches!(order, 3 | 5 | 7) {
                    return Err(Error::InvalidConfig(format!(
                        "CWENO order must be 3, 5 or 7, got {order}"
                    )));
                }
                if z {
                    Scheme::Cwenoz { order }
                } else {
                    Scheme::Cweno { order }
                }
            }
        };
        Ok(scheme)
    }
}

/// Parameters of a reconstruction, independent of the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionConfig {
    pub scheme: Scheme,
    /// Exponent in `eps = dx^mhat`.
    pub mhat: i32,
    /// Power in the nonlinear weights.
    pub ell: i32,
    /// Exponents `r_k` of the infinitesimal weights `delta_k = min(dx^r_k, 0.01)`
    /// of the three parabolas (CWZ only).
    pub rexp: [f64; 3],
    /// Linear weight `d_1` of the degree-4 candidate (CWZ only).
    pub d_high: f64,
    /// Linear weight of the optimal polynomial in CWENO/CWENOZ and in every
    /// WENO-AO level; the rest is split evenly. `None` picks the scheme
    /// default (0.75 for CWENO/CWENOZ, 0.85 for WENO-AO).
    pub opt_weight: Option<f64>,
    /// Global-indicator coefficients over `I_0..I_m`; `None` picks
    /// `(1, -1/m, ..., -1/m)`.
    pub lambda: Option<Vec<f64>>,
}

impl Default for ReconstructionConfig {
    fn default() -> Self {
        Self::new(Scheme::Cwz753)
    }
}

impl ReconstructionConfig {
    /// Defaults: `mhat = 4`, `ell = 2`, `r_k = 1`, `d_1 = 0.15`.
    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            mhat: 4,
            ell: 2,
            rexp: [1.0; 3],
            d_high: 0.15,
            opt_weight: None,
            lambda: None,
        }
    }

    pub fn with_params(scheme: Scheme, mhat: i32, ell: i32, r: f64) -> Self {
        Self {
            mhat,
            ell,
            rexp: [r; 3],
            ..Self::new(scheme)
        }
    }

    /// `eps = dx^mhat`, floored at [`EPS_FLOOR`].
    pub fn epsilon(&self, dx: f64) -> f64 {
        dx.powi(self.mhat).max(EPS_FLOOR)
    }

    /// `delta_k = min(dx^r_k, 0.01)`.
    pub fn deltas(&self, dx: f64) -> [f64; 3] {
        self.rexp.map(|r| dx.powf(r).min(DELTA_CAP))
    }

    /// Materializes the reconstruction for cells of width `dx`.
    pub fn build(&self, dx: f64) -> Result<Reconstructor> {
        Reconstructor::new(self, dx)
    }

    fn opt_weight_or(&self, default: f64) -> Result<f64> {
        let w = self.opt_weight.unwrap_or(default);
        if !(w > 0.0 && w < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "optimal linear weight must lie in (0, 1), got {w}"
            )));
        }
        Ok(w)
    }

    fn lambda_or_default(&self, m: usize) -> Result<Vec<f64>> {
        let lambda = match &self.lambda {
            Some(l) => l.clone(),
            None => {
                let mut l = vec![-1.0 / m as f64; m + 1];
                l[0] = 1.0;
                l
            }
        };
        if lambda.len() != m + 1 {
            return Err(Error::LengthMismatch {
                expected: m + 1,
                got: lambda.len(),
            });
        }
        let s: f64 = lambda.iter().sum();
        if s.abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "global-indicator coefficients must sum to 0, got {s}"
            )));
        }
        Ok(lambda)
    }
}

/// Which WENO-AO(7,5,3) variant to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaoVariant {
    Bgs,
    Ahz,
}

#[derive(Debug, Clone)]
enum Kind {
    FirstOrder,
    Cweno {
        z: bool,
        opt: InterpOperator,
        subs: Vec<InterpOperator>,
        d: Vec<f64>,
        lambda: Vec<f64>,
    },
    Cwz {
        opt: InterpOperator,
        p1: InterpOperator,
        q: [InterpOperator; 3],
        d: [f64; 2],
        delta: [f64; 3],
        lambda: [f64; 2],
    },
    Wao {
        variant: WaoVariant,
        p7: InterpOperator,
        p5: InterpOperator,
        q: [InterpOperator; 3],
        d_inner: [f64; 4],
        d_outer: [f64; 2],
        lambda_inner: [f64; 4],
        lambda_outer: [f64; 2],
    },
}

/// A reconstruction with every matrix and weight fixed for one grid size.
#[derive(Debug, Clone)]
pub struct Reconstructor {
    scheme: Scheme,
    eps: f64,
    ell: i32,
    form: &'static IndicatorForm,
    kind: Kind,
}

fn parabolas() -> Result<[InterpOperator; 3]> {
    Ok([
        InterpOperator::new(StencilSpec::new(-2, 0)?)?,
        InterpOperator::new(StencilSpec::new(-1, 1)?)?,
        InterpOperator::new(StencilSpec::new(0, 2)?)?,
    ])
}

impl Reconstructor {
    pub fn new(cfg: &ReconstructionConfig, dx: f64) -> Result<Self> {
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "cell width must be positive, got {dx}"
            )));
        }
        if cfg.ell < 1 {
            return Err(Error::InvalidConfig(format!(
                "ell must be >= 1, got {}",
                cfg.ell
            )));
        }
        let eps = cfg.epsilon(dx);
        let kind = match cfg.scheme {
            Scheme::FirstOrder => Kind::FirstOrder,
            Scheme::Cweno { order } | Scheme::Cwenoz { order } => {
                if !matches!(order, 3 | 5 | 7) {
                    return Err(Error::InvalidConfig(format!(
                        "unsupported CWENO order {order}"
                    )));
                }
                let r = ((order + 1) / 2) as i32;
                let opt = InterpOperator::new(StencilSpec::centered(r - 1)?)?;
                let subs = (1..=r)
                    .map(|k| InterpOperator::new(StencilSpec::new(k - r, k - 1)?))
                    .collect::<Result<Vec<_>>>()?;
                let d0 = cfg.opt_weight_or(0.75)?;
                let mut d = vec![(1.0 - d0) / r as f64; r as usize + 1];
                d[0] = d0;
                let z = matches!(cfg.scheme, Scheme::Cwenoz { .. });
                let lambda = if z {
                    cfg.lambda_or_default(r as usize)?
                } else {
                    Vec::new()
                };
                Kind::Cweno {
                    z,
                    opt,
                    subs,
                    d,
                    lambda,
                }
            }
            Scheme::Cwz753 => {
                if cfg.rexp.iter().any(|r| !(*r > 0.0)) {
                    return Err(Error::InvalidConfig(
                        "exponents r_k must be positive".into(),
                    ));
                }
                let delta = cfg.deltas(dx);
                let d0 = 1.0 - cfg.d_high - delta.iter().sum::<f64>();
                if !(cfg.d_high > 0.0) || !(d0 > 0.0) {
                    return Err(Error::InvalidConfig(format!(
                        "linear weights d0 = {d0}, d1 = {} must be positive",
                        cfg.d_high
                    )));
                }
                let lambda = cfg.lambda_or_default(1)?;
                Kind::Cwz {
                    opt: InterpOperator::new(StencilSpec::centered(3)?)?,
                    p1: InterpOperator::new(StencilSpec::centered(2)?)?,
                    q: parabolas()?,
                    d: [d0, cfg.d_high],
                    delta,
                    lambda: [lambda[0], lambda[1]],
                }
            }
            Scheme::WaoBgs | Scheme::WaoAhz => {
                let hi = cfg.opt_weight_or(0.85)?;
                let lo = (1.0 - hi) / 3.0;
                let li = cfg.lambda_or_default(3)?;
                Kind::Wao {
                    variant: if cfg.scheme == Scheme::WaoBgs {
                        WaoVariant::Bgs
                    } else {
                        WaoVariant::Ahz
                    },
                    p7: InterpOperator::new(StencilSpec::centered(3)?)?,
                    p5: InterpOperator::new(StencilSpec::centered(2)?)?,
                    q: parabolas()?,
                    d_inner: [hi, lo, lo, lo],
                    d_outer: [hi, 1.0 - hi],
                    lambda_inner: [li[0], li[1], li[2], li[3]],
                    lambda_outer: [1.0, -1.0],
                }
            }
        };
        let rec = Self {
            scheme: cfg.scheme,
            eps,
            ell: cfg.ell,
            form: IndicatorForm::global(),
            kind,
        };
        rec.check()?;
        Ok(rec)
    }

    /// Validates every weight set once so that the hot path can skip it.
    fn check(&self) -> Result<()> {
        match &self.kind {
            Kind::FirstOrder => Ok(()),
            Kind::Cweno {
                z, subs, d, lambda, ..
            } => check_params(&self.params(d, &[], lambda), subs.len(), 0, *z),
            Kind::Cwz {
                d, delta, lambda, ..
            } => check_params(&self.params(d, delta, lambda), 1, 3, true),
            Kind::Wao {
                d_inner,
                d_outer,
                lambda_inner,
                lambda_outer,
                ..
            } => {
                check_params(&self.params(d_inner, &[], lambda_inner), 3, 0, true)?;
                check_params(&self.params(d_outer, &[], lambda_outer), 1, 0, true)
            }
        }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    /// Linear weights in blend order (`d_0..d_m, delta_1..delta_n`) of the
    /// single-level schemes; for WENO-AO the inner level.
    pub fn linear_weights(&self) -> Vec<f64> {
        match &self.kind {
            Kind::FirstOrder => vec![1.0],
            Kind::Cweno { d, .. } => d.clone(),
            Kind::Cwz { d, delta, .. } => d.iter().chain(delta).copied().collect(),
            Kind::Wao { d_inner, .. } => d_inner.to_vec(),
        }
    }

    #[inline]
    fn candidate(&self, op: &InterpOperator, window: &[f64; 7], c: &mut Counters) -> Candidate {
        let poly = op.apply_window(window);
        c.indicators += 1;
        Candidate::new(poly, self.form.eval(&poly))
    }

    #[inline]
    fn params<'a>(&self, d: &'a [f64], delta: &'a [f64], lambda: &'a [f64]) -> BlendParams<'a> {
        BlendParams {
            d,
            delta,
            lambda,
            eps: self.eps,
            ell: self.ell,
        }
    }

    /// Checked entry point for a window of seven cell averages.
    pub fn reconstruct_slice(&self, averages: &[f64], counters: &mut Counters) -> Result<Blended> {
        let window: &[f64; 7] = averages.try_into().map_err(|_| Error::LengthMismatch {
            expected: 7,
            got: averages.len(),
        })?;
        Ok(self.reconstruct(window, counters))
    }

    /// Reconstruction polynomial in the central cell of `window`.
    #[inline]
    pub fn reconstruct(&self, window: &[f64; 7], counters: &mut Counters) -> Blended {
        counters.reconstructions += 1;
        match &self.kind {
            Kind::FirstOrder => Blended::single(Polynomial::constant(window[3])),
            Kind::Cweno {
                z,
                opt,
                subs,
                d,
                lambda,
            } => {
                let p_opt = self.candidate(opt, window, counters);
                let mut high = [p_opt; 4];
                for (h, op) in high.iter_mut().zip(subs) {
                    *h = self.candidate(op, window, counters);
                }
                let cands = CandidateSet {
                    p_opt,
                    p_high: &high[..subs.len()],
                    q_low: &[],
                };
                let params = self.params(d, &[], lambda);
                let kind = if *z {
                    WeightKind::Z
                } else {
                    WeightKind::Classic
                };
                blend(kind, &params, &cands, counters)
            }
            Kind::Cwz {
                opt,
                p1,
                q,
                d,
                delta,
                lambda,
            } => {
                let p_opt = self.candidate(opt, window, counters);
                let high = [self.candidate(p1, window, counters)];
                let low = [
                    self.candidate(&q[0], window, counters),
                    self.candidate(&q[1], window, counters),
                    self.candidate(&q[2], window, counters),
                ];
                let cands = CandidateSet {
                    p_opt,
                    p_high: &high,
                    q_low: &low,
                };
                blend(
                    WeightKind::Z,
                    &self.params(d, delta, lambda),
                    &cands,
                    counters,
                )
            }
            Kind::Wao {
                variant,
                p7,
                p5,
                q,
                d_inner,
                d_outer,
                lambda_inner,
                lambda_outer,
            } => {
                let c7 = self.candidate(p7, window, counters);
                let c5 = self.candidate(p5, window, counters);
                let par = [
                    self.candidate(&q[0], window, counters),
                    self.candidate(&q[1], window, counters),
                    self.candidate(&q[2], window, counters),
                ];
                let inner = self.params(d_inner, &[], lambda_inner);
                let outer = self.params(d_outer, &[], lambda_outer);
                let r5 = blend(
                    WeightKind::Z,
                    &inner,
                    &CandidateSet {
                        p_opt: c5,
                        p_high: &par,
                        q_low: &[],
                    },
                    counters,
                );
                match variant {
                    WaoVariant::Bgs => {
                        // two inner levels over the parabolas, then a blend of
                        // the two results steered by I[P7] and I[P5]
                        let r7 = blend(
                            WeightKind::Z,
                            &inner,
                            &CandidateSet {
                                p_opt: c7,
                                p_high: &par,
                                q_low: &[],
                            },
                            counters,
                        );
                        let top = Candidate::new(r7.poly, c7.indicator);
                        let low = [Candidate::new(r5.poly, c5.indicator)];
                        blend(
                            WeightKind::Z,
                            &outer,
                            &CandidateSet {
                                p_opt: top,
                                p_high: &low,
                                q_low: &[],
                            },
                            counters,
                        )
                    }
                    WaoVariant::Ahz => {
                        // the lower level enters as one nonlinear polynomial
                        // with its own indicator
                        counters.indicators += 1;
                        let low = [Candidate::new(r5.poly, self.form.eval(&r5.poly))];
                        blend(
                            WeightKind::Z,
                            &outer,
                            &CandidateSet {
                                p_opt: c7,
                                p_high: &low,
                                q_low: &[],
                            },
                            counters,
                        )
                    }
                }
            }
        }
    }
}

/// CWZ(7;5;3x3) on seven cell averages centered on the reconstruction cell.
/// The scheme field of `cfg` is ignored.
pub fn cwz753(averages: &[f64], cfg: &ReconstructionConfig, dx: f64) -> Result<Polynomial> {
    let cfg = ReconstructionConfig {
        scheme: Scheme::Cwz753,
        ..cfg.clone()
    };
    let rec = cfg.build(dx)?;
    Ok(rec
        .reconstruct_slice(averages, &mut Counters::default())?
        .poly)
}

/// WENO-AO(7,5,3) with default parameters (`mhat = 4`, `ell = 2`).
pub fn weno_ao753(averages: &[f64], variant: WaoVariant, dx: f64) -> Result<Polynomial> {
    weno_ao753_with(averages, variant, &ReconstructionConfig::default(), dx)
}

/// WENO-AO(7,5,3) using `mhat`, `ell`, and the linear weights of `cfg`.
pub fn weno_ao753_with(
    averages: &[f64],
    variant: WaoVariant,
    cfg: &ReconstructionConfig,
    dx: f64,
) -> Result<Polynomial> {
    let scheme = match variant {
        WaoVariant::Bgs => Scheme::WaoBgs,
        WaoVariant::Ahz => Scheme::WaoAhz,
    };
    let cfg = ReconstructionConfig {
        scheme,
        lambda: None,
        ..cfg.clone()
    };
    let rec = cfg.build(dx)?;
    Ok(rec
        .reconstruct_slice(averages, &mut Counters::default())?
        .poly)
}

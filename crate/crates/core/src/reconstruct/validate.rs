//! Sufficient conditions on `(mhat, ell, r_k)` for optimal convergence of a
//! CWENOZ-AO reconstruction near critical points of every order.

use std::fmt;

use crate::error::{Error, Result};

/// Orders of the global indicator `tau` of CWZ(7;5;3x3) for
/// `n_cp = 0, 1, 2, >= 3`.
pub const CWZ753_THETA: [f64; 4] = [6.0, 8.0, 8.0, 10.0];

/// One of the inequalities checked by [`validate_parameters`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `mhat <= 2g + 1`.
    EpsilonBound,
    /// `r_k >= g - gamma_k`, needed for `P_0` to keep the accuracy of `P_k`.
    CompanionAccuracy,
    /// `ell (theta - mhat) >= max{G-g-1, G-gamma_k-r_k-1}`.
    CaseA,
    /// `ell (theta - mhat) >= max{G-g-1, G-gamma_k-r_k}`.
    CaseB1,
    /// `ell (theta - 2 n_cp - 2) >= max{G-g-1, G-gamma_k-r_k : gamma_k > 0}`.
    CaseB2Smooth,
    /// `ell (theta - mhat) >= G-gamma_k-r_k` for the `Q_k` with
    /// `gamma_k <= n_cp`, whose indicators sit below `eps`.
    CaseB2Flat,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::EpsilonBound => "mhat <= 2g+1",
            Condition::CompanionAccuracy => "r_k >= g - gamma_k",
            Condition::CaseA => "case A",
            Condition::CaseB1 => "case B1",
            Condition::CaseB2Smooth => "case B2 (non-flat candidates)",
            Condition::CaseB2Flat => "case B2 (flat candidates)",
        };
        f.write_str(s)
    }
}

/// Regime of the weight asymptotics at one critical-point order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `n_cp >= g`.
    A,
    /// `n_cp < g` but `eps` dominates every indicator; same inequality as A.
    BLikeA,
    /// `2 n_cp + 2 = mhat`.
    B1,
    /// `2 n_cp + 2 < mhat`.
    B2,
}

/// Result for one critical-point order.
#[derive(Debug, Clone, PartialEq)]
pub struct NcpRow {
    pub n_cp: usize,
    /// The row covers every `n_cp >= self.n_cp`.
    pub open_ended: bool,
    pub theta: f64,
    pub case: Case,
    pub satisfied: bool,
    /// Failed inequalities, in evaluation order.
    pub violated: Vec<Condition>,
    /// Smallest `lhs - rhs` over the inequalities of this row.
    pub slack: f64,
    /// Inequality attaining `slack`.
    pub tightest: Condition,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub satisfied: bool,
    /// The first failed inequality, or the tightest one if all hold.
    pub binding_condition: Condition,
    pub per_ncp: Vec<NcpRow>,
}

impl ValidationReport {
    /// Critical-point orders at which some inequality fails.
    pub fn violated_ncp(&self) -> Vec<usize> {
        self.per_ncp
            .iter()
            .filter(|r| !r.satisfied)
            .map(|r| r.n_cp)
            .collect()
    }
}

struct Tracker {
    violated: Vec<Condition>,
    slack: f64,
    tightest: Condition,
}

impl Tracker {
    fn new() -> Self {
        Self {
            violated: Vec::new(),
            slack: f64::INFINITY,
            tightest: Condition::CaseA,
        }
    }

    fn check(&mut self, cond: Condition, lhs: f64, rhs: f64) {
        let s = lhs - rhs;
        if s < self.slack {
            self.slack = s;
            self.tightest = cond;
        }
        if s < -1e-12 && !self.violated.contains(&cond) {
            self.violated.push(cond);
        }
    }
}

/// Checks the sufficient conditions for optimal order `G+1`.
///
/// `gammas[k]` and `r[k]` are the degree and weight exponent of `Q_k`;
/// `theta_tau[n]` is the order of `tau` at a critical point of order `n`, for
/// `n = 0..=g`, the last entry covering every `n >= g`.
pub fn validate_parameters(
    big_g: usize,
    g: usize,
    gammas: &[usize],
    r: &[f64],
    ell: i32,
    mhat: i32,
    theta_tau: &[f64],
) -> Result<ValidationReport> {
    if !(big_g / 2 <= g && g < big_g) {
        return Err(Error::InvalidArgument(format!(
            "need G/2 <= g < G, got G = {big_g}, g = {g}"
        )));
    }
    if gammas.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: gammas.len(),
            got: r.len(),
        });
    }
    if let Some(bad) = gammas.iter().find(|&&c| 2 * c >= big_g) {
        return Err(Error::InvalidArgument(format!(
            "low-degree candidate of degree {bad} is not below G/2"
        )));
    }
    if theta_tau.len() != g + 1 {
        return Err(Error::LengthMismatch {
            expected: g + 1,
            got: theta_tau.len(),
        });
    }
    if ell < 1 || mhat < 1 {
        return Err(Error::InvalidArgument(format!(
            "need ell >= 1 and mhat >= 1, got ell = {ell}, mhat = {mhat}"
        )));
    }

    let gf = big_g as f64;
    let base = (big_g - g - 1) as f64;
    let l = ell as f64;
    let m = mhat as f64;

    let mut rows = Vec::with_capacity(g + 1);
    for (n_cp, &theta) in theta_tau.iter().enumerate() {
        let mut t = Tracker::new();
        t.check(Condition::EpsilonBound, (2 * g + 1) as f64, m);
        for (&c, &rk) in gammas.iter().zip(r) {
            t.check(Condition::CompanionAccuracy, rk, (g - c) as f64);
        }
        let flat = (2 * n_cp + 2) as i32;
        let case = if n_cp >= g {
            Case::A
        } else if mhat == 1 || flat > mhat {
            Case::BLikeA
        } else if flat == mhat {
            Case::B1
        } else {
            Case::B2
        };
        match case {
            Case::A | Case::BLikeA => {
                let rhs = gammas
                    .iter()
                    .zip(r)
                    .map(|(&c, &rk)| gf - c as f64 - rk - 1.0)
                    .fold(base, f64::max);
                t.check(Condition::CaseA, l * (theta - m), rhs);
            }
            Case::B1 => {
                let rhs = gammas
                    .iter()
                    .zip(r)
                    .map(|(&c, &rk)| gf - c as f64 - rk)
                    .fold(base, f64::max);
                t.check(Condition::CaseB1, l * (theta - m), rhs);
            }
            Case::B2 => {
                let rhs = gammas
                    .iter()
                    .zip(r)
                    .filter(|(&c, _)| c > 0)
                    .map(|(&c, &rk)| gf - c as f64 - rk)
                    .fold(base, f64::max);
                t.check(Condition::CaseB2Smooth, l * (theta - flat as f64), rhs);
                for (&c, &rk) in gammas.iter().zip(r) {
                    if c <= n_cp {
                        t.check(Condition::CaseB2Flat, l * (theta - m), gf - c as f64 - rk);
                    }
                }
            }
        }
        rows.push(NcpRow {
            n_cp,
            open_ended: n_cp == g,
            theta,
            case,
            satisfied: t.violated.is_empty(),
            violated: t.violated,
            slack: t.slack,
            tightest: t.tightest,
        });
    }

    let satisfied = rows.iter().all(|r| r.satisfied);
    let binding_condition = match rows.iter().find(|r| !r.satisfied) {
        Some(row) => row.violated[0],
        None => {
            rows.iter()
                .min_by(|a, b| a.slack.total_cmp(&b.slack))
                .expect("at least one row")
                .tightest
        }
    };
    Ok(ValidationReport {
        satisfied,
        binding_condition,
        per_ncp: rows,
    })
}

/// [`validate_parameters`] for CWZ(7;5;3x3) with all `r_k = r`, using the
/// smallest admissible `g = 3`.
pub fn validate_cwz753(mhat: i32, ell: i32, r: f64) -> Result<ValidationReport> {
    validate_parameters(6, 3, &[2, 2, 2], &[r; 3], ell, mhat, &CWZ753_THETA)
}

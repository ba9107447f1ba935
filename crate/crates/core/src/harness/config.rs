//! Run configuration shared by the CLI and INI-style config files.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::reconstruct::{ReconstructionConfig, Scheme};

use super::problems::{ProblemId, ProblemSpec};

/// Every option of the command line. Unset optional fields fall back to
/// per-problem or per-study defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemId,
    /// Grid size, or the coarsest grid of a study.
    pub cells: Option<usize>,
    pub scheme: Scheme,
    pub cfl: Option<f64>,
    pub mhat: i32,
    pub ell: i32,
    pub rexp: f64,
    pub char_proj: bool,
    pub out: Option<PathBuf>,
    /// Inclusive exponent range `j0..j1`.
    pub refinements: Option<(u32, u32)>,
    pub repeats: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: ProblemId::SmoothAdvection,
            cells: None,
            scheme: Scheme::Cwz753,
            cfl: None,
            mhat: 4,
            ell: 2,
            rexp: 1.0,
            char_proj: false,
            out: None,
            refinements: None,
            repeats: 5,
        }
    }
}

pub fn parse_bool(s: &str) -> Result<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(Error::InvalidArgument(format!("not a boolean: '{other}'"))),
    }
}

/// Parses `j0..j1` (inclusive, `j0 <= j1`).
pub fn parse_range(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("expected a range 'j0..j1', got '{s}'"));
    let (a, b) = s.trim().split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad value for {key}: '{v}'")))
}

impl RunConfig {
    /// Applies one `key = value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "problem" => self.problem = v.parse()?,
            "cells" => self.cells = Some(parse_num(key, v)?),
            "scheme" => self.scheme = v.parse()?,
            "cfl" => self.cfl = Some(parse_num(key, v)?),
            "mhat" => self.mhat = parse_num(key, v)?,
            "ell" => self.ell = parse_num(key, v)?,
            "rexp" => self.rexp = parse_num(key, v)?,
            "char_proj" => self.char_proj = parse_bool(v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            "refinements" => self.refinements = Some(parse_range(v)?),
            "repeats" => self.repeats = parse_num(key, v)?,
            other => return Err(Error::InvalidArgument(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines on top of `self`. Blank lines, `#`/`;`
    /// comments and `[section]` headers are skipped.
    pub fn apply_ini(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty()
                || line.starts_with('#')
                || line.starts_with(';')
                || line.starts_with('[')
            {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("line {}: expected key = value", lineno + 1))
            })?;
            self.set(k, v)
                .map_err(|e| Error::InvalidArgument(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn from_ini(text: &str) -> Result<Self> {
        let mut c = Self::default();
        c.apply_ini(text)?;
        Ok(c)
    }

    pub fn to_ini(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "problem = {}", self.problem);
        if let Some(n) = self.cells {
            let _ = writeln!(s, "cells = {n}");
        }
        let _ = writeln!(s, "scheme = {}", self.scheme);
        if let Some(c) = self.cfl {
            let _ = writeln!(s, "cfl = {c:?}");
        }
        let _ = writeln!(s, "mhat = {}", self.mhat);
        let _ = writeln!(s, "ell = {}", self.ell);
        let _ = writeln!(s, "rexp = {:?}", self.rexp);
        let _ = writeln!(s, "char_proj = {}", self.char_proj);
        if let Some(p) = &self.out {
            let _ = writeln!(s, "out = {}", p.display());
        }
        if let Some((a, b)) = self.refinements {
            let _ = writeln!(s, "refinements = {a}..{b}");
        }
        let _ = writeln!(s, "repeats = {}", self.repeats);
        s
    }

    pub fn cells_or(&self, default: usize) -> usize {
        self.cells.unwrap_or(default)
    }

    pub fn problem_spec(&self) -> ProblemSpec {
        ProblemSpec::new(self.problem)
    }

    pub fn cfl_or_default(&self) -> f64 {
        self.cfl.unwrap_or_else(|| self.problem_spec().cfl)
    }

    pub fn recon(&self) -> ReconstructionConfig {
        ReconstructionConfig::with_params(self.scheme, self.mhat, self.ell, self.rexp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let c = RunConfig::from_ini(
            "# lab\n[run]\nproblem = lax\ncells=400\nscheme = wao-ahz\nchar-proj = yes\ncfl = 0.45\nrefinements = 2..9\n",
        )
        .unwrap();
        assert_eq!(c.problem, ProblemId::Lax);
        assert_eq!(c.cells, Some(400));
        assert_eq!(c.scheme, Scheme::WaoAhz);
        assert!(c.char_proj);
        assert_eq!(c.cfl, Some(0.45));
        assert_eq!(c.refinements, Some((2, 9)));
        assert!(RunConfig::from_ini("cells = many").is_err());
        assert!(RunConfig::from_ini("colour = red").is_err());
        assert!(RunConfig::from_ini("just words").is_err());
        assert!(parse_range("5..2").is_err());
        assert_eq!(parse_range("0..=3").unwrap(), (0, 3));
    }

    fn arb_config() -> impl Strategy<Value = RunConfig> {
        let schemes = prop::sample::select(vec![
            Scheme::Cwz753,
            Scheme::WaoBgs,
            Scheme::WaoAhz,
            Scheme::Cweno { order: 3 },
            Scheme::Cwenoz { order: 5 },
            Scheme::FirstOrder,
        ]);
        let problems = prop::sample::select(ProblemId::ALL.to_vec());
        (
            problems,
            prop::option::of(1usize..100_000),
            schemes,
            prop::option::of(0.01f64..1.0),
            1i32..8,
            1i32..5,
            0.0f64..4.0,
            any::<bool>(),
            prop::option::of("[a-z0-9_/]{1,12}\\.csv"),
            prop::option::of((0u32..6, 0u32..6)),
            1usize..20,
        )
            .prop_map(|(p, n, s, cfl, m, l, r, cp, out, refi, rep)| RunConfig {
                problem: p,
                cells: n,
                scheme: s,
                cfl,
                mhat: m,
                ell: l,
                rexp: r,
                char_proj: cp,
                out: out.map(PathBuf::from),
                refinements: refi.map(|(a, b)| (a.min(b), a.max(b))),
                repeats: rep,
            })
    }

    proptest! {
        #[test]
        fn ini_round_trip(c in arb_config()) {
            let text = c.to_ini();
            prop_assert_eq!(RunConfig::from_ini(&text).unwrap(), c);
        }
    }
}

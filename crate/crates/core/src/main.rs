use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aorecon::harness::config::{parse_bool, parse_range};
use aorecon::harness::{
    convergence_study, reconstruction_accuracy_study, run_simulation, solution_csv, solver_config,
    timing_study, write_file, ProblemId, RunConfig, RunReport,
};
use aorecon::reconstruct::{validate_cwz753, Scheme};
use aorecon::Error;

#[derive(Parser)]
#[command(
    name = "aorecon",
    version,
    about = "Adaptive-order finite-volume laboratory"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one problem and dump the final cell averages.
    Run(Opts),
    /// Run a refinement or timing study.
    Study {
        kind: StudyKind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check CWZ(7;5;3x3) parameters against the accuracy conditions.
    Validate {
        #[arg(long, default_value_t = 4)]
        mhat: i32,
        #[arg(long, default_value_t = 2)]
        ell: i32,
        #[arg(long, default_value_t = 1.0)]
        rexp: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StudyKind {
    Accuracy,
    Convergence,
    Timing,
}

#[derive(Args)]
struct Opts {
    /// INI-style file of `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    mhat: Option<i32>,
    #[arg(long)]
    ell: Option<i32>,
    #[arg(long)]
    rexp: Option<f64>,
    #[arg(long, value_name = "BOOL")]
    char_proj: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exponent range `j0..j1`.
    #[arg(long)]
    refinements: Option<String>,
    #[arg(long)]
    repeats: Option<usize>,
}

impl Opts {
    fn resolve(&self) -> aorecon::Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_ini(&std::fs::read_to_string(p)?)?,
            None => RunConfig::default(),
        };
        if let Some(v) = &self.problem {
            cfg.problem = v.parse()?;
        }
        if let Some(v) = self.cells {
            cfg.cells = Some(v);
        }
        if let Some(v) = &self.scheme {
            cfg.scheme = v.parse()?;
        }
        if let Some(v) = self.cfl {
            cfg.cfl = Some(v);
        }
        if let Some(v) = self.mhat {
            cfg.mhat = v;
        }
        if let Some(v) = self.ell {
            cfg.ell = v;
        }
        if let Some(v) = self.rexp {
            cfg.rexp = v;
        }
        if let Some(v) = &self.char_proj {
            cfg.char_proj = parse_bool(v)?;
        }
        if let Some(v) = &self.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = &self.refinements {
            cfg.refinements = Some(parse_range(v)?);
        }
        if let Some(v) = self.repeats {
            cfg.repeats = v;
        }
        Ok(cfg)
    }
}

fn warn_if_invalid(cfg: &RunConfig) {
    if cfg.scheme != Scheme::Cwz753 {
        return;
    }
    match validate_cwz753(cfg.mhat, cfg.ell, cfg.rexp) {
        Ok(rep) if !rep.satisfied => eprintln!(
            "warning: (mhat={}, ell={}, r={}) violates {:?} at critical points of order {:?}; optimal order is not guaranteed",
            cfg.mhat,
            cfg.ell,
            cfg.rexp,
            rep.binding_condition,
            rep.violated_ncp()
        ),
        Ok(_) => {}
        Err(e) => eprintln!("warning: parameter check failed: {e}"),
    }
}

fn dyadic(base: usize, range: (u32, u32)) -> Vec<usize> {
    (0..=range.1 - range.0).map(|k| base << k).collect()
}

fn emit(report: &RunReport, csv: String, out: &Option<PathBuf>) -> aorecon::Result<()> {
    print!("{}", report.summary());
    if let Some(p) = out {
        write_file(p, &csv)?;
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn execute(cmd: Command) -> aorecon::Result<()> {
    match cmd {
        Command::Run(opts) => {
            let cfg = opts.resolve()?;
            warn_if_invalid(&cfg);
            let spec = cfg.problem_spec();
            let (field, report) =
                run_simulation(&spec, cfg.cells_or(400), &solver_config(&spec, &cfg))?;
            emit(&report, solution_csv(&field), &cfg.out)
        }
        Command::Study { kind, opts } => {
            let cfg = opts.resolve()?;
            warn_if_invalid(&cfg);
            match kind {
                StudyKind::Accuracy => {
                    let f = match cfg.problem {
                        ProblemId::Accuracy(f) => f,
                        other => {
                            return Err(Error::InvalidArgument(format!(
                                "the accuracy study needs accuracy_u0/u1/u2, got {other}"
                            )))
                        }
                    };
                    let report = reconstruction_accuracy_study(
                        f,
                        &cfg.recon(),
                        cfg.refinements.unwrap_or((2, 9)),
                    )?;
                    emit(&report, report.convergence_csv(), &cfg.out)
                }
                StudyKind::Convergence => {
                    let spec = cfg.problem_spec();
                    let grids = dyadic(cfg.cells_or(25), cfg.refinements.unwrap_or((0, 3)));
                    let report = convergence_study(&spec, &grids, &solver_config(&spec, &cfg))?;
                    emit(&report, report.convergence_csv(), &cfg.out)
                }
                StudyKind::Timing => {
                    let spec = cfg.problem_spec();
                    let grids = dyadic(cfg.cells_or(200), cfg.refinements.unwrap_or((0, 2)));
                    let mut solver = solver_config(&spec, &cfg);
                    solver.cfl = cfg.cfl.unwrap_or(0.45);
                    let schemes = [Scheme::Cwz753, Scheme::WaoBgs, Scheme::WaoAhz];
                    let report = timing_study(&spec, &grids, &schemes, cfg.repeats, &solver)?;
                    for w in &report.warnings {
                        eprintln!("warning: {w}");
                    }
                    emit(&report, report.timing_csv(), &cfg.out)
                }
            }
        }
        Command::Validate { mhat, ell, rexp } => {
            let rep = validate_cwz753(mhat, ell, rexp)?;
            println!(
                "mhat={mhat} ell={ell} r={rexp}: {}",
                if rep.satisfied { "ok" } else { "violated" }
            );
            for row in &rep.per_ncp {
                println!(
                    "  n_cp={}{} case={:?} theta={} {}",
                    row.n_cp,
                    if row.open_ended { "+" } else { "" },
                    row.case,
                    row.theta,
                    if row.satisfied {
                        "ok".to_string()
                    } else {
                        format!("fails {:?}", row.violated)
                    }
                );
            }
            if rep.satisfied {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "binding condition {:?}",
                    rep.binding_condition
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::NonFinite { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e @ Error::Io(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use lgh::suite::{run_suite, run_suite_with_determinism};
use lgh::{harness, Error, GroupId, RunConfig, SuiteConfig, VerificationReport};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

/// Numerical verification of eigenfamilies, harmonic morphisms and their
/// non-compact duals on classical Lie groups.
#[derive(Parser, Debug)]
#[command(name = "lgh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the six generator-sum matrix identities for one n.
    VerifyIdentities {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = harness::IDENTITY_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the τ and κ formulas for coordinate functions on SO(n), U(n) or Sp(n).
    VerifyLemma {
        #[arg(long, value_enum)]
        group: LemmaGroup,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check an eigenfamily given by the `family` block of a config.
    VerifyFamily(Common),
    /// Check a quotient P/Q given by the `family` and `morphism` blocks.
    VerifyMorphism(Common),
    /// Check a family on the compact side and on the dual given by `pair`.
    VerifyDuality(Common),
    /// Report dual residuals of an isotropic-vector family, without a verdict.
    ProbeDuality(Common),
    /// Run the full acceptance matrix.
    Suite {
        #[arg(long)]
        seed: Option<u64>,
        /// Replace every per-check sample count.
        #[arg(long)]
        samples: Option<usize>,
        /// Replace every per-check tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        radius: Option<f64>,
        /// Run twice and compare every residual bit for bit.
        #[arg(long)]
        determinism: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum LemmaGroup {
    So,
    U,
    Sp,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    floor: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.tol {
            cfg.tol = v;
        }
        if let Some(v) = self.radius {
            cfg.radius = v;
        }
        if let Some(v) = self.floor {
            cfg.floor = v;
            if let Some(m) = cfg.morphism.as_mut() {
                m.floor = v;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn verdict(reports: &[VerificationReport]) -> Outcome {
    if reports.iter().all(|r| r.pass != Some(false)) {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn single(r: Result<VerificationReport, Error>, out: Option<&Path>) -> Result<Outcome, Error> {
    let r = r?;
    emit(&serde_json::to_value(&r).expect("reports serialize"), out)?;
    Ok(verdict(std::slice::from_ref(&r)))
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::VerifyIdentities { n, tol, out } => {
            if !(tol > 0.0) {
                return Err(Error::Config(format!("--tol must be positive, got {tol}")));
            }
            single(harness::run_identities(n, tol), out.as_deref())
        }
        Command::VerifyLemma { group, n, common } => {
            let cfg = common.load()?;
            let g = match group {
                LemmaGroup::So => GroupId::So { n },
                LemmaGroup::U => GroupId::U { n },
                LemmaGroup::Sp => GroupId::Sp { n },
            };
            single(harness::run_lemma(g, &cfg), common.out.as_deref())
        }
        Command::VerifyFamily(common) => {
            let cfg = common.load()?;
            single(harness::run_family(&cfg), common.out.as_deref())
        }
        Command::VerifyMorphism(common) => {
            let cfg = common.load()?;
            single(harness::run_morphism(&cfg), common.out.as_deref())
        }
        Command::VerifyDuality(common) => {
            let cfg = common.load()?;
            let reports = harness::run_duality(&cfg)?;
            emit(&serde_json::to_value(&reports).expect("reports serialize"), common.out.as_deref())?;
            Ok(verdict(&reports))
        }
        Command::ProbeDuality(common) => {
            let cfg = common.load()?;
            single(harness::run_probe(&cfg), common.out.as_deref())
        }
        Command::Suite {
            seed,
            samples,
            tol,
            radius,
            determinism,
            out,
        } => {
            let mut cfg = SuiteConfig::default();
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(v) = samples {
                if v == 0 {
                    return Err(Error::Config("--samples must be at least 1".into()));
                }
                cfg.samples = Some(v);
            }
            if let Some(v) = tol {
                if !(v > 0.0) {
                    return Err(Error::Config(format!("--tol must be positive, got {v}")));
                }
                cfg.tol = Some(v);
            }
            if let Some(v) = radius {
                if !(v > 0.0 && v <= lgh::duality::MAX_RADIUS) {
                    return Err(Error::Config(format!("--radius must lie in (0, 1], got {v}")));
                }
                cfg.radius = v;
            }
            let report = if determinism {
                run_suite_with_determinism(&cfg)?
            } else {
                run_suite(&cfg)?
            };
            emit(&serde_json::to_value(&report).expect("reports serialize"), out.as_deref())?;
            for c in &report.criteria {
                eprintln!("criterion {}: {} ({})", c.id, if c.pass { "pass" } else { "FAIL" }, c.title);
            }
            Ok(if report.pass { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn init_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("LGH_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("LGH_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| run(cli));
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(EXIT_FAIL),
        Err(e @ Error::Inconclusive { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

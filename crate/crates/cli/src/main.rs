//! Command-line driver for the field-dynamics verification lab.
//!
//! Exit codes: 0 all checks pass, 1 check failure or numerical error,
//! 2 configuration error.

mod commands;
mod config;
mod output;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration: exit code 2.
    Config(String),
    /// A verification check failed or a numerical error occurred: exit 1.
    Check(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Check(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "fieldlab",
    version,
    about = "Verification lab for complex-field electrodynamics: tensor identities, \
             Lagrangian cross-checks, saddle-point variational calculus, lattice action \
             gradients, field-vector evolution, and point-charge electrostatics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// RNG seed recorded in every output.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory for reports and data files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Evaluate in the exact rational domain where supported.
    #[arg(long, global = true)]
    exact: bool,

    /// Also write SVG line plots next to the CSV data.
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the determinant-identity and density-equivalence suite.
    VerifyIdentities {
        /// Random field points per k (float domain).
        #[arg(long)]
        samples: Option<usize>,
        /// Random rational field points per k (exact domain).
        #[arg(long)]
        exact_samples: Option<usize>,
        /// Negative control: flip one sign inside the tensor assembly and
        /// require the suite to catch it.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Evaluate every density form at one field/source point.
    LagrangianEval {
        /// Electric field components, e.g. --e 1,0,0
        #[arg(long, value_delimiter = ',')]
        e: Option<Vec<f64>>,
        /// Magnetic field components.
        #[arg(long, value_delimiter = ',')]
        b: Option<Vec<f64>>,
        /// Field-strength scale.
        #[arg(long)]
        k: Option<f64>,
    },
    /// Locate and verify the saddle of a built-in analytic function.
    Saddle {
        /// Built-in: z2, cubic, exp-mix, conj, abs2.
        #[arg(long)]
        function: Option<String>,
        /// Newton starting point, e.g. --start 1,1
        #[arg(long, value_delimiter = ',')]
        start: Option<Vec<f64>>,
    },
    /// Action gradients: four-way comparison, FD oracle, nonlinearity sweep.
    ActionCheck {
        /// Hypercubic lattice extent.
        #[arg(long)]
        lattice: Option<usize>,
        #[arg(long)]
        k: Option<f64>,
        /// Skip the finite-difference oracle.
        #[arg(long)]
        no_fd: bool,
    },
    /// Evolve the complex field vector and write trajectory data.
    Evolve {
        /// Initial data: plane-wave, standing-wave, zero.
        #[arg(long)]
        preset: Option<String>,
        /// Spatial operators: spectral or fd.
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        /// Time step; 0 picks one period / steps.
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Point-charge fields and the finite-self-energy study.
    BiElectrostatic {
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        k: Option<f64>,
        /// r_min decades below the saturation radius.
        #[arg(long)]
        decades: Option<usize>,
    },
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::load(cli.common.config.as_deref())?;
    if let Some(seed) = cli.common.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.common.out {
        config.out = out.display().to_string();
    }
    if let Some(format) = &cli.common.format {
        config.format = format.clone();
    }
    config.svg |= cli.common.svg;

    match &cli.command {
        Command::VerifyIdentities {
            samples,
            exact_samples,
            ..
        } => {
            if let Some(s) = samples {
                config.verify_identities.samples = *s;
            }
            if let Some(s) = exact_samples {
                config.verify_identities.exact_samples = *s;
            }
        }
        Command::LagrangianEval { e, b, k } => {
            let three = |v: &Vec<f64>, name: &str| -> Result<[f64; 3], CliError> {
                v.as_slice().try_into().map_err(|_| {
                    CliError::Config(format!("--{name} takes exactly three components"))
                })
            };
            if let Some(e) = e {
                config.lagrangian_eval.e = three(e, "e")?;
            }
            if let Some(b) = b {
                config.lagrangian_eval.b = three(b, "b")?;
            }
            if let Some(k) = k {
                config.lagrangian_eval.k = *k;
            }
        }
        Command::Saddle { function, start } => {
            if let Some(f) = function {
                config.saddle.function = f.clone();
            }
            if let Some(s) = start {
                config.saddle.start = s.as_slice().try_into().map_err(|_| {
                    CliError::Config("--start takes exactly two components".to_string())
                })?;
            }
        }
        Command::ActionCheck { lattice, k, no_fd } => {
            if let Some(n) = lattice {
                config.action_check.lattice = *n;
            }
            if let Some(k) = k {
                config.action_check.k = *k;
            }
            if *no_fd {
                config.action_check.fd_check = false;
            }
        }
        Command::Evolve {
            preset,
            scheme,
            steps,
            dt,
        } => {
            if let Some(p) = preset {
                config.evolve.preset = p.clone();
            }
            if let Some(s) = scheme {
                config.evolve.scheme = s.clone();
            }
            if let Some(s) = steps {
                config.evolve.steps = *s;
            }
            if let Some(dt) = dt {
                config.evolve.dt = *dt;
            }
        }
        Command::BiElectrostatic { q, k, decades } => {
            if let Some(q) = q {
                config.bi_electrostatic.q = *q;
            }
            if let Some(k) = k {
                config.bi_electrostatic.k = *k;
            }
            if let Some(d) = decades {
                config.bi_electrostatic.decades = *d;
            }
        }
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let config = resolve_config(cli)?;
    if cli.common.exact
        && !matches!(
            cli.command,
            Command::VerifyIdentities { .. } | Command::LagrangianEval { .. }
        )
    {
        return Err(CliError::Config(
            "--exact is supported by verify-identities and lagrangian-eval only".to_string(),
        ));
    }
    let out = output::OutputDir::create(
        std::path::Path::new(&config.out),
        config.seed,
        &config.hash(),
    )?;
    let started = Instant::now();
    let mut envelope = match &cli.command {
        Command::VerifyIdentities { inject_fault, .. } => {
            commands::verify::run(&config, &out, cli.common.exact, *inject_fault)?
        }
        Command::LagrangianEval { .. } => {
            commands::lagrangian_eval::run(&config, &out, cli.common.exact)?
        }
        Command::Saddle { .. } => commands::saddle::run(&config, &out)?,
        Command::ActionCheck { .. } => commands::action_check::run(&config, &out)?,
        Command::Evolve { .. } => commands::evolve::run(&config, &out)?,
        Command::BiElectrostatic { .. } => commands::electrostatic::run(&config, &out)?,
    };
    envelope.wall_time_ms = Some(started.elapsed().as_millis());
    envelope.emit(&out)?;
    Ok(envelope.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("one or more checks failed");
            ExitCode::from(1)
        }
        Err(CliError::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(2)
        }
    }
}

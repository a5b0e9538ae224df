//! `qmetro`: runs metrology scenarios and writes JSON or CSV reports.

mod config;
mod error;
mod format;
mod scenarios;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Number, Value};

use config::{Params, Scenario, ScenarioConfig};
use error::{CliError, CliResult};
use scenarios::{Context, Format};

#[derive(Parser, Debug)]
#[command(name = "qmetro", version, about = "Fisher-information scenarios for spin-ensemble metrology")]
struct Cli {
    /// JSON config: {"scenario", "parameters", "output_path"}.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Defaults to csv for ramsey and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quantum Fisher information of a pure probe state.
    Qfi(StateArgs),
    /// Ramsey fringes under collective z readout.
    Ramsey(RamseyArgs),
    /// Counting-argument verdict for an ensemble of identical factors.
    Bounds(BoundsArgs),
    /// Monte-Carlo estimation, literal datasets, or two-value discrimination.
    Estimate(EstimateArgs),
    /// Checks a catalog of squeezed and GHZ state properties.
    FaqCatalog,
}

#[derive(Args, Debug, Default)]
struct StateArgs {
    /// single, product, squeezed, ghz or dark.
    #[arg(long)]
    state: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
}

#[derive(Args, Debug)]
struct RamseyArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    phase_points: Option<u64>,
    /// Grid covers [0, phase_max); default 4*pi.
    #[arg(long, allow_negative_numbers = true)]
    phase_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    projected_fraction: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    outcome_probability: Option<f64>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    multiplicity: Option<u64>,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    /// mse, dataset or discriminate.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// optimal, x, y, z or bloch (with --polar and --azimuth).
    #[arg(long)]
    basis: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    polar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    azimuth: Option<f64>,
    /// Comma-separated outcome indices, e.g. 0,1,1.
    #[arg(long)]
    outcomes: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    theta_a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    theta_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    weight_a: Option<f64>,
    /// basis_states or evolve.
    #[arg(long)]
    protocol: Option<String>,
}

/// Collects the flags that were actually given.
#[derive(Default)]
struct Flags(Map<String, Value>);

impl Flags {
    fn f(&mut self, key: &str, v: Option<f64>) -> &mut Self {
        if let Some(x) = v {
            let n = Number::from_f64(x).map_or(Value::String(x.to_string()), Value::Number);
            self.0.insert(key.into(), n);
        }
        self
    }

    fn u(&mut self, key: &str, v: Option<u64>) -> &mut Self {
        if let Some(x) = v {
            self.0.insert(key.into(), Value::from(x));
        }
        self
    }

    fn s(&mut self, key: &str, v: &Option<String>) -> &mut Self {
        if let Some(x) = v {
            self.0.insert(key.into(), Value::String(x.clone()));
        }
        self
    }

    fn state(&mut self, a: &StateArgs) -> &mut Self {
        self.s("state", &a.state).u("n", a.n).f("epsilon", a.epsilon).f("gamma", a.gamma).f("t", a.t).f("theta", a.theta)
    }
}

impl Command {
    fn scenario(&self) -> Scenario {
        match self {
            Self::Qfi(_) => Scenario::Qfi,
            Self::Ramsey(_) => Scenario::Ramsey,
            Self::Bounds(_) => Scenario::Bounds,
            Self::Estimate(_) => Scenario::Estimate,
            Self::FaqCatalog => Scenario::FaqCatalog,
        }
    }

    fn flags(&self) -> Map<String, Value> {
        let mut f = Flags::default();
        match self {
            Self::Qfi(a) => {
                f.state(a);
            }
            Self::Ramsey(a) => {
                f.state(&a.state)
                    .u("phase_points", a.phase_points)
                    .f("phase_max", a.phase_max)
                    .f("projected_fraction", a.projected_fraction)
                    .f("outcome_probability", a.outcome_probability);
            }
            Self::Bounds(a) => {
                f.state(&a.state).u("multiplicity", a.multiplicity);
            }
            Self::Estimate(a) => {
                f.s("mode", &a.mode)
                    .f("theta", a.theta)
                    .f("t", a.t)
                    .f("gamma", a.gamma)
                    .u("shots", a.shots)
                    .u("trials", a.trials)
                    .s("basis", &a.basis)
                    .f("polar", a.polar)
                    .f("azimuth", a.azimuth)
                    .s("outcomes", &a.outcomes)
                    .f("theta_a", a.theta_a)
                    .f("theta_b", a.theta_b)
                    .f("weight_a", a.weight_a)
                    .s("protocol", &a.protocol);
            }
            Self::FaqCatalog => {}
        }
        f.0
    }
}

const DEFAULT_SEED: u64 = 0;

fn execute(cli: Cli) -> CliResult<()> {
    let file = match &cli.config {
        Some(p) => ScenarioConfig::load(p)?,
        None => ScenarioConfig::default(),
    };
    let scenario = match (&cli.command, file.scenario) {
        (Some(c), Some(s)) if c.scenario() != s => {
            return Err(CliError::validation(format!(
                "subcommand {} conflicts with config scenario {}",
                c.scenario().as_str(),
                s.as_str()
            )));
        }
        (Some(c), _) => c.scenario(),
        (None, Some(s)) => s,
        (None, None) => return Err(CliError::validation("no scenario: give a subcommand or a config with \"scenario\"")),
    };
    let flags = cli.command.as_ref().map(Command::flags).unwrap_or_default();
    let params = Params::merged(file.parameters, flags);
    let seed = match cli.seed {
        Some(s) => s,
        None => params.u64_opt("seed")?.unwrap_or(DEFAULT_SEED),
    };
    let ctx = Context { seed, format: cli.format };
    let body = scenarios::run(scenario, &params, &ctx)?;
    match cli.out.or(file.output_path) {
        Some(path) => std::fs::write(&path, body)
            .map_err(|e| CliError::runtime(format!("cannot write '{}': {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(body.as_bytes())
                .map_err(|e| CliError::runtime(format!("cannot write to stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", CliError::validation(first).to_json());
            return ExitCode::from(2);
        }
    };
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(|| execute(cli));
    let err = match outcome {
        Ok(Ok(())) => return ExitCode::SUCCESS,
        Ok(Err(e)) => e,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            CliError::runtime(format!("internal error: {msg}"))
        }
    };
    eprintln!("{}", err.to_json());
    ExitCode::from(err.exit_code() as u8)
}

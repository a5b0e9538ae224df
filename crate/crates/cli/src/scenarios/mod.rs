mod bounds;
mod estimate;
mod faq;
mod qfi;
mod ramsey;

use qmetro_core::qcore::{tensor, StateVector, MAX_SPINS};
use qmetro_core::states::{make_ghz, make_squeezed, plus_x, SqueezedSpec};
use serde_json::{Map, Value};

use crate::config::{check, Params, Scenario};
use crate::error::{CliError, CliResult};
use crate::format::{num, render_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Settings that do not belong to a single scenario.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub seed: u64,
    pub format: Option<Format>,
}

pub fn run(scenario: Scenario, params: &Params, ctx: &Context) -> CliResult<String> {
    let format = ctx.format.unwrap_or(if scenario == Scenario::Ramsey { Format::Csv } else { Format::Json });
    if format == Format::Csv && scenario != Scenario::Ramsey {
        return Err(CliError::validation(format!("csv output is only available for ramsey, not {}", scenario.as_str())));
    }
    let report = match scenario {
        Scenario::Qfi => qfi::run(params)?,
        Scenario::Ramsey => {
            let (report, csv) = ramsey::run(params)?;
            if format == Format::Csv {
                return Ok(csv);
            }
            report
        }
        Scenario::Bounds => bounds::run(params)?,
        Scenario::Estimate => estimate::run(params, ctx.seed)?,
        Scenario::FaqCatalog => {
            params.reject_unknown(scenario, &["seed"])?;
            faq::run()?
        }
    };
    Ok(render_json(&report))
}

/// Ordered JSON object builder.
pub(crate) struct Report(Map<String, Value>);

impl Report {
    pub fn new(scenario: Scenario) -> Self {
        let mut m = Map::new();
        m.insert("scenario".into(), Value::String(scenario.as_str().into()));
        Self(m)
    }

    pub fn empty() -> Self {
        Self(Map::new())
    }

    pub fn set(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.insert(key.into(), v.into());
        self
    }

    pub fn f(self, key: &str, x: f64) -> Self {
        self.set(key, num(x))
    }

    pub fn done(self) -> Value {
        Value::Object(self.0)
    }
}

/// Pure input states shared by several scenarios.
pub(crate) const PURE_STATES: &[&str] = &["single", "product", "squeezed", "ghz", "dark"];

pub(crate) struct PureState {
    pub label: &'static str,
    pub num_spins: usize,
    pub epsilon: Option<f64>,
    pub state: StateVector,
}

pub(crate) fn spin_count(params: &Params, key: &str, default: usize, min: usize) -> CliResult<usize> {
    let n = params.usize_or(key, default)?;
    if n < min || n > MAX_SPINS {
        return Err(CliError::param(key, format!("must be between {min} and {MAX_SPINS}, got {n}")));
    }
    Ok(n)
}

pub(crate) fn epsilon(params: &Params) -> CliResult<f64> {
    let e = params.f64_req("epsilon")?;
    check("epsilon", e, (0.0..=1.0).contains(&e), "in [0, 1]")
}

pub(crate) fn build_pure(label: &'static str, params: &Params) -> CliResult<PureState> {
    let fixed = |n: usize| -> CliResult<usize> {
        match params.usize_opt("n")? {
            Some(m) if m != n => Err(CliError::param("n", format!("state {label} has exactly {n} spin(s), got {m}"))),
            _ => Ok(n),
        }
    };
    let (num_spins, epsilon, state) = match label {
        "single" => (fixed(1)?, None, plus_x()),
        "dark" => (fixed(2)?, None, StateVector::from_real(&[0.0, 1.0, 1.0, 0.0])?),
        "product" => {
            let n = spin_count(params, "n", 2, 1)?;
            (n, None, tensor(&vec![plus_x(); n])?)
        }
        "squeezed" => {
            let n = spin_count(params, "n", 2, 2)?;
            let e = epsilon(params)?;
            (n, Some(e), make_squeezed(SqueezedSpec::new(n, e)?)?)
        }
        "ghz" => {
            let n = spin_count(params, "n", 2, 2)?;
            (n, None, make_ghz(n)?)
        }
        other => unreachable!("state {other} is filtered by choice()"),
    };
    Ok(PureState { label, num_spins, epsilon, state })
}

pub(crate) fn gamma_and_time(params: &Params, required: bool) -> CliResult<(f64, f64)> {
    let (gamma, t) = if required {
        (params.f64_req("gamma")?, params.f64_req("t")?)
    } else {
        (params.f64_or("gamma", 1.0)?, params.f64_or("t", 1.0)?)
    };
    check("t", t, t >= 0.0, ">= 0")?;
    Ok((gamma, t))
}

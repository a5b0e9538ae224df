use qmetro_core::bounds::{heisenberg_single, sql_info};
use qmetro_core::fisher::{qfi_of_family, EvolutionFamily};
use qmetro_core::qcore::HamiltonianSpec;
use qmetro_core::states::{factor_count, DEFAULT_FACTOR_TOL};
use serde_json::Value;

use super::{build_pure, gamma_and_time, Report, PURE_STATES};
use crate::config::{Params, Scenario};
use crate::error::CliResult;

const KEYS: &[&str] = &["state", "n", "epsilon", "gamma", "t", "theta", "seed"];

pub fn run(params: &Params) -> CliResult<Value> {
    params.reject_unknown(Scenario::Qfi, KEYS)?;
    let label = params.choice("state", PURE_STATES, None)?;
    let (gamma, t) = gamma_and_time(params, true)?;
    let theta = params.f64_or("theta", 0.0)?;
    let s = build_pure(label, params)?;
    let h = HamiltonianSpec::collective_z(s.num_spins, gamma)?;
    let family = EvolutionFamily::multiplicative(s.state.clone(), h)?;
    let qfi = qfi_of_family(&family, theta, t)?.value;
    let mut r = Report::new(Scenario::Qfi).set("state", s.label).set("n", s.num_spins);
    if let Some(e) = s.epsilon {
        r = r.f("epsilon", e);
    }
    Ok(r.f("gamma", gamma)
        .f("t", t)
        .f("theta", theta)
        .f("qfi", qfi)
        .f("heisenberg_single", heisenberg_single(gamma, t))
        .f("sql", sql_info(s.num_spins, gamma, t))
        .set("factor_count", factor_count(&s.state, DEFAULT_FACTOR_TOL))
        .done())
}

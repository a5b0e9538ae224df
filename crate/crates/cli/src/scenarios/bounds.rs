use qmetro_core::bounds::{counting_verdict, uncertainty_from_info};
use qmetro_core::states::EnsembleSpec;
use serde_json::{Map, Value};

use super::{build_pure, gamma_and_time, Report, PURE_STATES};
use crate::config::{Params, Scenario};
use crate::error::{CliError, CliResult};

const KEYS: &[&str] = &["factors", "state", "n", "epsilon", "multiplicity", "gamma", "t", "seed"];
const MAX_ENSEMBLE_SPINS: usize = 1_000_000;
const FACTOR_KEYS: &[&str] = &["state", "n", "epsilon", "multiplicity"];

pub fn run(params: &Params) -> CliResult<Value> {
    params.reject_unknown(Scenario::Bounds, KEYS)?;
    let (gamma, t) = gamma_and_time(params, false)?;
    let factor_params: Vec<Params> = match params.raw("factors") {
        Some(_) if ["state", "n", "epsilon", "multiplicity"].iter().any(|k| params.contains(k)) => {
            return Err(CliError::param("factors", "give either a factors list or a single state, not both"));
        }
        Some(Value::Array(items)) if !items.is_empty() => items
            .iter()
            .map(|v| match v {
                Value::Object(m) => Ok(Params::merged(m.clone(), Map::new())),
                _ => Err(CliError::param("factors", "each factor must be an object")),
            })
            .collect::<CliResult<_>>()?,
        Some(_) => return Err(CliError::param("factors", "expected a non-empty list of factor objects")),
        None => vec![params.clone()],
    };

    let mut factors = Vec::new();
    let mut described = Vec::new();
    let mut total = 0usize;
    for (i, fp) in factor_params.iter().enumerate() {
        if params.contains("factors") {
            if let Some(k) = fp.raw_keys().find(|k| !FACTOR_KEYS.contains(k)) {
                return Err(CliError::param(&format!("factors[{i}].{k}"), "unknown factor key"));
            }
        }
        let label = fp.choice("state", PURE_STATES, None).map_err(|e| prefix(e, params, i))?;
        let s = build_pure(label, fp).map_err(|e| prefix(e, params, i))?;
        let mult = fp.usize_or("multiplicity", 1).map_err(|e| prefix(e, params, i))?;
        if mult == 0 {
            return Err(prefix(CliError::param("multiplicity", "must be at least 1"), params, i));
        }
        total += s.num_spins * mult;
        if total > MAX_ENSEMBLE_SPINS {
            return Err(CliError::param("multiplicity", format!("ensemble of {total} spins is too large")));
        }
        let mut d = Report::empty().set("state", s.label).set("n", s.num_spins);
        if let Some(e) = s.epsilon {
            d = d.f("epsilon", e);
        }
        described.push(d.set("multiplicity", mult).done());
        factors.push((s.state, mult));
    }
    let spec = EnsembleSpec::new(factors)?;
    let rep = counting_verdict(&spec, gamma, t)?;
    Ok(Report::new(Scenario::Bounds)
        .set("factors", Value::Array(described))
        .f("gamma", gamma)
        .f("t", t)
        .set("n_spins", rep.n_spins)
        .set("m_factors", rep.m_factors)
        .f("i_single", rep.i_single)
        .f("info_unentangled", rep.info_unentangled)
        .f("info_ensemble_bound", rep.info_ensemble_bound)
        .f("response_bound", rep.response_bound)
        .f("uncertainty_unentangled", uncertainty_from_info(rep.info_unentangled))
        .f("uncertainty_ensemble_bound", uncertainty_from_info(rep.info_ensemble_bound))
        .set("verdict", rep.verdict.as_str())
        .set("excess_route", rep.excess_route.map_or(Value::Null, |r| r.as_str().into()))
        .done())
}

/// Points a factor-level error at its position in the list.
fn prefix(e: CliError, params: &Params, i: usize) -> CliError {
    match e {
        CliError::Validation { parameter: Some(p), message, location } if params.contains("factors") => {
            CliError::Validation { parameter: Some(format!("factors[{i}].{p}")), message, location }
        }
        other => other,
    }
}

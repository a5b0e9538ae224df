use std::f64::consts::{FRAC_PI_2, PI};

use qmetro_core::estimate::{dataset_stats, discriminate_two_values, helstrom_basis, helstrom_error, mse_vs_crb, ShotDataset};
use qmetro_core::fisher::{optimize_measurement, EvolutionFamily, MeasurementBasis, PriorDistribution};
use qmetro_core::qcore::{evolve_multiplicative, HamiltonianSpec, StateVector};
use qmetro_core::states::plus_x;
use serde_json::Value;

use super::{gamma_and_time, Report};
use crate::config::{check, Params, Scenario};
use crate::error::{CliError, CliResult};

const KEYS: &[&str] = &[
    "mode", "theta", "t", "gamma", "shots", "trials", "seed", "basis", "polar", "azimuth",
    "outcomes", "theta_a", "theta_b", "weight_a", "protocol",
];

const MAX_SHOTS: usize = 100_000_000;
const MAX_TRIALS: usize = 10_000_000;

pub fn run(params: &Params, seed: u64) -> CliResult<Value> {
    params.reject_unknown(Scenario::Estimate, KEYS)?;
    match params.choice("mode", &["mse", "dataset", "discriminate"], Some("mse"))? {
        "mse" => mse(params, seed),
        "dataset" => dataset(params),
        _ => discriminate(params),
    }
}

fn bounded(params: &Params, key: &str, default: usize, max: usize) -> CliResult<usize> {
    let v = params.usize_or(key, default)?;
    if v == 0 || v > max {
        return Err(CliError::param(key, format!("must be between 1 and {max}, got {v}")));
    }
    Ok(v)
}

fn mse(params: &Params, seed: u64) -> CliResult<Value> {
    let (gamma, t) = gamma_and_time(params, false)?;
    let theta = params.f64_or("theta", FRAC_PI_2)?;
    check("theta", theta, theta > 1e-6 && theta < PI - 1e-6, "inside (1e-6, pi - 1e-6)")?;
    let shots = bounded(params, "shots", 1000, MAX_SHOTS)?;
    let trials = bounded(params, "trials", 2000, MAX_TRIALS)?;
    let h = HamiltonianSpec::single_z(gamma);
    let basis_name = params.choice("basis", &["optimal", "x", "y", "z", "bloch"], Some("optimal"))?;
    let (polar, azimuth) = match basis_name {
        "optimal" => {
            let opt = optimize_measurement(&plus_x(), &h, theta, t)?;
            (opt.polar, opt.azimuth)
        }
        "x" => (FRAC_PI_2, 0.0),
        "y" => (FRAC_PI_2, FRAC_PI_2),
        "z" => (0.0, 0.0),
        _ => (params.f64_req("polar")?, params.f64_req("azimuth")?),
    };
    let basis = MeasurementBasis::bloch(polar, azimuth);
    let family = EvolutionFamily::multiplicative(plus_x(), h)?;
    let rep = mse_vs_crb(&family, &basis, theta, t, shots, trials, seed).map_err(|e| match e {
        qmetro_core::Error::NoInformation(_) => {
            CliError::param("basis", "the measurement carries no information at theta (dark fringe)")
        }
        other => other.into(),
    })?;
    Ok(Report::new(Scenario::Estimate)
        .set("mode", "mse")
        .f("gamma", gamma)
        .f("t", t)
        .f("theta", theta)
        .set("basis", basis_name)
        .f("polar", polar)
        .f("azimuth", azimuth)
        .set("shots", shots)
        .set("trials", trials)
        .set("seed", seed)
        .f("estimate", rep.estimate)
        .f("bias", rep.bias)
        .f("empirical_mse", rep.empirical_mse)
        .f("crb", rep.crb)
        .f("cfi", rep.cfi)
        .f("ratio", rep.ratio)
        .done())
}

fn outcomes(params: &Params) -> CliResult<Vec<usize>> {
    let bad = |msg: &str| CliError::param("outcomes", msg.to_string());
    match params.raw("outcomes") {
        None => Err(bad("required parameter is missing")),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| v.as_u64().and_then(|x| usize::try_from(x).ok()).ok_or_else(|| bad("entries must be non-negative integers")))
            .collect(),
        Some(Value::String(s)) => s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad("expected comma-separated non-negative integers")))
            .collect(),
        Some(_) => Err(bad("expected a list of outcomes")),
    }
}

fn dataset(params: &Params) -> CliResult<Value> {
    let outcomes = outcomes(params)?;
    let num_outcomes = outcomes.iter().copied().max().unwrap_or(0).max(1) + 1;
    let data = ShotDataset::from_outcomes(outcomes, num_outcomes, "literal").map_err(|_| {
        CliError::param("outcomes", "dataset needs at least one shot")
    })?;
    let stats = dataset_stats(&data)?;
    Ok(Report::new(Scenario::Estimate)
        .set("mode", "dataset")
        .set("shots", data.shots)
        .set("counts", data.counts())
        .f("mean", stats.mean)
        .f("variance", stats.variance)
        .done())
}

fn discriminate(params: &Params) -> CliResult<Value> {
    let theta_a = params.f64_or("theta_a", FRAC_PI_2)?;
    let theta_b = params.f64_or("theta_b", PI)?;
    if theta_a == theta_b {
        return Err(CliError::param("theta_b", "the two prior values must differ"));
    }
    let weight_a = params.f64_or("weight_a", 0.5)?;
    check("weight_a", weight_a, weight_a > 0.0 && weight_a < 1.0, "in (0, 1)")?;
    let prior = PriorDistribution::discrete(vec![(theta_a, weight_a), (theta_b, 1.0 - weight_a)])?;
    let protocol = params.choice("protocol", &["basis_states", "evolve"], Some("basis_states"))?;
    let mut report = Report::new(Scenario::Estimate).set("mode", "discriminate").set("protocol", protocol);
    let (rep, optimum) = if protocol == "basis_states" {
        let map = |v: f64| StateVector::basis(1, usize::from(v == theta_b));
        let z = MeasurementBasis::computational(1)?;
        let (a, b) = (map(theta_a)?, map(theta_b)?);
        (discriminate_two_values(&prior, map, &z)?, helstrom_error(weight_a, &a, 1.0 - weight_a, &b)?)
    } else {
        let (gamma, t) = gamma_and_time(params, false)?;
        report = report.f("gamma", gamma).f("t", t);
        let h = HamiltonianSpec::single_z(gamma);
        let map = |v: f64| evolve_multiplicative(&plus_x(), &h, v, t);
        let (a, b) = (map(theta_a)?, map(theta_b)?);
        let basis = helstrom_basis(weight_a, &a, 1.0 - weight_a, &b)?;
        (discriminate_two_values(&prior, map, &basis)?, helstrom_error(weight_a, &a, 1.0 - weight_a, &b)?)
    };
    Ok(report
        .f("theta_a", theta_a)
        .f("theta_b", theta_b)
        .f("weight_a", weight_a)
        .f("error_probability", rep.error_probability)
        .f("helstrom_error", optimum)
        .f("prior_uncertainty", rep.prior_uncertainty)
        .f("posterior_uncertainty", rep.posterior_uncertainty)
        .done())
}

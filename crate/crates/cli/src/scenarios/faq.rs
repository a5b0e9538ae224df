use std::f64::consts::PI;

use qmetro_core::qcore::{tensor, StateVector};
use qmetro_core::ramsey::{default_phase_grid, fit_fringe, run_ramsey, Channel, FringeFit};
use qmetro_core::states::{factor_count, make_ghz, make_squeezed, plus_x, MixedEnsemble, SqueezedSpec, DEFAULT_FACTOR_TOL};
use serde_json::Value;

use super::Report;
use crate::config::Scenario;
use crate::error::{CliError, CliResult};

/// Relative tolerance on fitted periods.
const PERIOD_TOL: f64 = 0.01;
const DARK_TOL: f64 = 1e-10;
const COLLAPSE_CONTRAST: f64 = 0.01;

fn verdict(agrees: bool) -> &'static str {
    if agrees {
        "AGREES"
    } else {
        "DISAGREES"
    }
}

fn fit(state: StateVector, theta: f64, channel: Channel) -> CliResult<FringeFit> {
    let data = run_ramsey(&MixedEnsemble::pure(state), theta, 1.0, 1.0, &default_phase_grid())?;
    Ok(fit_fringe(&data, channel)?)
}

fn period(f: &FringeFit) -> CliResult<f64> {
    f.period.ok_or_else(|| CliError::runtime("expected a fringe, found a flat signal"))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PERIOD_TOL * b
}

fn squeezed_pair(eps: f64) -> CliResult<StateVector> {
    Ok(make_squeezed(SqueezedSpec::new(2, eps)?)?)
}

pub fn run() -> CliResult<Value> {
    let mut items = Vec::new();

    let mut periods = Vec::new();
    let mut agrees = true;
    for n in 2..=4 {
        let p = period(&fit(make_ghz(n)?, 0.0, Channel::Parity)?)?;
        agrees &= close(p, 2.0 * PI / n as f64);
        periods.push(Report::empty().set("n", n).f("parity_period", p).f("expected", 2.0 * PI / n as f64).done());
    }
    items.push(
        Report::empty()
            .set("id", "ghz_phase_multiplication")
            .set("statement", "GHZ(N) parity fringes have period 2*pi/N")
            .set("measured", Value::Array(periods))
            .set("verdict", verdict(agrees))
            .done(),
    );

    let dark = StateVector::from_real(&[0.0, 1.0, 1.0, 0.0])?;
    let data = run_ramsey(&MixedEnsemble::pure(dark), 0.8, 1.0, 1.0, &default_phase_grid())?;
    let first = &data.outcome_distributions[0];
    let deviation = data
        .outcome_distributions
        .iter()
        .flat_map(|d| d.iter().zip(first).map(|(a, b)| (a - b).abs()))
        .fold(0.0f64, f64::max);
    let sz_max = data.expectation_sz.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    items.push(
        Report::empty()
            .set("id", "dark_state_invisible")
            .set("statement", "collective z readout of |10>+|01> does not depend on the readout phase and has Sz = 0")
            .f("max_distribution_deviation", deviation)
            .f("max_abs_sz", sz_max)
            .f("tolerance", DARK_TOL)
            .set("verdict", verdict(deviation < DARK_TOL && sz_max < DARK_TOL))
            .done(),
    );

    let m = factor_count(&squeezed_pair(1.0)?, DEFAULT_FACTOR_TOL);
    items.push(
        Report::empty()
            .set("id", "epsilon_one_entangled")
            .set("statement", "the epsilon = 1 pair is entangled (one indivisible factor)")
            .set("factor_count", m)
            .set("note", "at epsilon = 1 the pair equals |+>|+>, a product state")
            .set("verdict", verdict(m == 1))
            .done(),
    );

    let product_fit = fit(tensor(&[plus_x(), plus_x()])?, 0.0, Channel::Sz)?;
    let one_fit = fit(squeezed_pair(1.0)?, 0.0, Channel::Sz)?;
    let (p1, c1) = (period(&one_fit)?, one_fit.contrast);
    items.push(
        Report::empty()
            .set("id", "epsilon_one_fringes")
            .set("statement", "the epsilon = 1 pair shows Sz fringes of period pi and amplitude 1/2")
            .f("sz_period", p1)
            .f("sz_amplitude", c1)
            .f("product_period", period(&product_fit)?)
            .f("product_amplitude", product_fit.contrast)
            .set("verdict", verdict(close(p1, PI) && (c1 - 0.5).abs() < 0.01))
            .done(),
    );

    let strong = fit(squeezed_pair(0.001)?, 0.0, Channel::Sz)?;
    items.push(
        Report::empty()
            .set("id", "strong_squeezing_contrast")
            .set("statement", "as epsilon -> 0 the collective Sz fringe contrast vanishes")
            .f("epsilon", 0.001)
            .f("sz_amplitude", strong.contrast)
            .f("threshold", COLLAPSE_CONTRAST)
            .set("verdict", verdict(strong.contrast < COLLAPSE_CONTRAST))
            .done(),
    );

    let reference = period(&product_fit)?;
    let mut worst = 0.0f64;
    for k in 1..=20 {
        let p = period(&fit(squeezed_pair(0.05 * k as f64)?, 0.0, Channel::Sz)?)?;
        worst = worst.max((p - reference).abs() / reference);
    }
    items.push(
        Report::empty()
            .set("id", "squeezing_keeps_period")
            .set("statement", "squeezing lowers the Sz fringe amplitude but leaves the period unchanged")
            .f("product_period", reference)
            .f("max_relative_period_shift", worst)
            .set("verdict", verdict(worst <= PERIOD_TOL))
            .done(),
    );

    Ok(Report::new(Scenario::FaqCatalog).set("items", Value::Array(items)).done())
}

use std::f64::consts::PI;
use std::fmt::Write;

use qmetro_core::ramsey::{fit_fringe, run_ramsey, uniform_phase_grid, Channel, FringeData, FringeFit, DEFAULT_PHASE_POINTS};
use qmetro_core::states::{make_qnd_ensemble, MixedEnsemble};
use serde_json::Value;

use super::{build_pure, gamma_and_time, spin_count, Report, PURE_STATES};
use crate::config::{check, Params, Scenario};
use crate::error::{CliError, CliResult};
use crate::format::{nums, num_opt, sig};

const KEYS: &[&str] = &[
    "state", "n", "epsilon", "gamma", "t", "theta", "phase_points", "phase_max",
    "projected_fraction", "outcome_probability", "seed",
];

const MAX_PHASE_POINTS: usize = 1 << 16;

pub fn run(params: &Params) -> CliResult<(Value, String)> {
    params.reject_unknown(Scenario::Ramsey, KEYS)?;
    let mut states = PURE_STATES.to_vec();
    states.push("qnd");
    let label = params.choice("state", &states, None)?;
    let (gamma, t) = gamma_and_time(params, false)?;
    let theta = params.f64_or("theta", 0.0)?;
    let points = params.usize_or("phase_points", DEFAULT_PHASE_POINTS)?;
    if points == 0 || points > MAX_PHASE_POINTS {
        return Err(CliError::param("phase_points", format!("must be between 1 and {MAX_PHASE_POINTS}, got {points}")));
    }
    let phase_max = params.f64_or("phase_max", 4.0 * PI)?;
    check("phase_max", phase_max, phase_max > 0.0, "> 0")?;

    let mut report = Report::new(Scenario::Ramsey);
    let ensemble = if label == "qnd" {
        let n = spin_count(params, "n", 4, 1)?;
        let frac = params.f64_or("projected_fraction", 0.5)?;
        check("projected_fraction", frac, (0.0..=1.0).contains(&frac), "in [0, 1]")?;
        let p = params.f64_or("outcome_probability", 0.5)?;
        check("outcome_probability", p, (0.0..=1.0).contains(&p), "in [0, 1]")?;
        report = report.set("state", "qnd").set("n", n).f("projected_fraction", frac).f("outcome_probability", p);
        make_qnd_ensemble(n, frac, p)?
    } else {
        let s = build_pure(label, params)?;
        report = report.set("state", s.label).set("n", s.num_spins);
        if let Some(e) = s.epsilon {
            report = report.f("epsilon", e);
        }
        MixedEnsemble::pure(s.state)
    };
    let grid = uniform_phase_grid(points, phase_max);
    let data = run_ramsey(&ensemble, theta, t, gamma, &grid)?;

    let fit = |c: Channel| if points >= 8 { fit_fringe(&data, c).ok() } else { None };
    let report = report
        .f("gamma", gamma)
        .f("t", t)
        .f("theta", theta)
        .set("phase_points", points)
        .f("phase_max", phase_max)
        .set("fit_sz", fit_json(fit(Channel::Sz)))
        .set("fit_parity", fit_json(fit(Channel::Parity)))
        .set("readout_phase", nums(&data.readout_phase))
        .set("expectation_sz", nums(&data.expectation_sz))
        .set("expectation_parity", nums(&data.expectation_parity))
        .set(
            "outcome_distributions",
            Value::Array(data.outcome_distributions.iter().map(|d| nums(d)).collect()),
        )
        .done();
    Ok((report, fringe_csv(&data)))
}

fn fit_json(fit: Option<FringeFit>) -> Value {
    match fit {
        None => Value::Null,
        Some(f) => Report::empty()
            .set("period", num_opt(f.period))
            .f("contrast", f.contrast)
            .f("offset", f.offset)
            .f("residual", f.residual)
            .done(),
    }
}

/// `phase,expectation_sz,expectation_parity`, one row per grid point.
pub fn fringe_csv(data: &FringeData) -> String {
    let mut out = String::from("phase,expectation_sz,expectation_parity\n");
    for ((phi, sz), parity) in data.readout_phase.iter().zip(&data.expectation_sz).zip(&data.expectation_parity) {
        writeln!(out, "{},{},{}", sig(*phi), sig(*sz), sig(*parity)).expect("writing to a String");
    }
    out
}

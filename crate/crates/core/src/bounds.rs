//! Reference limits and the counting comparison of an ensemble against the
//! same number of independent, optimally prepared spins.

use crate::error::Result;
use crate::fisher::{qfi_of_family, EvolutionFamily};
use crate::qcore::HamiltonianSpec;
use crate::states::{factor_count_ensemble, EnsembleSpec, DEFAULT_FACTOR_TOL};

/// Absolute tolerance for comparing ensemble information with the SQL.
pub const VERDICT_TOL: f64 = 1e-9;

/// `(tγ)²`, the most information one spin gives under `θγσz/2`.
pub fn heisenberg_single(gamma: f64, t: f64) -> f64 {
    (t * gamma).powi(2)
}

/// `N·(tγ)²`, the standard quantum limit in information units.
pub fn sql_info(n: usize, gamma: f64, t: f64) -> f64 {
    n as f64 * heisenberg_single(gamma, t)
}

/// `1/√I`. Assumes an efficient estimator; infinite for zero information.
pub fn uncertainty_from_info(info: f64) -> f64 {
    1.0 / info.sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    BelowSql,
    AtSql,
    ClaimExceedsSql,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::BelowSql => "BELOW_SQL",
            Self::AtSql => "AT_SQL",
            Self::ClaimExceedsSql => "CLAIM_EXCEEDS_SQL",
        }
    }
}

/// Which term of the pure-state QFI carries an excess over the SQL.
///
/// `Response` means the summed derivative norms `4⟨dψ|dψ⟩` already exceed the
/// SQL (a faster-responding state). `Noise` would mean the QFI exceeds the SQL
/// while the response does not, which `QFI ≤ 4⟨dψ|dψ⟩` rules out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExcessRoute {
    Response,
    Noise,
}

impl ExcessRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Response => "response",
            Self::Noise => "noise",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub i_single: f64,
    pub n_spins: usize,
    pub m_factors: usize,
    pub info_unentangled: f64,
    pub info_ensemble_bound: f64,
    /// `Σ multiplicity × 4⟨dψ|dψ⟩` over factors.
    pub response_bound: f64,
    pub verdict: Verdict,
    pub excess_route: Option<ExcessRoute>,
}

/// Compares an ensemble's information with `N` unentangled spins. Each factor
/// evolves under the collective `θγΣσz/2` on its own spins.
pub fn counting_verdict(spec: &EnsembleSpec, gamma: f64, t: f64) -> Result<BoundReport> {
    let n_spins = spec.total_spins();
    let i_single = heisenberg_single(gamma, t);
    let info_unentangled = sql_info(n_spins, gamma, t);
    let m_factors = factor_count_ensemble(spec, DEFAULT_FACTOR_TOL);
    let mut info_ensemble_bound = 0.0;
    let mut response_bound = 0.0;
    for (state, mult) in spec.factors() {
        let h = HamiltonianSpec::collective_z(state.num_spins(), gamma)?;
        let family = EvolutionFamily::multiplicative(state.clone(), h.clone())?;
        let m = *mult as f64;
        info_ensemble_bound += m * qfi_of_family(&family, 0.0, t)?.value;
        let hpsi = h.apply(state.amplitudes())?;
        response_bound += m * 4.0 * t * t * hpsi.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    let verdict = if info_ensemble_bound > info_unentangled + VERDICT_TOL {
        Verdict::ClaimExceedsSql
    } else if info_ensemble_bound >= info_unentangled - VERDICT_TOL {
        Verdict::AtSql
    } else {
        Verdict::BelowSql
    };
    let excess_route = (verdict == Verdict::ClaimExceedsSql).then(|| {
        if response_bound > info_unentangled + VERDICT_TOL {
            ExcessRoute::Response
        } else {
            ExcessRoute::Noise
        }
    });
    Ok(BoundReport {
        i_single,
        n_spins,
        m_factors,
        info_unentangled,
        info_ensemble_bound,
        response_bound,
        verdict,
        excess_route,
    })
}

use qmetro_core::bounds::*;
use qmetro_core::qcore::StateVector;
use qmetro_core::states::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn squeezed_ensembles_never_beat_the_sql() {
    let mut r = ChaCha8Rng::seed_from_u64(31);
    for trial in 0..500 {
        let budget = r.gen_range(2..=12usize);
        let mut factors: Vec<(StateVector, usize)> = Vec::new();
        let mut used = 0;
        while used < budget {
            if budget - used >= 2 && r.gen_bool(0.7) {
                let eps = r.gen_range(0.0..=1.0);
                let mult = r.gen_range(1..=(budget - used) / 2);
                factors.push((make_squeezed(SqueezedSpec::new(2, eps).unwrap()).unwrap(), mult));
                used += 2 * mult;
            } else {
                factors.push((plus_x(), 1));
                used += 1;
            }
        }
        let spec = EnsembleSpec::new(factors).unwrap();
        let (gamma, t) = (r.gen_range(0.1..3.0), r.gen_range(0.1..3.0));
        let rep = counting_verdict(&spec, gamma, t).unwrap();
        assert_eq!(rep.n_spins, used);
        assert!(rep.info_ensemble_bound <= used as f64 * (t * gamma).powi(2) + 1e-9, "trial {trial}");
        assert_ne!(rep.verdict, Verdict::ClaimExceedsSql);
        assert!(rep.excess_route.is_none());
    }
}

#[test]
fn ghz_excess_goes_through_response() {
    for n in 2..=6 {
        for mult in 1..=2 {
            let spec = EnsembleSpec::new(vec![(make_ghz(n).unwrap(), mult)]).unwrap();
            let rep = counting_verdict(&spec, 1.0, 1.0).unwrap();
            assert_eq!(rep.verdict, Verdict::ClaimExceedsSql);
            assert_eq!(rep.excess_route, Some(ExcessRoute::Response));
            assert_eq!(rep.m_factors, mult);
            assert!((rep.info_ensemble_bound - (mult * n * n) as f64).abs() < 1e-9);
        }
    }
}

#[test]
fn pair_bound_grows_with_epsilon() {
    let mut last = -1.0;
    for k in 0..=40 {
        let eps = k as f64 / 40.0;
        let spec = EnsembleSpec::new(vec![(make_squeezed(SqueezedSpec::new(2, eps).unwrap()).unwrap(), 3)]).unwrap();
        let b = counting_verdict(&spec, 1.0, 1.0).unwrap().info_ensemble_bound;
        assert!(b > last);
        last = b;
    }
}

#[test]
fn product_of_optimal_spins_sits_at_the_sql() {
    let spec = EnsembleSpec::new(vec![(plus_x(), 7)]).unwrap();
    let rep = counting_verdict(&spec, 0.8, 1.5).unwrap();
    assert_eq!(rep.verdict, Verdict::AtSql);
    assert!((rep.info_unentangled - sql_info(7, 0.8, 1.5)).abs() < 1e-12);
    assert!((uncertainty_from_info(rep.info_unentangled) - 1.0 / rep.info_unentangled.sqrt()).abs() < 1e-15);
}

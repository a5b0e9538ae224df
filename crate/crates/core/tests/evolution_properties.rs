mod common;

use common::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qmetro_core::qcore::*;
use rand::Rng;

#[test]
fn evolutions_preserve_norm() {
    let mut r = rng(1);
    for trial in 0..1000 {
        let n = 1 + trial % 3;
        let s = random_state(&mut r, n);
        let h = random_hamiltonian(&mut r, n, 2.0);
        let theta = r.gen_range(-3.0..3.0);
        let t = r.gen_range(0.0..4.0);
        let a = evolve_multiplicative(&s, &h, theta, t).unwrap();
        assert!((a.norm_sqr() - 1.0).abs() < 1e-12, "trial {trial} n {n} dev {:e} t {t} theta {theta}", a.norm_sqr() - 1.0);
        let b = apply_collective_rotation(&a, r.gen_range(-7.0..7.0), r.gen_range(-7.0..7.0));
        assert!((b.norm_sqr() - 1.0).abs() < 1e-12);
        let sched = PiecewiseSchedule::new(vec![
            (h.clone(), r.gen_range(0.1..2.0)),
            (random_hamiltonian(&mut r, n, 1.5), r.gen_range(0.1..2.0)),
        ])
        .unwrap();
        let c = evolve_piecewise(&s, &sched, theta).unwrap();
        assert!((c.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn eigendecomposition_matches_series_exponential() {
    let mut r = rng(2);
    for trial in 0..300 {
        let n = 1 + trial % 4;
        let s = random_state(&mut r, n);
        let m = random_hermitian_matrix(&mut r, 1 << n, 1.0);
        let h = HamiltonianSpec::from_matrix(m.clone(), 1.0, "random").unwrap();
        let (theta, t) = (r.gen_range(-2.0..2.0), r.gen_range(0.0..3.0));
        let u = expm_series(&(m * C64::new(0.0, -theta * t)));
        let oracle = apply(&u, s.amplitudes());
        let out = evolve_multiplicative(&s, &h, theta, t).unwrap();
        let d = max_diff(out.amplitudes(), &oracle);
        assert!(d < 1e-10, "trial {trial}: {d:e}");
    }
}

#[test]
fn diagonal_path_matches_series_exponential() {
    let mut r = rng(3);
    for n in 1..=5 {
        let s = random_state(&mut r, n);
        let h = HamiltonianSpec::collective_z(n, 1.3).unwrap();
        let u = expm_series(&(h.to_matrix().unwrap() * C64::new(0.0, -0.8 * 1.7)));
        let out = evolve_multiplicative(&s, &h, 0.8, 1.7).unwrap();
        assert!(max_diff(out.amplitudes(), &apply(&u, s.amplitudes())) < 1e-10);
    }
}

#[test]
fn degenerate_generators_match_series_exponential() {
    let mut r = rng(7);
    for n in 1..=4 {
        for axis in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 1.0]] {
            let h = HamiltonianSpec::collective_axis(n, 0.9, axis).unwrap();
            let s = random_state(&mut r, n);
            let u = expm_series(&(h.to_matrix().unwrap() * C64::new(0.0, -1.1 * 2.3)));
            let out = evolve_multiplicative(&s, &h, 1.1, 2.3).unwrap();
            assert!(max_diff(out.amplitudes(), &apply(&u, s.amplitudes())) < 1e-10);
        }
    }
}

#[test]
fn semigroup_in_time() {
    let mut r = rng(4);
    for _ in 0..200 {
        let s = random_state(&mut r, 2);
        let h = random_hamiltonian(&mut r, 2, 1.0);
        let (theta, t1, t2) = (r.gen_range(-2.0..2.0), r.gen_range(0.0..2.0), r.gen_range(0.0..2.0));
        let two_step = evolve_multiplicative(&evolve_multiplicative(&s, &h, theta, t1).unwrap(), &h, theta, t2).unwrap();
        let one_step = evolve_multiplicative(&s, &h, theta, t1 + t2).unwrap();
        let m = h.to_matrix().unwrap();
        let oracle = apply(&expm_series(&(m * C64::new(0.0, -theta * (t1 + t2)))), s.amplitudes());
        assert!(max_diff(two_step.amplitudes(), one_step.amplitudes()) < 1e-10);
        assert!(max_diff(one_step.amplitudes(), &oracle) < 1e-10);
    }
}

#[test]
fn rotation_matches_two_by_two_exponential() {
    let mut r = rng(5);
    for _ in 0..200 {
        let (angle, phase) = (r.gen_range(-7.0..7.0), r.gen_range(-7.0..7.0));
        let gen = nalgebra::DMatrix::from_row_slice(2, 2, &[
            C64::new(0.0, 0.0), C64::from_polar(1.0, -phase),
            C64::from_polar(1.0, phase), C64::new(0.0, 0.0),
        ]);
        let u = expm_series(&(gen * C64::new(0.0, -angle / 2.0)));
        let s = random_state(&mut r, 1);
        let out = apply_collective_rotation(&s, angle, phase);
        assert!(max_diff(out.amplitudes(), &apply(&u, s.amplitudes())) < 1e-12);
    }
}

#[test]
fn single_segment_schedule_reduces_to_multiplicative() {
    let mut r = rng(6);
    let s = random_state(&mut r, 2);
    let h = random_hamiltonian(&mut r, 2, 1.0);
    let sched = PiecewiseSchedule::constant(h.clone(), 1.3).unwrap();
    let a = evolve_piecewise(&s, &sched, 0.7).unwrap();
    let b = evolve_multiplicative(&s, &h, 0.7, 1.3).unwrap();
    assert!(max_diff(a.amplitudes(), b.amplitudes()) < 1e-12);
}

fn arb_state(spins: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << spins)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| StateVector::normalized(v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap())
}

proptest! {
    #[test]
    fn tensor_preserves_norm(a in arb_state(1), b in arb_state(2)) {
        let ab = tensor(&[a, b]).unwrap();
        prop_assert_eq!(ab.num_spins(), 3);
        prop_assert!((ab.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_is_associative(a in arb_state(1), b in arb_state(1), c in arb_state(2)) {
        let left = tensor(&[tensor(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
        let right = tensor(&[a.clone(), tensor(&[b.clone(), c.clone()]).unwrap()]).unwrap();
        let flat = tensor(&[a, b, c]).unwrap();
        prop_assert!(max_diff(left.amplitudes(), right.amplitudes()) < 1e-15);
        prop_assert!(max_diff(left.amplitudes(), flat.amplitudes()) < 1e-15);
    }
}


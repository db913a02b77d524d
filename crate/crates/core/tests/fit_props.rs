use proptest::prelude::*;
use qcnr_core::fit::{fit_resonance, hanger_s21, lorentzian, ResonanceModel};

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hanger_round_trip_across_quality_factors(
        log_q in 2.0f64..6.0,
        depth in 0.02f64..0.9,
        f0 in 1e9f64..8e9,
        offset in -1.0f64..1.0,
    ) {
        let q_l = 10f64.powf(log_q);
        let q_c = q_l / depth;
        let kappa = f0 / q_l;
        let w = grid(f0 - 6.0 * kappa + offset * kappa, f0 + 6.0 * kappa + offset * kappa, 301);
        let y: Vec<f64> = w.iter().map(|&x| hanger_s21(x, f0, q_l, q_c)).collect();
        let fit = fit_resonance(&w, &y, ResonanceModel::Hanger).unwrap();
        prop_assert!(rel(fit.f0, f0) < 1e-9);
        prop_assert!(rel(fit.q_l, q_l) < 1e-4, "{} vs {q_l}", fit.q_l);
        prop_assert!(rel(fit.q_c.unwrap(), q_c) < 1e-4);
        prop_assert!(fit.q_i.unwrap() >= fit.q_l);
        prop_assert!(w[0] <= fit.f0 && fit.f0 <= w[w.len() - 1]);
    }

    #[test]
    fn lorentzian_round_trip_across_quality_factors(
        log_q in 2.0f64..6.0,
        f0 in 1e8f64..8e9,
        a0 in 0.1f64..10.0,
        b in -1.0f64..1.0,
    ) {
        let q_l = 10f64.powf(log_q);
        let kappa = f0 / q_l;
        let w = grid(f0 - 8.0 * kappa, f0 + 8.0 * kappa, 201);
        let y: Vec<f64> = w.iter().map(|&x| lorentzian(x, f0, kappa, a0, b)).collect();
        let fit = fit_resonance(&w, &y, ResonanceModel::Lorentzian).unwrap();
        prop_assert!(rel(fit.f0, f0) < 1e-9);
        prop_assert!(rel(fit.q_l, q_l) < 1e-4);
        prop_assert_eq!(fit.q_i, None);
    }
}

#[test]
fn amplitude_scaling_leaves_parameters_unchanged() {
    let (f0, q_l, q_c) = (5.4e9, 4e3, 6.5e4);
    let w = grid(f0 - 5.0 * f0 / q_l, f0 + 5.0 * f0 / q_l, 401);
    let y: Vec<f64> = w.iter().enumerate().map(|(i, &x)| hanger_s21(x, f0, q_l, q_c) + 1e-3 * ((i * 7919 % 101) as f64 / 101.0 - 0.5)).collect();
    let y10: Vec<f64> = y.iter().map(|v| 10.0 * v).collect();
    let a = fit_resonance(&w, &y, ResonanceModel::Hanger).unwrap();
    let b = fit_resonance(&w, &y10, ResonanceModel::Hanger).unwrap();
    assert!(rel(a.f0, b.f0) < 1e-12);
    assert!(rel(a.q_l, b.q_l) < 1e-8, "{} {}", a.q_l, b.q_l);
    assert!(rel(a.q_i.unwrap(), b.q_i.unwrap()) < 1e-8);
    assert!(rel(10.0 * a.amplitude, b.amplitude) < 1e-8);
}

#[test]
fn rejects_length_mismatch_and_nonmonotone_grid() {
    let w = grid(1.0, 2.0, 20);
    assert!(fit_resonance(&w, &[1.0; 19], ResonanceModel::Hanger).is_err());
    let mut w2 = w.clone();
    w2.swap(3, 4);
    let y: Vec<f64> = w.iter().map(|&x| lorentzian(x, 1.5, 0.1, 1.0, 0.0)).collect();
    assert!(fit_resonance(&w2, &y, ResonanceModel::Lorentzian).is_err());
}

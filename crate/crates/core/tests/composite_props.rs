use proptest::prelude::*;
use qcnr_core::composite::{
    avoided_crossing_gap, composite_spectrum, convergence_report, dispersive_chi_formula, dispersive_chi_numeric,
    CouplingParams, ModeKind, OscillatorParams, TruncationReport, DEFAULT_DIMENSION_CAP,
};
use qcnr_core::qubit::{qubit_spectrum, ChargeBasis, CpbParams};
use qcnr_core::spectroscopy::bare_resonance_fluxes;
use qcnr_core::Error;

fn lc_cpb() -> CpbParams {
    CpbParams::new(1.3e9, 12.7e9).with_n_sigma(0.5)
}

fn lc(n_fock: usize) -> OscillatorParams {
    OscillatorParams::new(1.94e9, ModeKind::LcCavity).with_n_fock(n_fock)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn uncoupled_spectrum_is_tensor_sum(
        e_c in 0.5e9f64..3e9,
        e_j0 in 0.0f64..20e9,
        n_sigma in 0.0f64..1.0,
        flux in 0.0f64..1.0,
        omega in 0.1e9f64..8e9,
    ) {
        let cpb = CpbParams::new(e_c, e_j0).with_n_sigma(n_sigma).with_flux(flux);
        let osc = OscillatorParams::new(omega, ModeKind::Nanoresonator).with_n_fock(5);
        let basis = ChargeBasis::new(3);
        let s = composite_spectrum(&cpb, &osc, &CouplingParams::new(0.0), &basis).unwrap();
        let q = qubit_spectrum(&cpb, &basis, basis.dimension()).unwrap();
        let mut want: Vec<f64> = q
            .eigenvalues()
            .iter()
            .flat_map(|&e| (0..6).map(move |k| e + omega * (k as f64 + 0.5)))
            .collect();
        want.sort_by(f64::total_cmp);
        for (a, b) in s.eigenvalues().iter().zip(&want) {
            prop_assert!((a - b).abs() <= 1e-9 * b.abs().max(omega), "{a} vs {b}");
        }
    }

    #[test]
    fn composite_spectrum_flux_periodic(flux in -1.0f64..1.0, lambda in -200e6f64..200e6) {
        let g = CouplingParams::new(lambda);
        let basis = ChargeBasis::new(4);
        let a = composite_spectrum(&lc_cpb().with_flux(flux), &lc(6), &g, &basis).unwrap();
        let b = composite_spectrum(&lc_cpb().with_flux(flux + 1.0), &lc(6), &g, &basis).unwrap();
        let scale = a.eigenvalues().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            prop_assert!((x - y).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn ground_energy_variational(flux in 0.0f64..1.0, lambda in 0.0f64..300e6) {
        let g = CouplingParams::new(lambda);
        let cpb = lc_cpb().with_flux(flux);
        let ground = |nm: usize, nf: usize| composite_spectrum(&cpb, &lc(nf), &g, &ChargeBasis::new(nm)).unwrap().eigenvalues()[0];
        let tol = 1e-9 * 1.3e9;
        for nm in 1..6 {
            prop_assert!(ground(nm + 1, 4) <= ground(nm, 4) + tol);
        }
        for nf in 1..8 {
            prop_assert!(ground(3, nf + 1) <= ground(3, nf) + tol);
        }
    }
}

#[test]
fn eigenvectors_orthonormal() {
    let s = composite_spectrum(&lc_cpb().with_flux(0.45), &lc(10), &CouplingParams::new(160e6), &ChargeBasis::default())
        .unwrap();
    let d = s.dim();
    for i in (0..d).step_by(7) {
        for j in (0..d).step_by(5) {
            let ip: num_complex::Complex64 =
                s.eigenvector(i).iter().zip(s.eigenvector(j)).map(|(a, b)| a.conj() * b).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((ip.re - want).abs() < 1e-10 && ip.im.abs() < 1e-10);
        }
    }
}

fn root() -> f64 {
    let grid: Vec<f64> = (0..=50).map(|i| i as f64 / 100.0).collect();
    bare_resonance_fluxes(&lc_cpb(), &ChargeBasis::default(), 1.94e9, &grid).unwrap()[0]
}

#[test]
fn uncoupled_gap_closes() {
    let r = root();
    let gap = avoided_crossing_gap(&lc_cpb(), &lc(10), &CouplingParams::new(0.0), &ChargeBasis::default(), (r - 0.03, r + 0.03))
        .unwrap();
    assert!(gap.gap < 1e-6 * 1.94e9, "{}", gap.gap);
    assert!((gap.flux_at_min - r).abs() < 1e-6);
}

#[test]
fn gap_linear_in_coupling() {
    let r = root();
    let window = (r - 0.02, r + 0.02);
    let gap = |lambda: f64| {
        avoided_crossing_gap(&lc_cpb(), &lc(10), &CouplingParams::new(lambda), &ChargeBasis::default(), window)
            .unwrap()
            .gap
    };
    let base = gap(5e6) / 5e6;
    for lambda in [10e6, 20e6, 38e6, -20e6] {
        let slope = gap(lambda) / lambda.abs();
        assert!((slope / base - 1.0).abs() < 0.02, "λ={lambda}: {slope} vs {base}");
    }
}

#[test]
fn gap_periodic_in_flux() {
    let r = root();
    let g = CouplingParams::new(160e6);
    let a = avoided_crossing_gap(&lc_cpb(), &lc(10), &g, &ChargeBasis::default(), (r - 0.03, r + 0.03)).unwrap();
    let b = avoided_crossing_gap(&lc_cpb(), &lc(10), &g, &ChargeBasis::default(), (r + 0.97, r + 1.03)).unwrap();
    assert!((b.gap - a.gap).abs() < 1e-6 * a.gap);
    assert!((b.flux_at_min - a.flux_at_min - 1.0).abs() < 2e-5);
}

#[test]
fn window_without_crossing() {
    let g = CouplingParams::new(160e6);
    let err = avoided_crossing_gap(&lc_cpb(), &lc(10), &g, &ChargeBasis::default(), (0.0, 0.2)).unwrap_err();
    assert_eq!(err, Error::NoCrossing { lo: 0.0, hi: 0.2 });
}

#[test]
fn chi_quadratic_in_coupling() {
    let cpb = CpbParams::new(10e9, 4e9).with_n_sigma(0.5);
    let osc = OscillatorParams::new(2e9, ModeKind::Nanoresonator);
    let basis = ChargeBasis::default();
    let one = dispersive_chi_numeric(&cpb, &osc, &CouplingParams::new(20e6), &basis).unwrap();
    let two = dispersive_chi_numeric(&cpb, &osc, &CouplingParams::new(40e6), &basis).unwrap();
    assert!((two / one - 4.0).abs() < 0.04);
    let formula = dispersive_chi_formula(&cpb, &osc, &CouplingParams::new(20e6), &basis).unwrap();
    assert!((one / formula - 1.0).abs() < 0.1);
    assert_eq!(dispersive_chi_formula(&cpb, &osc, &CouplingParams::new(0.0), &basis).unwrap(), 0.0);
}

#[test]
fn labels_break_down_at_the_crossing() {
    let r = root();
    let g = CouplingParams::new(160e6);
    let at = avoided_crossing_gap(&lc_cpb(), &lc(10), &g, &ChargeBasis::default(), (r - 0.03, r + 0.03)).unwrap();
    let s = composite_spectrum(&lc_cpb().with_flux(at.flux_at_min), &lc(10), &g, &ChargeBasis::default()).unwrap();
    for i in [1, 2] {
        let ov = s.bare_overlap(i, 0, 1);
        assert!((ov - 0.5).abs() < 0.02, "state {i}: {ov}");
    }
    // strong coupling spreads every excited level over many product states
    let strong = CouplingParams::new(2e9);
    let err = dispersive_chi_numeric(&lc_cpb().with_flux(r), &lc(10), &strong, &ChargeBasis::default()).unwrap_err();
    assert!(matches!(err, Error::Labeling { .. }), "{err:?}");
}

#[test]
fn convergence_report_limits() {
    // uncoupled, qubit far above the mode: the six tracked levels are photons 0..=5
    let cpb = CpbParams::new(1.3e9, 12.7e9);
    let osc = OscillatorParams::new(0.3e9, ModeKind::Nanoresonator);
    let r = convergence_report(&cpb, &osc, &CouplingParams::new(0.0), DEFAULT_DIMENSION_CAP).unwrap();
    assert_eq!(r.n_fock, 5);

    // no tunneling: charge states never mix, the smallest basis suffices
    let cpb = CpbParams::new(1.3e9, 0.0);
    let r = convergence_report(&cpb, &osc, &CouplingParams::new(20e6), DEFAULT_DIMENSION_CAP).unwrap();
    assert_eq!(r.n_max, 1);

    assert_eq!(
        convergence_report(&lc_cpb(), &lc(10), &CouplingParams::new(160e6), 30),
        Err(Error::TruncationCap { cap: 30 })
    );
}

#[test]
fn convergence_report_deterministic_for_lc_device() {
    let g = CouplingParams::new(160e6);
    let cpb = lc_cpb().with_flux(root());
    let a = convergence_report(&cpb, &lc(10), &g, DEFAULT_DIMENSION_CAP).unwrap();
    let b = convergence_report(&cpb, &lc(10), &g, DEFAULT_DIMENSION_CAP).unwrap();
    assert_eq!(a, b);
    let TruncationReport { n_max, n_fock } = a;
    assert!(n_max <= 7 && n_fock <= 12, "{a:?}");
}

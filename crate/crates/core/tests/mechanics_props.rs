use proptest::prelude::*;
use qcnr_core::mechanics::{
    beam_mode, beam_mode_normalized, capacitance_gradient, coupling_lambda, effective_beta, lambda_lc, lambda_max,
    pullin_voltage, radiative_damping, thermal_occupation, BeamSpec, BiasCircuit, Material, ShapeNormalization,
};

fn gen_one() -> BeamSpec {
    BeamSpec::new(200e-9, 100e-9, 1.8e-6, 70e-9, Material::ALUMINUM)
}

fn lambda_for(spec: &BeamSpec, norm: ShapeNormalization, v: f64) -> f64 {
    let m = beam_mode_normalized(spec, 1, norm).unwrap();
    let g = capacitance_gradient(spec, &m).unwrap();
    coupling_lambda(1.8e9, g.dc_dx, v, m.x_zp)
}

#[test]
fn coupling_independent_of_normalization() {
    for spec in [gen_one(), BeamSpec { l_e: 1.2e-6, ..gen_one() }, BeamSpec::new(150e-9, 80e-9, 5e-6, 50e-9, Material::NIOBIUM)]
    {
        let base = lambda_for(&spec, ShapeNormalization::MaxDeflection, 2.0);
        for norm in [ShapeNormalization::CenterOfMass, ShapeNormalization::ElectrodeAverage] {
            let other = lambda_for(&spec, norm, 2.0);
            assert!((other / base - 1.0).abs() < 1e-9, "{norm:?}: {other} vs {base}");
        }
    }
}

#[test]
fn coupling_scales_as_length_to_three_halves_over_width() {
    let reference = lambda_for(&gen_one(), ShapeNormalization::MaxDeflection, 1.0) * 200e-9 / 1.8e-6f64.powf(1.5);
    for l in [1.8e-6, 3e-6, 6e-6, 10e-6, 18e-6] {
        for w in [100e-9, 200e-9, 400e-9] {
            let spec = BeamSpec { w, l, l_e: l, ..gen_one() };
            let scaled = lambda_for(&spec, ShapeNormalization::MaxDeflection, 1.0) * w / l.powf(1.5);
            assert!((scaled / reference - 1.0).abs() < 0.01, "L={l} w={w}");
        }
    }
}

#[test]
fn pullin_coupling_reproduces_lambda_max() {
    for spec in [gen_one(), BeamSpec { l_e: 0.8e-6, beta: 0.5, ..gen_one() }] {
        let m = beam_mode(&spec, 1).unwrap();
        let g = capacitance_gradient(&spec, &m).unwrap();
        let v = pullin_voltage(m.spring_constant(), spec.d, g.c_nr_pp);
        let via_pullin = coupling_lambda(1.8e9, g.dc_dx, v, m.x_zp).abs();
        let closed = lambda_max(1.8e9, m.omega, g.c_nr_pp, effective_beta(&spec, &m));
        assert!((via_pullin / closed - 1.0).abs() < 0.05, "{via_pullin} vs {closed}");
    }
}

#[test]
fn gen_one_coupling_of_order_megahertz() {
    let lambda = lambda_for(&gen_one(), ShapeNormalization::MaxDeflection, 5.0);
    assert!((0.5e6..2e6).contains(&lambda.abs()), "{lambda}");
    assert!(lambda < 0.0);
}

#[test]
fn pullin_in_volt_decade() {
    let m = beam_mode(&gen_one(), 1).unwrap();
    let v = pullin_voltage(m.spring_constant(), 70e-9, 1.8e-16);
    assert!((1.0..100.0).contains(&v));
}

#[test]
fn bias_circuit_validation_and_coherence_limit() {
    let c = BiasCircuit { c_nr: 5e-15, c_cpb: 5e-14, c_q: 1e-15, c_t: 1e-13, z0: 50.0, v_nr: 1.0 };
    assert!(c.validate().is_ok());
    assert!(BiasCircuit { c_cpb: 0.0, ..c }.validate().is_err());
    let d = radiative_damping(5e9, &c);
    assert_eq!(d.t2_max, 2.0 * d.t1);
}

/// `f(x (1 + h)) − f(x)` has the expected sign for every argument.
fn increasing<F: Fn(f64) -> f64>(f: F, x: f64) -> bool {
    f(x * 1.001) > f(x)
}

fn decreasing<F: Fn(f64) -> f64>(f: F, x: f64) -> bool {
    f(x * 1.001) < f(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn calculators_monotone(
        e_c in 0.1e9f64..10e9,
        f in 1e6f64..1e10,
        c in 1e-18f64..1e-12,
        c2 in 1e-16f64..1e-12,
        beta in 0.01f64..1.0,
        k in 1e-3f64..1e3,
        d in 1e-9f64..1e-6,
        z0 in 1.0f64..200.0,
        t in 1e-3f64..4.0,
    ) {
        prop_assert!(increasing(|x| lambda_max(x, f, c, beta), e_c));
        prop_assert!(increasing(|x| lambda_max(e_c, x, c, beta), f));
        prop_assert!(increasing(|x| lambda_max(e_c, f, x, beta), c));
        prop_assert!(increasing(|x| lambda_max(e_c, f, c, x), beta));

        prop_assert!(increasing(|x| lambda_lc(x, c, f, c2), e_c));
        prop_assert!(increasing(|x| lambda_lc(e_c, x, f, c2), c));
        prop_assert!(increasing(|x| lambda_lc(e_c, c, x, c2), f));
        prop_assert!(decreasing(|x| lambda_lc(e_c, c, f, x), c2));

        prop_assert!(increasing(|x| pullin_voltage(x, d, c), k));
        prop_assert!(increasing(|x| pullin_voltage(k, x, c), d));
        prop_assert!(decreasing(|x| pullin_voltage(k, d, x), c));

        let circuit = BiasCircuit { c_nr: c, c_cpb: c2, c_q: c, c_t: c2, z0, v_nr: 0.0 };
        let t1 = |de: f64, circ: BiasCircuit| radiative_damping(de, &circ).t1;
        prop_assert!(decreasing(|x| t1(x, circuit), f));
        let with_c_nr = |x| t1(f, BiasCircuit { c_nr: x, ..circuit });
        let with_c_cpb = |x| t1(f, BiasCircuit { c_cpb: x, ..circuit });
        let with_z0 = |x| t1(f, BiasCircuit { z0: x, ..circuit });
        prop_assert!(decreasing(with_c_nr, c));
        prop_assert!(increasing(with_c_cpb, c2));
        prop_assert!(decreasing(with_z0, z0));

        prop_assert!(increasing(|x| thermal_occupation(f, x), t) || thermal_occupation(f, t) == 0.0);
        prop_assert!(decreasing(|x| thermal_occupation(x, t), f) || thermal_occupation(f, t) == 0.0);

        prop_assert!(decreasing(|x| coupling_lambda(e_c, c, x, d), k));
        prop_assert!(decreasing(|x| coupling_lambda(x, c, k, d), e_c));
    }
}

/// The parallel-plate capacitance of the first-generation geometry is about
/// 23 aF, eight times below the field-solver value of 180 aF, so the
/// factor-of-two band cannot hold without a fringe-field model.
#[test]
#[ignore = "parallel-plate C_NR is 8x below the simulated 180 aF"]
fn parallel_plate_capacitance_near_simulated_value() {
    let spec = gen_one();
    let g = capacitance_gradient(&spec, &beam_mode(&spec, 1).unwrap()).unwrap();
    let ratio = 180e-18 / g.c_nr_pp;
    assert!((0.5..=2.0).contains(&ratio), "C_pp = {:e}, ratio {ratio}", g.c_nr_pp);
}

/// `k = m ω²` with `m ∝ w t L` and `ω ∝ w / L²` gives `k ∝ w³ t / L³`.
#[test]
fn spring_constant_scales_as_width_cubed_over_length_cubed() {
    let k0 = beam_mode(&gen_one(), 1).unwrap().spring_constant();
    for (w, l) in [(100e-9, 1.8e-6), (400e-9, 3.6e-6), (200e-9, 18e-6)] {
        let k = beam_mode(&BeamSpec { w, l, l_e: l, ..gen_one() }, 1).unwrap().spring_constant();
        let predicted = k0 * (w / 200e-9).powi(3) * (1.8e-6 / l).powi(3);
        assert!((k / predicted - 1.0).abs() < 1e-9, "w={w} L={l}: {k} vs {predicted}");
    }
}

mod common;

use common::{random_complex, random_state, rng};
use sun_gates_core::lcu::plan_from_circuit;
use sun_gates_core::{
    amplitude_operator, apply_with_postselection, build_gates, build_generators, build_w, export_circuit,
    plan_encoding, verify_block, AmplitudeCoefficients, ChannelKind, ChannelSpec, CircuitDescription, Complex64,
};

#[test]
fn block_identity_random_amplitudes() {
    for n in 2..=6 {
        let g = build_generators(n).unwrap();
        for kind in [ChannelKind::S, ChannelKind::T] {
            let gs = build_gates(ChannelSpec::new(kind, n).unwrap(), &g).unwrap();
            let mut r = rng(31 * n as u64 + kind as u64);
            for _ in 0..50 {
                let cf = AmplitudeCoefficients::new(gs.channel, random_complex(&mut r), random_complex(&mut r));
                let plan = plan_encoding(&cf).unwrap();
                let w = build_w(&plan, &gs).unwrap();
                let m = amplitude_operator(&cf, &gs).unwrap();
                assert!(verify_block(&w, &m, plan.alpha, 1e-12).passed, "n={n} {kind:?}");
                assert!(w.unitarity_deviation() <= 1e-12);
            }
        }
    }
}

#[test]
fn postselection_matches_direct_application() {
    for n in 2..=4 {
        let g = build_generators(n).unwrap();
        for kind in [ChannelKind::S, ChannelKind::T] {
            let gs = build_gates(ChannelSpec::new(kind, n).unwrap(), &g).unwrap();
            let mut r = rng(500 + n as u64);
            for _ in 0..10 {
                let cf = AmplitudeCoefficients::new(gs.channel, random_complex(&mut r), random_complex(&mut r));
                let plan = plan_encoding(&cf).unwrap();
                let psi = random_state(n * n, &mut r);
                let out = apply_with_postselection(&plan, &gs, &psi).unwrap();
                // oracle: M|ψ⟩ without ancilla machinery
                let m = amplitude_operator(&cf, &gs).unwrap();
                let mpsi = m.apply(&psi);
                let norm_sq: f64 = mpsi.iter().map(|z| z.norm_sqr()).sum();
                let want = norm_sq / (plan.alpha * plan.alpha);
                assert!((out.success_probability - want).abs() <= 1e-12);
                let state = out.state.unwrap();
                let norm = norm_sq.sqrt();
                assert!(state.iter().zip(&mpsi).all(|(x, y)| (x - y / norm).norm() < 1e-10));
            }
        }
    }
}

#[test]
fn postselection_probability_half_on_basis_state() {
    let g = build_generators(2).unwrap();
    let gs = build_gates(ChannelSpec::s(2).unwrap(), &g).unwrap();
    let cf = AmplitudeCoefficients::new(gs.channel, Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0));
    let psi = [0.0, 1.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0));
    let out = apply_with_postselection(&plan_encoding(&cf).unwrap(), &gs, &psi).unwrap();
    assert!((out.success_probability - 0.5).abs() < 1e-12);
}

#[test]
fn equal_weight_block_is_phased_average() {
    let n = 3;
    let g = build_generators(n).unwrap();
    for kind in [ChannelKind::S, ChannelKind::T] {
        let gs = build_gates(ChannelSpec::new(kind, n).unwrap(), &g).unwrap();
        let (pa, pb) = (0.7, -2.1);
        let cf = AmplitudeCoefficients::new(
            gs.channel,
            Complex64::from_polar(0.8, pa),
            Complex64::from_polar(0.8, pb),
        );
        let plan = plan_encoding(&cf).unwrap();
        assert!((plan.gamma - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let w = build_w(&plan, &gs).unwrap();
        let want = gs
            .s_identity
            .scale(Complex64::from_polar(0.5, pa))
            .plus_scaled(&gs.z_gate, Complex64::from_polar(0.5, pb));
        assert!(w.top_left(n * n).approx_eq(want.matrix(), 1e-12));
    }
}

#[test]
fn exported_circuit_is_constant_size_and_rebuilds() {
    for n in 2..=6 {
        let g = build_generators(n).unwrap();
        let gs = build_gates(ChannelSpec::t(n).unwrap(), &g).unwrap();
        let mut r = rng(n as u64);
        let cf = AmplitudeCoefficients::new(gs.channel, random_complex(&mut r), random_complex(&mut r));
        let plan = plan_encoding(&cf).unwrap();
        let desc = export_circuit(&plan);
        assert_eq!(desc.gates.len(), 4);
        assert_eq!(desc.ancilla_count(), 1);
        let parsed = CircuitDescription::from_json(&desc.to_json()).unwrap();
        let rebuilt = build_w(&plan_from_circuit(&parsed).unwrap(), &gs).unwrap();
        assert!(rebuilt.approx_eq(&build_w(&plan, &gs).unwrap(), 1e-12));
    }
}

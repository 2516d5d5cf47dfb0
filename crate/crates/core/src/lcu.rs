//! One-ancilla LCU block encoding of `M = a·S_I + b·Z`.
//!
//! The encoding unitary is
//!
//! ```text
//! W = (R_y(−2γ) ⊗ I) · (|0⟩⟨0| ⊗ e^{iφ_a} S_I + |1⟩⟨1| ⊗ e^{iφ_b} Z) · (R_y(2γ) ⊗ I)
//! ```
//!
//! with `α = |a| + |b|`, `cos²γ = |a|/α`, `sin²γ = |b|/α`, so that the
//! ancilla-`|0⟩` block of `W` is `M/α`. The ancilla is the most significant
//! tensor factor: index `anc·N² + system`.
//!
//! `R_y(θ) = exp(−iθY/2) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::VerificationReport;
use crate::amplitude::AmplitudeCoefficients;
use crate::channels::{ChannelKind, ChannelSpec, GateSet};
use crate::error::{Error, Result};
use crate::matrix::{vector_norm, ComplexMatrix, ZERO};
use crate::qudit::TwoQuditOperator;

/// Tolerance on `‖ψ‖ − 1` for postselection inputs.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockEncodingPlan {
    pub channel: ChannelSpec,
    /// `|a| + |b|`.
    pub alpha: f64,
    /// Mixing angle in `[0, π/2]`.
    pub gamma: f64,
    pub phi_a: f64,
    pub phi_b: f64,
}

fn phase_of(z: Complex64) -> f64 {
    if z == ZERO {
        0.0
    } else {
        z.arg()
    }
}

pub fn plan_encoding(c: &AmplitudeCoefficients) -> Result<BlockEncodingPlan> {
    let (ma, mb) = (c.a.norm(), c.b.norm());
    let alpha = ma + mb;
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::ZeroAmplitude);
    }
    let gamma = (ma / alpha).sqrt().clamp(0.0, 1.0).acos();
    Ok(BlockEncodingPlan {
        channel: c.channel,
        alpha,
        gamma,
        phi_a: phase_of(c.a),
        phi_b: phase_of(c.b),
    })
}

/// `R_y(θ)` as a 2×2 matrix.
pub fn ry(theta: f64) -> ComplexMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let re = |x: f64| Complex64::new(x, 0.0);
    ComplexMatrix::from_fn(2, 2, |r, col| match (r, col) {
        (0, 0) | (1, 1) => re(c),
        (0, 1) => re(-s),
        _ => re(s),
    })
}

pub fn build_w(plan: &BlockEncodingPlan, gates: &GateSet) -> Result<ComplexMatrix> {
    if plan.channel.kind != gates.channel.kind {
        return Err(Error::ChannelMismatch {
            expected: gates.channel.kind,
            found: plan.channel.kind,
        });
    }
    if plan.channel.n != gates.channel.n {
        return Err(Error::DimensionMismatch {
            expected: gates.channel.n,
            found: plan.channel.n,
        });
    }
    let dim = gates.s_identity.dim();
    let u_i = gates.s_identity.matrix().scale(Complex64::from_polar(1.0, plan.phi_a));
    let u_z = gates.z_gate.matrix().scale(Complex64::from_polar(1.0, plan.phi_b));

    // block-diagonal select: |0⟩⟨0|⊗U_I + |1⟩⟨1|⊗U_Z
    let mut select = ComplexMatrix::zeros(2 * dim, 2 * dim);
    for r in 0..dim {
        for c in 0..dim {
            select[(r, c)] = u_i[(r, c)];
            select[(dim + r, dim + c)] = u_z[(r, c)];
        }
    }
    let sys = ComplexMatrix::identity(dim);
    let prep = ry(2.0 * plan.gamma).kron(&sys);
    let unprep = ry(-2.0 * plan.gamma).kron(&sys);
    Ok(unprep.matmul(&select).matmul(&prep))
}

/// Compares the ancilla-`|0⟩` block of `w` with `m/α`.
pub fn verify_block(w: &ComplexMatrix, m: &TwoQuditOperator, alpha: f64, tolerance: f64) -> VerificationReport {
    let dim = m.dim();
    if w.rows() != 2 * dim || w.cols() != 2 * dim {
        return VerificationReport::new(f64::INFINITY, tolerance);
    }
    let target = m.matrix().scale_real(1.0 / alpha);
    VerificationReport::new(w.top_left(dim).max_abs_diff(&target), tolerance)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Postselected {
    /// `M|ψ⟩/‖M|ψ⟩‖`, or `None` when `M|ψ⟩ = 0`.
    pub state: Option<Vec<Complex64>>,
    pub success_probability: f64,
}

/// Runs `W` on `|0⟩⊗|ψ⟩` and projects the ancilla onto `|0⟩`.
pub fn apply_with_postselection(plan: &BlockEncodingPlan, gates: &GateSet, psi: &[Complex64]) -> Result<Postselected> {
    let dim = gates.s_identity.dim();
    if psi.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: psi.len(),
        });
    }
    let norm = vector_norm(psi);
    if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    let w = build_w(plan, gates)?;
    let mut input = vec![ZERO; 2 * dim];
    input[..dim].copy_from_slice(psi);
    let out = w.apply(&input);
    let kept = &out[..dim];
    let p = kept.iter().map(Complex64::norm_sqr).sum::<f64>();
    // below this the surviving branch is numerical noise
    let state = if p > 1e-24 {
        let s = p.sqrt();
        Some(kept.iter().map(|z| z / s).collect())
    } else {
        None
    };
    Ok(Postselected {
        state,
        success_probability: p,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateTarget {
    #[serde(rename = "ancilla")]
    Ancilla,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum CircuitGate {
    #[serde(rename = "ry")]
    Ry { target: GateTarget, theta: f64 },
    /// `e^{iφ_b} Z` on the system, active when the ancilla is `|1⟩`.
    #[serde(rename = "cz_gate")]
    ControlledZ { control_value: u8, phase: f64 },
    /// `e^{iφ_a} S_I` on the system, active when the ancilla is `|0⟩`.
    #[serde(rename = "cs_identity")]
    ControlledIdentity { control_value: u8, phase: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitDescription {
    pub version: u32,
    pub n: usize,
    pub channel: ChannelKind,
    pub alpha: f64,
    pub gates: Vec<CircuitGate>,
}

impl CircuitDescription {
    pub const VERSION: u32 = 1;

    pub fn ancilla_count(&self) -> usize {
        let uses_ancilla = self.gates.iter().any(|g| {
            matches!(
                g,
                CircuitGate::Ry {
                    target: GateTarget::Ancilla,
                    ..
                } | CircuitGate::ControlledZ { .. }
                    | CircuitGate::ControlledIdentity { .. }
            )
        });
        usize::from(uses_ancilla)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit description serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidCircuit(e.to_string()))
    }
}

/// The four-gate sequence `R_y(2γ)`, `C¹(U_Z)`, `C⁰(U_I)`, `R_y(−2γ)`.
pub fn export_circuit(plan: &BlockEncodingPlan) -> CircuitDescription {
    CircuitDescription {
        version: CircuitDescription::VERSION,
        n: plan.channel.n,
        channel: plan.channel.kind,
        alpha: plan.alpha,
        gates: vec![
            CircuitGate::Ry {
                target: GateTarget::Ancilla,
                theta: 2.0 * plan.gamma,
            },
            CircuitGate::ControlledZ {
                control_value: 1,
                phase: plan.phi_b,
            },
            CircuitGate::ControlledIdentity {
                control_value: 0,
                phase: plan.phi_a,
            },
            CircuitGate::Ry {
                target: GateTarget::Ancilla,
                theta: -2.0 * plan.gamma,
            },
        ],
    }
}

/// Recovers the plan from an exported description, checking its layout.
pub fn plan_from_circuit(desc: &CircuitDescription) -> Result<BlockEncodingPlan> {
    let bad = |msg: &str| Error::InvalidCircuit(msg.to_string());
    if desc.version != CircuitDescription::VERSION {
        return Err(bad("unsupported version"));
    }
    let channel = ChannelSpec::new(desc.channel, desc.n)?;
    match desc.gates.as_slice() {
        [CircuitGate::Ry { theta: t0, .. }, CircuitGate::ControlledZ {
            control_value: 1,
            phase: phi_b,
        }, CircuitGate::ControlledIdentity {
            control_value: 0,
            phase: phi_a,
        }, CircuitGate::Ry { theta: t1, .. }] => {
            if (t0 + t1).abs() > 1e-12 {
                return Err(bad("closing rotation does not undo the opening one"));
            }
            if desc.alpha.is_nan() || desc.alpha <= 0.0 {
                return Err(bad("alpha must be positive"));
            }
            Ok(BlockEncodingPlan {
                channel,
                alpha: desc.alpha,
                gamma: t0 / 2.0,
                phi_a: *phi_a,
                phi_b: *phi_b,
            })
        }
        _ => Err(bad("expected ry, cz_gate(1), cs_identity(0), ry")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_generators;
    use crate::amplitude::amplitude_operator;
    use crate::channels::build_gates;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gates(kind: ChannelKind, n: usize) -> GateSet {
        build_gates(ChannelSpec::new(kind, n).unwrap(), &build_generators(n).unwrap()).unwrap()
    }

    fn coeffs(gs: &GateSet, a: Complex64, b: Complex64) -> AmplitudeCoefficients {
        AmplitudeCoefficients::new(gs.channel, a, b)
    }

    #[test]
    fn plan_examples() {
        let gs = gates(ChannelKind::S, 2);
        let p = plan_encoding(&coeffs(&gs, c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        assert_eq!((p.alpha, p.gamma, p.phi_a, p.phi_b), (1.0, 0.0, 0.0, 0.0));

        let p = plan_encoding(&coeffs(&gs, c(0.5, 0.0), c(0.5, 0.0))).unwrap();
        assert!((p.gamma - FRAC_PI_4).abs() < 1e-15);

        let p = plan_encoding(&coeffs(&gs, c(0.6, 0.0), c(0.0, 0.8))).unwrap();
        assert!((p.alpha - 1.4).abs() < 1e-15);
        assert!((p.gamma.cos().powi(2) - 3.0 / 7.0).abs() < 1e-15);
        assert!((p.phi_b - FRAC_PI_2).abs() < 1e-15);

        assert_eq!(
            plan_encoding(&coeffs(&gs, c(0.0, 0.0), c(0.0, 0.0))).unwrap_err(),
            Error::ZeroAmplitude
        );
    }

    #[test]
    fn identity_plan_block_is_identity() {
        let gs = gates(ChannelKind::T, 3);
        let p = plan_encoding(&coeffs(&gs, c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        let w = build_w(&p, &gs).unwrap();
        assert!(w.top_left(9).approx_eq(gs.s_identity.matrix(), 1e-15));
    }

    #[test]
    fn equal_weight_block_is_symmetric_projector() {
        let g = build_generators(2).unwrap();
        let gs = gates(ChannelKind::S, 2);
        let p = plan_encoding(&coeffs(&gs, c(0.5, 0.0), c(0.5, 0.0))).unwrap();
        let w = build_w(&p, &gs).unwrap();
        let ps = crate::channels::build_projectors(gs.channel, &g).unwrap();
        assert!(w.top_left(4).approx_eq(ps.p_plus.matrix(), 1e-12));
        assert!(w.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn corrupted_gamma_fails_block_check() {
        let gs = gates(ChannelKind::S, 3);
        let cf = coeffs(&gs, c(0.3, 0.2), c(-0.4, 0.1));
        let mut p = plan_encoding(&cf).unwrap();
        let m = amplitude_operator(&cf, &gs).unwrap();
        assert!(verify_block(&build_w(&p, &gs).unwrap(), &m, p.alpha, 1e-12).passed);
        p.gamma += 0.1;
        let r = verify_block(&build_w(&p, &gs).unwrap(), &m, p.alpha, 1e-12);
        assert!(!r.passed && r.max_deviation > 1e-3);
    }

    #[test]
    fn trivial_w_passes() {
        let m = TwoQuditOperator::identity(2);
        assert!(verify_block(&ComplexMatrix::identity(8), &m, 1.0, 1e-12).passed);
        assert!(!verify_block(&ComplexMatrix::identity(6), &m, 1.0, 1e-12).passed);
    }

    #[test]
    fn channel_mismatch_in_build_w() {
        let gs = gates(ChannelKind::S, 2);
        let gt = gates(ChannelKind::T, 2);
        let p = plan_encoding(&coeffs(&gt, c(1.0, 0.0), c(1.0, 0.0))).unwrap();
        assert!(matches!(build_w(&p, &gs), Err(Error::ChannelMismatch { .. })));
    }

    #[test]
    fn postselection_examples() {
        let gs = gates(ChannelKind::S, 2);
        let basis = |k: usize| -> Vec<Complex64> { (0..4).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect() };

        let p = plan_encoding(&coeffs(&gs, c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        let psi = vec![c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
        let out = apply_with_postselection(&p, &gs, &psi).unwrap();
        assert!((out.success_probability - 1.0).abs() < 1e-12);
        let st = out.state.unwrap();
        assert!(st.iter().zip(&psi).all(|(x, y)| (x - y).norm() < 1e-12));

        // swap |01⟩ → |10⟩
        let p = plan_encoding(&coeffs(&gs, c(0.0, 0.0), c(1.0, 0.0))).unwrap();
        let out = apply_with_postselection(&p, &gs, &basis(1)).unwrap();
        assert!((out.success_probability - 1.0).abs() < 1e-12);
        let st = out.state.unwrap();
        assert!(st.iter().zip(&basis(2)).all(|(x, y)| (x - y).norm() < 1e-12));

        // P_S annihilates the antisymmetric combination
        let p = plan_encoding(&coeffs(&gs, c(0.5, 0.0), c(0.5, 0.0))).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let anti = vec![c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)];
        let out = apply_with_postselection(&p, &gs, &anti).unwrap();
        assert!(out.success_probability < 1e-24 || out.success_probability.abs() < 1e-15);
        assert!(out.state.is_none());

        assert!(matches!(
            apply_with_postselection(&p, &gs, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn export_layout_and_round_trip() {
        let gs = gates(ChannelKind::T, 4);
        let p = plan_encoding(&coeffs(&gs, c(1.0, 0.0), c(0.0, 0.0))).unwrap();
        let d = export_circuit(&p);
        assert_eq!(d.gates.len(), 4);
        assert_eq!(d.ancilla_count(), 1);
        assert_eq!(
            d.gates[0],
            CircuitGate::Ry {
                target: GateTarget::Ancilla,
                theta: 0.0
            }
        );

        let p = plan_encoding(&coeffs(&gs, c(0.5, 0.0), c(0.5, 0.0))).unwrap();
        let d = export_circuit(&p);
        match d.gates[0] {
            CircuitGate::Ry { theta, .. } => assert!((theta - FRAC_PI_2).abs() < 1e-15),
            _ => panic!("first gate must be ry"),
        }
        let back = plan_from_circuit(&d).unwrap();
        let w0 = build_w(&p, &gs).unwrap();
        let w1 = build_w(&back, &gs).unwrap();
        assert!(w0.approx_eq(&w1, 1e-12));
    }

    #[test]
    fn json_field_layout() {
        let gs = gates(ChannelKind::S, 3);
        let p = plan_encoding(&coeffs(&gs, c(0.6, 0.0), c(0.0, 0.8))).unwrap();
        let d = export_circuit(&p);
        let text = d.to_json();
        assert!(
            text.starts_with(r#"{"version":1,"n":3,"channel":"s","alpha":1.4"#),
            "{text}"
        );
        assert!(text.contains(r#"{"name":"ry","target":"ancilla","theta":"#));
        assert!(text.contains(r#"{"name":"cz_gate","control_value":1,"phase":"#));
        assert!(text.contains(r#"{"name":"cs_identity","control_value":0,"phase":0.0}"#));
        assert_eq!(CircuitDescription::from_json(&text).unwrap(), d);
        assert!(CircuitDescription::from_json("{}").is_err());
    }

    #[test]
    fn malformed_circuit_rejected() {
        let gs = gates(ChannelKind::S, 2);
        let p = plan_encoding(&coeffs(&gs, c(1.0, 0.0), c(1.0, 0.0))).unwrap();
        let mut d = export_circuit(&p);
        d.gates.swap(1, 2);
        assert!(matches!(plan_from_circuit(&d), Err(Error::InvalidCircuit(_))));
    }
}

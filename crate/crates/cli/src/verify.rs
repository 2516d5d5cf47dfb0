use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sun_gates_core::channels::{
    build_projectors_from_generators, global_phase_overlap, involution_spectrum, u_exponential_form,
};
use sun_gates_core::{
    amplitude_operator, build_gates, build_generators, build_projectors, build_w, crossing_map, invariance_residual,
    plan_encoding, scalar_amplitudes, verify_block, verify_completeness, AmplitudeCoefficients, ChannelKind,
    ChannelSpec, Complex64, GateSet, GeneratorSet, TwoQuditOperator,
};

use crate::config::{CliError, Outcome, RunConfig};

const AMPLITUDE_SAMPLES: usize = 20;
const ENCODING_SAMPLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub n: usize,
    pub channel: Option<ChannelKind>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub dimensions: Vec<usize>,
    pub channels: Vec<ChannelKind>,
    pub seed: u64,
    pub tolerance: f64,
    pub all_passed: bool,
    pub checks: Vec<Check>,
}

struct Recorder<'a> {
    cfg: &'a RunConfig,
    checks: Vec<Check>,
}

impl Recorder<'_> {
    fn push(&mut self, name: &'static str, n: usize, channel: Option<ChannelKind>, dev: f64) {
        let tolerance = self.cfg.tolerance;
        self.checks.push(Check {
            name,
            n,
            channel,
            max_deviation: dev,
            tolerance,
            passed: dev <= tolerance,
        });
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sample_pair(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let mut z = || c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    (z(), z())
}

fn channel_rng(seed: u64, n: usize, kind: ChannelKind) -> ChaCha8Rng {
    let tag = match kind {
        ChannelKind::S => 1,
        ChannelKind::T => 2,
    };
    ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 8) ^ tag)
}

/// Runs every identity check for one `n` and appends them to `rec`.
fn check_dimension(rec: &mut Recorder<'_>, n: usize, kinds: &[ChannelKind]) -> Result<(), CliError> {
    let gens = build_generators(n)?;
    rec.push("generator_hermiticity", n, None, gens.hermiticity_deviation());
    rec.push("generator_tracelessness", n, None, gens.trace_deviation());
    rec.push("generator_orthonormality", n, None, gens.orthonormality_deviation());
    let tol = rec.cfg.tolerance;
    rec.push("completeness", n, None, verify_completeness(&gens, tol).max_deviation);

    let s = build_gates(ChannelSpec::s(n)?, &gens)?;
    let t = build_gates(ChannelSpec::t(n)?, &gens)?;
    for &kind in kinds {
        let gates = if kind == ChannelKind::S { &s } else { &t };
        check_channel(rec, &gens, gates)?;
    }

    let half_n = c(n as f64 / 2.0, 0.0);
    let row1 = t.s_identity.scale(half_n).plus_scaled(&t.z_gate, half_n);
    rec.push(
        "crossing_identity_row",
        n,
        None,
        crossing_map(&s.s_identity).max_abs_diff(&row1),
    );
    rec.push(
        "crossing_swap_row",
        n,
        None,
        crossing_map(&s.z_gate).max_abs_diff(&t.s_identity),
    );
    Ok(())
}

fn check_channel(rec: &mut Recorder<'_>, gens: &GeneratorSet, gates: &GateSet) -> Result<(), CliError> {
    let ch = gates.channel;
    let (n, k) = (ch.n, Some(ch.kind));
    let projs = build_projectors(ch, gens)?;
    rec.push("projector_idempotence", n, k, projs.idempotence_deviation());
    rec.push("projector_orthogonality", n, k, projs.orthogonality_deviation());
    rec.push("projector_completeness", n, k, projs.completeness_deviation());
    rec.push("projector_traces", n, k, projs.trace_deviation());
    let from_gens = build_projectors_from_generators(ch, gens)?;
    rec.push("generator_form_agreement", n, k, projs.max_abs_diff(&from_gens));

    rec.push("gate_unitarity", n, k, gates.unitarity_deviation());
    rec.push("gate_involution", n, k, gates.involution_deviation());
    rec.push("gate_hermiticity", n, k, gates.hermiticity_deviation());
    rec.push("gate_group_table", n, k, gates.group_table_deviation());

    match ch.kind {
        ChannelKind::S => {
            let swap = TwoQuditOperator::from_index_fn(
                n,
                |kk, l, i, j| {
                    if kk == j && l == i {
                        c(1.0, 0.0)
                    } else {
                        c(0.0, 0.0)
                    }
                },
            );
            rec.push("swap_permutation", n, k, gates.z_gate.max_abs_diff(&swap));
        }
        ChannelKind::T => {
            let spec = involution_spectrum(&gates.z_gate)?;
            let counts_ok = spec.plus_count == 1 && spec.minus_count == n * n - 1 && spec.other_count == 0;
            let dev = if counts_ok { spec.max_deviation } else { f64::INFINITY };
            rec.push("u_spectrum", n, k, dev);
            let exp = u_exponential_form(gens)?;
            rec.push(
                "exponential_form",
                n,
                k,
                1.0 - global_phase_overlap(&gates.z_gate, &exp.u),
            );
        }
    }

    let mut rng = channel_rng(rec.cfg.seed, n, ch.kind);
    let mut worst_scalar: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    for _ in 0..AMPLITUDE_SAMPLES {
        let (a, b) = sample_pair(&mut rng);
        let m = amplitude_operator(&AmplitudeCoefficients::new(ch, a, b), gates)?;
        let (mp, mm) = scalar_amplitudes(&m, &projs)?;
        worst_scalar = worst_scalar.max((mp - (a + b)).norm()).max((mm - (a - b)).norm());
        worst_residual = worst_residual.max(invariance_residual(&m, &projs));
    }
    rec.push("scalar_amplitudes", n, k, worst_scalar);
    rec.push("invariance_residual", n, k, worst_residual);

    let mut worst_block: f64 = 0.0;
    let mut worst_w: f64 = 0.0;
    for _ in 0..ENCODING_SAMPLES {
        let (a, b) = sample_pair(&mut rng);
        let cf = AmplitudeCoefficients::new(ch, a, b);
        let plan = plan_encoding(&cf)?;
        let w = build_w(&plan, gates)?;
        let m = amplitude_operator(&cf, gates)?;
        worst_block = worst_block.max(verify_block(&w, &m, plan.alpha, rec.cfg.tolerance).max_deviation);
        worst_w = worst_w.max(w.unitarity_deviation());
    }
    rec.push("block_encoding", n, k, worst_block);
    rec.push("w_unitarity", n, k, worst_w);
    Ok(())
}

/// The identity suite over `n` (or `2..=n` with `sweep`) for the selected
/// channel, or both when none is given.
pub fn run_suite(cfg: &RunConfig, sweep: bool) -> Result<VerifyReport, CliError> {
    cfg.validate()?;
    let dimensions: Vec<usize> = if sweep { (2..=cfg.n).collect() } else { vec![cfg.n] };
    let channels = match cfg.channel {
        Some(k) => vec![k],
        None => vec![ChannelKind::S, ChannelKind::T],
    };
    let mut rec = Recorder {
        cfg,
        checks: Vec::new(),
    };
    for &n in &dimensions {
        check_dimension(&mut rec, n, &channels)?;
    }
    let all_passed = rec.checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        dimensions,
        channels,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        all_passed,
        checks: rec.checks,
    })
}

pub fn cmd_verify(cfg: &RunConfig, sweep: bool) -> Result<Outcome, CliError> {
    cfg.format_for(crate::Format::Json, &[crate::Format::Json], "verify")?;
    let report = run_suite(cfg, sweep)?;
    Ok(Outcome {
        passed: report.all_passed,
        text: serde_json::to_string_pretty(&report)?,
    })
}

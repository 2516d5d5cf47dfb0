//! Invariant amplitudes `M = a·S_I + b·Z`, their channel scalars, crossing
//! of coefficients and partial-wave unitarity checks.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{ChannelKind, ChannelSpec, GateSet, ProjectorSet};
use crate::error::{Error, Result};
use crate::qudit::TwoQuditOperator;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeCoefficients {
    pub channel: ChannelSpec,
    /// Coefficient of `S_I`.
    pub a: Complex64,
    /// Coefficient of `Z`.
    pub b: Complex64,
}

impl AmplitudeCoefficients {
    pub fn new(channel: ChannelSpec, a: Complex64, b: Complex64) -> Self {
        Self { channel, a, b }
    }

    pub fn norm_sq(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr()
    }
}

fn check_channel(expected: ChannelSpec, found: ChannelSpec) -> Result<()> {
    if expected.kind != found.kind {
        return Err(Error::ChannelMismatch {
            expected: expected.kind,
            found: found.kind,
        });
    }
    if expected.n != found.n {
        return Err(Error::DimensionMismatch {
            expected: expected.n,
            found: found.n,
        });
    }
    Ok(())
}

/// `a·S_I + b·Z`.
pub fn amplitude_operator(c: &AmplitudeCoefficients, gates: &GateSet) -> Result<TwoQuditOperator> {
    check_channel(gates.channel, c.channel)?;
    Ok(gates.s_identity.scale(c.a).plus_scaled(&gates.z_gate, c.b))
}

/// `(M_plus, M_minus)` with `M_R = Tr(M·P_R) / Tr(P_R)`.
pub fn scalar_amplitudes(m: &TwoQuditOperator, projs: &ProjectorSet) -> Result<(Complex64, Complex64)> {
    if m.n() != projs.channel.n {
        return Err(Error::DimensionMismatch {
            expected: projs.channel.n,
            found: m.n(),
        });
    }
    let contract = |p: &TwoQuditOperator| m.matrix().trace_product(p.matrix()) / p.trace();
    Ok((contract(&projs.p_plus), contract(&projs.p_minus)))
}

/// `max |M − (M_plus P_plus + M_minus P_minus)|`; zero iff `M` acts
/// diagonally on the two irreps of the channel.
pub fn invariance_residual(m: &TwoQuditOperator, projs: &ProjectorSet) -> f64 {
    match scalar_amplitudes(m, projs) {
        Ok((mp, mm)) => {
            let fit = projs.p_plus.scale(mp).plus_scaled(&projs.p_minus, mm);
            m.max_abs_diff(&fit)
        }
        Err(_) => f64::INFINITY,
    }
}

/// Re-expresses `(a, b)` in the other channel's gate basis.
///
/// s → t uses `S_I → (N/2)(S_I + U)`, `S_W → S_I`, giving
/// `a' = aN/2 + b`, `b' = aN/2`. t → s applies the inverse,
/// `a = 2b'/N`, `b = a' − b'`.
pub fn cross_coefficients(c: &AmplitudeCoefficients) -> AmplitudeCoefficients {
    let half_n = c.channel.n as f64 / 2.0;
    let (kind, a, b) = match c.channel.kind {
        ChannelKind::S => (ChannelKind::T, c.a * half_n + c.b, c.a * half_n),
        ChannelKind::T => (ChannelKind::S, c.b / half_n, c.a - c.b),
    };
    AmplitudeCoefficients {
        channel: ChannelSpec { kind, n: c.channel.n },
        a,
        b,
    }
}

/// `a = e^{iφ} cos θ`, `b = i e^{iφ} sin θ`, so that `M = e^{iφ} e^{iθZ}`.
pub fn unitary_parameterization(theta: f64, phi: f64, gates: &GateSet) -> AmplitudeCoefficients {
    let (a, b) = unitary_pair(theta, phi);
    AmplitudeCoefficients::new(gates.channel, a, b)
}

fn unitary_pair(theta: f64, phi: f64) -> (Complex64, Complex64) {
    let phase = Complex64::from_polar(1.0, phi);
    (phase * theta.cos(), Complex64::i() * phase * theta.sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialWaveSector {
    pub j: u32,
    pub a_j: Complex64,
    pub b_j: Complex64,
    pub kappa_j: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitarityReport {
    pub j: u32,
    pub norm_sq: f64,
    pub bound_satisfied: bool,
    /// `S_{J,+} = 1 + iκ(a + b)`.
    pub eigen_plus: Complex64,
    /// `S_{J,−} = 1 + iκ(a − b)`.
    pub eigen_minus: Complex64,
    pub in_unit_disk: [bool; 2],
    pub elastic_saturation: bool,
}

/// Evaluates both the `|a|² + |b|² ≤ 1` bound and the eigenvalue-in-disk
/// condition. They are reported independently; neither is derived from the
/// other because the relation depends on the normalization of κ.
pub fn check_partial_wave(sector: &PartialWaveSector, tolerance: f64) -> Result<UnitarityReport> {
    if sector.kappa_j.is_nan() || sector.kappa_j <= 0.0 {
        return Err(Error::NonPositiveKappa(sector.kappa_j));
    }
    let norm_sq = sector.a_j.norm_sqr() + sector.b_j.norm_sqr();
    let ik = Complex64::new(0.0, sector.kappa_j);
    let eigen_plus = 1.0 + ik * (sector.a_j + sector.b_j);
    let eigen_minus = 1.0 + ik * (sector.a_j - sector.b_j);
    Ok(UnitarityReport {
        j: sector.j,
        norm_sq,
        bound_satisfied: norm_sq <= 1.0 + tolerance,
        eigen_plus,
        eigen_minus,
        in_unit_disk: [
            eigen_plus.norm() <= 1.0 + tolerance,
            eigen_minus.norm() <= 1.0 + tolerance,
        ],
        elastic_saturation: (norm_sq - 1.0).abs() <= tolerance,
    })
}

/// One row of the amplitude-disk table, in the real plane spanned by
/// `S_I` and `iZ` (so `a = r cos θ`, `b = i r sin θ`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskSample {
    pub theta: f64,
    pub phi: f64,
    pub a: Complex64,
    pub b: Complex64,
    pub norm_sq: f64,
    pub boundary: bool,
}

/// `resolution` boundary points at `θ_k = 2πk/resolution` (unit radius),
/// followed by the origin and an interior polar grid with radii
/// `m/resolution`, `m = 1..resolution−1`.
pub fn disk_samples(resolution: usize) -> Result<Vec<DiskSample>> {
    if resolution < 2 {
        return Err(Error::InvalidResolution(resolution));
    }
    let angle = |k: usize| 4.0 * FRAC_PI_2 * k as f64 / resolution as f64;
    let sample = |theta: f64, radius: f64, boundary: bool| {
        let (a, b) = unitary_pair(theta, 0.0);
        let (a, b) = (a * radius, b * radius);
        DiskSample {
            theta,
            phi: 0.0,
            a,
            b,
            norm_sq: a.norm_sqr() + b.norm_sqr(),
            boundary,
        }
    };
    let mut rows: Vec<DiskSample> = (0..resolution).map(|k| sample(angle(k), 1.0, true)).collect();
    rows.push(sample(0.0, 0.0, false));
    for m in 1..resolution {
        let radius = m as f64 / resolution as f64;
        rows.extend((0..resolution).map(|k| sample(angle(k), radius, false)));
    }
    Ok(rows)
}

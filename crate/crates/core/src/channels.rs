//! Channel projectors, the three invariant gates and the crossing map.
//!
//! The s-channel acts on `N⊗N` and splits into symmetric/antisymmetric
//! irreps; the t-channel acts on `N⊗N̄` and splits into singlet/adjoint.
//! Both live in the same computational basis `H_N⊗H_N` with the flattening
//! of [`crate::qudit`]; for the t-channel the second factor carries the
//! conjugate representation, whose generators are `−(T^a)*`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::GeneratorSet;
use crate::error::{Error, Result};
use crate::matrix::{inner, vector_norm, ComplexMatrix, ONE, ZERO};
use crate::qudit::{pair_index, TwoQuditOperator};

/// Gap separating eigenvalue clusters when counting multiplicities.
pub const SPECTRUM_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelKind {
    /// `N⊗N`, gates `{S_I, S_W}`.
    #[serde(rename = "s")]
    S,
    /// `N⊗N̄`, gates `{S_I, U}`.
    #[serde(rename = "t")]
    T,
}

impl ChannelKind {
    pub fn label(self) -> &'static str {
        match self {
            ChannelKind::S => "s",
            ChannelKind::T => "t",
        }
    }

    pub fn other(self) -> Self {
        match self {
            ChannelKind::S => ChannelKind::T,
            ChannelKind::T => ChannelKind::S,
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "s" | "S" => Ok(ChannelKind::S),
            "t" | "T" => Ok(ChannelKind::T),
            other => Err(format!("unknown channel '{other}', expected 's' or 't'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub n: usize,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self { kind, n })
    }

    pub fn s(n: usize) -> Result<Self> {
        Self::new(ChannelKind::S, n)
    }

    pub fn t(n: usize) -> Result<Self> {
        Self::new(ChannelKind::T, n)
    }

    /// `(Tr P_plus, Tr P_minus)`.
    pub fn expected_traces(&self) -> (f64, f64) {
        let n = self.n as f64;
        match self.kind {
            ChannelKind::S => (n * (n + 1.0) / 2.0, n * (n - 1.0) / 2.0),
            ChannelKind::T => (1.0, n * n - 1.0),
        }
    }
}

fn check_dim(channel: &ChannelSpec, gens: &GeneratorSet) -> Result<()> {
    if channel.n != gens.n() {
        return Err(Error::DimensionMismatch {
            expected: channel.n,
            found: gens.n(),
        });
    }
    Ok(())
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `P_S/P_A` (s-channel) or `P_1/P_Adj` (t-channel).
#[derive(Debug, Clone)]
pub struct ProjectorSet {
    pub channel: ChannelSpec,
    pub p_plus: TwoQuditOperator,
    pub p_minus: TwoQuditOperator,
}

impl ProjectorSet {
    pub fn idempotence_deviation(&self) -> f64 {
        [&self.p_plus, &self.p_minus]
            .iter()
            .map(|p| p.matmul(p).max_abs_diff(p))
            .fold(0.0, f64::max)
    }

    /// `max(|P+ P−|, |P− P+|)`.
    pub fn orthogonality_deviation(&self) -> f64 {
        self.p_plus
            .matmul(&self.p_minus)
            .matrix()
            .max_abs()
            .max(self.p_minus.matmul(&self.p_plus).matrix().max_abs())
    }

    pub fn completeness_deviation(&self) -> f64 {
        self.p_plus
            .plus_scaled(&self.p_minus, ONE)
            .max_abs_diff(&TwoQuditOperator::identity(self.channel.n))
    }

    pub fn trace_deviation(&self) -> f64 {
        let (tp, tm) = self.channel.expected_traces();
        (self.p_plus.trace() - tp)
            .norm()
            .max((self.p_minus.trace() - tm).norm())
    }

    /// Largest entrywise difference between two projector sets.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.p_plus
            .max_abs_diff(&other.p_plus)
            .max(self.p_minus.max_abs_diff(&other.p_minus))
    }
}

/// Projectors from their Kronecker-delta index forms.
pub fn build_projectors(channel: ChannelSpec, gens: &GeneratorSet) -> Result<ProjectorSet> {
    check_dim(&channel, gens)?;
    let n = channel.n;
    let inv_n = 1.0 / n as f64;
    let (p_plus, p_minus) = match channel.kind {
        ChannelKind::S => (
            // (P_S)_{ij,rs} = (δ_ir δ_js + δ_jr δ_is)/2
            TwoQuditOperator::from_index_fn(n, |i, j, r, s| {
                real((delta(i, r) * delta(j, s) + delta(j, r) * delta(i, s)) / 2.0)
            }),
            TwoQuditOperator::from_index_fn(n, |i, j, r, s| {
                real((delta(i, r) * delta(j, s) - delta(j, r) * delta(i, s)) / 2.0)
            }),
        ),
        ChannelKind::T => (
            // (P_1)_{ki,pr} = δ_ki δ_pr / N
            TwoQuditOperator::from_index_fn(n, |k, i, p, r| real(delta(k, i) * delta(p, r) * inv_n)),
            TwoQuditOperator::from_index_fn(n, |k, i, p, r| {
                real(delta(k, p) * delta(i, r) - delta(k, i) * delta(p, r) * inv_n)
            }),
        ),
    };
    Ok(ProjectorSet {
        channel,
        p_plus,
        p_minus,
    })
}

/// `Σ_a T^a ⊗ T^a` on `N⊗N`, or `Σ_a T^a ⊗ (T^a)*` on `N⊗N̄`.
///
/// In the t-channel this is minus the generator coupling `Σ_a T^a ⊗ T̄^a`
/// with `T̄^a = −(T^a)*`; the sign is chosen so the singlet eigenvalue is
/// the positive one, `(N²−1)/(2N)`.
pub fn generator_coupling(channel: ChannelSpec, gens: &GeneratorSet) -> Result<TwoQuditOperator> {
    check_dim(&channel, gens)?;
    let n = channel.n;
    let mut sum = ComplexMatrix::zeros(n * n, n * n);
    for t in gens {
        let partner = match channel.kind {
            ChannelKind::S => t.clone(),
            ChannelKind::T => t.conj(),
        };
        sum.add_scaled(&t.kron(&partner), ONE);
    }
    TwoQuditOperator::new(n, sum)
}

/// Projectors expressed through the generator coupling `X` of
/// [`generator_coupling`]:
///
/// * s-channel: `P_S = (N+1)/(2N) I + X`, `P_A = (N−1)/(2N) I − X`
/// * t-channel: `P_1 = I/N² + (2/N) X`, `P_Adj = (1 − 1/N²) I − (2/N) X`
pub fn build_projectors_from_generators(channel: ChannelSpec, gens: &GeneratorSet) -> Result<ProjectorSet> {
    let x = generator_coupling(channel, gens)?;
    let n = channel.n as f64;
    let id = TwoQuditOperator::identity(channel.n);
    let (p_plus, p_minus) = match channel.kind {
        ChannelKind::S => (
            id.scale(real((n + 1.0) / (2.0 * n))).plus_scaled(&x, ONE),
            id.scale(real((n - 1.0) / (2.0 * n))).plus_scaled(&x, -ONE),
        ),
        ChannelKind::T => (
            id.scale(real(1.0 / (n * n))).plus_scaled(&x, real(2.0 / n)),
            id.scale(real(1.0 - 1.0 / (n * n))).plus_scaled(&x, real(-2.0 / n)),
        ),
    };
    Ok(ProjectorSet {
        channel,
        p_plus,
        p_minus,
    })
}

/// `{S_I, Z}` for one channel, with `Z = S_W` or `Z = U`.
#[derive(Debug, Clone)]
pub struct GateSet {
    pub channel: ChannelSpec,
    pub s_identity: TwoQuditOperator,
    pub z_gate: TwoQuditOperator,
}

impl GateSet {
    pub fn unitarity_deviation(&self) -> f64 {
        self.s_identity
            .matrix()
            .unitarity_deviation()
            .max(self.z_gate.matrix().unitarity_deviation())
    }

    /// `|Z² − S_I|`.
    pub fn involution_deviation(&self) -> f64 {
        self.z_gate.matmul(&self.z_gate).max_abs_diff(&self.s_identity)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.z_gate.matrix().hermiticity_deviation()
    }

    /// Worst deviation of the Z₂ multiplication table and of `[S_I, Z] = 0`.
    pub fn group_table_deviation(&self) -> f64 {
        let (i, z) = (&self.s_identity, &self.z_gate);
        let comm = i.matmul(z).plus_scaled(&z.matmul(i), -ONE).matrix().max_abs();
        [
            i.matmul(i).max_abs_diff(i),
            i.matmul(z).max_abs_diff(z),
            z.matmul(i).max_abs_diff(z),
            z.matmul(z).max_abs_diff(i),
            comm,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// The swap permutation `|ij⟩ → |ji⟩`.
pub fn swap_operator(n: usize) -> TwoQuditOperator {
    TwoQuditOperator::from_index_fn(n, |k, l, i, j| real(delta(k, j) * delta(l, i)))
}

/// `S_I = P+ + P−`, `Z = P+ − P−`.
pub fn build_gates(channel: ChannelSpec, gens: &GeneratorSet) -> Result<GateSet> {
    let p = build_projectors(channel, gens)?;
    Ok(gates_from_projectors(&p))
}

pub fn gates_from_projectors(p: &ProjectorSet) -> GateSet {
    GateSet {
        channel: p.channel,
        s_identity: p.p_plus.plus_scaled(&p.p_minus, ONE),
        z_gate: p.p_plus.plus_scaled(&p.p_minus, -ONE),
    }
}

/// `U = (2/N² − 1) I + (4/N) Σ_a T^a ⊗ (T^a)*`, i.e. the charge-parity
/// gate written with the anti-fundamental generators `−(T^a)*`.
pub fn u_from_generators(gens: &GeneratorSet) -> Result<TwoQuditOperator> {
    let channel = ChannelSpec::t(gens.n())?;
    let x = generator_coupling(channel, gens)?;
    let n = gens.n() as f64;
    Ok(TwoQuditOperator::identity(gens.n())
        .scale(real(2.0 / (n * n) - 1.0))
        .plus_scaled(&x, real(4.0 / n)))
}

/// Multiplicities of the `+1` and `−1` eigenvalues of a Hermitian
/// involution, plus the worst eigenvalue distance from `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvolutionSpectrum {
    pub plus_count: usize,
    pub minus_count: usize,
    pub other_count: usize,
    pub max_deviation: f64,
}

pub fn involution_spectrum(op: &TwoQuditOperator) -> Result<InvolutionSpectrum> {
    let (values, _) = op.matrix().hermitian_eigen()?;
    let mut spec = InvolutionSpectrum {
        plus_count: 0,
        minus_count: 0,
        other_count: 0,
        max_deviation: 0.0,
    };
    for v in values {
        let (dp, dm) = ((v - 1.0).abs(), (v + 1.0).abs());
        if dp < SPECTRUM_GAP {
            spec.plus_count += 1;
        } else if dm < SPECTRUM_GAP {
            spec.minus_count += 1;
        } else {
            spec.other_count += 1;
        }
        spec.max_deviation = spec.max_deviation.max(dp.min(dm));
    }
    Ok(spec)
}

/// Sorts ascending eigenvalues into clusters separated by more than
/// [`SPECTRUM_GAP`]; returns the mean of each cluster.
pub fn eigenvalue_clusters(sorted: &[f64]) -> Vec<f64> {
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for &v in sorted {
        match clusters.last_mut() {
            Some(c) if (v - c[c.len() - 1]).abs() <= SPECTRUM_GAP => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    clusters
        .into_iter()
        .map(|c| c.iter().sum::<f64>() / c.len() as f64)
        .collect()
}

/// `Σ_i |ii⟩ / √N`.
pub fn singlet_state(n: usize) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let amp = real(1.0 / (n as f64).sqrt());
    let mut psi = vec![ZERO; n * n];
    for i in 0..n {
        psi[pair_index(n, i, i)] = amp;
    }
    Ok(psi)
}

/// Rotates `v` so its first non-negligible component is real positive.
fn fix_phase(v: &mut [Complex64]) {
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-12).copied() {
        let phase = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

/// `|ψ^a⟩ ∝ Σ_ij (T^a)_ij |ij⟩`, normalized, first nonzero component real
/// positive. These span the adjoint image of `P_Adj`.
pub fn adjoint_states(gens: &GeneratorSet) -> Vec<Vec<Complex64>> {
    let n = gens.n();
    gens.iter()
        .map(|t| {
            let mut v: Vec<Complex64> = (0..n * n).map(|idx| t[(idx / n, idx % n)]).collect();
            let norm = vector_norm(&v);
            for x in v.iter_mut() {
                *x /= norm;
            }
            fix_phase(&mut v);
            v
        })
        .collect()
}

/// Charge-parity gate rebuilt as `exp[iπ (X − λ_1)/(λ_Adj − λ_1)]`.
#[derive(Debug, Clone)]
pub struct ExponentialForm {
    pub u: TwoQuditOperator,
    /// Eigenvalue of the t-channel coupling on the singlet.
    pub lambda_singlet: f64,
    /// Eigenvalue of the t-channel coupling on the adjoint.
    pub lambda_adjoint: f64,
}

pub fn u_exponential_form(gens: &GeneratorSet) -> Result<ExponentialForm> {
    let n = gens.n();
    let x = generator_coupling(ChannelSpec::t(n)?, gens)?;
    let (values, _) = x.matrix().hermitian_eigen()?;
    let clusters = eigenvalue_clusters(&values);
    if clusters.len() != 2 {
        return Err(Error::SpectrumNotTwoValued { found: clusters.len() });
    }
    let singlet = singlet_state(n)?;
    let lambda_singlet = inner(&singlet, &x.apply(&singlet)).re;
    let lambda_adjoint = if (clusters[0] - lambda_singlet).abs() < (clusters[1] - lambda_singlet).abs() {
        clusters[1]
    } else {
        clusters[0]
    };
    let scale = std::f64::consts::PI / (lambda_adjoint - lambda_singlet);
    let u = x
        .matrix()
        .hermitian_function(|lam| Complex64::from_polar(1.0, scale * (lam - lambda_singlet)))?;
    Ok(ExponentialForm {
        u: TwoQuditOperator::new(n, u)?,
        lambda_singlet,
        lambda_adjoint,
    })
}

/// `|Tr(A† B)| / dim`; equals 1 iff `B = e^{iχ} A` for unitary `A`, `B`.
pub fn global_phase_overlap(a: &TwoQuditOperator, b: &TwoQuditOperator) -> f64 {
    a.matrix().adjoint().trace_product(b.matrix()).norm() / a.dim() as f64
}

/// Maps an s-channel operator to the t-channel basis by crossing particles
/// 2 and 3: `O'[(a,b),(c,d)] = O[(d,a),(c,b)]`.
///
/// Leg 1 stays incoming in the first slot; outgoing leg 3 becomes the
/// incoming antiparticle, incoming leg 2 becomes the outgoing antiparticle.
/// Under this map `S_I → (N/2)(S_I + U)` and `S_W → S_I`.
pub fn crossing_map(op: &TwoQuditOperator) -> TwoQuditOperator {
    let n = op.n();
    TwoQuditOperator::from_index_fn(n, |a, b, c, d| op.element(d, a, c, b))
}

/// Inverse of [`crossing_map`]: `O[(k,l),(i,j)] = O'[(l,j),(i,k)]`.
pub fn inverse_crossing_map(op: &TwoQuditOperator) -> TwoQuditOperator {
    let n = op.n();
    TwoQuditOperator::from_index_fn(n, |k, l, i, j| op.element(l, j, i, k))
}

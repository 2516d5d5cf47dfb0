//! Operator algebra of SU(N)-invariant 2→2 qudit scattering.
//!
//! Every invariant amplitude between two particles in the fundamental (or
//! one fundamental and one anti-fundamental) representation is a linear
//! combination `M = a·S_I + b·Z` of two involutive gates, with `Z = S_W`
//! (swap) on `N⊗N` and `Z = U` (charge parity) on `N⊗N̄`. This crate builds
//! those gates from the SU(N) generators, checks the identities that tie
//! them together, maps amplitudes across channels, and block-encodes `M`
//! with a single ancilla.
//!
//! Modules, bottom-up:
//!
//! * [`matrix`]: dense complex matrices
//! * [`algebra`]: generators, structure constants, completeness
//! * [`qudit`]: two-qudit operators and their generator-basis expansion
//! * [`channels`]: projectors, gates, eigenstates, crossing
//! * [`amplitude`]: invariant amplitudes and partial-wave checks
//! * [`lcu`]: block encoding, postselection, circuit export

pub mod algebra;
pub mod amplitude;
pub mod channels;
pub mod error;
pub mod lcu;
pub mod matrix;
pub mod qudit;

pub use num_complex::Complex64;

pub use algebra::{
    build_generators, structure_constants, verify_completeness, GeneratorSet, StructureConstants, VerificationReport,
    DEFAULT_TOLERANCE,
};
pub use amplitude::{
    amplitude_operator, check_partial_wave, cross_coefficients, disk_samples, invariance_residual, scalar_amplitudes,
    unitary_parameterization, AmplitudeCoefficients, DiskSample, PartialWaveSector, UnitarityReport,
};
pub use channels::{
    adjoint_states, build_gates, build_projectors, crossing_map, inverse_crossing_map, singlet_state,
    u_exponential_form, ChannelKind, ChannelSpec, GateSet, ProjectorSet,
};
pub use error::{Error, Result};
pub use lcu::{
    apply_with_postselection, build_w, export_circuit, plan_encoding, verify_block, BlockEncodingPlan,
    CircuitDescription, CircuitGate, Postselected,
};
pub use matrix::ComplexMatrix;
pub use qudit::{decompose, reconstruct, tensor, OperatorBasisDecomposition, TwoQuditOperator};

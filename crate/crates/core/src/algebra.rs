//! SU(N) generators in the fundamental representation and the identities
//! they satisfy.
//!
//! Generators are the generalized Gell-Mann matrices scaled by one half, so
//! that `Tr(T^a T^b) = δ_ab / 2`. Ordering: the symmetric off-diagonal
//! generators for every pair `i < j` (lexicographic), then the antisymmetric
//! ones in the same pair order, then the `N − 1` diagonal generators.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};

/// Absolute tolerance used by identity checks unless the caller overrides it.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Outcome of a numerical identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerificationReport {
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(max_deviation: f64, tolerance: f64) -> Self {
        Self {
            max_deviation,
            tolerance,
            passed: max_deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    n: usize,
    generators: Vec<ComplexMatrix>,
}

impl GeneratorSet {
    /// Wraps caller-supplied matrices. Only shapes are checked here; use
    /// [`GeneratorSet::validate`] for the algebraic invariants.
    pub fn from_matrices(n: usize, generators: Vec<ComplexMatrix>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        if generators.len() != n * n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n * n - 1,
                found: generators.len(),
            });
        }
        for g in &generators {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if g.rows() != n { g.rows() } else { g.cols() },
                });
            }
        }
        Ok(Self { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N² − 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, a: usize) -> &ComplexMatrix {
        &self.generators[a]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ComplexMatrix> {
        self.generators.iter()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.iter()
            .map(ComplexMatrix::hermiticity_deviation)
            .fold(0.0, f64::max)
    }

    pub fn trace_deviation(&self) -> f64 {
        self.iter().map(|g| g.trace().norm()).fold(0.0, f64::max)
    }

    /// `max |Tr(T^a T^b) − δ_ab/2|` over all pairs.
    pub fn orthonormality_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, ta) in self.iter().enumerate() {
            for (b, tb) in self.iter().enumerate() {
                let expected = if a == b { 0.5 } else { 0.0 };
                let dev = (ta.trace_product(tb) - expected).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Worst of Hermiticity, tracelessness and trace orthonormality.
    pub fn validate(&self, tolerance: f64) -> VerificationReport {
        let dev = self
            .hermiticity_deviation()
            .max(self.trace_deviation())
            .max(self.orthonormality_deviation());
        VerificationReport::new(dev, tolerance)
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a ComplexMatrix;
    type IntoIter = std::slice::Iter<'a, ComplexMatrix>;

    fn into_iter(self) -> Self::IntoIter {
        self.generators.iter()
    }
}

pub fn build_generators(n: usize) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();

    let mut gens = Vec::with_capacity(n * n - 1);
    for &(i, j) in &pairs {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(i, j)] = half;
        m[(j, i)] = half;
        gens.push(m);
    }
    for &(i, j) in &pairs {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(i, j)] = -half_i;
        m[(j, i)] = half_i;
        gens.push(m);
    }
    // diag(1, …, 1, −l, 0, …) / sqrt(2 l (l + 1)), l = 1..N−1
    for l in 1..n {
        let norm = 1.0 / ((2 * l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(n, n);
        for k in 0..l {
            m[(k, k)] = Complex64::new(norm, 0.0);
        }
        m[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        gens.push(m);
    }
    Ok(GeneratorSet { n, generators: gens })
}

/// Real structure constants `f_abc`, stored densely.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    dim: usize,
    f: Vec<f64>,
}

impl StructureConstants {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Zero-based `f[a, b, c]`.
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.f[(a * self.dim + b) * self.dim + c]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Worst deviation from total antisymmetry over all index transpositions.
    pub fn antisymmetry_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let v = self.get(a, b, c);
                    worst = worst
                        .max((v + self.get(b, a, c)).abs())
                        .max((v + self.get(a, c, b)).abs())
                        .max((v + self.get(c, b, a)).abs());
                }
            }
        }
        worst
    }

    /// `max |f_ade f_bcd + f_bde f_cad + f_cde f_abd|` over all `a, b, c, e`.
    pub fn jacobi_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let s: f64 = (0..d)
                            .map(|k| {
                                self.get(a, e, k) * self.get(b, c, k)
                                    + self.get(b, e, k) * self.get(c, a, k)
                                    + self.get(c, e, k) * self.get(a, b, k)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// `max |[T^a,T^b] − i f_abc T^c|` entrywise over all pairs.
    pub fn commutator_deviation(&self, gens: &GeneratorSet) -> f64 {
        let i = Complex64::i();
        let mut worst: f64 = 0.0;
        for a in 0..self.dim {
            for b in 0..self.dim {
                let lhs = gens.get(a).commutator(gens.get(b));
                let mut rhs = ComplexMatrix::zeros(self.n, self.n);
                for c in 0..self.dim {
                    let f = self.get(a, b, c);
                    if f != 0.0 {
                        rhs.add_scaled(gens.get(c), i * f);
                    }
                }
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        worst
    }
}

/// Extracts `f_abc = −2i Tr([T^a,T^b] T^c)` using [`DEFAULT_TOLERANCE`] for
/// the realness check.
pub fn structure_constants(gens: &GeneratorSet) -> Result<StructureConstants> {
    structure_constants_with_tolerance(gens, DEFAULT_TOLERANCE)
}

pub fn structure_constants_with_tolerance(gens: &GeneratorSet, tolerance: f64) -> Result<StructureConstants> {
    let dim = gens.len();
    let minus_two_i = Complex64::new(0.0, -2.0);
    let mut f = vec![0.0; dim * dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let comm = gens.get(a).commutator(gens.get(b));
            for c in 0..dim {
                let v = minus_two_i * comm.trace_product(gens.get(c));
                if v.im.abs() > tolerance {
                    return Err(Error::ComplexStructureConstant { a, b, c, imag: v.im });
                }
                f[(a * dim + b) * dim + c] = v.re;
            }
        }
    }
    Ok(StructureConstants { n: gens.n(), dim, f })
}

/// Checks `Σ_a (T^a)_ij (T^a)_kl = ½(δ_il δ_jk − δ_ij δ_kl / N)` over every
/// index tuple.
pub fn verify_completeness(gens: &GeneratorSet, tolerance: f64) -> VerificationReport {
    let n = gens.n();
    let inv_n = 1.0 / n as f64;
    let delta = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let sum: Complex64 = gens.iter().map(|t| t[(i, j)] * t[(k, l)]).fold(ZERO, |acc, z| acc + z);
                    let expected = 0.5 * (delta(i, l) * delta(j, k) - delta(i, j) * delta(k, l) * inv_n);
                    worst = worst.max((sum - expected).norm());
                }
            }
        }
    }
    VerificationReport::new(worst, tolerance)
}

//! Two-qudit operators on `H_N ⊗ H_N` and their expansion in the basis
//! `{I⊗I, T^a⊗I, I⊗T^a, T^a⊗T^b}`.
//!
//! Index convention, used everywhere in the crate: the pair `(k, l)` maps to
//! `k·N + l`, first factor most significant. Rows are outgoing pairs and
//! columns incoming pairs, so `op[(k·N+l, i·N+j)] = ⟨kl|op|ij⟩`.

use num_complex::Complex64;

use crate::algebra::GeneratorSet;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};

/// Flattened index of the basis state `|first, second⟩`.
#[inline]
pub fn pair_index(n: usize, first: usize, second: usize) -> usize {
    first * n + second
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoQuditOperator {
    n: usize,
    matrix: ComplexMatrix,
}

impl TwoQuditOperator {
    pub fn new(n: usize, matrix: ComplexMatrix) -> Result<Self> {
        let dim = n * n;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: if matrix.rows() != dim {
                    matrix.rows()
                } else {
                    matrix.cols()
                },
            });
        }
        Ok(Self { n, matrix })
    }

    /// Infers `N` from a square `N² × N²` matrix.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let n = (matrix.rows() as f64).sqrt().round() as usize;
        Self::new(n, matrix)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            matrix: ComplexMatrix::identity(n * n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            matrix: ComplexMatrix::zeros(n * n, n * n),
        }
    }

    /// Builds an operator from `f(k, l, i, j) = ⟨kl|op|ij⟩`.
    pub fn from_index_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> Complex64) -> Self {
        let matrix = ComplexMatrix::from_fn(n * n, n * n, |r, c| f(r / n, r % n, c / n, c % n));
        Self { n, matrix }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N²`.
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `⟨kl|op|ij⟩`.
    pub fn element(&self, k: usize, l: usize, i: usize, j: usize) -> Complex64 {
        self.matrix[(pair_index(self.n, k, l), pair_index(self.n, i, j))]
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            matrix: self.matrix.matmul(&other.matrix),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            matrix: self.matrix.scale(s),
        }
    }

    /// `self + s·other`.
    pub fn plus_scaled(&self, other: &Self, s: Complex64) -> Self {
        let mut matrix = self.matrix.clone();
        matrix.add_scaled(&other.matrix, s);
        Self { n: self.n, matrix }
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        self.matrix.apply(psi)
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.matrix.approx_eq(&other.matrix, tolerance)
    }
}

/// Kronecker product of two square matrices.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    for m in [a, b] {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    Ok(a.kron(b))
}

/// Coefficients of an operator in the generator product basis.
///
/// `corr` holds `c_ab` itself (so `Tr(op · T^a⊗T^b) = c_ab / 4`), stored
/// row-major as `corr[a · (N²−1) + b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBasisDecomposition {
    pub n: usize,
    pub scalar: Complex64,
    pub left: Vec<Complex64>,
    pub right: Vec<Complex64>,
    pub corr: Vec<Complex64>,
}

impl OperatorBasisDecomposition {
    pub fn zeros(n: usize) -> Self {
        let d = n * n - 1;
        Self {
            n,
            scalar: ZERO,
            left: vec![ZERO; d],
            right: vec![ZERO; d],
            corr: vec![ZERO; d * d],
        }
    }

    /// Number of generators, `N² − 1`.
    pub fn generator_count(&self) -> usize {
        self.left.len()
    }

    pub fn corr(&self, a: usize, b: usize) -> Complex64 {
        self.corr[a * self.generator_count() + b]
    }

    pub fn corr_mut(&mut self, a: usize, b: usize) -> &mut Complex64 {
        let d = self.generator_count();
        &mut self.corr[a * d + b]
    }

    /// Largest modulus difference across every coefficient.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        let pairs = self
            .left
            .iter()
            .zip(&other.left)
            .chain(self.right.iter().zip(&other.right))
            .chain(self.corr.iter().zip(&other.corr));
        pairs
            .map(|(x, y)| (x - y).norm())
            .fold((self.scalar - other.scalar).norm(), f64::max)
    }

    fn check_shape(&self, gens: &GeneratorSet) -> Result<()> {
        let d = gens.len();
        if self.n != gens.n() {
            return Err(Error::DimensionMismatch {
                expected: gens.n(),
                found: self.n,
            });
        }
        for (len, want) in [(self.left.len(), d), (self.right.len(), d), (self.corr.len(), d * d)] {
            if len != want {
                return Err(Error::DimensionMismatch {
                    expected: want,
                    found: len,
                });
            }
        }
        Ok(())
    }
}

/// Projects `op` onto the four basis blocks by the trace formulas
/// `scalar = Tr(op)/N²`, `left_a = (2/N)Tr(op·T^a⊗I)`,
/// `right_a = (2/N)Tr(op·I⊗T^a)`, `c_ab = 4·Tr(op·T^a⊗T^b)`.
pub fn decompose(op: &TwoQuditOperator, gens: &GeneratorSet) -> Result<OperatorBasisDecomposition> {
    let n = gens.n();
    if op.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: op.n(),
        });
    }
    let d = gens.len();
    let m = op.matrix();

    // Tr(op · A⊗B) = Σ op[(k,l),(i,j)] A[i,k] B[j,l]. Contract the first
    // factor once per A, leaving an N×N matrix R_A[l,j].
    let contract_first = |a: Option<&ComplexMatrix>| -> ComplexMatrix {
        let mut r = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            for i in 0..n {
                let w = match a {
                    Some(a) => a[(i, k)],
                    None if i == k => Complex64::new(1.0, 0.0),
                    None => continue,
                };
                if w == ZERO {
                    continue;
                }
                for l in 0..n {
                    for j in 0..n {
                        r[(l, j)] += w * m[(pair_index(n, k, l), pair_index(n, i, j))];
                    }
                }
            }
        }
        r
    };

    let two_over_n = 2.0 / n as f64;
    let mut out = OperatorBasisDecomposition::zeros(n);
    out.scalar = m.trace() / (n * n) as f64;

    let reduced = contract_first(None);
    for (b, tb) in gens.iter().enumerate() {
        out.right[b] = reduced.trace_product(tb) * two_over_n;
    }
    for (a, ta) in gens.iter().enumerate() {
        let ra = contract_first(Some(ta));
        out.left[a] = ra.trace() * two_over_n;
        for (b, tb) in gens.iter().enumerate() {
            out.corr[a * d + b] = ra.trace_product(tb) * 4.0;
        }
    }
    Ok(out)
}

/// `scalar·I⊗I + left_a T^a⊗I + right_a I⊗T^a + c_ab T^a⊗T^b`.
pub fn reconstruct(dec: &OperatorBasisDecomposition, gens: &GeneratorSet) -> Result<TwoQuditOperator> {
    dec.check_shape(gens)?;
    let n = gens.n();
    let id = ComplexMatrix::identity(n);

    let mut right_sum = ComplexMatrix::zeros(n, n);
    for (b, tb) in gens.iter().enumerate() {
        right_sum.add_scaled(tb, dec.right[b]);
    }
    let mut total = id.kron(&right_sum);
    total.add_scaled(&ComplexMatrix::identity(n * n), dec.scalar);

    for (a, ta) in gens.iter().enumerate() {
        // T^a ⊗ (left_a·I + Σ_b c_ab T^b)
        let mut partner = id.scale(dec.left[a]);
        for (b, tb) in gens.iter().enumerate() {
            let c = dec.corr(a, b);
            if c != ZERO {
                partner.add_scaled(tb, c);
            }
        }
        total.add_scaled(&ta.kron(&partner), Complex64::new(1.0, 0.0));
    }
    TwoQuditOperator::new(n, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_generators;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tensor_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert!(tensor(&i2, &i2).unwrap().approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn tensor_rejects_non_square() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            tensor(&a, &ComplexMatrix::identity(2)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn half_sigma_x_tensor_identity() {
        let g = build_generators(2).unwrap();
        let t = tensor(g.get(0), &ComplexMatrix::identity(2)).unwrap();
        // ⟨kl|·|ij⟩ = (σx/2)_{ki} δ_lj: nonzero at (0,l)->(1,l) and (1,l)->(0,l)
        let mut want = ComplexMatrix::zeros(4, 4);
        for (r, col) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
            want[(r, col)] = c(0.5, 0.0);
        }
        assert!(t.approx_eq(&want, 0.0));
    }

    #[test]
    fn tensor_is_bilinear() {
        let g = build_generators(3).unwrap();
        let two = c(2.0, 0.0);
        let lhs = tensor(&g.get(1).scale(two), g.get(5)).unwrap();
        let rhs = tensor(g.get(1), g.get(5)).unwrap().scale(two);
        assert!(lhs.approx_eq(&rhs, 1e-15));
    }

    #[test]
    fn identity_decomposes_to_scalar() {
        let g = build_generators(3).unwrap();
        let d = decompose(&TwoQuditOperator::identity(3), &g).unwrap();
        assert!((d.scalar - 1.0).norm() < 1e-15);
        assert!(d.left.iter().chain(&d.right).chain(&d.corr).all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn single_correlator_term() {
        let g = build_generators(2).unwrap();
        let op = TwoQuditOperator::new(2, g.get(1).kron(g.get(2))).unwrap();
        let d = decompose(&op, &g).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let want = if (a, b) == (1, 2) { 1.0 } else { 0.0 };
                assert!((d.corr(a, b) - want).norm() < 1e-15);
            }
        }
        assert!(d.scalar.norm() < 1e-15);
    }

    #[test]
    fn zero_and_scalar_reconstruction() {
        let g = build_generators(3).unwrap();
        let zero = reconstruct(&OperatorBasisDecomposition::zeros(3), &g).unwrap();
        assert!(zero.approx_eq(&TwoQuditOperator::zeros(3), 0.0));
        let mut d = OperatorBasisDecomposition::zeros(3);
        d.scalar = c(1.0, 0.0);
        assert!(reconstruct(&d, &g)
            .unwrap()
            .approx_eq(&TwoQuditOperator::identity(3), 0.0));
    }

    #[test]
    fn swap_round_trip() {
        let g = build_generators(2).unwrap();
        let swap = TwoQuditOperator::from_index_fn(2, |k, l, i, j| if k == j && l == i { c(1.0, 0.0) } else { ZERO });
        let back = reconstruct(&decompose(&swap, &g).unwrap(), &g).unwrap();
        assert!(back.approx_eq(&swap, 1e-12));
    }

    #[test]
    fn dimension_mismatch_errors() {
        let g2 = build_generators(2).unwrap();
        let g3 = build_generators(3).unwrap();
        assert!(decompose(&TwoQuditOperator::identity(3), &g2).is_err());
        assert!(reconstruct(&OperatorBasisDecomposition::zeros(2), &g3).is_err());
        assert!(TwoQuditOperator::new(2, ComplexMatrix::identity(5)).is_err());
    }
}

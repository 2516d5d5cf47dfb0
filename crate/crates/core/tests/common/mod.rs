#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sun_gates_core::{Complex64, ComplexMatrix, TwoQuditOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_operator(n: usize, rng: &mut impl Rng) -> TwoQuditOperator {
    let d = n * n;
    TwoQuditOperator::new(n, ComplexMatrix::from_fn(d, d, |_, _| random_complex(rng))).unwrap()
}

pub fn random_state(dim: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// `Tr(A·B)` through the full product.
pub fn full_trace(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.matmul(b).trace()
}

/// `exp(iθ H)` for Hermitian `H` from its eigen-decomposition.
pub fn exp_i_hermitian(h: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    h.hermitian_function(|lam| Complex64::from_polar(1.0, theta * lam))
        .unwrap()
}

/// A leg reshuffle: `O'[p0 p1, p2 p3] = O[legs[perm[0]] legs[perm[1]], ...]`
/// where the output legs are `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reshuffle {
    pub name: &'static str,
    /// Which output leg (0=a, 1=b, 2=c, 3=d) fills each source slot.
    pub source: [usize; 4],
}

impl Reshuffle {
    pub fn apply(&self, op: &TwoQuditOperator) -> TwoQuditOperator {
        let n = op.n();
        TwoQuditOperator::from_index_fn(n, |a, b, c, d| {
            let legs = [a, b, c, d];
            let s = self.source.map(|k| legs[k]);
            op.element(s[0], s[1], s[2], s[3])
        })
    }
}

/// Crossing candidates with incoming leg 1 kept in place. Source indices
/// are `O[(k,l),(i,j)]` with outgoing `k`(3), `l`(4) and incoming `i`(1),
/// `j`(2). Leg 2 always crosses out; we vary which outgoing leg crosses in
/// and the slot order of the new incoming pair. The crossed operator's
/// outgoing pair is (surviving outgoing leg, crossed-out leg 2).
pub fn crossing_candidates() -> Vec<Reshuffle> {
    // For each candidate, work out which crossed-operator leg (a,b,c,d)
    // feeds source slots (k,l,i,j).
    vec![
        // out-pair (l, j), in-pair (i, k):   a=l b=j c=i d=k
        Reshuffle {
            name: "cross 3, in (1,3bar)",
            source: [3, 0, 2, 1],
        },
        // out-pair (l, j), in-pair (k, i):   a=l b=j c=k d=i
        Reshuffle {
            name: "cross 3, in (3bar,1)",
            source: [2, 0, 3, 1],
        },
        // out-pair (k, j), in-pair (i, l):   a=k b=j c=i d=l
        Reshuffle {
            name: "cross 4, in (1,4bar)",
            source: [0, 3, 2, 1],
        },
        // out-pair (k, j), in-pair (l, i):   a=k b=j c=l d=i
        Reshuffle {
            name: "cross 4, in (4bar,1)",
            source: [0, 2, 3, 1],
        },
    ]
}

/// Candidates whose action reproduces both crossing rows at dimension `n`.
pub fn select_crossing(
    s_identity: &TwoQuditOperator,
    swap: &TwoQuditOperator,
    t_identity: &TwoQuditOperator,
    u: &TwoQuditOperator,
    tol: f64,
) -> Vec<Reshuffle> {
    let half_n = Complex64::new(s_identity.n() as f64 / 2.0, 0.0);
    let row1 = t_identity.scale(half_n).plus_scaled(u, half_n);
    crossing_candidates()
        .into_iter()
        .filter(|r| r.apply(s_identity).approx_eq(&row1, tol) && r.apply(swap).approx_eq(t_identity, tol))
        .collect()
}

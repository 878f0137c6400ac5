//! Dense linear algebra over GF(2).
//!
//! Everything else in the crate is built on these kernels: Pauli operators
//! are pairs of [`BitVector`]s, tableaux and NonSingularity instances are
//! [`BitMatrix`] values, and the consistency constraints that samples place
//! on a circuit are [`AffineSubspace`]s.

mod affine;
mod matrix;
mod vector;

pub use affine::{complete_to_basis, intersect_affine, AffineSubspace, BasisCompletion, EchelonBasis};
pub use matrix::BitMatrix;
pub use vector::BitVector;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("input vectors are zero or linearly dependent")]
    DependentVectors,
    #[error("invalid bit character {0:?}, expected '0' or '1'")]
    InvalidBitString(char),
}

pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

pub fn determinant(m: &BitMatrix) -> Result<bool, F2Error> {
    m.determinant()
}

pub fn invert(m: &BitMatrix) -> Result<BitMatrix, F2Error> {
    m.invert()
}

impl BitVector {
    /// Uniformly random vector of length `len`.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self::from_bools((0..len).map(|_| rng.gen::<bool>()))
    }
}

impl BitMatrix {
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_rows(cols, (0..rows).map(|_| BitVector::random(cols, rng)).collect())
            .expect("rows have the requested length")
    }

    /// Uniformly random invertible `n × n` matrix, by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }
}

/// Every invertible `n × n` matrix, in lexicographic order of their rows
/// (row 0 most significant, each row read as the integer with bit `c` set
/// for column `c`). The first one is always the identity.
///
/// Enumerates `|GL(n, 2)|` matrices: 168 at n = 3, 20160 at n = 4.
pub fn general_linear_group(n: usize) -> Vec<BitMatrix> {
    assert!(n <= 5, "GL({n}, 2) is too large to enumerate");
    let mut out = Vec::new();
    let mut rows: Vec<BitVector> = Vec::with_capacity(n);
    fn recurse(n: usize, rows: &mut Vec<BitVector>, out: &mut Vec<BitMatrix>) {
        if rows.len() == n {
            out.push(BitMatrix::from_rows(n, rows.clone()).expect("square"));
            return;
        }
        let mut span = EchelonBasis::new(n);
        for r in rows.iter() {
            span.insert(r);
        }
        for value in 1..(1u64 << n) {
            let candidate = BitVector::from_u64(n, value);
            if !span.contains(&candidate) {
                rows.push(candidate);
                recurse(n, rows, out);
                rows.pop();
            }
        }
    }
    recurse(n, &mut rows, &mut out);
    out
}

use std::fmt;
use std::ops::{Add, Mul};

use super::{BitVector, F2Error};

/// A dense matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self, F2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(F2Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Builds an `rows × cols` matrix whose column `j` is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self, F2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            m.set_column(j, c)?;
        }
        Ok(m)
    }

    /// Parses rows written as `0`/`1` strings; convenient for fixtures.
    pub fn from_strs(rows: &[&str]) -> Result<Self, F2Error> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<BitVector>())
            .collect::<Result<Vec<_>, _>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(cols, parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn set_row(&mut self, r: usize, row: BitVector) -> Result<(), F2Error> {
        if row.len() != self.cols {
            return Err(F2Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows[r] = row;
        Ok(())
    }

    /// `row[dst] += row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst, "adding a row to itself zeroes it");
        let src_row = self.rows[src].clone();
        self.rows[dst] ^= &src_row;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn set_column(&mut self, c: usize, column: &BitVector) -> Result<(), F2Error> {
        if column.len() != self.rows.len() {
            return Err(F2Error::DimensionMismatch {
                expected: self.rows.len(),
                found: column.len(),
            });
        }
        for (r, row) in self.rows.iter_mut().enumerate() {
            row.set(c, column.get(r));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.cols)
    }

    /// Indices of columns containing at least one 1.
    pub fn nonzero_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| self.rows.iter().any(|r| r.get(c)))
            .collect()
    }

    /// Matrix product `self · rhs`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, F2Error> {
        if self.cols != rhs.rows.len() {
            return Err(F2Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows.len(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(rhs.cols);
                for k in row.ones() {
                    acc ^= &rhs.rows[k];
                }
                acc
            })
            .collect();
        Ok(Self {
            cols: rhs.cols,
            rows,
        })
    }

    /// Matrix-vector product `self · v` with `v` a column vector.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, F2Error> {
        if v.len() != self.cols {
            return Err(F2Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_bools(self.rows.iter().map(|r| r.dot(v))))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, F2Error> {
        if self.rows.len() != rhs.rows.len() || self.cols != rhs.cols {
            return Err(F2Error::ShapeMismatch {
                left: (self.rows.len(), self.cols),
                right: (rhs.rows.len(), rhs.cols),
            });
        }
        Ok(Self {
            cols: self.cols,
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row.get(c) {
                    *row ^= &pivot;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// `true` iff the matrix is invertible over GF(2).
    pub fn determinant(&self) -> Result<bool, F2Error> {
        if !self.is_square() {
            return Err(F2Error::NotSquare {
                rows: self.rows.len(),
                cols: self.cols,
            });
        }
        Ok(self.rank() == self.cols)
    }

    /// Gauss-Jordan inverse.
    pub fn invert(&self) -> Result<Self, F2Error> {
        if !self.is_square() {
            return Err(F2Error::NotSquare {
                rows: self.rows.len(),
                cols: self.cols,
            });
        }
        let n = self.cols;
        let mut left = self.rows.clone();
        let mut right = Self::identity(n).rows;
        for c in 0..n {
            let p = (c..n).find(|&r| left[r].get(c)).ok_or(F2Error::SingularMatrix)?;
            left.swap(c, p);
            right.swap(c, p);
            let (pl, pr) = (left[c].clone(), right[c].clone());
            for r in 0..n {
                if r != c && left[r].get(c) {
                    left[r] ^= &pl;
                    right[r] ^= &pr;
                }
            }
        }
        Ok(Self {
            cols: n,
            rows: right,
        })
    }

    /// Columns `indices` of `self`, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows.len(), indices.len());
        for (r, row) in self.rows.iter().enumerate() {
            for (j, &c) in indices.iter().enumerate() {
                out.rows[r].set(j, row.get(c));
            }
        }
        out
    }

    /// Row-major flattening into a single vector of length `rows · cols`.
    pub fn flatten(&self) -> BitVector {
        let mut out = BitVector::zeros(self.rows.len() * self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                out.set(r * self.cols + c, true);
            }
        }
        out
    }

    pub fn unflatten(rows: usize, cols: usize, flat: &BitVector) -> Result<Self, F2Error> {
        if flat.len() != rows * cols {
            return Err(F2Error::DimensionMismatch {
                expected: rows * cols,
                found: flat.len(),
            });
        }
        let mut m = Self::zeros(rows, cols);
        for i in flat.ones() {
            m.rows[i / cols].set(i % cols, true);
        }
        Ok(m)
    }
}

impl Mul for &BitMatrix {
    type Output = BitMatrix;

    fn mul(self, rhs: &BitMatrix) -> BitMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &BitMatrix {
    type Output = BitMatrix;

    fn add(self, rhs: &BitMatrix) -> BitMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[{}x{}]", self.rows.len(), self.cols)?;
        for row in &self.rows {
            write!(f, " {row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn determinant_examples() {
        assert!(BitMatrix::identity(4).determinant().unwrap());
        let equal_rows = BitMatrix::from_strs(&["11", "11"]).unwrap();
        assert!(!equal_rows.determinant().unwrap());
        let wide = BitMatrix::zeros(2, 3);
        assert!(matches!(
            wide.determinant(),
            Err(F2Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn upper_shear_is_self_inverse() {
        let m = BitMatrix::from_strs(&["11", "01"]).unwrap();
        let inv = m.invert().unwrap();
        assert_eq!(inv, m);
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn singular_inverse_is_rejected() {
        let m = BitMatrix::from_strs(&["11", "11"]).unwrap();
        assert_eq!(m.invert(), Err(F2Error::SingularMatrix));
        assert_eq!(BitMatrix::identity(3).invert().unwrap(), BitMatrix::identity(3));
    }

    #[test]
    fn columns_round_trip() {
        let m = BitMatrix::from_strs(&["101", "011"]).unwrap();
        assert_eq!(m.column(2).to_string(), "11");
        let rebuilt =
            BitMatrix::from_columns(2, &(0..3).map(|c| m.column(c)).collect::<Vec<_>>()).unwrap();
        assert_eq!(rebuilt, m);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.nonzero_columns(), vec![0, 1, 2]);
        assert_eq!(BitMatrix::unflatten(2, 3, &m.flatten()).unwrap(), m);
    }

    #[test]
    fn mul_vec_matches_columns() {
        let m = BitMatrix::from_strs(&["110", "011", "001"]).unwrap();
        let e1 = BitVector::unit(3, 1);
        assert_eq!(m.mul_vec(&e1).unwrap(), m.column(1));
    }
}

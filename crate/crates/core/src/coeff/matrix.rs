use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CoeffRing, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`CoeffRing`]. Differentials act on column
/// vectors, so a map `K^m -> K^n` is an `n x m` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: CoeffRing,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: &CoeffRing, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(ring: &CoeffRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_i64_rows(ring: &CoeffRing, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, ring.from_i64(*v));
            }
        }
        m
    }

    pub fn from_rows(ring: &CoeffRing, rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, ring.normalize(&v));
            }
        }
        m
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Product `self * other`; skips zero entries, since differentials are sparse.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::InvalidInput("matrices over different rings".into()));
        }
        let ring = &self.ring;
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Integer entries; panics unless every entry is integral.
    pub(crate) fn to_bigint_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_integer()).collect())
            .collect()
    }

    pub(crate) fn to_u64_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| self.ring.residue(v)).collect())
            .collect()
    }

    pub(crate) fn from_bigint_rows(ring: &CoeffRing, rows: &[Vec<BigInt>], cols: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, ring.from_bigint(v));
            }
        }
        m
    }

    pub(crate) fn from_u64_rows(ring: &CoeffRing, rows: &[Vec<u64>], cols: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_integer(BigInt::from(*v)));
            }
        }
        m
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| self.ring.fmt_scalar(v)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let z = CoeffRing::Integers;
        let a = Matrix::from_i64_rows(&z, &[vec![1, 2], vec![3, 4]]);
        let b = Matrix::from_i64_rows(&z, &[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Matrix::from_i64_rows(&z, &[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&Matrix::zeros(&z, 3, 1)).is_err());
    }

    #[test]
    fn modular_entries_reduce() {
        let r = CoeffRing::IntegersModN(4);
        let a = Matrix::from_i64_rows(&r, &[vec![2]]);
        assert!(a.mul(&a).unwrap().is_zero());
    }
}

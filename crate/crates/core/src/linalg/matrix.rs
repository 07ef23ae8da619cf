use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// Dense matrix over GF(2^k), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Build from row vectors; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Fe>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Convenience constructor from small integers, mainly for tests.
    pub fn from_u16(field: Field, rows: &[&[u16]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.iter().map(|&v| Fe(v)).collect()).collect();
        Matrix::from_rows(field, cols, &rows).expect("ragged rows")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Fe>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += f.mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| acc + f.mul(a, b))
            })
            .collect())
    }

    /// Reduced row-echelon form with zero rows removed, plus pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        if self.field.is_prime() {
            return rref_gf2(self);
        }
        let f = self.field;
        let mut rows = self.row_vecs();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = f.inv(rows[rank][col]).expect("nonzero pivot");
            for v in rows[rank].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank {
                    continue;
                }
                let c = row[col];
                if !c.is_zero() {
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x += f.mul(c, y);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        let m = Matrix::from_rows(f, self.cols, &rows).expect("consistent widths");
        (m, pivots)
    }

    /// Unique reduced row-echelon form, zero rows dropped.
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let rows: Vec<Vec<Fe>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Fe::ONE } else { Fe::ZERO }));
                row
            })
            .collect();
        let aug = Matrix::from_rows(self.field, 2 * n, &rows).expect("consistent widths");
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Bit-packed Gauss-Jordan over GF(2): each row is a run of `u64` words and
/// row operations are word-wise exclusive-or.
fn rref_gf2(m: &Matrix) -> (Matrix, Vec<usize>) {
    let words = m.cols.div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            let mut w = vec![0u64; words];
            for (c, v) in m.row(r).iter().enumerate() {
                if v.0 & 1 == 1 {
                    w[c / 64] |= 1 << (c % 64);
                }
            }
            w
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..m.cols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let mut out = Matrix::zeros(m.field, rank, m.cols);
    for (r, row) in rows.iter().take(rank).enumerate() {
        for c in 0..m.cols {
            if row[c / 64] >> (c % 64) & 1 == 1 {
                out.set(r, c, Fe::ONE);
            }
        }
    }
    (out, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::GF2
    }

    #[test]
    fn rref_zero_and_identity() {
        let z = Matrix::zeros(gf2(), 3, 4);
        assert_eq!(z.rref().rows(), 0);
        let i = Matrix::identity(gf2(), 4);
        assert_eq!(i.rref(), i);
        let f4 = Field::new(2).unwrap();
        let i4 = Matrix::identity(f4, 3);
        assert_eq!(i4.rref(), i4);
    }

    #[test]
    fn rref_small_gf2_example() {
        // [[1,1],[0,1],[1,0]] reduces to the 2x2 identity; the enumeration
        // of all row combinations gives row space {00, 11, 01, 10}.
        let m = Matrix::from_u16(gf2(), &[&[1, 1], &[0, 1], &[1, 0]]);
        assert_eq!(m.rref(), Matrix::identity(gf2(), 2));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn packed_and_generic_paths_agree() {
        // The GF(4) path only ever sees 0/1 entries here, so it must match
        // the packed GF(2) path exactly.
        let f4 = Field::new(2).unwrap();
        let rows: &[&[u16]] = &[&[1, 0, 1, 1, 0], &[0, 1, 1, 0, 1], &[1, 1, 0, 1, 1], &[0, 0, 1, 1, 1]];
        let a = Matrix::from_u16(gf2(), rows).rref();
        let b = Matrix::from_u16(f4, rows).rref();
        assert_eq!(a.row_vecs(), b.row_vecs());
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::new(4).unwrap();
        let m = Matrix::from_u16(f, &[&[1, 3, 0], &[0, 7, 2], &[5, 0, 1]]);
        if let Some(inv) = m.inverse() {
            assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 3));
        } else {
            assert!(m.rank() < 3);
        }
        let singular = Matrix::from_u16(gf2(), &[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_none());
        assert_eq!(Matrix::identity(gf2(), 0).inverse(), Some(Matrix::identity(gf2(), 0)));
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let mut m = Matrix::zeros(gf2(), 2, 130);
        m.set(0, 3, Fe::ONE);
        m.set(0, 129, Fe::ONE);
        m.set(1, 129, Fe::ONE);
        let r = m.rref();
        assert_eq!(r.rows(), 2);
        assert_eq!(r.get(0, 129), Fe::ZERO);
        assert_eq!(r.get(1, 129), Fe::ONE);
    }
}

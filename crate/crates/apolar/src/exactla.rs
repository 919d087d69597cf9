//! Exact rational linear algebra on small dense matrices.
//!
//! Rank and determinant run fraction-free (Bareiss) on a row-scaled integer
//! copy, pivoting on the first nonzero entry; kernel, inverse, and solve
//! use exact Gauss–Jordan over the rationals. Everything is exact — there
//! is no pivot-magnitude heuristic to apply.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    NotSquare { rows: usize, cols: usize },
    Singular { rank: usize },
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}×{cols}")
            }
            LinAlgError::Singular { rank } => {
                write!(f, "matrix is singular (rank {rank})")
            }
            LinAlgError::DimensionMismatch { left, right } => {
                write!(
                    f,
                    "dimension mismatch: {}×{} vs {}×{}",
                    left.0, left.1, right.0, right.1
                )
            }
        }
    }
}

impl std::error::Error for LinAlgError {}

/// Dense matrix of exact rationals. Dimensions are fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        RationalMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> RationalMatrix {
        assert!(!rows.is_empty(), "matrix must have at least one row");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix must have at least one column");
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in matrix construction"
        );
        RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::scalar::scalar(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// `Some(c)` when the matrix equals c·I, including the scale c = 0.
    pub fn scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        let c = self.at(0, 0).clone();
        for r in 0..self.rows {
            for col in 0..self.cols {
                let expected = if r == col { &c } else { &Scalar::zero() };
                if self.at(r, col) != expected {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Row-scaled integer copy: each row is multiplied by the lcm of its
    /// denominators. Returns the integer matrix and the per-row scales.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut lcm = BigInt::one();
            for c in 0..self.cols {
                lcm = lcm.lcm(self.at(r, c).denom());
            }
            let row = (0..self.cols)
                .map(|c| {
                    let s = self.at(r, c);
                    s.numer() * (&lcm / s.denom())
                })
                .collect();
            out.push(row);
            scales.push(lcm);
        }
        (out, scales)
    }

    /// Fraction-free (Bareiss) forward elimination on the row-scaled
    /// integer copy. Returns (rank, sign, last pivot), where the last
    /// pivot is the determinant of the scaled matrix when it is square
    /// and of full rank.
    fn bareiss(&self) -> (usize, i32, BigInt, Vec<BigInt>) {
        let (mut m, scales) = self.integer_rows();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        let mut rank = 0usize;
        let mut last_pivot = BigInt::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            if p != rank {
                m.swap(p, rank);
                sign = -sign;
            }
            let pivot = m[rank][col].clone();
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let numer = &pivot * &m[r][c] - &m[r][col] * &m[rank][c];
                    // exact by the Bareiss identity
                    m[r][c] = numer / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = pivot.clone();
            last_pivot = pivot;
            rank += 1;
        }
        (rank, sign, last_pivot, scales)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    /// Determinant via fraction-free elimination.
    pub fn det(&self) -> Result<Scalar, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (rank, sign, last_pivot, scales) = self.bareiss();
        if rank < self.rows {
            return Ok(Scalar::zero());
        }
        let scale: BigInt = scales.into_iter().product();
        let mut det = Scalar::new(last_pivot, scale);
        if sign < 0 {
            det = -det;
        }
        Ok(det)
    }

    /// Reduced row echelon form of `self` (optionally augmented with a
    /// right-hand side column). Returns (rref, pivot columns).
    fn rref(&self, rhs: Option<&[Scalar]>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let aug = rhs.is_some() as usize;
        let width = self.cols + aug;
        let mut m: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row: Vec<Scalar> = self.row(r).to_vec();
                if let Some(b) = rhs {
                    row.push(b[r].clone());
                }
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..width {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(p, rank);
            let inv = m[rank][col].recip();
            for c in col..width {
                let v = &m[rank][c] * &inv;
                m[rank][c] = v;
            }
            for r in 0..self.rows {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..width {
                        let v = &m[r][c] - &factor * &m[rank][c];
                        m[r][c] = v;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (m, pivots)
    }

    /// Basis of the null space, each vector normalized so its first
    /// nonzero entry is 1. Empty when the kernel is trivial.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (m, pivots) = self.rref(None);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            let lead = v
                .iter()
                .find(|s| !s.is_zero())
                .expect("kernel vector is nonzero")
                .clone();
            for s in &mut v {
                *s = &*s / &lead;
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse; reports the computed rank when singular.
    pub fn inverse(&self) -> Result<RationalMatrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row
            })
            .collect();
        let mut rank = 0usize;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(p, rank);
            let inv = m[rank][col].recip();
            for c in 0..2 * n {
                let v = &m[rank][c] * &inv;
                m[rank][c] = v;
            }
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in 0..2 * n {
                        let v = &m[r][c] - &factor * &m[rank][c];
                        m[r][c] = v;
                    }
                }
            }
            rank += 1;
        }
        if rank < n {
            return Err(LinAlgError::Singular { rank });
        }
        Ok(RationalMatrix::from_rows(
            m.into_iter().map(|row| row[n..].to_vec()).collect(),
        ))
    }

    /// Any exact solution of `self · x = b`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (b.len(), 1),
            });
        }
        let (m, pivots) = self.rref(Some(b));
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = m[row][self.cols].clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", crate::scalar::format_scalar(self.at(r, c)))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Cofactor-expansion determinant, used as an independent oracle in tests.
pub fn det_by_cofactors(m: &RationalMatrix) -> Result<Scalar, LinAlgError> {
    if m.rows() != m.cols() {
        return Err(LinAlgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    // Recursive expansion along the first row.
    fn expand(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Scalar {
        if rows.len() == 1 {
            return m.at(rows[0], cols[0]).clone();
        }
        let mut acc = Scalar::zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = m.at(rows[0], c);
            if a.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&cc| cc != c)
                .collect();
            let minor = expand(m, &rows[1..], &sub_cols);
            let signed = if k % 2 == 0 { a * &minor } else { -(a * &minor) };
            acc += signed;
        }
        acc
    }
    let rows: Vec<usize> = (0..m.rows()).collect();
    let cols: Vec<usize> = (0..m.cols()).collect();
    Ok(expand(m, &rows, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, scalar};

    #[test]
    fn rank_identity() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = RationalMatrix::from_i64(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![scalar(1), scalar(-1)]]);
    }

    #[test]
    fn worked_inverse() {
        let m = RationalMatrix::from_i64(&[&[12, 6, 0], &[12, 0, 12], &[0, 6, 12]]);
        let inv = m.inverse().unwrap();
        let expected = RationalMatrix::from_rows(vec![
            vec![ratio(1, 24), ratio(1, 24), ratio(-1, 24)],
            vec![ratio(1, 12), ratio(-1, 12), ratio(1, 12)],
            vec![ratio(-1, 24), ratio(1, 24), ratio(1, 24)],
        ]);
        assert_eq!(inv, expected);
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert_eq!(m.det().unwrap(), scalar(-1728));
    }

    #[test]
    fn inverse_of_singular_reports_rank() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(LinAlgError::Singular { rank: 1 }));
        assert_eq!(m.det().unwrap(), scalar(0));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[scalar(3), scalar(1)]).unwrap().unwrap();
        assert_eq!(x, vec![scalar(2), scalar(1)]);
        let singular = RationalMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(singular.solve(&[scalar(0), scalar(1)]).unwrap().is_none());
        assert!(singular.solve(&[scalar(1), scalar(2)]).unwrap().is_some());
    }

    #[test]
    fn rank_plus_nullity() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn det_with_rational_entries() {
        let m = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 5), ratio(1, 7)],
        ]);
        let expected = ratio(1, 14) - ratio(1, 15);
        assert_eq!(m.det().unwrap(), expected);
        assert_eq!(det_by_cofactors(&m).unwrap(), expected);
    }
}

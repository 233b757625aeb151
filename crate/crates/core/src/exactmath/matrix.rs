use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::interval::Interval;
use super::rational::Rational;
use super::scalar::{Scalar, Sign};
use crate::{Error, Result};

/// Largest square size accepted by [`Matrix::det`] and [`Matrix::solve`].
pub const DEFAULT_DET_CAP: usize = 16;

/// Laplace expansion is used as a pivot-free fallback for interval input up to
/// this size.
const LAPLACE_FALLBACK_MAX: usize = 7;

/// Field-like element usable in the dense eliminations below.
pub trait Entry: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division; fails when the divisor is (or may be) zero.
    fn div(&self, other: &Self) -> Result<Self>;
    /// `None` when the sign is not certified.
    fn certain_sign(&self) -> Option<Sign>;
}

impl Entry for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            Err(Error::SingularMatrix)
        } else {
            Ok(self / other)
        }
    }
    fn certain_sign(&self) -> Option<Sign> {
        Some(Sign::of(self))
    }
}

impl Entry for Interval {
    fn zero() -> Self {
        Interval::from_rational(&<Rational as Zero>::zero(), 1)
    }
    fn one() -> Self {
        Interval::from_rational(&<Rational as One>::one(), 1)
    }
    fn add(&self, other: &Self) -> Self {
        Interval::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Interval::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Interval::mul(self, other)
    }
    fn div(&self, other: &Self) -> Result<Self> {
        Interval::div(self, other)
    }
    fn certain_sign(&self) -> Option<Sign> {
        self.sign()
    }
}

impl Entry for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::Exact(<Rational as One>::one())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Result<Self> {
        self.checked_div(other)
    }
    fn certain_sign(&self) -> Option<Sign> {
        self.sign().ok()
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Submatrix on the given 0-based column indices, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        Ok(Matrix::from_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }
}

impl<T: Entry> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    /// `v^T M`, i.e. the dot product of `v` with every column.
    pub fn vec_mul(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        Ok((0..self.cols)
            .map(|j| {
                (0..self.rows).fold(T::zero(), |acc, i| acc.add(&v[i].mul(self.get(i, j))))
            })
            .collect())
    }

    pub fn det(&self) -> Result<T> {
        self.det_with_cap(DEFAULT_DET_CAP)
    }

    /// Determinant by fraction-free (Bareiss) elimination. Exact for rational
    /// entries, an enclosure for interval entries.
    pub fn det_with_cap(&self, cap: usize) -> Result<T> {
        self.check_square(cap)?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = T::one();
        for p in 0..n {
            match find_pivot(&a, p, p) {
                Pivot::Row(r) => {
                    if r != p {
                        a.swap(r, p);
                        negate = !negate;
                    }
                }
                Pivot::AllZero => return Ok(T::zero()),
                Pivot::Uncertain => return self.laplace_fallback(),
            }
            for i in p + 1..n {
                for j in p + 1..n {
                    let v = a[i][j].mul(&a[p][p]).sub(&a[i][p].mul(&a[p][j]));
                    a[i][j] = v.div(&prev)?;
                }
                a[i][p] = T::zero();
            }
            prev = a[p][p].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { T::zero().sub(&d) } else { d })
    }

    fn laplace_fallback(&self) -> Result<T> {
        if self.rows > LAPLACE_FALLBACK_MAX {
            return Err(Error::IndeterminateSign { bits: 0 });
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(laplace(self, &rows, &cols))
    }

    fn check_square(&self, cap: usize) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows > cap {
            return Err(Error::MatrixTooLarge { size: self.rows, cap });
        }
        Ok(())
    }

    /// Solves `self * x = v` by fraction-free elimination and back
    /// substitution.
    pub fn solve(&self, v: &[T]) -> Result<Vec<T>> {
        self.check_square(DEFAULT_DET_CAP)?;
        let n = self.rows;
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a {n}x{n} system",
                v.len()
            )));
        }
        let mut a: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(v[i].clone());
                row
            })
            .collect();
        let mut prev = T::one();
        for p in 0..n {
            match find_pivot(&a, p, p) {
                Pivot::Row(r) => a.swap(r, p),
                Pivot::AllZero => return Err(Error::SingularMatrix),
                Pivot::Uncertain => return Err(Error::IndeterminateSign { bits: 0 }),
            }
            for i in p + 1..n {
                for j in p + 1..=n {
                    let val = a[i][j].mul(&a[p][p]).sub(&a[i][p].mul(&a[p][j]));
                    a[i][j] = val.div(&prev)?;
                }
                a[i][p] = T::zero();
            }
            prev = a[p][p].clone();
        }
        let mut x = alloc::vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut acc = a[i][n].clone();
            for j in i + 1..n {
                acc = acc.sub(&a[i][j].mul(&x[j]));
            }
            x[i] = acc.div(&a[i][i])?;
        }
        Ok(x)
    }

    /// Rank by fraction-free elimination. Interval input whose pivots cannot
    /// be certified yields [`Error::IndeterminateSign`].
    pub fn rank(&self) -> Result<usize> {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = T::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            match find_pivot(&a, rank, col) {
                Pivot::Row(r) => a.swap(r, rank),
                Pivot::AllZero => continue,
                Pivot::Uncertain => return Err(Error::IndeterminateSign { bits: 0 }),
            }
            for i in rank + 1..m {
                for j in col + 1..n {
                    let v = a[i][j].mul(&a[rank][col]).sub(&a[i][col].mul(&a[rank][j]));
                    a[i][j] = v.div(&prev)?;
                }
                a[i][col] = T::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        Ok(rank)
    }
}

fn dot<T: Entry>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

enum Pivot {
    Row(usize),
    AllZero,
    Uncertain,
}

fn find_pivot<T: Entry>(a: &[Vec<T>], from_row: usize, col: usize) -> Pivot {
    let mut uncertain = false;
    for (r, row) in a.iter().enumerate().skip(from_row) {
        match row[col].certain_sign() {
            Some(Sign::Positive) | Some(Sign::Negative) => return Pivot::Row(r),
            Some(Sign::Zero) => {}
            None => uncertain = true,
        }
    }
    if uncertain {
        Pivot::Uncertain
    } else {
        Pivot::AllZero
    }
}

fn laplace<T: Entry>(m: &Matrix<T>, rows: &[usize], cols: &[usize]) -> T {
    if rows.is_empty() {
        return T::one();
    }
    let r = rows[0];
    let rest: Vec<usize> = rows[1..].to_vec();
    let mut acc = T::zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = m.get(r, c);
        if entry.certain_sign() == Some(Sign::Zero) {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.mul(&laplace(m, &rest, &sub_cols));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

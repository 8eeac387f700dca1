//! Exact rational vectors and small dense matrices.
//!
//! Everything in the library is computed over `Ratio<i64>`; no floating point
//! is used outside of SVG coordinate output.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A point of the ambient rational space. Equality is exact and coordinatewise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RationalVector(pub Vec<Q>);

impl RationalVector {
    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Q::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RationalVector(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Q::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    /// Standard inner product; panics on dimension mismatch (internal use).
    pub fn dot(&self, other: &RationalVector) -> Q {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Q::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn checked_dot(&self, other: &RationalVector) -> Result<Q> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self.dot(other))
    }

    pub fn scale(&self, c: Q) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: Q, other: &RationalVector) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| {
                if x.is_integer() {
                    Some(x.to_integer())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_q(x))?;
        }
        write!(f, ")")
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Row-major dense rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RationalVector]) -> Self {
        let rows = cols.first().map_or(0, |c| c.dim());
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.data[i * cols.len() + j] = c.0[i];
            }
        }
        m
    }

    pub fn from_rows(rows: &[RationalVector]) -> Self {
        let cols = rows.first().map_or(0, |r| r.dim());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            data.extend_from_slice(&r.0);
        }
        QMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        debug_assert_eq!(self.cols, v.dim());
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Q::zero();
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() && !v.0[j].is_zero() {
                    acc += a * v.0[j];
                }
            }
            out.push(acc);
        }
        RationalVector(out)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut m = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        m.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.data[col * n + j] /= p;
                inv.data[col * n + j] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let av = a.data[col * n + j];
                    let iv = inv.data[col * n + j];
                    a.data[r * n + j] -= f * av;
                    inv.data[r * n + j] -= f * iv;
                }
            }
        }
        Some(inv)
    }

    /// Indices of a maximal linearly independent set of rows, chosen greedily
    /// from the top.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis: Vec<RationalVector> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut chosen = Vec::new();
        for i in 0..self.rows {
            let mut r = self.row(i);
            for (b, &p) in basis.iter().zip(&pivots) {
                let f = r.0[p];
                if !f.is_zero() {
                    r = r.add_scaled(-f, b);
                }
            }
            if let Some(p) = r.0.iter().position(|x| !x.is_zero()) {
                let lead = r.0[p];
                let r = r.scale(lead.recip());
                // keep the reduced basis echelon-consistent
                for (b, &bp) in basis.iter_mut().zip(&pivots) {
                    let f = b.0[p];
                    if !f.is_zero() {
                        *b = b.add_scaled(-f, &r);
                    }
                    debug_assert!(!b.0[bp].is_zero());
                }
                basis.push(r);
                pivots.push(p);
                chosen.push(i);
            }
        }
        chosen
    }

    pub fn rank(&self) -> usize {
        self.independent_rows().len()
    }
}

/// Floor of a rational as an integer.
pub fn floor_q(x: &Q) -> i64 {
    let (n, d) = (*x.numer(), *x.denom());
    Integer::div_floor(&n, &d)
}

pub fn ceil_q(x: &Q) -> i64 {
    let (n, d) = (*x.numer(), *x.denom());
    Integer::div_ceil(&n, &d)
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_cartan_a2() {
        let m = QMatrix {
            rows: 2,
            cols: 2,
            data: vec![q(2), q(-1), q(-1), q(2)],
        };
        let inv = m.inverse().unwrap();
        assert_eq!(inv.data, vec![qf(2, 3), qf(1, 3), qf(1, 3), qf(2, 3)]);
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = QMatrix {
            rows: 2,
            cols: 2,
            data: vec![q(1), q(2), q(2), q(4)],
        };
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn floors_and_ceils() {
        assert_eq!(floor_q(&qf(-1, 2)), -1);
        assert_eq!(floor_q(&qf(3, 2)), 1);
        assert_eq!(ceil_q(&qf(-1, 2)), 0);
        assert_eq!(ceil_q(&q(2)), 2);
    }

    #[test]
    fn independent_rows_skips_dependent() {
        let m = QMatrix::from_rows(&[
            RationalVector::from_ints(&[1, 1, 0]),
            RationalVector::from_ints(&[2, 2, 0]),
            RationalVector::from_ints(&[0, 1, 1]),
            RationalVector::from_ints(&[1, 2, 1]),
        ]);
        assert_eq!(m.independent_rows(), vec![0, 2]);
    }
}

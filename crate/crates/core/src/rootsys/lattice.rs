//! Coordinates with respect to a linearly independent family, and integer
//! kernels.

use num_integer::Integer;
use num_traits::Zero;

use crate::rational::{QMatrix, RationalVector, Q};

/// Solves `v = Σ c_j b_j` for a fixed linearly independent family `b_j`.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Vec<RationalVector>,
    rows: Vec<usize>,
    inverse: QMatrix,
}

impl Coordinates {
    /// Returns `None` when the family is dependent.
    pub fn new(basis: &[RationalVector]) -> Option<Self> {
        if basis.is_empty() {
            return Some(Coordinates {
                basis: Vec::new(),
                rows: Vec::new(),
                inverse: QMatrix::zeros(0, 0),
            });
        }
        let m = QMatrix::from_columns(basis);
        let rows = m.independent_rows();
        if rows.len() != basis.len() {
            return None;
        }
        let mut square = QMatrix::zeros(rows.len(), rows.len());
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..basis.len() {
                square.set(i, j, m.get(r, j));
            }
        }
        let inverse = square.inverse()?;
        Some(Coordinates {
            basis: basis.to_vec(),
            rows,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    /// Coefficients of `v`, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &RationalVector) -> Option<Vec<Q>> {
        let c = self.solve_unchecked(v);
        if self.combine(&c) == *v {
            Some(c)
        } else {
            None
        }
    }

    /// Coefficients assuming `v` lies in the span.
    pub fn solve_unchecked(&self, v: &RationalVector) -> Vec<Q> {
        let n = self.rows.len();
        let mut out = vec![Q::zero(); n];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = Q::zero();
            for (j, &r) in self.rows.iter().enumerate() {
                let a = self.inverse.get(i, j);
                if !a.is_zero() && !v.0[r].is_zero() {
                    acc += a * v.0[r];
                }
            }
            *o = acc;
        }
        out
    }

    /// Integer coefficients, or `None` if outside the lattice.
    pub fn solve_integral(&self, v: &RationalVector) -> Option<Vec<i64>> {
        let c = self.solve(v)?;
        c.iter()
            .map(|x| {
                if x.is_integer() {
                    Some(x.to_integer())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn combine(&self, c: &[Q]) -> RationalVector {
        let dim = self.basis.first().map_or(0, |b| b.dim());
        let mut v = RationalVector::zeros(dim);
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                v = v.add_scaled(*x, b);
            }
        }
        v
    }

    pub fn combine_int(&self, c: &[i64]) -> RationalVector {
        let dim = self.basis.first().map_or(0, |b| b.dim());
        let mut v = RationalVector::zeros(dim);
        for (b, &x) in self.basis.iter().zip(c) {
            if x != 0 {
                v = v.add_scaled(Q::from_integer(x), b);
            }
        }
        v
    }
}

/// Basis of the rational null space `{x : M x = 0}` of a matrix given by rows.
pub fn rational_kernel(rows: &[RationalVector], dim: usize) -> Vec<RationalVector> {
    let mut m: Vec<RationalVector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i].0[col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r].0[col];
        m[r] = m[r].scale(lead.recip());
        for i in 0..m.len() {
            if i != r {
                let f = m[i].0[col];
                if !f.is_zero() {
                    let pr = m[r].clone();
                    m[i] = m[i].add_scaled(-f, &pr);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut out = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = RationalVector::zeros(dim);
        v.0[free] = Q::from_integer(1);
        for (i, &p) in pivots.iter().enumerate() {
            v.0[p] = -m[i].0[free];
        }
        out.push(v);
    }
    out
}

/// Z-basis of `{x ∈ Z^n : M x = 0}` for an integer matrix given by rows.
///
/// Column-style Hermite reduction: unimodular column operations bring `M` to
/// echelon form; the transformed unit vectors of the vanishing columns span
/// the kernel.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    // u[j] is the j-th column of the transform, stored as a vector.
    let mut col = 0;
    for row in 0..m.len() {
        if col >= n {
            break;
        }
        loop {
            // pick the nonzero entry of smallest magnitude among columns >= col
            let mut best: Option<usize> = None;
            for j in col..n {
                if m[row][j] != 0 && best.is_none_or(|b| m[row][j].abs() < m[row][b].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            swap_cols(&mut m, &mut u, col, b);
            let mut done = true;
            for j in col + 1..n {
                let a = m[row][j];
                if a != 0 {
                    let q = Integer::div_floor(&a, &m[row][col]);
                    add_col(&mut m, &mut u, j, col, -q);
                    if m[row][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                col += 1;
                break;
            }
        }
    }
    (col..n)
        .map(|j| u[j].iter().map(|&x| x as i64).collect())
        .collect()
}

fn swap_cols(m: &mut [Vec<i128>], u: &mut [Vec<i128>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in m.iter_mut() {
        r.swap(a, b);
    }
    u.swap(a, b);
}

/// column `dst += f * column src`
fn add_col(m: &mut [Vec<i128>], u: &mut [Vec<i128>], dst: usize, src: usize, f: i128) {
    for r in m.iter_mut() {
        r[dst] += f * r[src];
    }
    let s = u[src].clone();
    for (d, x) in u[dst].iter_mut().zip(s) {
        *d += f * x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn solve_in_subspace() {
        let c = Coordinates::new(&[
            RationalVector::from_ints(&[1, -1, 0]),
            RationalVector::from_ints(&[0, 1, -1]),
        ])
        .unwrap();
        assert_eq!(
            c.solve(&RationalVector::from_ints(&[2, 0, -2])),
            Some(vec![q(2), q(2)])
        );
        assert_eq!(c.solve(&RationalVector::from_ints(&[1, 0, 0])), None);
    }

    #[test]
    fn kernel_of_sum_constraint() {
        // x1 + x4 = x2 + x3
        let k = integer_kernel(&[vec![1, -1, -1, 1]], 4);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert_eq!(v[0] - v[1] - v[2] + v[3], 0);
        }
        // unimodularity: the kernel basis generates (1,1,0,0), (1,0,1,0), (0,0,1,1)
        let c = Coordinates::new(
            &k.iter()
                .map(|v| RationalVector::from_ints(v))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        for t in [[1, 1, 0, 0], [1, 0, 1, 0], [0, 0, 1, 1], [-1, 0, 0, 1]] {
            assert!(c.solve_integral(&RationalVector::from_ints(&t)).is_some());
        }
    }

    #[test]
    fn rational_kernel_dimension() {
        let k = rational_kernel(&[RationalVector::from_ints(&[1, 1, 1])], 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!(v.dot(&RationalVector::from_ints(&[1, 1, 1])), q(0));
        }
    }
}

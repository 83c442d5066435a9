//! Dense rational matrices with exact rank and nullspace computation.
//!
//! Elimination is fraction-free (Bareiss): each row is first scaled to
//! integers, and every update `(p·a_ij - a_ic·a_rj) / prev` divides exactly,
//! which keeps entries at the size of the underlying minors. The pivot for a
//! column is the lowest-index remaining row with a nonzero entry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

mod modular;

pub use modular::nullspace_multimodular;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_integer_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(BigRational::from_integer).collect())
                .collect(),
        )
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_integer_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![ExactScalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = ExactScalar::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `m·x` for an integer vector `x`.
    pub fn mul_integer_vec(&self, x: &[BigInt]) -> Vec<ExactScalar> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(_, xi)| !xi.is_zero())
                    .fold(ExactScalar::zero(), |acc, (a, xi)| acc + a * xi)
            })
            .collect()
    }

    /// Each row multiplied by the lcm of its denominators.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }
}

/// Row echelon form of an integer matrix, in place. Returns the pivot
/// column of each nonzero row, in row order.
pub(crate) fn bareiss_echelon(a: &mut [Vec<BigInt>]) -> Vec<usize> {
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..n_cols {
                let updated = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { updated } else { updated / &prev };
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut a = m.integer_rows();
    bareiss_echelon(&mut a).len()
}

/// Scales a rational vector to coprime integers whose first nonzero entry is
/// positive.
pub fn normalize_integer(x: &[ExactScalar]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    let negative = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
    for v in ints.iter_mut() {
        *v = &*v / &g;
        if negative {
            *v = -&*v;
        }
    }
    ints
}

/// Basis of `{x : m·x = 0}`, one vector per non-pivot column `f` (with
/// `x_f` set and the other non-pivot coordinates zero), each normalized by
/// [`normalize_integer`]. Ordered by `f`.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let mut a = m.integer_rows();
    let pivots = bareiss_echelon(&mut a);
    nullspace_from_echelon(&a, &pivots, m.cols)
}

pub(crate) fn nullspace_from_echelon(a: &[Vec<BigInt>], pivots: &[usize], n_cols: usize) -> Vec<Vec<BigInt>> {
    let mut is_pivot = vec![false; n_cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..n_cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![ExactScalar::zero(); n_cols];
            x[f] = ExactScalar::one();
            for (i, &p) in pivots.iter().enumerate().rev() {
                let s = (p + 1..n_cols)
                    .filter(|&j| !x[j].is_zero() && !a[i][j].is_zero())
                    .fold(ExactScalar::zero(), |acc, j| acc + &x[j] * &a[i][j]);
                x[p] = -s / BigRational::from_integer(a[i][p].clone());
            }
            normalize_integer(&x)
        })
        .collect()
}

//! Fraction-free (Bareiss) elimination over ℤ[i].

use num::BigRational;

use crate::error::{Error, Result};
use crate::scalar::GaussRat;

use super::gauss_int::GaussInt;
use super::matrix::ExactMatrix;

pub(crate) struct Reduced {
    /// Echelon rows; row `k` has its pivot at `pivot_cols[k]`.
    rows: Vec<Vec<GaussInt>>,
    pub pivot_cols: Vec<usize>,
    cols: usize,
}

/// Row-scales to ℤ[i] and runs Bareiss elimination with leftmost pivot
/// columns; within a column the entry of largest norm is taken (ties go to
/// the lowest row).
pub(crate) fn reduce(m: &ExactMatrix) -> Result<Reduced> {
    let (rows, cols) = (m.rows(), m.cols());
    let zero = GaussInt::new(0.into(), 0.into());
    let mut a = vec![vec![zero.clone(); cols]; rows];
    for (c, col) in m.integer_columns().into_iter().enumerate() {
        for (r, v) in col {
            a[r][c] = v;
        }
    }
    let mut prev = GaussInt::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .max_by(|&i, &j| a[i][c].abs_key().cmp(&a[j][c].abs_key()).then(j.cmp(&i)))
        else {
            continue;
        };
        a.swap(r, piv);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = &(&pivot_row[c] * &row[j]) - &(&lead * &pivot_row[j]);
                row[j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Internal("inexact Bareiss division".into())
                })?;
            }
            row[c] = zero.clone();
        }
        prev = top[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    a.truncate(r);
    Ok(Reduced {
        rows: a,
        pivot_cols,
        cols,
    })
}

fn to_rat(z: &GaussInt) -> GaussRat {
    GaussRat::new(
        BigRational::from_integer(z.re.clone()),
        BigRational::from_integer(z.im.clone()),
    )
}

impl Reduced {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Canonical kernel vector for free column `free`: 1 there, 0 at other
    /// free columns, pivots by back-substitution.
    pub fn kernel_vector(&self, free: usize) -> Vec<GaussRat> {
        let mut v = vec![GaussRat::zero(); self.cols];
        v[free] = GaussRat::one();
        for (k, &pc) in self.pivot_cols.iter().enumerate().rev() {
            if pc > free {
                continue;
            }
            let row = &self.rows[k];
            let mut acc = GaussRat::zero();
            for j in pc + 1..=free {
                if !row[j].is_zero() && !v[j].is_zero() {
                    acc = &acc + &(&to_rat(&row[j]) * &v[j]);
                }
            }
            let inv = to_rat(&row[pc]).inv().expect("nonzero pivot");
            v[pc] = &(-&acc) * &inv;
        }
        v
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }
}

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One};

use crate::error::{Error, Result};
use crate::scalar::{GaussRat, Scalar, ScalarMode};

use super::gauss_int::GaussInt;

/// Sparse exact matrix over ℚ(i), stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, GaussRat)>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from sparse columns; duplicate row entries are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, GaussRat)>>) -> Result<Self> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for mut col in columns {
            col.sort_by_key(|(r, _)| *r);
            let mut merged: Vec<(usize, GaussRat)> = Vec::with_capacity(col.len());
            for (r, v) in col {
                if r >= rows {
                    return Err(Error::Internal(format!("row {r} out of range {rows}")));
                }
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv = &*lv + &v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            out.push(merged);
        }
        Ok(ExactMatrix {
            rows,
            cols,
            columns: out,
        })
    }

    pub fn from_dense(rows: &[Vec<GaussRat>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Precondition("ragged matrix".into()));
        }
        let columns = (0..ncols)
            .map(|c| {
                rows.iter()
                    .enumerate()
                    .map(|(r, row)| (r, row[c].clone()))
                    .collect()
            })
            .collect();
        Self::from_columns(nrows, columns)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<GaussRat>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect())
            .collect();
        Self::from_dense(&dense).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, GaussRat)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> GaussRat {
        self.columns[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| GaussRat::zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_real(&self) -> bool {
        self.columns.iter().flatten().all(|(_, v)| v.is_real())
    }

    pub fn mul_vec(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![GaussRat::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.columns[c] {
                out[*r] = &out[*r] + &(a * x);
            }
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// `out[r][c] = self[row_perm[r]][col_perm[c]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> ExactMatrix {
        let mut inv_row = vec![0; self.rows];
        for (new, &old) in row_perm.iter().enumerate() {
            inv_row[old] = new;
        }
        let columns = col_perm
            .iter()
            .map(|&old| {
                let mut col: Vec<_> = self.columns[old]
                    .iter()
                    .map(|(r, v)| (inv_row[*r], v.clone()))
                    .collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    /// Columns with every row rescaled by the lcm of its denominators, so
    /// all entries are Gaussian integers. Row scaling leaves the kernel and
    /// the rank unchanged.
    pub(crate) fn integer_columns(&self) -> Vec<Vec<(usize, GaussInt)>> {
        let mut lcm = vec![BigInt::one(); self.rows];
        for col in &self.columns {
            for (r, v) in col {
                lcm[*r] = lcm[*r].lcm(v.re.denom()).lcm(v.im.denom());
            }
        }
        self.columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, v)| {
                        let l = BigRational::from_integer(lcm[*r].clone());
                        let re = (&v.re * &l).to_integer();
                        let im = (&v.im * &l).to_integer();
                        (*r, GaussInt::new(re, im))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Dense complex matrix used for the floating providers.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix(pub DMatrix<Complex64>);

/// A matrix in one scalar mode.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarMatrix {
    Exact(ExactMatrix),
    Float(FloatMatrix),
}

impl ScalarMatrix {
    /// Builds a matrix from sparse columns of scalars in `mode`.
    pub fn from_columns(
        mode: ScalarMode,
        rows: usize,
        columns: Vec<Vec<(usize, Scalar)>>,
    ) -> Result<Self> {
        match mode {
            ScalarMode::Exact => {
                let cols = columns
                    .into_iter()
                    .map(|col| {
                        col.into_iter()
                            .map(|(r, s)| match s {
                                Scalar::Exact(q) => Ok((r, q)),
                                Scalar::Float(_) => Err(Error::MixedModes),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ScalarMatrix::Exact(ExactMatrix::from_columns(rows, cols)?))
            }
            ScalarMode::Float => {
                let mut m = DMatrix::<Complex64>::zeros(rows, columns.len());
                for (c, col) in columns.into_iter().enumerate() {
                    for (r, s) in col {
                        if r >= rows {
                            return Err(Error::Internal(format!("row {r} out of range {rows}")));
                        }
                        match s {
                            Scalar::Float(z) => m[(r, c)] += z,
                            Scalar::Exact(_) => return Err(Error::MixedModes),
                        }
                    }
                }
                Ok(ScalarMatrix::Float(FloatMatrix(m)))
            }
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            ScalarMatrix::Exact(_) => ScalarMode::Exact,
            ScalarMatrix::Float(_) => ScalarMode::Float,
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            ScalarMatrix::Exact(m) => m.rows(),
            ScalarMatrix::Float(m) => m.0.nrows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            ScalarMatrix::Exact(m) => m.cols(),
            ScalarMatrix::Float(m) => m.0.ncols(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self {
            ScalarMatrix::Exact(m) => Scalar::Exact(m.get(r, c)),
            ScalarMatrix::Float(m) => Scalar::Float(m.0[(r, c)]),
        }
    }

    /// Dense copy with complex entries, for diagnostics and float checks.
    pub fn to_complex(&self) -> DMatrix<Complex64> {
        match self {
            ScalarMatrix::Float(m) => m.0.clone(),
            ScalarMatrix::Exact(m) => {
                let mut out = DMatrix::zeros(m.rows(), m.cols());
                for c in 0..m.cols() {
                    for (r, v) in m.column(c) {
                        out[(*r, c)] = v.to_complex();
                    }
                }
                out
            }
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        match self {
            ScalarMatrix::Exact(m) => {
                let xs = v
                    .iter()
                    .map(|s| s.as_exact().cloned().ok_or(Error::MixedModes))
                    .collect::<Result<Vec<_>>>()?;
                Ok(m.mul_vec(&xs).into_iter().map(Scalar::Exact).collect())
            }
            ScalarMatrix::Float(m) => {
                let xs = nalgebra::DVector::from_iterator(
                    v.len(),
                    v.iter().map(|s| match s {
                        Scalar::Float(z) => *z,
                        Scalar::Exact(q) => q.to_complex(),
                    }),
                );
                let y = &m.0 * xs;
                Ok(y.iter().map(|z| Scalar::Float(*z)).collect())
            }
        }
    }
}

impl From<ExactMatrix> for ScalarMatrix {
    fn from(m: ExactMatrix) -> Self {
        ScalarMatrix::Exact(m)
    }
}

impl From<DMatrix<Complex64>> for ScalarMatrix {
    fn from(m: DMatrix<Complex64>) -> Self {
        ScalarMatrix::Float(FloatMatrix(m))
    }
}

use crate::error::{Error, Result};
use crate::fusion::IrrepSet;

use super::{AlgebraElement, PolAlgebra};

/// Square matrix over Pol(𝔾), row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixOverPol {
    algebra: PolAlgebra,
    n: usize,
    entries: Vec<AlgebraElement>,
}

impl MatrixOverPol {
    pub fn new(algebra: &PolAlgebra, rows: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Precondition("matrix must be at least 1×1".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Precondition(format!(
                    "matrix must be square: row of length {} in a {n}×{n} matrix",
                    row.len()
                )));
            }
            for e in row {
                algebra.check_same(e.algebra())?;
                entries.push(e);
            }
        }
        Ok(MatrixOverPol {
            algebra: algebra.clone(),
            n,
            entries,
        })
    }

    /// The 1×1 matrix `[a]`.
    pub fn scalar(a: AlgebraElement) -> Self {
        MatrixOverPol {
            algebra: a.algebra().clone(),
            n: 1,
            entries: vec![a],
        }
    }

    pub fn algebra(&self) -> &PolAlgebra {
        &self.algebra
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<AlgebraElement>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Union of the entries' supports.
    pub fn support(&self) -> IrrepSet {
        self.entries
            .iter()
            .fold(IrrepSet::new(), |acc, e| acc.union(&e.support()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }

    /// Applies `f` to every entry, keeping the shape.
    pub fn try_map(
        &self,
        target: &PolAlgebra,
        f: impl Fn(&AlgebraElement) -> Result<AlgebraElement>,
    ) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        for e in &entries {
            target.check_same(e.algebra())?;
        }
        Ok(MatrixOverPol {
            algebra: target.clone(),
            n: self.n,
            entries,
        })
    }
}

//! Concrete models of Pol(𝔾): coefficient arithmetic over the matrix
//! coefficients `u^α_{ij}`, multiplication, Haar state and restricted
//! multiplication matrices.

pub mod cg;
mod element;
pub mod json;
mod matrix;
mod restricted;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::fusion::{FusionRing, Label, Provider};
use crate::scalar::ScalarMode;

pub use cg::CgTable;
pub use element::AlgebraElement;
pub use matrix::MatrixOverPol;
pub use restricted::{
    full_multiplication_matrix, restricted_mult_matrix, window_coordinates, Coordinate, RestrictedOperator,
};
pub(crate) use restricted::{coordinate_index, coordinates, coordinates_to_elements, push_column_entries};

/// Matrix coefficient `u^α_{ij}` with 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub label: Label,
    pub row: u32,
    pub col: u32,
}

impl BasisIndex {
    pub fn new(label: Label, row: u32, col: u32) -> Self {
        BasisIndex { label, row, col }
    }

    /// `u^α_{11}`, the only coefficient of a one-dimensional irrep.
    pub fn scalar(label: Label) -> Self {
        BasisIndex { label, row: 1, col: 1 }
    }
}

struct AlgebraInner {
    ring: FusionRing,
    mode: ScalarMode,
    cg: RwLock<HashMap<(i64, i64, i64), Arc<CgTable>>>,
}

/// Shareable handle on Pol(𝔾) for one fusion ring and one scalar mode.
#[derive(Clone)]
pub struct PolAlgebra {
    inner: Arc<AlgebraInner>,
}

impl fmt::Debug for PolAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolAlgebra({}, {})", self.tag(), self.mode())
    }
}

impl PartialEq for PolAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.tag() == other.tag() && self.mode() == other.mode()
    }
}

impl Eq for PolAlgebra {}

impl PolAlgebra {
    /// Scalar mode used when none is requested: exact for group algebras,
    /// float for providers whose coefficients need square roots.
    pub fn default_mode(ring: &FusionRing) -> ScalarMode {
        match ring.provider() {
            Provider::Group(_) => ScalarMode::Exact,
            Provider::Su2 | Provider::S3 => ScalarMode::Float,
        }
    }

    pub fn new(ring: FusionRing) -> Self {
        let mode = Self::default_mode(&ring);
        Self::with_mode(ring, mode).expect("default mode is supported")
    }

    pub fn with_mode(ring: FusionRing, mode: ScalarMode) -> Result<Self> {
        if mode == ScalarMode::Exact && !matches!(ring.provider(), Provider::Group(_)) {
            return Err(Error::UnsupportedMode {
                ring: ring.tag().to_string(),
                mode: mode.to_string(),
            });
        }
        Ok(PolAlgebra {
            inner: Arc::new(AlgebraInner {
                ring,
                mode,
                cg: RwLock::new(HashMap::new()),
            }),
        })
    }

    pub fn parse(tag: &str) -> Result<Self> {
        Ok(Self::new(FusionRing::parse(tag)?))
    }

    pub fn ring(&self) -> &FusionRing {
        &self.inner.ring
    }

    pub fn mode(&self) -> ScalarMode {
        self.inner.mode
    }

    pub fn tag(&self) -> &str {
        self.inner.ring.tag()
    }

    pub(crate) fn check_same(&self, other: &PolAlgebra) -> Result<()> {
        if self.tag() != other.tag() {
            return Err(Error::MixedAlgebras(self.tag().into(), other.tag().into()));
        }
        if self.mode() != other.mode() {
            return Err(Error::MixedModes);
        }
        Ok(())
    }

    pub(crate) fn validate_index(&self, idx: BasisIndex) -> Result<()> {
        let n = self.ring().dim(idx.label)?;
        if idx.row == 0 || idx.col == 0 || idx.row as u64 > n || idx.col as u64 > n {
            return Err(Error::IndexOutOfRange {
                label: self.ring().label_string(idx.label),
                row: idx.row,
                col: idx.col,
                dim: n,
            });
        }
        Ok(())
    }

    /// Basis coefficients `(α, i, j)` of one irrep in row-major order.
    pub fn irrep_basis(&self, u: Label) -> Result<Vec<BasisIndex>> {
        let n = self.ring().dim(u)? as u32;
        Ok((1..=n)
            .flat_map(|i| (1..=n).map(move |j| BasisIndex::new(u, i, j)))
            .collect())
    }

    pub(crate) fn cg_table(&self, a: i64, b: i64, c: i64) -> Arc<CgTable> {
        if let Some(t) = self.inner.cg.read().expect("cg cache").get(&(a, b, c)) {
            return t.clone();
        }
        let t = Arc::new(CgTable::new(a, b, c));
        self.inner
            .cg
            .write()
            .expect("cg cache")
            .entry((a, b, c))
            .or_insert(t)
            .clone()
    }
}

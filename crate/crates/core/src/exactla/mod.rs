//! Rank, nullity and kernel bases, exact over ℚ(i) or floating.
//!
//! Exact mode has two engines: fraction-free Bareiss elimination for small
//! matrices and a certified multi-modular engine for large sparse ones. Both
//! return the same canonical kernel basis: for each non-pivot column `f`, the
//! unique kernel vector with a 1 at `f` and zeros at every other non-pivot
//! column, rescaled so its first nonzero coordinate is 1.

mod float;
mod fraction_free;
mod gauss_int;
mod matrix;
mod modular;

use num::complex::Complex64;

use crate::error::Result;
use crate::scalar::{GaussRat, Scalar};

pub use matrix::{ExactMatrix, FloatMatrix, ScalarMatrix};

/// Default relative singular-value threshold for float mode.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Matrices with at most this many entries go through Bareiss under
/// [`ExactEngine::Auto`].
pub const FRACTION_FREE_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankNullity {
    pub rank: usize,
    pub nullity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactEngine {
    Auto,
    FractionFree,
    Modular,
}

impl ExactEngine {
    fn resolve(self, m: &ExactMatrix) -> ExactEngine {
        match self {
            ExactEngine::Auto if m.rows() * m.cols() <= FRACTION_FREE_LIMIT => {
                ExactEngine::FractionFree
            }
            ExactEngine::Auto => ExactEngine::Modular,
            e => e,
        }
    }
}

fn normalize_exact(mut v: Vec<GaussRat>) -> Vec<GaussRat> {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = lead.inv().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
    }
    v
}

pub fn exact_rank_nullity(m: &ExactMatrix, engine: ExactEngine) -> Result<RankNullity> {
    let rank = match engine.resolve(m) {
        ExactEngine::FractionFree => fraction_free::reduce(m)?.rank(),
        _ => {
            let lower = modular::rank_mod_p(m, modular::primes()[0]);
            if lower == m.cols() || lower == m.rows() {
                lower
            } else {
                modular::certified_kernel(m, false)?.rank
            }
        }
    };
    Ok(RankNullity {
        rank,
        nullity: m.cols() - rank,
    })
}

pub fn exact_nullspace(m: &ExactMatrix, engine: ExactEngine) -> Result<Vec<Vec<GaussRat>>> {
    let vectors = match engine.resolve(m) {
        ExactEngine::FractionFree => {
            let red = fraction_free::reduce(m)?;
            red.free_cols()
                .into_iter()
                .map(|f| red.kernel_vector(f))
                .collect()
        }
        _ => modular::certified_kernel(m, false)?.vectors,
    };
    Ok(vectors.into_iter().map(normalize_exact).collect())
}

/// First canonical kernel vector, i.e. the one attached to the leftmost
/// non-pivot column. Cheaper than the whole basis on the modular path since
/// elimination stops at the first dependent column.
pub fn exact_first_kernel_vector(
    m: &ExactMatrix,
    engine: ExactEngine,
) -> Result<Option<Vec<GaussRat>>> {
    let v = match engine.resolve(m) {
        ExactEngine::FractionFree => {
            let red = fraction_free::reduce(m)?;
            red.free_cols().first().map(|&f| red.kernel_vector(f))
        }
        _ => modular::certified_kernel(m, true)?.vectors.into_iter().next(),
    };
    Ok(v.map(normalize_exact))
}

/// `(rank, nullity)`; `tol` is ignored in exact mode.
pub fn rank_nullity(m: &ScalarMatrix, tol: Option<f64>) -> Result<RankNullity> {
    match m {
        ScalarMatrix::Exact(e) => exact_rank_nullity(e, ExactEngine::Auto),
        ScalarMatrix::Float(f) => {
            let rank = float::rank(&f.0, tol.unwrap_or(DEFAULT_TOL))?;
            Ok(RankNullity {
                rank,
                nullity: f.0.ncols() - rank,
            })
        }
    }
}

pub fn nullspace_basis(m: &ScalarMatrix, tol: Option<f64>) -> Result<Vec<Vec<Scalar>>> {
    match m {
        ScalarMatrix::Exact(e) => Ok(exact_nullspace(e, ExactEngine::Auto)?
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::Exact).collect())
            .collect()),
        ScalarMatrix::Float(f) => Ok(float::nullspace(&f.0, tol.unwrap_or(DEFAULT_TOL))?
            .into_iter()
            .map(|v| v.into_iter().map(Scalar::Float).collect())
            .collect()),
    }
}

pub fn first_kernel_vector(m: &ScalarMatrix, tol: Option<f64>) -> Result<Option<Vec<Scalar>>> {
    match m {
        ScalarMatrix::Exact(e) => Ok(exact_first_kernel_vector(e, ExactEngine::Auto)?
            .map(|v| v.into_iter().map(Scalar::Exact).collect())),
        ScalarMatrix::Float(_) => Ok(nullspace_basis(m, tol)?.into_iter().next()),
    }
}

/// Singular values in decreasing order (float diagnostics).
pub fn singular_values(m: &nalgebra::DMatrix<Complex64>) -> Vec<f64> {
    float::singular_values(m)
}

//! Relative dimension `dim_F` and certified kernel-dimension brackets.
//!
//! All dimensions here are integer ranks divided by weighted sizes, so they
//! are reported as exact rationals in both scalar modes; in float mode the
//! rank itself is a singular-value decision.

use num::{BigInt, BigRational};
#[cfg(test)]
use num::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{rank_nullity, ScalarMatrix};
use crate::fusion::{IrrepSet, Side};
use crate::polalg::{full_multiplication_matrix, restricted_mult_matrix, AlgebraElement, MatrixOverPol, PolAlgebra};
use crate::scalar::{format_fraction, ScalarMode};

pub(crate) fn ratio(p: u128, q: u128) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub(crate) fn ratio_json(q: &BigRational) -> Value {
    Value::String(format_fraction(q))
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionEstimate {
    pub lower: BigRational,
    pub upper: BigRational,
    pub window: IrrepSet,
    pub n: usize,
    pub side: Side,
    pub mode: ScalarMode,
    /// `|∂_S F| / |F|`
    pub boundary_ratio: BigRational,
    pub window_weight: u128,
    pub boundary_weight: u128,
    pub interior_weight: u128,
    pub rank: usize,
    pub nullity: usize,
    /// Set when the interior is empty and the bracket degenerates to `[0, n]`.
    pub degenerate: bool,
}

impl DimensionEstimate {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn to_json(&self, algebra: &PolAlgebra) -> Value {
        json!({
            "lower": ratio_json(&self.lower),
            "upper": ratio_json(&self.upper),
            "lower_decimal": to_f64(&self.lower),
            "upper_decimal": to_f64(&self.upper),
            "window": algebra.ring().labels_to_json(&self.window),
            "n": self.n,
            "side": self.side,
            "mode": self.mode,
            "boundary_ratio": ratio_json(&self.boundary_ratio),
            "window_weight": self.window_weight.to_string(),
            "boundary_weight": self.boundary_weight.to_string(),
            "interior_weight": self.interior_weight.to_string(),
            "rank": self.rank,
            "nullity": self.nullity,
            "degenerate": self.degenerate,
        })
    }
}

fn require_closed(algebra: &PolAlgebra, window: &IrrepSet) -> Result<()> {
    algebra.ring().validate_set(window)?;
    if window.is_empty() {
        return Err(Error::Precondition("window must be nonempty".into()));
    }
    if !algebra.ring().is_conjugation_closed(window) {
        return Err(Error::Precondition("window must be conjugation-closed".into()));
    }
    Ok(())
}

/// `|F|⁻¹ · dim_ℂ span(vectors)` for vectors of `W_F^n`, each given as an
/// `n`-tuple of elements.
pub fn relative_dimension(
    algebra: &PolAlgebra,
    vectors: &[Vec<AlgebraElement>],
    window: &IrrepSet,
    n: usize,
    tol: Option<f64>,
) -> Result<BigRational> {
    require_closed(algebra, window)?;
    let coords = crate::polalg::window_coordinates(algebra, window, n)?;
    let index: std::collections::HashMap<_, _> =
        coords.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let mut columns = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != n {
            return Err(Error::Precondition(format!("expected {n} components, got {}", v.len())));
        }
        let mut col = Vec::new();
        for (copy, x) in v.iter().enumerate() {
            algebra.check_same(x.algebra())?;
            for (idx, c) in x.terms() {
                let row = index
                    .get(&crate::polalg::Coordinate { copy, basis: *idx })
                    .ok_or_else(|| Error::Precondition("vector has support outside the window".into()))?;
                col.push((*row, c.clone()));
            }
        }
        columns.push(col);
    }
    let m = ScalarMatrix::from_columns(algebra.mode(), coords.len(), columns)?;
    let rank = rank_nullity(&m, tol)?.rank;
    Ok(ratio(rank as u128, algebra.ring().weighted_size(window)?))
}

pub fn kernel_dim_estimate(t: &MatrixOverPol, window: &IrrepSet) -> Result<DimensionEstimate> {
    kernel_dim_estimate_sided(t, window, Side::Right, None)
}

/// `lower = |F|⁻¹ nullity(R_T^F)`, `upper = lower + n |∂_S F| / |F|`.
pub fn kernel_dim_estimate_sided(
    t: &MatrixOverPol,
    window: &IrrepSet,
    side: Side,
    tol: Option<f64>,
) -> Result<DimensionEstimate> {
    let alg = t.algebra();
    require_closed(alg, window)?;
    let op = restricted_mult_matrix(t, window, side)?;
    let ring = alg.ring();
    let fw = ring.weighted_size(window)?;
    let bw = ring.weighted_size(&op.boundary)?;
    let iw = ring.weighted_size(&op.interior)?;
    let n = t.n();
    let rn = rank_nullity(&op.matrix, tol)?;
    if rn.rank + rn.nullity != n * iw as usize || op.matrix.cols() != n * iw as usize {
        return Err(Error::Internal("rank + nullity ≠ n·|int_S F|".into()));
    }
    let boundary_ratio = ratio(bw, fw);
    let lower = ratio(rn.nullity as u128, fw);
    let nn = BigRational::from_integer(BigInt::from(n));
    let upper = &lower + &(&nn * &boundary_ratio);
    // dim_F ker + dim_F rg = n − n|∂|/|F|
    let rg = ratio(rn.rank as u128, fw);
    if &lower + &rg != &nn - &(&nn * &boundary_ratio) {
        return Err(Error::Internal("rank-sum identity failed".into()));
    }
    Ok(DimensionEstimate {
        lower,
        upper,
        window: window.clone(),
        n,
        side,
        mode: alg.mode(),
        boundary_ratio,
        window_weight: fw,
        boundary_weight: bw,
        interior_weight: iw,
        rank: rn.rank,
        nullity: rn.nullity,
        degenerate: op.empty_interior,
    })
}

/// Murray–von Neumann dimension of the kernel of multiplication by `T` on a
/// finite provider: nullity over the total weighted size.
pub fn exact_mvn_dim_finite(t: &MatrixOverPol, side: Side, tol: Option<f64>) -> Result<BigRational> {
    let ring = t.algebra().ring();
    let all = ring
        .elements()
        .ok_or_else(|| Error::NotFinite(ring.tag().to_string()))?;
    let op = full_multiplication_matrix(t, side)?;
    let rn = rank_nullity(&op.matrix, tol)?;
    Ok(ratio(rn.nullity as u128, ring.weighted_size(&all)?))
}

/// Convenience: `true` when `x` is within `tol` of the rational `q`.
pub fn close_to(x: &BigRational, q: &BigRational, tol: f64) -> bool {
    (to_f64(x) - to_f64(q)).abs() <= tol
}

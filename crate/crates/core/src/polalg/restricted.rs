use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::ScalarMatrix;
use crate::fusion::{IrrepSet, Label, Side};
use crate::scalar::Scalar;

use super::{AlgebraElement, BasisIndex, MatrixOverPol, PolAlgebra};

/// Coordinate of `W^n`: copy `0..n` and the basis vector `√n_α u^α_{ij}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pub copy: usize,
    pub basis: BasisIndex,
}

/// Matrix of `R_T` (right side) or left multiplication by `T` from
/// `W_{int_S(F)}^n` to `W_F^n` in the orthonormal bases.
#[derive(Clone, Debug)]
pub struct RestrictedOperator {
    pub side: Side,
    pub n: usize,
    pub support: IrrepSet,
    pub window: IrrepSet,
    pub interior: IrrepSet,
    pub boundary: IrrepSet,
    pub domain: Vec<Coordinate>,
    pub codomain: Vec<Coordinate>,
    pub matrix: ScalarMatrix,
    /// Set when `int_S(F) = ∅`; the matrix then has no columns.
    pub empty_interior: bool,
}

/// Coordinates over `labels` (in the given order), label-major, then
/// `(i, j)`, then the copy.
pub(crate) fn coordinates(alg: &PolAlgebra, labels: &[Label], n: usize) -> Result<Vec<Coordinate>> {
    let mut out = Vec::new();
    for &u in labels {
        for basis in alg.irrep_basis(u)? {
            for copy in 0..n {
                out.push(Coordinate { copy, basis });
            }
        }
    }
    Ok(out)
}

/// Coordinates of `W_F^n` in the order used by restricted operators.
pub fn window_coordinates(alg: &PolAlgebra, window: &IrrepSet, n: usize) -> Result<Vec<Coordinate>> {
    coordinates(alg, &window.to_vec(), n)
}

pub(crate) fn coordinate_index(coords: &[Coordinate]) -> HashMap<Coordinate, usize> {
    coords.iter().enumerate().map(|(k, c)| (*c, k)).collect()
}

/// Expands `y` (copy `copy` of the codomain) in the orthonormal codomain
/// basis, for an input basis vector `√n_α u^α_{ij}`.
pub(crate) fn push_column_entries(
    out: &mut Vec<(usize, Scalar)>,
    y: &AlgebraElement,
    copy: usize,
    n_alpha: u64,
    index: &HashMap<Coordinate, usize>,
) -> Result<()> {
    let ring = y.algebra().ring();
    for (idx, c) in y.terms() {
        let row = index.get(&Coordinate { copy, basis: *idx }).ok_or_else(|| {
            Error::Internal(format!(
                "product component {} lies outside the codomain window",
                ring.label_string(idx.label)
            ))
        })?;
        let n_beta = ring.dim_unchecked(idx.label);
        let v = if n_alpha == n_beta {
            c.clone()
        } else {
            c.scale_real((n_alpha as f64 / n_beta as f64).sqrt())?
        };
        out.push((*row, v));
    }
    Ok(())
}

/// The multiplication matrix of `t` from the coordinates over `domain` to
/// those over `codomain`.
pub(crate) fn multiplication_columns(
    t: &MatrixOverPol,
    side: Side,
    domain: &[Coordinate],
    codomain: &[Coordinate],
) -> Result<ScalarMatrix> {
    let alg = t.algebra();
    let n = t.n();
    let index = coordinate_index(codomain);
    let columns = domain
        .par_iter()
        .map(|coord| {
            let e = AlgebraElement::basis(alg, coord.basis)?;
            let n_alpha = alg.ring().dim_unchecked(coord.basis.label);
            let p = coord.copy;
            let mut col = Vec::new();
            for q in 0..n {
                let y = match side {
                    Side::Right => e.multiply(t.get(p, q))?,
                    Side::Left => t.get(q, p).multiply(&e)?,
                };
                push_column_entries(&mut col, &y, q, n_alpha, &index)?;
            }
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    ScalarMatrix::from_columns(alg.mode(), codomain.len(), columns)
}

/// Restriction of right (`x ↦ (Σ_p x_p T_{pq})_q`) or left
/// (`x ↦ (Σ_j T_{ij} x_j)_i`) multiplication by `t` to `W_{int_S(F)}^n → W_F^n`
/// with `S = supp(t)`.
pub fn restricted_mult_matrix(
    t: &MatrixOverPol,
    window: &IrrepSet,
    side: Side,
) -> Result<RestrictedOperator> {
    let support = t.support();
    if support.is_empty() {
        return Err(Error::Precondition("T = 0 has empty support".into()));
    }
    let alg = t.algebra();
    let ring = alg.ring();
    let dec = ring.boundary_decomposition_sided(window, &support, side)?;
    let n = t.n();
    let domain = coordinates(alg, &dec.interior.to_vec(), n)?;
    let codomain = coordinates(alg, &window.to_vec(), n)?;
    let matrix = multiplication_columns(t, side, &domain, &codomain)?;
    Ok(RestrictedOperator {
        side,
        n,
        support,
        window: window.clone(),
        empty_interior: dec.interior.is_empty(),
        interior: dec.interior,
        boundary: dec.boundary,
        domain,
        codomain,
        matrix,
    })
}

/// Multiplication by `t` on the whole of Pol(𝔾)ⁿ, for finite providers.
pub fn full_multiplication_matrix(t: &MatrixOverPol, side: Side) -> Result<RestrictedOperator> {
    let ring = t.algebra().ring();
    let all = ring
        .elements()
        .ok_or_else(|| Error::NotFinite(ring.tag().to_string()))?;
    let alg = t.algebra();
    let coords = coordinates(alg, &all.to_vec(), t.n())?;
    let matrix = multiplication_columns(t, side, &coords, &coords)?;
    Ok(RestrictedOperator {
        side,
        n: t.n(),
        support: t.support(),
        window: all.clone(),
        interior: all,
        boundary: IrrepSet::new(),
        domain: coords.clone(),
        codomain: coords,
        matrix,
        empty_interior: false,
    })
}

impl RestrictedOperator {
    /// Turns a domain coordinate vector into `n` elements of Pol(𝔾).
    pub fn domain_vector_to_elements(
        &self,
        alg: &PolAlgebra,
        v: &[Scalar],
    ) -> Result<Vec<AlgebraElement>> {
        coordinates_to_elements(alg, &self.domain, self.n, v)
    }
}

pub(crate) fn coordinates_to_elements(
    alg: &PolAlgebra,
    coords: &[Coordinate],
    n: usize,
    v: &[Scalar],
) -> Result<Vec<AlgebraElement>> {
    if v.len() != coords.len() {
        return Err(Error::Precondition(format!(
            "vector of length {} for {} coordinates",
            v.len(),
            coords.len()
        )));
    }
    let mut parts: Vec<Vec<(BasisIndex, Scalar)>> = vec![Vec::new(); n];
    for (c, x) in coords.iter().zip(v) {
        let na = alg.ring().dim_unchecked(c.basis.label);
        let val = if na == 1 { x.clone() } else { x.scale_real((na as f64).sqrt())? };
        parts[c.copy].push((c.basis, val));
    }
    parts
        .into_iter()
        .map(|terms| AlgebraElement::from_terms(alg, terms))
        .collect()
}

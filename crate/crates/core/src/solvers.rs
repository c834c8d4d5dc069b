//! Zero-divisor certificates, kernel-dimension sequences and Ore pairs.

use num::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{first_kernel_vector, nullspace_basis, ScalarMatrix};
use crate::folner::ball_windows;
use crate::fusion::{IrrepSet, Side};
use crate::polalg::json::element_to_value;
use crate::polalg::{
    coordinate_index, coordinates, coordinates_to_elements, push_column_entries, restricted_mult_matrix,
    AlgebraElement, Coordinate, MatrixOverPol,
};
use crate::reldim::{kernel_dim_estimate_sided, ratio, ratio_json, DimensionEstimate};
use crate::scalar::{Scalar, ScalarMode};

/// Residual bound for float-mode verifications.
pub const FLOAT_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct ZeroDivisorCertificate {
    pub a: AlgebraElement,
    pub witness: AlgebraElement,
    pub side: Side,
    pub window: IrrepSet,
    pub radius: usize,
}

#[derive(Clone, Debug)]
pub struct NotFoundReport {
    pub side: Side,
    /// `(radius, |F|, nullity)` per window tried; nullity is always 0.
    pub windows: Vec<(usize, u128, usize)>,
}

#[derive(Clone, Debug)]
pub enum ZeroDivisorOutcome {
    Certificate(ZeroDivisorCertificate),
    NotFound(NotFoundReport),
}

#[derive(Clone, Debug)]
pub struct OrePair {
    pub a: AlgebraElement,
    pub s: AlgebraElement,
    pub t: AlgebraElement,
    pub b: AlgebraElement,
    pub window: IrrepSet,
    pub radius: usize,
    pub window_weight: u128,
    pub boundary_weight: u128,
}

#[derive(Clone, Debug)]
pub struct OreExhaustion {
    /// `(radius, |F|, |∂_S F|)` for each window tried.
    pub windows: Vec<(usize, u128, u128)>,
}

#[derive(Clone, Debug)]
pub enum OreOutcome {
    Pair(OrePair),
    ZeroDivisor(ZeroDivisorCertificate),
    Exhausted(OreExhaustion),
}

#[derive(Clone, Debug)]
pub struct SequenceEntry {
    pub radius: usize,
    pub estimate: DimensionEstimate,
}

fn nonzero(a: &AlgebraElement, what: &str) -> Result<()> {
    if a.is_zero() {
        Err(Error::Precondition(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

fn vanishes(x: &AlgebraElement) -> bool {
    match x.algebra().mode() {
        ScalarMode::Exact => x.is_zero(),
        ScalarMode::Float => x.max_abs() <= FLOAT_RESIDUAL_TOL,
    }
}

/// Conjugation-closed balls of `supp(a) ∪ generators` at radii `0..=max`.
pub fn default_windows(a: &AlgebraElement, max_radius: usize) -> Result<Vec<IrrepSet>> {
    let ring = a.algebra().ring();
    ball_windows(ring, &a.support().union(&ring.generators()), max_radius)
}

impl ZeroDivisorCertificate {
    /// Independent check by a full multiply.
    pub fn verify(&self) -> Result<()> {
        if self.witness.is_zero() {
            return Err(Error::Certification("witness is zero".into()));
        }
        let p = match self.side {
            Side::Left => self.a.multiply(&self.witness)?,
            Side::Right => self.witness.multiply(&self.a)?,
        };
        if vanishes(&p) {
            Ok(())
        } else {
            Err(Error::Certification("product does not vanish".into()))
        }
    }

    pub fn to_json(&self) -> Value {
        let ring = self.a.algebra().ring();
        let product = match self.side {
            Side::Left => "a*b",
            Side::Right => "b*a",
        };
        json!({
            "kind": "zero_divisor_certificate",
            "side": self.side,
            "a": element_to_value(&self.a),
            "b": element_to_value(&self.witness),
            "window": ring.labels_to_json(&self.window),
            "radius": self.radius,
            "verification": {
                "method": "full multiply",
                "product": product,
                "vanishes": self.verify().is_ok(),
            },
        })
    }
}

impl NotFoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "not_found_report",
            "side": self.side,
            "windows": self.windows.iter().map(|(r, w, k)| json!({
                "radius": r,
                "window_weight": w.to_string(),
                "nullity": k,
                "dim": ratio_json(&ratio(*k as u128, *w)),
            })).collect::<Vec<_>>(),
        })
    }
}

impl OrePair {
    pub fn verify(&self) -> Result<()> {
        if self.t.is_zero() {
            return Err(Error::Certification("t is zero".into()));
        }
        let lhs = self.a.multiply(&self.t)?;
        let rhs = self.s.multiply(&self.b)?;
        if vanishes(&lhs.sub(&rhs)?) {
            Ok(())
        } else {
            Err(Error::Certification("a·t ≠ s·b".into()))
        }
    }

    pub fn to_json(&self) -> Value {
        let ring = self.a.algebra().ring();
        json!({
            "kind": "ore_pair",
            "a": element_to_value(&self.a),
            "s": element_to_value(&self.s),
            "t": element_to_value(&self.t),
            "b": element_to_value(&self.b),
            "window": ring.labels_to_json(&self.window),
            "radius": self.radius,
            "window_weight": self.window_weight.to_string(),
            "boundary_weight": self.boundary_weight.to_string(),
            "verification": {
                "method": "full multiply",
                "identity": "a*t = s*b",
                "holds": self.verify().is_ok(),
            },
        })
    }
}

impl OreExhaustion {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "ore_exhaustion_report",
            "windows": self.windows.iter().map(|(r, w, b)| json!({
                "radius": r,
                "window_weight": w.to_string(),
                "boundary_weight": b.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl SequenceEntry {
    pub fn to_json(&self, a: &AlgebraElement) -> Value {
        json!({ "radius": self.radius, "estimate": self.estimate.to_json(a.algebra()) })
    }
}

/// Looks for `b ≠ 0` with `a·b = 0` (left) or `b·a = 0` (right) inside the
/// default windows up to `max_radius`.
pub fn zero_divisor_search(a: &AlgebraElement, side: Side, max_radius: usize) -> Result<ZeroDivisorOutcome> {
    nonzero(a, "a")?;
    zero_divisor_search_windows(a, side, &default_windows(a, max_radius)?)
}

/// As [`zero_divisor_search`] over explicit windows; the radius reported is
/// the window's index.
pub fn zero_divisor_search_windows(
    a: &AlgebraElement,
    side: Side,
    windows: &[IrrepSet],
) -> Result<ZeroDivisorOutcome> {
    nonzero(a, "a")?;
    let t = MatrixOverPol::scalar(a.clone());
    let ring = a.algebra().ring();
    let mut tried = Vec::new();
    for (k, w) in windows.iter().enumerate() {
        let op = restricted_mult_matrix(&t, w, side)?;
        if let Some(v) = first_kernel_vector(&op.matrix, None)? {
            let witness = op.domain_vector_to_elements(a.algebra(), &v)?.remove(0);
            let cert = ZeroDivisorCertificate {
                a: a.clone(),
                witness,
                side,
                window: w.clone(),
                radius: k,
            };
            cert.verify()?;
            return Ok(ZeroDivisorOutcome::Certificate(cert));
        }
        tried.push((k, ring.weighted_size(w)?, 0));
    }
    Ok(ZeroDivisorOutcome::NotFound(NotFoundReport { side, windows: tried }))
}

/// `dim_{F_k} ker` with its bracket on the default windows at `radii`.
pub fn kernel_dim_sequence(a: &AlgebraElement, side: Side, radii: &[usize]) -> Result<Vec<SequenceEntry>> {
    nonzero(a, "a")?;
    let max = radii.iter().copied().max().unwrap_or(0);
    let windows = default_windows(a, max)?;
    let chosen: Vec<(usize, IrrepSet)> = radii.iter().map(|&r| (r, windows[r].clone())).collect();
    sequence_over(a, side, &chosen)
}

/// As [`kernel_dim_sequence`] over explicit windows, labelled by index.
pub fn kernel_dim_sequence_windows(
    a: &AlgebraElement,
    side: Side,
    windows: &[IrrepSet],
) -> Result<Vec<SequenceEntry>> {
    nonzero(a, "a")?;
    let chosen: Vec<(usize, IrrepSet)> = windows.iter().cloned().enumerate().collect();
    sequence_over(a, side, &chosen)
}

fn sequence_over(a: &AlgebraElement, side: Side, windows: &[(usize, IrrepSet)]) -> Result<Vec<SequenceEntry>> {
    let t = MatrixOverPol::scalar(a.clone());
    windows
        .par_iter()
        .map(|(r, w)| {
            Ok(SequenceEntry {
                radius: *r,
                estimate: kernel_dim_estimate_sided(&t, w, side, None)?,
            })
        })
        .collect()
}

/// Finds `t ≠ 0`, `b` with `a·t = s·b` from a kernel vector of
/// `(x, y) ↦ a·x − s·y` on `W_{int_S F} ⊕ W_{int_S F} → W_F`, where
/// `S = supp(a) ∪ supp(s)` and `F` is the first doubled-radius ball with
/// `2|∂_S F| < |F|` (left boundary).
pub fn ore_pair(
    a: &AlgebraElement,
    s: &AlgebraElement,
    max_radius: usize,
    prefer_ore: bool,
) -> Result<OreOutcome> {
    nonzero(a, "a")?;
    nonzero(s, "s")?;
    a.algebra().check_same(s.algebra())?;
    let alg = a.algebra();
    let ring = alg.ring();
    let support = a.support().union(&s.support());
    let grow = support.union(&ring.generators());
    let mut tried = Vec::new();
    let mut radius = 1usize;
    let found = loop {
        if radius > max_radius {
            break None;
        }
        let w = ring.conjugation_closure(&ring.ball(&grow, radius)?)?;
        let dec = ring.boundary_decomposition_sided(&w, &support, Side::Left)?;
        let fw = ring.weighted_size(&w)?;
        let bw = ring.weighted_size(&dec.boundary)?;
        tried.push((radius, fw, bw));
        if 2 * bw < fw {
            break Some((radius, w, dec, fw, bw));
        }
        if radius == max_radius {
            break None;
        }
        radius = (radius * 2).min(max_radius);
    };
    let Some((radius, window, dec, fw, bw)) = found else {
        return Ok(OreOutcome::Exhausted(OreExhaustion { windows: tried }));
    };
    let iw = ring.weighted_size(&dec.interior)?;
    if 2 * iw <= fw {
        return Err(Error::Internal("2|int_S F| ≤ |F| despite 2|∂_S F| < |F|".into()));
    }
    // columns ordered by word length so the first kernel vector is short
    let rank = ring.ball_rank(&grow, radius)?;
    let mut interior = dec.interior.to_vec();
    interior.sort_by_key(|u| (rank.get(u).copied().unwrap_or(usize::MAX), *u));
    let base = coordinates(alg, &interior, 1)?;
    let mut domain: Vec<(Coordinate, usize)> = Vec::with_capacity(2 * base.len());
    for c in &base {
        domain.push((*c, 0));
        domain.push((*c, 1));
    }
    let codomain = coordinates(alg, &window.to_vec(), 1)?;
    let index = coordinate_index(&codomain);
    let neg_s = s.neg();
    let columns = domain
        .par_iter()
        .map(|(c, part)| {
            let e = AlgebraElement::basis(alg, c.basis)?;
            let y = if *part == 0 { a.multiply(&e)? } else { neg_s.multiply(&e)? };
            let mut col = Vec::new();
            push_column_entries(&mut col, &y, 0, ring.dim_unchecked(c.basis.label), &index)?;
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = ScalarMatrix::from_columns(alg.mode(), codomain.len(), columns)?;
    if m.cols() <= m.rows() {
        return Err(Error::Internal("α has no more columns than rows".into()));
    }
    let split = |v: &[Scalar]| -> Result<(AlgebraElement, AlgebraElement)> {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for ((_, part), x) in domain.iter().zip(v) {
            if *part == 0 {
                xs.push(x.clone());
            } else {
                ys.push(x.clone());
            }
        }
        let t = coordinates_to_elements(alg, &base, 1, &xs)?.remove(0);
        let b = coordinates_to_elements(alg, &base, 1, &ys)?.remove(0);
        Ok((t, b))
    };
    let candidates: Vec<Vec<Scalar>> = if prefer_ore {
        nullspace_basis(&m, None)?
    } else {
        first_kernel_vector(&m, None)?.into_iter().collect()
    };
    let mut first_zd = None;
    for v in &candidates {
        let (t, b) = split(v)?;
        if vanishes(&t) {
            if first_zd.is_none() {
                first_zd = Some(b);
            }
            continue;
        }
        let pair = OrePair {
            a: a.clone(),
            s: s.clone(),
            t,
            b,
            window: window.clone(),
            radius,
            window_weight: fw,
            boundary_weight: bw,
        };
        pair.verify()?;
        return Ok(OreOutcome::Pair(pair));
    }
    let witness = first_zd.ok_or_else(|| Error::Internal("α has no kernel vector".into()))?;
    let cert = ZeroDivisorCertificate {
        a: s.clone(),
        witness,
        side: Side::Left,
        window,
        radius,
    };
    cert.verify()?;
    Ok(OreOutcome::ZeroDivisor(cert))
}

/// `dim` values of a sequence as rationals, for convergence checks.
pub fn lower_values(seq: &[SequenceEntry]) -> Vec<BigRational> {
    seq.iter().map(|e| e.estimate.lower.clone()).collect()
}

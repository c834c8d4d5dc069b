//! Singular-value rank decisions for the floating providers.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{Error, Result};

fn check_finite(m: &DMatrix<Complex64>) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("tolerance must be positive, got {tol}")))
    }
}

pub(crate) fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank with threshold `tol · σ_max`.
pub(crate) fn rank(m: &DMatrix<Complex64>, tol: f64) -> Result<usize> {
    check_tol(tol)?;
    check_finite(m)?;
    let s = singular_values(m);
    let Some(&smax) = s.first() else {
        return Ok(0);
    };
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(s.iter().filter(|&&x| x > tol * smax).count())
}

/// Orthonormal kernel basis from the right singular vectors below threshold.
/// Each vector is unit length with its largest-magnitude entry made real
/// positive.
pub(crate) fn nullspace(m: &DMatrix<Complex64>, tol: f64) -> Result<Vec<Vec<Complex64>>> {
    check_tol(tol)?;
    check_finite(m)?;
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Ok(Vec::new());
    }
    // pad to at least square so the SVD returns a full right basis
    let padded = if rows < cols {
        let mut p = DMatrix::<Complex64>::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| Error::Internal("SVD did not return V".into()))?;
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut out = Vec::new();
    for (k, &sigma) in svd.singular_values.iter().enumerate() {
        if smax == 0.0 || sigma <= tol * smax {
            let mut v: Vec<Complex64> = v_t.row(k).iter().map(|z| z.conj()).collect();
            normalize_phase(&mut v);
            out.push(v);
        }
    }
    Ok(out)
}

fn normalize_phase(v: &mut [Complex64]) {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let Some(lead) = v
        .iter()
        .copied()
        .reduce(|a, b| if b.norm() > a.norm() * (1.0 + 1e-9) { b } else { a })
    else {
        return;
    };
    if norm == 0.0 || lead.norm() == 0.0 {
        return;
    }
    let phase = lead / lead.norm();
    for z in v.iter_mut() {
        *z = *z / phase / norm;
    }
}

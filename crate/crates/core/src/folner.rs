//! Følner-window search and isoperimetric profiles.

use num::{BigInt, BigRational, Signed};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion::{FusionRing, IrrepSet, Label};
use crate::reldim::{ratio, ratio_json, to_f64};

#[derive(Clone, Debug, PartialEq)]
pub struct FolnerCertificate {
    pub s: IrrepSet,
    pub epsilon: BigRational,
    pub window: IrrepSet,
    /// `|∂_S^sym F|`
    pub boundary_weight: u128,
    /// `|F|`
    pub window_weight: u128,
    pub strategy: String,
    pub radius: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub radius: usize,
    pub window_weight: u128,
    pub boundary_weight: u128,
    pub symmetric_boundary_weight: u128,
    /// `|∂_S^sym F| / |F|`
    pub ratio: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExhaustionReport {
    pub s: IrrepSet,
    pub epsilon: BigRational,
    pub strategy: String,
    pub profile: Vec<ProfileRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FolnerOutcome {
    Certificate(FolnerCertificate),
    Exhausted(ExhaustionReport),
}

fn check_inputs(ring: &FusionRing, s: &IrrepSet, epsilon: &BigRational) -> Result<()> {
    if s.is_empty() {
        return Err(Error::Precondition("S must be nonempty".into()));
    }
    ring.validate_set(s)?;
    if !epsilon.is_positive() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    Ok(())
}

/// `boundary < ε · window` in integers: `boundary · q < p · window`.
fn strictly_below(boundary: u128, window: u128, epsilon: &BigRational) -> bool {
    BigInt::from(boundary) * epsilon.denom() < epsilon.numer() * BigInt::from(window)
}

/// Conjugation-closed balls `F_k` for `k = 0..=max_radius` (stops growing
/// early on finite rings).
pub fn ball_windows(ring: &FusionRing, s: &IrrepSet, max_radius: usize) -> Result<Vec<IrrepSet>> {
    let layers = ring.ball_layers(s, max_radius)?;
    let mut out = Vec::with_capacity(max_radius + 1);
    let mut acc = IrrepSet::new();
    for k in 0..=max_radius {
        if let Some(layer) = layers.get(k) {
            acc = acc.union(layer);
        }
        out.push(ring.conjugation_closure(&acc)?);
    }
    Ok(out)
}

fn profile_row(ring: &FusionRing, s: &IrrepSet, radius: usize, window: &IrrepSet) -> Result<ProfileRow> {
    let dec = ring.boundary_decomposition(window, s)?;
    let fw = ring.weighted_size(window)?;
    let sym = ring.weighted_size(&dec.symmetric_boundary)?;
    Ok(ProfileRow {
        radius,
        window_weight: fw,
        boundary_weight: ring.weighted_size(&dec.boundary)?,
        symmetric_boundary_weight: sym,
        ratio: ratio(sym, fw),
    })
}

/// Exact isoperimetric table over the ball windows.
pub fn isoperimetric_profile(ring: &FusionRing, s: &IrrepSet, max_radius: usize) -> Result<Vec<ProfileRow>> {
    if s.is_empty() {
        return Err(Error::Precondition("S must be nonempty".into()));
    }
    let windows = ball_windows(ring, s, max_radius)?;
    windows
        .par_iter()
        .enumerate()
        .map(|(k, w)| profile_row(ring, s, k, w))
        .collect()
}

/// Scans ball windows for the first `F` with `|∂_S^sym F| < ε |F|`.
pub fn folner_search(
    ring: &FusionRing,
    s: &IrrepSet,
    epsilon: &BigRational,
    max_radius: usize,
) -> Result<FolnerOutcome> {
    check_inputs(ring, s, epsilon)?;
    let layers = ring.ball_layers(s, max_radius)?;
    let mut acc = IrrepSet::new();
    let windows = (0..=max_radius).map(|k| {
        if let Some(layer) = layers.get(k) {
            acc = acc.union(layer);
        }
        ring.conjugation_closure(&acc)
    });
    search(ring, s, epsilon, windows, "ball")
}

/// As [`folner_search`] over caller-supplied windows; each is closed under
/// conjugation before testing. The certificate's radius is the index.
pub fn folner_search_windows(
    ring: &FusionRing,
    s: &IrrepSet,
    epsilon: &BigRational,
    windows: &[IrrepSet],
) -> Result<FolnerOutcome> {
    check_inputs(ring, s, epsilon)?;
    let closed = windows.iter().map(|w| ring.conjugation_closure(w));
    search(ring, s, epsilon, closed, "user")
}

fn search(
    ring: &FusionRing,
    s: &IrrepSet,
    epsilon: &BigRational,
    windows: impl Iterator<Item = Result<IrrepSet>>,
    strategy: &str,
) -> Result<FolnerOutcome> {
    let mut profile = Vec::new();
    for (k, w) in windows.enumerate() {
        let w = w?;
        let row = profile_row(ring, s, k, &w)?;
        if strictly_below(row.symmetric_boundary_weight, row.window_weight, epsilon) {
            let cert = FolnerCertificate {
                s: s.clone(),
                epsilon: epsilon.clone(),
                window: w,
                boundary_weight: row.symmetric_boundary_weight,
                window_weight: row.window_weight,
                strategy: strategy.to_string(),
                radius: k,
            };
            verify_certificate(ring, &cert)?;
            return Ok(FolnerOutcome::Certificate(cert));
        }
        profile.push(row);
    }
    Ok(FolnerOutcome::Exhausted(ExhaustionReport {
        s: s.clone(),
        epsilon: epsilon.clone(),
        strategy: strategy.to_string(),
        profile,
    }))
}

/// Recomputes both sides of the certificate from the definitions, without
/// the boundary decomposition: `u ∈ F` is a boundary point when some
/// `u ⊠ v` leaves `F`; `w ∉ F` is a coboundary point when some `w ⊠ v` meets
/// `F`. Coboundary candidates are all of `F ⊠ (S ∪ S̄)`.
pub fn verify_certificate(ring: &FusionRing, cert: &FolnerCertificate) -> Result<()> {
    let f = &cert.window;
    let fail = |m: &str| Err(Error::Certification(m.to_string()));
    if !f.iter().all(|u| f.contains(&ring.conj(*u).unwrap_or(*u))) {
        return fail("window is not conjugation-closed");
    }
    let weight = |u: &Label| -> Result<u128> {
        let n = ring.dim(*u)? as u128;
        Ok(n * n)
    };
    let leaves = |u: &Label| -> Result<bool> {
        for v in &cert.s {
            for (w, _) in ring.product_support(*u, *v)? {
                if !f.contains(&w) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    };
    let mut sym = 0u128;
    for u in f {
        if leaves(u)? {
            sym += weight(u)?;
        }
    }
    let mut candidates = IrrepSet::new();
    for u in f {
        for v in &cert.s {
            for x in [*v, ring.conj(*v)?] {
                for (w, _) in ring.product_support(*u, x)? {
                    if !f.contains(&w) {
                        candidates.insert(w);
                    }
                }
            }
        }
    }
    for w in &candidates {
        let mut meets = false;
        for v in &cert.s {
            if ring.product_support(*w, *v)?.iter().any(|(x, _)| f.contains(x)) {
                meets = true;
                break;
            }
        }
        if meets {
            sym += weight(w)?;
        }
    }
    let mut total = 0u128;
    for u in f {
        total += weight(u)?;
    }
    if sym != cert.boundary_weight || total != cert.window_weight {
        return fail("recomputed weights differ from the certificate");
    }
    if !strictly_below(sym, total, &cert.epsilon) {
        return fail("strict inequality does not hold");
    }
    Ok(())
}

/// Least-squares slope `β` of `log ratio ≈ c − β log radius` over rows with
/// `lo ≤ radius ≤ hi` and a positive ratio.
pub fn decay_exponent(profile: &[ProfileRow], lo: usize, hi: usize) -> Option<f64> {
    let pts: Vec<(f64, f64)> = profile
        .iter()
        .filter(|r| r.radius >= lo && r.radius <= hi && r.radius > 0 && r.symmetric_boundary_weight > 0)
        .map(|r| ((r.radius as f64).ln(), to_f64(&r.ratio).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(-sxy / sxx)
}

impl ProfileRow {
    pub fn to_json(&self) -> Value {
        json!({
            "radius": self.radius,
            "window_weight": self.window_weight.to_string(),
            "boundary_weight": self.boundary_weight.to_string(),
            "symmetric_boundary_weight": self.symmetric_boundary_weight.to_string(),
            "ratio": ratio_json(&self.ratio),
            "ratio_decimal": to_f64(&self.ratio),
        })
    }
}

impl FolnerCertificate {
    pub fn to_json(&self, ring: &FusionRing) -> Value {
        json!({
            "kind": "folner_certificate",
            "ring": ring.tag(),
            "S": ring.labels_to_json(&self.s),
            "epsilon": ratio_json(&self.epsilon),
            "F": ring.labels_to_json(&self.window),
            "boundary_weight": self.boundary_weight.to_string(),
            "window_weight": self.window_weight.to_string(),
            "ratio": ratio_json(&ratio(self.boundary_weight, self.window_weight)),
            "strategy": self.strategy,
            "radius": self.radius,
        })
    }
}

impl ExhaustionReport {
    pub fn to_json(&self, ring: &FusionRing) -> Value {
        json!({
            "kind": "exhaustion_report",
            "ring": ring.tag(),
            "S": ring.labels_to_json(&self.s),
            "epsilon": ratio_json(&self.epsilon),
            "strategy": self.strategy,
            "profile": self.profile.iter().map(ProfileRow::to_json).collect::<Vec<_>>(),
        })
    }
}

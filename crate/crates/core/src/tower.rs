//! Quotient towers of discrete groups, local injectivity and the
//! approximation of kernel dimensions by finite quotients.

use num::{BigInt, BigRational, Signed};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion::{Factor, FusionRing, GroupLaw, IrrepSet, Label, Side};
use crate::polalg::{json::element_to_value, AlgebraElement, BasisIndex, MatrixOverPol, PolAlgebra};
use crate::reldim::{exact_mvn_dim_finite, kernel_dim_estimate_sided, ratio_json, to_f64, DimensionEstimate};
use crate::scalar::Scalar;

/// Surjection between group algebras that reduces coordinates modulo the
/// target's moduli.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: PolAlgebra,
    target: PolAlgebra,
}

fn law(alg: &PolAlgebra) -> Result<&GroupLaw> {
    alg.ring()
        .group_law()
        .ok_or_else(|| Error::Precondition(format!("{} is not a group algebra", alg.tag())))
}

/// `Some(m)` for ℤ/m, `None` for ℤ.
fn modulus(f: &Factor) -> Option<i64> {
    match f {
        Factor::Free => None,
        Factor::Cyclic(m) => Some(*m),
    }
}

/// A coordinate mod `from` can be reduced mod `to` when `to | from`.
fn reducible(from: Option<i64>, to: Option<i64>) -> bool {
    match (from, to) {
        (_, None) => from.is_none(),
        (None, Some(_)) => true,
        (Some(a), Some(b)) => a % b == 0,
    }
}

impl QuotientMap {
    pub fn new(source: &PolAlgebra, target: &PolAlgebra) -> Result<Self> {
        if source.mode() != target.mode() {
            return Err(Error::MixedModes);
        }
        let ok = match (law(source)?, law(target)?) {
            (GroupLaw::Abelian(a), GroupLaw::Abelian(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| reducible(modulus(x), modulus(y)))
            }
            (GroupLaw::Heisenberg { modulus: a }, GroupLaw::Heisenberg { modulus: b }) => reducible(*a, *b),
            _ => false,
        };
        if !ok {
            return Err(Error::Precondition(format!(
                "no reduction map from {} to {}",
                source.tag(),
                target.tag()
            )));
        }
        Ok(QuotientMap {
            source: source.clone(),
            target: target.clone(),
        })
    }

    /// ℤ-factors become ℤ/m, cyclic factors are kept; the Heisenberg group
    /// goes to the Heisenberg group mod `m`.
    pub fn reduction(source: &PolAlgebra, m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition(format!("modulus must be at least 2, got {m}")));
        }
        let target_law = match law(source)? {
            GroupLaw::Abelian(fs) => GroupLaw::Abelian(
                fs.iter()
                    .map(|f| match f {
                        Factor::Free => Factor::Cyclic(m),
                        c => *c,
                    })
                    .collect(),
            ),
            GroupLaw::Heisenberg { modulus: None } => GroupLaw::Heisenberg { modulus: Some(m) },
            GroupLaw::Heisenberg { modulus: Some(_) } => {
                return Err(Error::Precondition("source is already finite".into()))
            }
        };
        let target = PolAlgebra::with_mode(FusionRing::group(target_law), source.mode())?;
        Self::new(source, &target)
    }

    pub fn source(&self) -> &PolAlgebra {
        &self.source
    }

    pub fn target(&self) -> &PolAlgebra {
        &self.target
    }

    pub fn push_label(&self, u: Label) -> Label {
        law(&self.target).expect("group target").canonicalize(u)
    }

    pub fn push_set(&self, set: &IrrepSet) -> IrrepSet {
        set.iter().map(|u| self.push_label(*u)).collect()
    }

    pub fn push_element(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.source.check_same(a.algebra())?;
        AlgebraElement::from_terms(
            &self.target,
            a.terms()
                .map(|(idx, c)| (BasisIndex::scalar(self.push_label(idx.label)), c.clone())),
        )
    }

    pub fn push_matrix(&self, t: &MatrixOverPol) -> Result<MatrixOverPol> {
        t.try_map(&self.target, |e| self.push_element(e))
    }

    /// Whether the map is injective on `set`.
    pub fn is_injective_on(&self, set: &IrrepSet) -> bool {
        self.push_set(set).len() == set.len()
    }
}

/// Local injectivity of `map` on `F`.
pub fn local_injectivity_check(map: &QuotientMap, window: &IrrepSet) -> bool {
    map.is_injective_on(window)
}

/// Maps `π_i` from one source onto finite levels with moduli dividing one
/// another.
#[derive(Clone, Debug)]
pub struct QuotientTower {
    source: PolAlgebra,
    moduli: Vec<i64>,
    levels: Vec<QuotientMap>,
}

impl QuotientTower {
    pub fn new(source: &PolAlgebra, moduli: &[i64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Precondition("tower needs at least one modulus".into()));
        }
        for w in moduli.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Precondition(format!(
                    "moduli must divide their successors: {} ∤ {}",
                    w[0], w[1]
                )));
            }
        }
        let levels = moduli
            .iter()
            .map(|&m| QuotientMap::reduction(source, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientTower {
            source: source.clone(),
            moduli: moduli.to_vec(),
            levels,
        })
    }

    pub fn source(&self) -> &PolAlgebra {
        &self.source
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn levels(&self) -> &[QuotientMap] {
        &self.levels
    }

    /// `π_{ij}`: level `j` onto level `i` for `i ≤ j`.
    pub fn connecting(&self, i: usize, j: usize) -> Result<QuotientMap> {
        if i > j || j >= self.levels.len() {
            return Err(Error::Precondition(format!("no connecting map {j} → {i}")));
        }
        QuotientMap::new(self.levels[j].target(), self.levels[i].target())
    }

    /// Checks `π_i = π_{ij} ∘ π_j` on `labels` for all `i ≤ j`.
    pub fn check_composition(&self, labels: &IrrepSet) -> Result<()> {
        for j in 0..self.levels.len() {
            for i in 0..=j {
                let pij = self.connecting(i, j)?;
                for &u in labels {
                    if self.levels[i].push_label(u) != pij.push_label(self.levels[j].push_label(u)) {
                        return Err(Error::Certification(format!(
                            "tower is not compatible at levels {i} ≤ {j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Ω = F ∪ S ∪ ⋃_{x∈F, s∈S} supp(x ⊠ s)`.
pub fn omega_set(ring: &FusionRing, window: &IrrepSet, s: &IrrepSet) -> Result<IrrepSet> {
    let mut out = window.union(s);
    for &x in window {
        for &v in s {
            for (w, _) in ring.product_support(x, v)? {
                out.insert(w);
            }
        }
    }
    Ok(out)
}

/// `h_{𝔾_i}(π_i(a))` along the tower.
pub fn haar_approx_sequence(a: &AlgebraElement, tower: &QuotientTower) -> Result<Vec<Scalar>> {
    tower
        .levels()
        .iter()
        .map(|m| Ok(m.push_element(a)?.haar_state()))
        .collect()
}

#[derive(Clone, Debug)]
pub struct HaarReport {
    pub source_value: Scalar,
    pub values: Vec<Scalar>,
    /// `supp(a) ∪ {e}`
    pub omega: IrrepSet,
    pub injective: Vec<bool>,
    pub first_injective: Option<usize>,
    /// Every value from the first Ω-injective level on equals `h(a)`.
    pub eventually_equal: bool,
}

pub fn haar_report(a: &AlgebraElement, tower: &QuotientTower) -> Result<HaarReport> {
    let values = haar_approx_sequence(a, tower)?;
    let mut omega = a.support();
    omega.insert(a.algebra().ring().unit());
    let injective: Vec<bool> = tower.levels().iter().map(|m| m.is_injective_on(&omega)).collect();
    let first_injective = injective.iter().position(|&b| b);
    let source_value = a.haar_state();
    let eventually_equal = match first_injective {
        Some(k) => values[k..].iter().all(|v| *v == source_value),
        None => false,
    };
    Ok(HaarReport {
        source_value,
        values,
        omega,
        injective,
        first_injective,
        eventually_equal,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityChecks {
    /// `supp(π(T)) = π(supp T)`
    pub support: bool,
    /// `π(∂_S F) = ∂_{S_i} F_i`
    pub boundary: bool,
    /// weighted sizes of `F`, `∂_S F`, `int_S F`, `S`, `Ω` are preserved
    pub weights: bool,
    /// `|lower − dim_i| ≤ 2n |∂_S F| / |F|`
    pub bound: bool,
}

impl IdentityChecks {
    pub fn all(&self) -> bool {
        self.support && self.boundary && self.weights && self.bound
    }
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub modulus: i64,
    pub target: String,
    pub injective: bool,
    pub quotient_dim: Option<BigRational>,
    pub checks: Option<IdentityChecks>,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TowerReport {
    pub side: Side,
    pub estimate: DimensionEstimate,
    /// `2n |∂_S F| / |F|`
    pub bound: BigRational,
    pub omega: IrrepSet,
    pub levels: Vec<LevelReport>,
    pub first_injective: Option<usize>,
}

impl TowerReport {
    /// Every Ω-injective level passed all identity checks.
    pub fn identities_hold(&self) -> bool {
        self.levels
            .iter()
            .filter(|l| l.injective)
            .all(|l| l.checks.as_ref().is_some_and(IdentityChecks::all))
    }
}

fn level_report(
    t: &MatrixOverPol,
    map: &QuotientMap,
    modulus: i64,
    side: Side,
    window: &IrrepSet,
    omega: &IrrepSet,
    est: &DimensionEstimate,
    bound: &BigRational,
) -> Result<LevelReport> {
    let ti = map.push_matrix(t)?;
    let injective = map.is_injective_on(omega);
    let dim = exact_mvn_dim_finite(&ti, side, None)?;
    let checks = if injective {
        let ring = t.algebra().ring();
        let qring = map.target().ring();
        let s = t.support();
        let si = ti.support();
        let dec = ring.boundary_decomposition_sided(window, &s, side)?;
        let fi = map.push_set(window);
        let deci = qring.boundary_decomposition_sided(&fi, &si, side)?;
        let mut weights = true;
        for e in [window, &dec.boundary, &dec.interior, &s, omega] {
            weights &= ring.weighted_size(e)? == qring.weighted_size(&map.push_set(e))?;
        }
        Some(IdentityChecks {
            support: si == map.push_set(&s),
            boundary: map.push_set(&dec.boundary) == deci.boundary,
            weights,
            bound: (&est.lower - &dim).abs() <= *bound,
        })
    } else {
        None
    };
    Ok(LevelReport {
        modulus,
        target: map.target().tag().to_string(),
        injective,
        quotient_dim: Some(dim),
        checks,
        error: None,
    })
}

/// Per-level quotient dimensions with the local-injectivity identities and
/// the transport bound, for `T` on the tower's source and a window `F`.
pub fn tower_kernel_dims(
    t: &MatrixOverPol,
    tower: &QuotientTower,
    window: &IrrepSet,
    side: Side,
) -> Result<TowerReport> {
    tower.source().check_same(t.algebra())?;
    let s = t.support();
    if s.is_empty() {
        return Err(Error::Precondition("T = 0 has empty support".into()));
    }
    let ring = t.algebra().ring();
    let estimate = kernel_dim_estimate_sided(t, window, side, None)?;
    let two_n = BigRational::from_integer(BigInt::from(2 * t.n()));
    let bound = &two_n * &estimate.boundary_ratio;
    let omega = omega_set(ring, window, &s)?;
    tower.check_composition(&omega)?;
    let levels: Vec<LevelReport> = tower
        .levels()
        .par_iter()
        .zip(tower.moduli().par_iter())
        .map(|(map, &m)| {
            level_report(t, map, m, side, window, &omega, &estimate, &bound).unwrap_or_else(|e| LevelReport {
                modulus: m,
                target: map.target().tag().to_string(),
                injective: map.is_injective_on(&omega),
                quotient_dim: None,
                checks: None,
                error: Some(e.to_string()),
            })
        })
        .collect();
    let first_injective = levels.iter().position(|l| l.injective);
    Ok(TowerReport {
        side,
        estimate,
        bound,
        omega,
        levels,
        first_injective,
    })
}

impl TowerReport {
    pub fn to_json(&self, ring: &FusionRing, algebra: &PolAlgebra) -> Value {
        json!({
            "kind": "tower_report",
            "side": self.side,
            "estimate": self.estimate.to_json(algebra),
            "bound": ratio_json(&self.bound),
            "omega": ring.labels_to_json(&self.omega),
            "first_injective": self.first_injective,
            "identities_hold": self.identities_hold(),
            "levels": self.levels.iter().map(|l| json!({
                "modulus": l.modulus,
                "target": l.target,
                "injective": l.injective,
                "quotient_dim": l.quotient_dim.as_ref().map(ratio_json),
                "quotient_dim_decimal": l.quotient_dim.as_ref().map(to_f64),
                "checks": l.checks.as_ref().map(|c| json!({
                    "support": c.support,
                    "boundary": c.boundary,
                    "weights": c.weights,
                    "bound": c.bound,
                })),
                "error": l.error,
            })).collect::<Vec<_>>(),
        })
    }
}

impl HaarReport {
    pub fn to_json(&self, a: &AlgebraElement) -> Value {
        let s = |x: &Scalar| x.to_string();
        json!({
            "kind": "haar_report",
            "a": element_to_value(a),
            "source_value": s(&self.source_value),
            "values": self.values.iter().map(s).collect::<Vec<_>>(),
            "injective": self.injective,
            "first_injective": self.first_injective,
            "eventually_equal": self.eventually_equal,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reldim::ratio;

    fn z() -> PolAlgebra {
        PolAlgebra::parse("group:Z").unwrap()
    }

    fn window(n: i64) -> IrrepSet {
        (-n..=n).map(Label::scalar).collect()
    }

    #[test]
    fn omega_examples() {
        let ring = FusionRing::parse("group:Z").unwrap();
        let s: IrrepSet = [Label::ZERO, Label::scalar(1)].into_iter().collect();
        let w: IrrepSet = (-2..=2).map(Label::scalar).collect();
        assert_eq!(omega_set(&ring, &w, &s).unwrap(), (-2..=3).map(Label::scalar).collect());
        let su2 = FusionRing::su2();
        let f: IrrepSet = [Label::scalar(0), Label::scalar(1)].into_iter().collect();
        assert_eq!(
            omega_set(&su2, &f, &IrrepSet::singleton(Label::scalar(1))).unwrap(),
            (0..=2).map(Label::scalar).collect()
        );
    }

    #[test]
    fn injectivity() {
        for m in 2..12 {
            let q = QuotientMap::reduction(&z(), m).unwrap();
            for n in 0..5 {
                assert_eq!(local_injectivity_check(&q, &window(n)), m >= 2 * n + 1);
            }
        }
        let q3 = QuotientMap::reduction(&z(), 3).unwrap();
        let f: IrrepSet = [Label::ZERO, Label::scalar(3)].into_iter().collect();
        assert!(!local_injectivity_check(&q3, &f));
        assert!(local_injectivity_check(&q3, &IrrepSet::singleton(Label::ZERO)));
    }

    #[test]
    fn haar_sequence_for_g_cubed() {
        let a = AlgebraElement::from_group_ints(&z(), &[(Label::scalar(3), 1)]).unwrap();
        let t = QuotientTower::new(&z(), &[3, 9]).unwrap();
        let v = haar_approx_sequence(&a, &t).unwrap();
        assert!(!v[0].is_zero() && v[1].is_zero());
        let t = QuotientTower::new(&z(), &[2, 4, 8, 16]).unwrap();
        assert!(haar_approx_sequence(&a, &t).unwrap().iter().all(Scalar::is_zero));
        assert!(QuotientTower::new(&z(), &[2, 3]).is_err());
    }

    #[test]
    fn projection_tower_is_constant() {
        let alg = PolAlgebra::parse("group:ZxZ/2").unwrap();
        let half = Scalar::from_ratio(alg.mode(), 1, 2);
        let a = AlgebraElement::from_terms(
            &alg,
            [
                (BasisIndex::scalar(Label::ZERO), half.clone()),
                (BasisIndex::scalar(Label::pair(0, 1)), half),
            ],
        )
        .unwrap();
        let tower = QuotientTower::new(&alg, &[3, 9, 27]).unwrap();
        let w: IrrepSet = (-1..=1).flat_map(|k| [Label::pair(k, 0), Label::pair(k, 1)]).collect();
        let r = tower_kernel_dims(&MatrixOverPol::scalar(a), &tower, &w, Side::Right).unwrap();
        for l in &r.levels {
            assert_eq!(l.quotient_dim, Some(ratio(1, 2)));
        }
        assert!(r.identities_hold());
    }
}

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::fusion::{s3, IrrepSet, Label, Provider};
use crate::scalar::{GaussRat, Scalar, ScalarMode};

use super::cg::{index, weight};
use super::{BasisIndex, PolAlgebra};

/// Finitely supported element `Σ t^α_{ij} u^α_{ij}` of Pol(𝔾).
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: PolAlgebra,
    terms: BTreeMap<BasisIndex, Scalar>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.algebra.ring();
        let mut first = true;
        write!(f, "[{}] ", self.algebra.tag())?;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·u[{}]({},{})", ring.label_string(idx.label), idx.row, idx.col)?;
        }
        Ok(())
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.terms == other.terms
    }
}

fn accumulate(map: &mut BTreeMap<BasisIndex, Scalar>, idx: BasisIndex, value: Scalar) {
    match map.get_mut(&idx) {
        Some(slot) => *slot = &*slot + &value,
        None => {
            map.insert(idx, value);
        }
    }
}

fn prune(map: &mut BTreeMap<BasisIndex, Scalar>) {
    map.retain(|_, v| !v.is_zero());
}

impl AlgebraElement {
    pub fn zero(algebra: &PolAlgebra) -> Self {
        AlgebraElement {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit `u^e_{11}`.
    pub fn unit(algebra: &PolAlgebra) -> Self {
        Self::basis(algebra, BasisIndex::scalar(algebra.ring().unit())).expect("unit is valid")
    }

    pub fn basis(algebra: &PolAlgebra, idx: BasisIndex) -> Result<Self> {
        Self::from_terms(algebra, [(idx, Scalar::one(algebra.mode()))])
    }

    /// `c · u^g_{11}` for a one-dimensional label `g`.
    pub fn monomial(algebra: &PolAlgebra, label: Label, coef: Scalar) -> Result<Self> {
        Self::from_terms(algebra, [(BasisIndex::scalar(label), coef)])
    }

    /// Sums repeated indices and drops zero coefficients.
    pub fn from_terms(
        algebra: &PolAlgebra,
        terms: impl IntoIterator<Item = (BasisIndex, Scalar)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (idx, c) in terms {
            algebra.validate_index(idx)?;
            if c.mode() != algebra.mode() {
                return Err(Error::MixedModes);
            }
            if let Scalar::Float(z) = &c {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite);
                }
            }
            accumulate(&mut map, idx, c);
        }
        prune(&mut map);
        Ok(AlgebraElement {
            algebra: algebra.clone(),
            terms: map,
        })
    }

    /// Group-algebra convenience: `Σ c_g g` with integer coefficients.
    pub fn from_group_ints(algebra: &PolAlgebra, terms: &[(Label, i64)]) -> Result<Self> {
        let mode = algebra.mode();
        Self::from_terms(
            algebra,
            terms
                .iter()
                .map(|&(g, c)| (BasisIndex::scalar(g), Scalar::from_i64(mode, c))),
        )
    }

    pub fn algebra(&self) -> &PolAlgebra {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, idx: BasisIndex) -> Scalar {
        self.terms
            .get(&idx)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.algebra.mode()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> IrrepSet {
        self.terms.keys().map(|k| k.label).collect()
    }

    fn combine(&self, other: &Self, sign: bool) -> Result<Self> {
        self.algebra.check_same(&other.algebra)?;
        let mut map = self.terms.clone();
        for (idx, c) in &other.terms {
            accumulate(&mut map, *idx, if sign { c.clone() } else { -c });
        }
        prune(&mut map);
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            terms: map,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.mode() != self.algebra.mode() {
            return Err(Error::MixedModes);
        }
        let mut map: BTreeMap<_, _> = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        prune(&mut map);
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            terms: map,
        })
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.algebra.check_same(&other.algebra)?;
        let mut map = BTreeMap::new();
        if !self.is_zero() && !other.is_zero() {
            match self.algebra.ring().provider() {
                Provider::Group(law) => {
                    for (i1, c1) in &self.terms {
                        for (i2, c2) in &other.terms {
                            let w = law.mul(i1.label, i2.label);
                            accumulate(&mut map, BasisIndex::scalar(w), c1 * c2);
                        }
                    }
                }
                Provider::S3 => {
                    let (f, g) = (s3_evaluate(self), s3_evaluate(other));
                    let h: Vec<Complex64> = f.iter().zip(&g).map(|(x, y)| x * y).collect();
                    map = s3_expand(&h);
                }
                Provider::Su2 => {
                    for (i1, c1) in &self.terms {
                        for (i2, c2) in &other.terms {
                            let x = (c1 * c2).to_complex();
                            self.su2_product_into(&mut map, *i1, *i2, x);
                        }
                    }
                }
            }
        }
        prune(&mut map);
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            terms: map,
        })
    }

    fn su2_product_into(
        &self,
        map: &mut BTreeMap<BasisIndex, Scalar>,
        x: BasisIndex,
        y: BasisIndex,
        coef: Complex64,
    ) {
        let (a, b) = (x.label.0[0], y.label.0[0]);
        let mm = weight(a, x.row) + weight(b, y.row);
        let nn = weight(a, x.col) + weight(b, y.col);
        for c in ((a - b).abs()..=a + b).step_by(2) {
            if mm.abs() > c || nn.abs() > c {
                continue;
            }
            let t = self.algebra.cg_table(a, b, c);
            let w = t.get(x.row, y.row) * t.get(x.col, y.col);
            if w == 0.0 {
                continue;
            }
            let idx = BasisIndex::new(Label::scalar(c), index(c, mm), index(c, nn));
            accumulate(map, idx, Scalar::Float(coef * w));
        }
    }

    /// The involution of Pol(𝔾).
    pub fn star(&self) -> Self {
        let mut map = BTreeMap::new();
        match self.algebra.ring().provider() {
            Provider::Group(law) => {
                for (idx, c) in &self.terms {
                    accumulate(&mut map, BasisIndex::scalar(law.inv(idx.label)), c.conj());
                }
            }
            Provider::S3 => {
                let f: Vec<Complex64> = s3_evaluate(self).iter().map(|z| z.conj()).collect();
                map = s3_expand(&f);
            }
            Provider::Su2 => {
                // conj(u^a_{ij}) = (−1)^{m_i − m_j} u^a_{ī j̄}, ī the index of weight −m_i
                for (idx, c) in &self.terms {
                    let a = idx.label.0[0];
                    let sign = if (idx.col as i64 - idx.row as i64) % 2 == 0 { 1.0 } else { -1.0 };
                    let row = (a + 2) as u32 - idx.row;
                    let col = (a + 2) as u32 - idx.col;
                    accumulate(
                        &mut map,
                        BasisIndex::new(idx.label, row, col),
                        Scalar::Float(c.conj().to_complex() * sign),
                    );
                }
            }
        }
        prune(&mut map);
        AlgebraElement {
            algebra: self.algebra.clone(),
            terms: map,
        }
    }

    /// Haar state: the coefficient of `u^e_{11}`.
    pub fn haar_state(&self) -> Scalar {
        self.coefficient(BasisIndex::scalar(self.algebra.ring().unit()))
    }

    /// `⟨a, b⟩ = Σ conj(a_{αij}) b_{αij} / n_α`.
    pub fn inner_product(&self, other: &Self) -> Result<Scalar> {
        self.algebra.check_same(&other.algebra)?;
        let ring = self.algebra.ring();
        let mode = self.algebra.mode();
        let mut acc = Scalar::zero(mode);
        for (idx, c) in &self.terms {
            if let Some(d) = other.terms.get(idx) {
                let n = ring.dim_unchecked(idx.label) as i64;
                let w = Scalar::from_ratio(mode, 1, n);
                acc = &acc + &(&(&c.conj() * d) * &w);
            }
        }
        Ok(acc)
    }

    /// `‖a‖₂² = ⟨a, a⟩` as a float.
    pub fn norm_sqr(&self) -> f64 {
        let ring = self.algebra.ring();
        self.terms
            .iter()
            .map(|(idx, c)| c.to_complex().norm_sqr() / ring.dim_unchecked(idx.label) as f64)
            .sum()
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_complex().norm())
            .fold(0.0, f64::max)
    }

    /// Exact equality in exact mode; coefficientwise within `tol` in float mode.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match self.sub(other) {
            Ok(d) => match self.algebra.mode() {
                ScalarMode::Exact => d.is_zero(),
                ScalarMode::Float => d.max_abs() <= tol,
            },
            Err(_) => false,
        }
    }

    /// Exact coefficients, when in exact mode.
    pub fn exact_terms(&self) -> Option<Vec<(BasisIndex, GaussRat)>> {
        self.terms
            .iter()
            .map(|(k, v)| v.as_exact().map(|q| (*k, q.clone())))
            .collect()
    }
}

/// Values of the function `a` at the six elements of S₃.
fn s3_evaluate(a: &AlgebraElement) -> Vec<Complex64> {
    s3::elements()
        .iter()
        .map(|&g| {
            a.terms
                .iter()
                .map(|(idx, c)| {
                    let n = s3::dim(idx.label) as usize;
                    let m = s3::irrep_matrix(idx.label, g);
                    c.to_complex() * m[(idx.row as usize - 1) * n + idx.col as usize - 1]
                })
                .sum()
        })
        .collect()
}

/// Inverse of [`s3_evaluate`] by Schur orthogonality:
/// `t^α_{ij} = (n_α/6) Σ_g conj(π^α_{ij}(g)) f(g)`.
fn s3_expand(f: &[Complex64]) -> BTreeMap<BasisIndex, Scalar> {
    let mut map = BTreeMap::new();
    let elems = s3::elements();
    for u in s3::LABELS {
        let n = s3::dim(u) as usize;
        let mats: Vec<Vec<Complex64>> = elems.iter().map(|&g| s3::irrep_matrix(u, g)).collect();
        for i in 0..n {
            for j in 0..n {
                let t: Complex64 = mats
                    .iter()
                    .zip(f)
                    .map(|(m, fg)| m[i * n + j].conj() * fg)
                    .sum::<Complex64>()
                    * (n as f64 / 6.0);
                let s = Scalar::Float(t);
                if !s.is_zero() {
                    map.insert(BasisIndex::new(u, i as u32 + 1, j as u32 + 1), s);
                }
            }
        }
    }
    map
}

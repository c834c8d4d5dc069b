//! Weighted isoperimetry: interiors, boundaries, coboundaries and balls.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{FusionRing, IrrepSet, Label, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDecomposition {
    pub interior: IrrepSet,
    pub boundary: IrrepSet,
    /// `∂_S(F^c)`
    pub coboundary: IrrepSet,
    pub symmetric_boundary: IrrepSet,
}

impl FusionRing {
    /// `|F| = Σ_{u∈F} n_u²`.
    pub fn weighted_size(&self, set: &IrrepSet) -> Result<u128> {
        self.validate_set(set)?;
        Ok(set
            .iter()
            .map(|u| {
                let n = self.dim_unchecked(*u) as u128;
                n * n
            })
            .sum())
    }

    fn product_on(&self, side: Side, u: Label, v: Label) -> impl Iterator<Item = Label> {
        match side {
            Side::Right => self.fuse_support(u, v),
            Side::Left => self.fuse_support(v, u),
        }
    }

    /// Interior, boundary, coboundary and symmetric boundary of `window`
    /// relative to `s`, using right products `u ⊠ v`.
    pub fn boundary_decomposition(
        &self,
        window: &IrrepSet,
        s: &IrrepSet,
    ) -> Result<BoundaryDecomposition> {
        self.boundary_decomposition_sided(window, s, Side::Right)
    }

    /// As [`Self::boundary_decomposition`]; with `Side::Left` the products are
    /// taken as `v ⊠ u` for `v ∈ S`.
    pub fn boundary_decomposition_sided(
        &self,
        window: &IrrepSet,
        s: &IrrepSet,
        side: Side,
    ) -> Result<BoundaryDecomposition> {
        if s.is_empty() {
            return Err(Error::Precondition("boundary relative to an empty set S".into()));
        }
        self.validate_set(window)?;
        self.validate_set(s)?;
        let mut interior = IrrepSet::new();
        let mut boundary = IrrepSet::new();
        for &u in window {
            let inside = s
                .iter()
                .all(|&v| self.product_on(side, u, v).all(|w| window.contains(&w)));
            if inside {
                interior.insert(u);
            } else {
                boundary.insert(u);
            }
        }
        // Frobenius reciprocity: N_{uv}^w = N_{w v̄}^u (right), N_{vu}^w = N_{v̄ w}^u (left).
        let mut coboundary = IrrepSet::new();
        for &w in window {
            for &v in s {
                let vb = self.conj_unchecked(v);
                for u in self.product_on(side, w, vb) {
                    if !window.contains(&u) {
                        coboundary.insert(u);
                    }
                }
            }
        }
        let symmetric_boundary = boundary.union(&coboundary);
        Ok(BoundaryDecomposition {
            interior,
            boundary,
            coboundary,
            symmetric_boundary,
        })
    }

    pub fn conjugate_set(&self, set: &IrrepSet) -> Result<IrrepSet> {
        self.validate_set(set)?;
        Ok(set.iter().map(|u| self.conj_unchecked(*u)).collect())
    }

    pub fn conjugation_closure(&self, set: &IrrepSet) -> Result<IrrepSet> {
        Ok(set.union(&self.conjugate_set(set)?))
    }

    pub fn is_conjugation_closed(&self, set: &IrrepSet) -> bool {
        set.iter().all(|u| set.contains(&self.conj_unchecked(*u)))
    }

    /// Union of supports of all products of at most `radius` factors from
    /// `S ∪ S̄ ∪ {e}`.
    pub fn ball(&self, s: &IrrepSet, radius: usize) -> Result<IrrepSet> {
        Ok(self
            .ball_layers(s, radius)?
            .into_iter()
            .flat_map(|l| l.into_iter())
            .collect())
    }

    /// Ball split into layers by the word length at which each label first
    /// appears. Layer 0 is `{e}`.
    pub fn ball_layers(&self, s: &IrrepSet, radius: usize) -> Result<Vec<IrrepSet>> {
        let mut gens = self.conjugation_closure(s)?;
        gens.insert(self.unit());
        let mut seen = IrrepSet::singleton(self.unit());
        let mut layers = vec![seen.clone()];
        let mut frontier = seen.clone();
        for _ in 0..radius {
            let mut next = IrrepSet::new();
            for &u in &frontier {
                for &g in &gens {
                    for w in self.fuse_support(u, g) {
                        if !seen.contains(&w) {
                            next.insert(w);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            seen = seen.union(&next);
            layers.push(next.clone());
            frontier = next;
        }
        Ok(layers)
    }

    /// Word-length rank of each label of a ball, for ordering bases.
    pub fn ball_rank(&self, s: &IrrepSet, radius: usize) -> Result<BTreeMap<Label, usize>> {
        let mut rank = BTreeMap::new();
        for (k, layer) in self.ball_layers(s, radius)?.into_iter().enumerate() {
            for u in layer {
                rank.insert(u, k);
            }
        }
        Ok(rank)
    }
}

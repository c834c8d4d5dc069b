use serde::Serialize;

use crate::error::Result;

use super::{FusionRing, IrrepSet, Label};

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub ring: String,
    pub labels: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn multiplicity(ring: &FusionRing, u: Label, v: Label, w: Label) -> u64 {
    ring.fuse_unchecked(u, v)
        .into_iter()
        .find(|(x, _)| *x == w)
        .map_or(0, |(_, m)| m)
}

/// Checks the unit law, conjugation, dimension multiplicativity and Frobenius
/// reciprocity on every pair of `labels`, with `w` ranging over the product
/// support and over `labels` itself.
pub fn check_axioms(ring: &FusionRing, labels: &IrrepSet) -> Result<AxiomReport> {
    ring.validate_set(labels)?;
    let mut report = AxiomReport {
        ring: ring.tag().to_string(),
        labels: labels.len(),
        ..Default::default()
    };
    let e = ring.unit();
    if ring.dim(e)? != 1 {
        report.failures.push("n_e != 1".into());
    }
    for &u in labels {
        let ub = ring.conj(u)?;
        if ring.dim(ub)? != ring.dim(u)? {
            report.failures.push(format!("n of conjugate differs at {u:?}"));
        }
        if ring.conj(ub)? != u {
            report.failures.push(format!("conjugation not involutive at {u:?}"));
        }
        if ring.product_support(e, u)? != vec![(u, 1)] || ring.product_support(u, e)? != vec![(u, 1)] {
            report.failures.push(format!("unit law fails at {u:?}"));
        }
    }
    for &u in labels {
        for &v in labels {
            report.pairs_checked += 1;
            let prod = ring.product_support(u, v)?;
            let total: u128 = prod
                .iter()
                .map(|(w, m)| *m as u128 * ring.dim_unchecked(*w) as u128)
                .sum();
            let expected = ring.dim_unchecked(u) as u128 * ring.dim_unchecked(v) as u128;
            if total != expected {
                report.failures.push(format!(
                    "dimension multiplicativity fails for {u:?} x {v:?}: {total} != {expected}"
                ));
            }
            let (ub, vb) = (ring.conj_unchecked(u), ring.conj_unchecked(v));
            let mut targets: IrrepSet = prod.iter().map(|(w, _)| *w).collect();
            targets = targets.union(labels);
            for &w in &targets {
                report.triples_checked += 1;
                let n = multiplicity(ring, u, v, w);
                let n1 = multiplicity(ring, w, vb, u);
                let n2 = multiplicity(ring, ub, w, v);
                if n != n1 || n != n2 {
                    report.failures.push(format!(
                        "Frobenius reciprocity fails for ({u:?},{v:?},{w:?}): {n},{n1},{n2}"
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_satisfy_axioms() {
        let su2 = FusionRing::su2();
        let labels: IrrepSet = (0..=12).map(Label::scalar).collect();
        assert!(check_axioms(&su2, &labels).unwrap().ok());
        let s3 = FusionRing::s3();
        assert!(check_axioms(&s3, &s3.elements().unwrap()).unwrap().ok());
        let h = FusionRing::parse("group:heisenberg").unwrap();
        let ball = h.ball(&h.generators(), 2).unwrap();
        assert!(check_axioms(&h, &ball).unwrap().ok());
    }
}

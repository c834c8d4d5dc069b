use proptest::prelude::*;

use folnerlab::exactla::{exact_nullspace, exact_rank_nullity, rank_nullity, ExactEngine, ExactMatrix};
use folnerlab::fusion::{FusionRing, IrrepSet, Label, Side};
use folnerlab::polalg::json::{element_from_str, element_to_string};
use folnerlab::polalg::{restricted_mult_matrix, AlgebraElement, BasisIndex, MatrixOverPol, PolAlgebra};
use folnerlab::reldim::kernel_dim_estimate_sided;
use folnerlab::scalar::{GaussRat, Scalar};

fn heis_element(terms: Vec<((i64, i64, i64), i64, i64, i64)>) -> AlgebraElement {
    let alg = PolAlgebra::parse("group:heisenberg").unwrap();
    AlgebraElement::from_terms(
        &alg,
        terms.into_iter().map(|((a, b, c), p, d, im)| {
            let mut z = GaussRat::from_ratio(p, d);
            z.im = GaussRat::from_int(im).re;
            (BasisIndex::scalar(Label::triple(a, b, c)), Scalar::Exact(z))
        }),
    )
    .unwrap()
}

fn heis_terms() -> impl Strategy<Value = Vec<((i64, i64, i64), i64, i64, i64)>> {
    prop::collection::vec(((-2i64..=2, -2i64..=2, -2i64..=2), -5i64..=5, 1i64..=4, -2i64..=2), 0..5)
}

fn z2_set() -> impl Strategy<Value = IrrepSet> {
    prop::collection::btree_set((-4i64..=4, -4i64..=4), 1..25)
        .prop_map(|s| s.into_iter().map(|(a, b)| Label::pair(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_partitions_window(f in z2_set(), s in z2_set()) {
        let ring = FusionRing::parse("group:Z^2").unwrap();
        for side in [Side::Left, Side::Right] {
            let d = ring.boundary_decomposition_sided(&f, &s, side).unwrap();
            prop_assert_eq!(d.interior.union(&d.boundary), f.clone());
            prop_assert!(d.interior.intersection(&d.boundary).is_empty());
            prop_assert!(d.coboundary.intersection(&f).is_empty());
            prop_assert!(ring.weighted_size(&d.boundary).unwrap() <= ring.weighted_size(&d.symmetric_boundary).unwrap());
        }
    }

    #[test]
    fn su2_boundary_weights(ks in prop::collection::btree_set(0i64..30, 1..12), s in prop::collection::btree_set(1i64..4, 1..3)) {
        let ring = FusionRing::su2();
        let f: IrrepSet = ks.into_iter().map(Label::scalar).collect();
        let s: IrrepSet = s.into_iter().map(Label::scalar).collect();
        let d = ring.boundary_decomposition(&f, &s).unwrap();
        let w = |x: &IrrepSet| ring.weighted_size(x).unwrap();
        prop_assert_eq!(w(&d.interior) + w(&d.boundary), w(&f));
        prop_assert_eq!(w(&d.symmetric_boundary), w(&d.boundary) + w(&d.coboundary));
    }

    #[test]
    fn json_round_trip_is_byte_exact(t in heis_terms()) {
        let a = heis_element(t);
        let text = element_to_string(&a);
        let b = element_from_str(&text).unwrap();
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(element_to_string(&b), text);
    }

    #[test]
    fn heisenberg_multiplication_is_associative(x in heis_terms(), y in heis_terms(), z in heis_terms()) {
        let (a, b, c) = (heis_element(x), heis_element(y), heis_element(z));
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.multiply(&b).unwrap().star(), b.star().multiply(&a.star()).unwrap());
    }

    #[test]
    fn su2_haar_is_positive_and_tracial(cs in prop::collection::vec(-1.0f64..1.0, 14), ds in prop::collection::vec(-1.0f64..1.0, 14)) {
        let alg = PolAlgebra::new(FusionRing::su2());
        let build = |v: &[f64]| {
            let mut terms = Vec::new();
            let mut k = 0;
            for l in 0..=2i64 {
                for i in 1..=(l as u32 + 1) {
                    for j in 1..=(l as u32 + 1) {
                        terms.push((BasisIndex::new(Label::scalar(l), i, j), Scalar::Float(num::complex::Complex64::new(v[k], 0.0))));
                        k += 1;
                    }
                }
            }
            AlgebraElement::from_terms(&alg, terms).unwrap()
        };
        let (x, y) = (build(&cs), build(&ds));
        let h = x.star().multiply(&x).unwrap().haar_state().to_complex();
        prop_assert!(h.re >= -1e-12 && h.im.abs() < 1e-12);
        prop_assert!((h.re - x.norm_sqr()).abs() < 1e-9);
        let xy = x.multiply(&y).unwrap().haar_state().to_complex();
        let yx = y.multiply(&x).unwrap().haar_state().to_complex();
        prop_assert!((xy - yx).norm() < 1e-9);
    }

    #[test]
    fn restricted_rank_plus_nullity(t in heis_terms(), r in 0usize..3) {
        let a = heis_element(t);
        prop_assume!(!a.is_zero());
        let ring = a.algebra().ring();
        let w = ring.conjugation_closure(&ring.ball(&ring.generators(), r).unwrap()).unwrap();
        let op = restricted_mult_matrix(&MatrixOverPol::scalar(a.clone()), &w, Side::Right).unwrap();
        let rn = rank_nullity(&op.matrix, None).unwrap();
        prop_assert_eq!(rn.rank + rn.nullity, op.matrix.cols());
        let est = kernel_dim_estimate_sided(&MatrixOverPol::scalar(a), &w, Side::Right, None).unwrap();
        prop_assert!(est.lower <= est.upper);
        // the Heisenberg group algebra has no zero divisors
        prop_assert_eq!(est.nullity, 0);
    }

    #[test]
    fn exact_engines_agree(rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(-3i64..=3, 49), rank_cap in 1usize..7) {
        // entries of a product of thin factors, so rank deficiency is common
        let k = rank_cap.min(rows).min(cols);
        let m: Vec<Vec<GaussRat>> = (0..rows)
            .map(|i| (0..cols).map(|j| GaussRat::from_int((0..k).map(|t| seed[(i * 7 + t) % 49] * seed[(t * 7 + j + 3) % 49]).sum())).collect())
            .collect();
        let mat = ExactMatrix::from_dense(&m).unwrap();
        let a = exact_rank_nullity(&mat, ExactEngine::FractionFree).unwrap();
        let b = exact_rank_nullity(&mat, ExactEngine::Modular).unwrap();
        prop_assert_eq!(a, b);
        let na = exact_nullspace(&mat, ExactEngine::FractionFree).unwrap();
        let nb = exact_nullspace(&mat, ExactEngine::Modular).unwrap();
        prop_assert_eq!(&na, &nb);
        for v in &na {
            prop_assert!(mat.mul_vec(v).iter().all(GaussRat::is_zero));
        }
    }
}

use num::{BigInt, BigRational, Zero};

use folnerlab::exactla::{exact_nullspace, exact_rank_nullity, ExactEngine, ExactMatrix};
use folnerlab::folner::{folner_search, isoperimetric_profile, FolnerOutcome};
use folnerlab::fusion::{s3, FusionRing, IrrepSet, Label, Side};
use folnerlab::polalg::json::{element_from_str, element_to_string};
use folnerlab::polalg::{AlgebraElement, BasisIndex, MatrixOverPol, PolAlgebra};
use folnerlab::reldim::{exact_mvn_dim_finite, kernel_dim_estimate, kernel_dim_estimate_sided, relative_dimension};
use folnerlab::scalar::{GaussRat, Scalar};
use folnerlab::solvers::{
    kernel_dim_sequence, ore_pair, zero_divisor_search, OreOutcome, ZeroDivisorOutcome,
};
use folnerlab::tower::{haar_approx_sequence, omega_set, tower_kernel_dims, QuotientMap, QuotientTower};

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn labels(ks: impl IntoIterator<Item = i64>) -> IrrepSet {
    ks.into_iter().map(Label::scalar).collect()
}

fn z() -> PolAlgebra {
    PolAlgebra::parse("group:Z").unwrap()
}

fn one_minus_g() -> AlgebraElement {
    AlgebraElement::from_group_ints(&z(), &[(Label::ZERO, 1), (Label::scalar(1), -1)]).unwrap()
}

#[test]
fn weighted_sizes() {
    let su2 = FusionRing::su2();
    assert_eq!(su2.weighted_size(&labels([0])).unwrap(), 1);
    assert_eq!(su2.weighted_size(&labels(0..=2)).unwrap(), 1 + 4 + 9);
    let sym = FusionRing::s3();
    assert_eq!(sym.weighted_size(&sym.elements().unwrap()).unwrap(), 6);
}

#[test]
fn boundary_examples() {
    let su2 = FusionRing::su2();
    let d = su2.boundary_decomposition(&labels(0..=5), &labels([1])).unwrap();
    assert_eq!(d.interior, labels(0..=4));
    assert_eq!(d.boundary, labels([5]));
    assert_eq!(d.coboundary, labels([6]));
    assert_eq!(d.symmetric_boundary, labels([5, 6]));

    let zr = FusionRing::parse("group:Z").unwrap();
    for n in 1..6 {
        let d = zr.boundary_decomposition(&labels(-n..=n), &labels([1, -1])).unwrap();
        assert_eq!(d.boundary, labels([-n, n]));
        assert_eq!(d.coboundary, labels([-n - 1, n + 1]));
    }

    let sym = FusionRing::s3();
    let all = sym.elements().unwrap();
    for s in [IrrepSet::singleton(s3::STD), IrrepSet::singleton(s3::SGN), all.clone()] {
        let d = sym.boundary_decomposition(&all, &s).unwrap();
        assert!(d.boundary.is_empty() && d.coboundary.is_empty());
    }
}

#[test]
fn balls_and_closures() {
    let su2 = FusionRing::su2();
    assert_eq!(su2.ball(&labels([1]), 0).unwrap(), labels([0]));
    assert_eq!(su2.ball(&labels([1]), 3).unwrap(), labels(0..=3));
    let zr = FusionRing::parse("group:Z").unwrap();
    assert_eq!(zr.ball(&labels([1]), 2).unwrap(), labels(-2..=2));
    assert_eq!(su2.conjugation_closure(&labels(0..=2)).unwrap(), labels(0..=2));
    assert_eq!(zr.conjugation_closure(&labels([1, 2])).unwrap(), labels([-2, -1, 1, 2]));
    let sym = FusionRing::s3();
    assert_eq!(sym.conj(s3::STD).unwrap(), s3::STD);
}

#[test]
fn element_examples() {
    let a = one_minus_g();
    assert_eq!(a.support(), labels([0, 1]));
    assert_eq!(AlgebraElement::unit(&z()).multiply(&a).unwrap(), a);
    assert!(AlgebraElement::zero(&z()).support().is_empty());
    let su2 = PolAlgebra::new(FusionRing::su2());
    let b = AlgebraElement::from_terms(
        &su2,
        [
            (BasisIndex::new(Label::scalar(1), 1, 1), Scalar::one(su2.mode())),
            (BasisIndex::scalar(Label::ZERO), Scalar::from_i64(su2.mode(), 2)),
        ],
    )
    .unwrap();
    assert_eq!(b.support(), labels([0, 1]));
    let sym = PolAlgebra::new(FusionRing::s3());
    let u = AlgebraElement::basis(&sym, BasisIndex::new(s3::STD, 1, 1)).unwrap();
    let triv = AlgebraElement::basis(&sym, BasisIndex::scalar(s3::TRIV)).unwrap();
    assert!(u.multiply(&triv).unwrap().approx_eq(&u, 1e-12));
    assert!(u.haar_state().is_zero());
    assert!((u.inner_product(&u).unwrap().to_complex().re - 0.5).abs() < 1e-12);
    let unit = AlgebraElement::unit(&sym);
    assert!((unit.inner_product(&unit).unwrap().to_complex().re - 1.0).abs() < 1e-12);
    for k in [-3, 1, 7] {
        let gk = AlgebraElement::from_group_ints(&z(), &[(Label::scalar(k), 1)]).unwrap();
        assert!(gk.haar_state().is_zero());
    }
}

#[test]
fn json_examples() {
    let text = r#"{"algebra":"group:Z","mode":"exact","terms":[{"irrep":0,"row":1,"col":1,"re":"1","im":"0"},{"irrep":1,"row":1,"col":1,"re":"-1","im":"0"}]}"#;
    let a = element_from_str(text).unwrap();
    assert_eq!(a, one_minus_g());
    assert_eq!(element_from_str(&element_to_string(&a)).unwrap(), a);
    let empty = element_from_str(r#"{"algebra":"group:Z","mode":"exact","terms":[]}"#).unwrap();
    assert!(empty.is_zero());
    let bad = r#"{"algebra":"group:Z","mode":"exact","terms":[{"irrep":0,"row":2,"col":1,"re":"1","im":"0"}]}"#;
    assert!(element_from_str(bad).is_err());
}

#[test]
fn relative_dimension_examples() {
    let sym = PolAlgebra::new(FusionRing::s3());
    let all = sym.ring().elements().unwrap();
    let u = AlgebraElement::basis(&sym, BasisIndex::new(s3::STD, 1, 1)).unwrap();
    assert_eq!(relative_dimension(&sym, &[vec![u]], &all, 1, None).unwrap(), q(1, 6));
    assert_eq!(relative_dimension(&sym, &[], &all, 1, None).unwrap(), q(0, 1));
    // the whole of W_F² has dimension n = 2
    let zr = z();
    let w = labels(-2..=2);
    let mut full = Vec::new();
    for k in -2..=2 {
        let e = AlgebraElement::from_group_ints(&zr, &[(Label::scalar(k), 1)]).unwrap();
        full.push(vec![e.clone(), AlgebraElement::zero(&zr)]);
        full.push(vec![AlgebraElement::zero(&zr), e]);
    }
    assert_eq!(relative_dimension(&zr, &full, &w, 2, None).unwrap(), q(2, 1));
}

#[test]
fn kernel_dim_examples() {
    let t = MatrixOverPol::scalar(one_minus_g());
    for n in 1..8 {
        let e = kernel_dim_estimate(&t, &labels(-n..=n)).unwrap();
        assert!(e.lower.is_zero());
        assert_eq!(e.upper, q(1, 2 * n + 1));
    }
    let z2 = PolAlgebra::parse("group:Z/2").unwrap();
    let half = Scalar::from_ratio(z2.mode(), 1, 2);
    let p = AlgebraElement::from_terms(
        &z2,
        [(BasisIndex::scalar(Label::ZERO), half.clone()), (BasisIndex::scalar(Label::scalar(1)), half)],
    )
    .unwrap();
    let tp = MatrixOverPol::scalar(p);
    let e = kernel_dim_estimate(&tp, &z2.ring().elements().unwrap()).unwrap();
    assert_eq!((e.lower.clone(), e.upper.clone()), (q(1, 2), q(1, 2)));
    assert_eq!(exact_mvn_dim_finite(&tp, Side::Right, None).unwrap(), q(1, 2));

    let zz = PolAlgebra::parse("group:Z^2").unwrap();
    let lap = AlgebraElement::from_group_ints(
        &zz,
        &[
            (Label::pair(0, 0), 4),
            (Label::pair(1, 0), -1),
            (Label::pair(-1, 0), -1),
            (Label::pair(0, 1), -1),
            (Label::pair(0, -1), -1),
        ],
    )
    .unwrap();
    let box5: IrrepSet = (-5..=5).flat_map(|i| (-5..=5).map(move |j| Label::pair(i, j))).collect();
    for side in [Side::Left, Side::Right] {
        let e = kernel_dim_estimate_sided(&MatrixOverPol::scalar(lap.clone()), &box5, side, None).unwrap();
        assert!(e.lower.is_zero());
    }

    for m in [2i64, 3, 5, 8] {
        let zm = PolAlgebra::parse(&format!("group:Z/{m}")).unwrap();
        let a = AlgebraElement::from_group_ints(&zm, &[(Label::ZERO, 1), (Label::scalar(1), -1)]).unwrap();
        assert_eq!(exact_mvn_dim_finite(&MatrixOverPol::scalar(a), Side::Right, None).unwrap(), q(1, m));
    }
    let sym = PolAlgebra::new(FusionRing::s3());
    let unit = MatrixOverPol::scalar(AlgebraElement::unit(&sym));
    assert!(exact_mvn_dim_finite(&unit, Side::Right, None).unwrap().is_zero());
}

#[test]
fn folner_examples() {
    let sym = FusionRing::s3();
    let FolnerOutcome::Certificate(c) =
        folner_search(&sym, &IrrepSet::singleton(s3::STD), &q(1, 10), 5).unwrap()
    else {
        panic!("S3 has a Følner certificate");
    };
    assert_eq!(c.window, sym.elements().unwrap());
    assert_eq!(c.boundary_weight, 0);

    let zr = FusionRing::parse("group:Z").unwrap();
    let FolnerOutcome::Certificate(c) = folner_search(&zr, &labels([1, -1]), &q(1, 10), 50).unwrap() else {
        panic!("Z is amenable");
    };
    assert_eq!(c.window, labels(-20..=20));
    assert_eq!((c.boundary_weight, c.window_weight), (4, 41));

    let su2 = FusionRing::su2();
    let FolnerOutcome::Certificate(c) = folner_search(&su2, &labels([1]), &q(1, 2), 64).unwrap() else {
        panic!("su2 is coamenable");
    };
    let n = c.window.iter().map(|l| l.0[0]).max().unwrap() as u128;
    let sum: u128 = (0..=n).map(|k| (k + 1) * (k + 1)).sum();
    assert_eq!(c.window_weight, sum);
    assert_eq!(c.boundary_weight, (n + 1).pow(2) + (n + 2).pow(2));
    assert!(2 * c.boundary_weight < c.window_weight);

    let rows = isoperimetric_profile(&zr, &labels([1, -1]), 2).unwrap();
    assert_eq!((rows[1].window_weight, rows[1].boundary_weight, rows[1].symmetric_boundary_weight), (3, 2, 4));
    let rows = isoperimetric_profile(&su2, &labels([1]), 5).unwrap();
    assert_eq!((rows[5].window_weight, rows[5].boundary_weight, rows[5].symmetric_boundary_weight), (91, 36, 85));
    let rows = isoperimetric_profile(&su2, &labels([0]), 0).unwrap();
    assert_eq!((rows[0].window_weight, rows[0].boundary_weight, rows[0].symmetric_boundary_weight), (1, 0, 0));
}

#[test]
fn solver_examples() {
    let zz2 = PolAlgebra::parse("group:ZxZ/2").unwrap();
    let e_minus_t = AlgebraElement::from_group_ints(&zz2, &[(Label::pair(0, 0), 1), (Label::pair(0, 1), -1)]).unwrap();
    let ZeroDivisorOutcome::Certificate(c) = zero_divisor_search(&e_minus_t, Side::Left, 1).unwrap() else {
        panic!("e − t is a zero divisor");
    };
    // b ∝ e + t
    let b = c.witness.exact_terms().unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(b[0].1, b[1].1);

    match zero_divisor_search(&one_minus_g(), Side::Left, 6).unwrap() {
        ZeroDivisorOutcome::NotFound(r) => assert!(r.windows.iter().all(|w| w.2 == 0)),
        _ => panic!("1 − g is not a zero divisor"),
    }

    let z2 = PolAlgebra::parse("group:Z/2").unwrap();
    let e_plus_t = AlgebraElement::from_group_ints(&z2, &[(Label::ZERO, 1), (Label::scalar(1), 1)]).unwrap();
    let ZeroDivisorOutcome::Certificate(c) = zero_divisor_search(&e_plus_t, Side::Left, 1).unwrap() else {
        panic!("e + t is a zero divisor");
    };
    let b = c.witness.exact_terms().unwrap();
    assert_eq!(b[0].1, -&b[1].1);

    let lap = AlgebraElement::from_group_ints(&z(), &[(Label::scalar(-1), -1), (Label::ZERO, 2), (Label::scalar(1), -1)])
        .unwrap();
    let seq = kernel_dim_sequence(&lap, Side::Right, &[2, 4, 8, 16]).unwrap();
    let widths: Vec<BigRational> = seq.iter().map(|e| e.estimate.width()).collect();
    assert!(seq.iter().all(|e| e.estimate.lower.is_zero()));
    assert!(widths.windows(2).all(|w| w[1] < w[0]));

    let zr = z();
    let a = AlgebraElement::from_group_ints(&zr, &[(Label::ZERO, 2), (Label::scalar(3), 1)]).unwrap();
    let s = AlgebraElement::from_group_ints(&zr, &[(Label::scalar(-1), 1), (Label::scalar(1), -5)]).unwrap();
    // (t, b) = (s, a) solves a·t = s·b by commutativity
    assert_eq!(a.multiply(&s).unwrap(), s.multiply(&a).unwrap());
    let OreOutcome::Pair(p) = ore_pair(&a, &s, 32, false).unwrap() else { panic!("Ore pair on Z") };
    p.verify().unwrap();
    let OreOutcome::Pair(p) = ore_pair(&AlgebraElement::unit(&zr), &s, 32, false).unwrap() else {
        panic!("Ore pair for the unit");
    };
    assert_eq!(s.multiply(&p.b).unwrap(), p.t);
}

#[test]
fn tower_examples() {
    let zr = z();
    let ring = zr.ring();
    assert_eq!(omega_set(ring, &labels(-2..=2), &labels([0, 1])).unwrap(), labels(-2..=3));
    let f = labels([4, 9]);
    let mut fe = f.clone();
    fe.insert(Label::ZERO);
    assert_eq!(omega_set(ring, &f, &labels([0])).unwrap(), fe);

    let q3 = QuotientMap::reduction(&zr, 3).unwrap();
    assert!(!q3.is_injective_on(&labels([0, 3])));
    assert!(q3.is_injective_on(&labels([0])));

    let g3 = AlgebraElement::from_group_ints(&zr, &[(Label::scalar(3), 1)]).unwrap();
    let vals = haar_approx_sequence(&g3, &QuotientTower::new(&zr, &[2, 4, 8, 16]).unwrap()).unwrap();
    assert!(vals.iter().all(Scalar::is_zero));
    let vals = haar_approx_sequence(&g3, &QuotientTower::new(&zr, &[3, 9]).unwrap()).unwrap();
    assert_eq!(vals, [Scalar::one(zr.mode()), Scalar::zero(zr.mode())]);
    let vals = haar_approx_sequence(&AlgebraElement::unit(&zr), &QuotientTower::new(&zr, &[2, 6]).unwrap()).unwrap();
    assert!(vals.iter().all(|v| *v == Scalar::one(zr.mode())));

    let tower = QuotientTower::new(&zr, &[3, 9, 27]).unwrap();
    let r = tower_kernel_dims(&MatrixOverPol::scalar(AlgebraElement::unit(&zr)), &tower, &labels(-1..=1), Side::Right)
        .unwrap();
    assert!(r.levels.iter().all(|l| l.quotient_dim.as_ref().is_some_and(|d| d.is_zero())));

    let h = PolAlgebra::parse("group:heisenberg").unwrap();
    let x = AlgebraElement::from_group_ints(&h, &[(Label::ZERO, 1), (Label::triple(1, 0, 0), -1)]).unwrap();
    let tower = QuotientTower::new(&h, &[2, 4]).unwrap();
    let w = h.ring().conjugation_closure(&h.ring().ball(&h.ring().generators(), 1).unwrap()).unwrap();
    let r = tower_kernel_dims(&MatrixOverPol::scalar(x), &tower, &w, Side::Right).unwrap();
    // 1 − x on the Heisenberg group mod m: kernel = functions constant along x-cosets, dim 1/m
    assert_eq!(r.levels[0].quotient_dim, Some(q(1, 2)));
    assert_eq!(r.levels[1].quotient_dim, Some(q(1, 4)));
    assert!(r.identities_hold());
}

#[test]
fn exactla_examples() {
    let ones = ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]);
    let rn = exact_rank_nullity(&ones, ExactEngine::Auto).unwrap();
    assert_eq!((rn.rank, rn.nullity), (1, 1));
    let ns = exact_nullspace(&ones, ExactEngine::Auto).unwrap();
    assert_eq!(ns, vec![vec![GaussRat::from_int(1), GaussRat::from_int(-1)]]);
    let id = ExactMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let rn = exact_rank_nullity(&id, ExactEngine::Modular).unwrap();
    assert_eq!((rn.rank, rn.nullity), (3, 0));
    let zero = ExactMatrix::zeros(2, 3);
    let ns = exact_nullspace(&zero, ExactEngine::FractionFree).unwrap();
    assert_eq!(ns.len(), 3);
    for (k, v) in ns.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            assert_eq!(x.is_zero(), j != k);
        }
    }
}

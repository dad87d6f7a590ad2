use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::parse::eval_expression;
use crate::scalars::{FormalScalar, GaussianRational, NumericScalar, DEFAULT_TRUNCATION as N};
use crate::starprod::{BilinearForm, PhaseSpace};
use crate::symalg::tests::arb_poly;
use crate::symalg::{FormalPolynomial, Generators, MultiIndex, NumericPolynomial, Polynomial};

fn gens(n: usize) -> Arc<Generators> {
    Generators::numbered("v", n).unwrap()
}

fn num(re: f64) -> NumericScalar {
    NumericScalar::real(re)
}

fn formal(xs: &[i64]) -> Vec<FormalScalar> {
    xs.iter().map(|&x| FormalScalar::integer(N, x)).collect()
}

fn std_space() -> PhaseSpace {
    PhaseSpace::new(1, N).unwrap()
}

#[test]
fn seminorm_examples() {
    let g = gens(2);
    let one = Polynomial::constant(&g, num(1.0));
    let spec = SeminormSpec::new(vec![2.0, 3.0], 0.75).unwrap();
    assert_eq!(seminorm_p_r(&spec, &one).unwrap(), 1.0);
    let v1: NumericPolynomial = Polynomial::generator(&g, 0, num(1.0)).unwrap();
    assert!(close_relative(seminorm_p_r(&spec, &v1).unwrap(), 2.0, RELATIVE_TOLERANCE));
    let spec = SeminormSpec::uniform(2, 0.5).unwrap();
    let sq = Polynomial::monomial(&g, MultiIndex::new(vec![2, 0]), num(1.0));
    assert!(close_relative(seminorm_p_r(&spec, &sq).unwrap(), 2f64.sqrt(), RELATIVE_TOLERANCE));
    assert!(close_relative(tensor_norm_by_words(&spec, &sq, 2).unwrap(), 1.0, RELATIVE_TOLERANCE));
}

#[test]
fn spec_validation() {
    assert!(matches!(SeminormSpec::new(vec![1.0], 0.49), Err(Error::InvalidSeminorm(_))));
    assert!(matches!(SeminormSpec::new(vec![1.0, 0.0], 1.0), Err(Error::InvalidSeminorm(_))));
    assert!(matches!(SeminormSpec::new(vec![], 1.0), Err(Error::InvalidSeminorm(_))));
    let spec = SeminormSpec::uniform(2, 0.5).unwrap();
    let p: NumericPolynomial = Polynomial::zero(&gens(3));
    assert!(matches!(seminorm_p_r(&spec, &p), Err(Error::LengthMismatch { .. })));
}

#[test]
fn truncated_exponential_examples() {
    let g = gens(2);
    let v = [num(1.5), num(-0.5)];
    let e = truncated_exponential(&g, &v, &num(0.0), 6).unwrap();
    assert_eq!(e.base(), &Polynomial::constant(&g, num(1.0)));
    let e = truncated_exponential(&g, &v, &num(2.0), 1).unwrap();
    let expect = Polynomial::constant(&g, num(1.0)).try_add(&Polynomial::linear(&g, &[num(3.0), num(-1.0)]).unwrap()).unwrap();
    assert_eq!(e.base(), &expect);
    let spec = SeminormSpec::new(vec![1.0, 2.0], 0.5).unwrap();
    let alpha = num(0.7);
    for k in [0, 1, 5, 12] {
        let e = truncated_exponential(&g, &v, &alpha, k).unwrap();
        let rate = 0.7 * (1.5 + 2.0 * 0.5);
        let closed = exponential_norm_closed_form(0.5, rate, k);
        assert!(close_relative(e.seminorm(&spec).unwrap(), closed, RELATIVE_TOLERANCE));
    }
    // formal domain: exact graded pieces
    let gq = Generators::new(["q", "p"]).unwrap();
    let e = truncated_exponential(&gq, &formal(&[1, 2]), &FormalScalar::one(N), 2).unwrap();
    let expect = eval_expression("1 + q + 2*p + (1/2)*q^2 + 2*q*p + 2*p^2", &gq, N).unwrap().value;
    assert_eq!(e.base(), &expect);
}

#[test]
fn convergence_examples() {
    let spec = SeminormSpec::uniform(1, 0.5).unwrap();
    let r = exponential_convergence_report(&spec, &[num(1.0)], num(2.0), 60).unwrap();
    assert!(r.converged(), "{:?}", r.status);
    let spec1 = SeminormSpec::uniform(1, 1.0).unwrap();
    let r = exponential_convergence_report(&spec1, &[num(1.0)], num(1.0), 60).unwrap();
    assert!(r.diverged(), "{:?}", r.status);
    let r = exponential_convergence_report(&spec1, &[num(1.0)], num(0.5), 60).unwrap();
    match r.status {
        ConvergenceStatus::Converged { limit, tail_bound } => {
            assert!((limit - 2.0).abs() < 1e-10);
            assert!(tail_bound < TAIL_TOLERANCE);
        }
        other => panic!("{other:?}"),
    }
    let r = exponential_convergence_report(&spec1, &[num(1.0)], num(3.0), 60).unwrap();
    assert!(r.diverged());
    let csv = exponential_convergence_report(&spec1, &[num(1.0)], num(0.5), 2).unwrap().to_csv();
    assert_eq!(csv, "K,partial_sum\n0,1\n1,1.5\n2,1.75\n");
}

#[test]
fn weyl_relation_examples() {
    let ps = std_space();
    let weyl = ps.weyl_form();
    let z = ps.z();
    // Λ(e_q, e_p) = 1 for the form 2·Λ_W
    let form = BilinearForm::new(
        ps.generators(),
        vec![
            vec![FormalScalar::zero(N), FormalScalar::one(N)],
            vec![-FormalScalar::one(N), FormalScalar::zero(N)],
        ],
    )
    .unwrap();
    let (q, p) = (formal(&[1, 0]), formal(&[0, 1]));
    let report = weyl_relation_defect(&form, &z, &q, &p, ExpWindow::new(6, 4)).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(
        serde_json::to_string(&report).unwrap(),
        r#"{"check":"weyl_relation","window":{"degree":6,"orders":4},"defect_max":"0","status":"pass"}"#
    );
    let v = formal(&[2, -1]);
    assert!(weyl_relation_defect(&weyl, &z, &v, &v, ExpWindow::new(4, 3)).unwrap().passed());
    assert!(weyl_relation_defect(&ps.standard_form(), &z, &v, &q, ExpWindow::new(4, 3)).unwrap().passed());
    let zero = BilinearForm::zero(ps.generators(), &FormalScalar::zero(N));
    assert!(weyl_relation_defect(&zero, &z, &q, &p, ExpWindow::new(5, 2)).unwrap().passed());
    let short = ExpWindow { degree: 6, orders: 4, cutoff: 13 };
    assert_eq!(
        weyl_relation_defect(&form, &z, &q, &p, short).unwrap_err(),
        Error::TruncationTooSmall { given: 13, required: 14 }
    );
}

#[test]
fn translation_examples() {
    let ps = std_space();
    let g = ps.generators().clone();
    let poly = |s: &str| eval_expression(s, &g, N).unwrap().value;
    let (q, p) = (poly("q"), poly("p"));
    let lam = ps.standard_form();
    let z = ps.z();
    assert!(translation_automorphism_defect(&lam, &z, &formal(&[0, 0]), &poly("q^2*p"), &p).unwrap().is_zero());
    assert!(translation_automorphism_defect(&lam, &z, &formal(&[1, 1]), &q, &p).unwrap().is_zero());
}

#[test]
fn inner_automorphism_examples() {
    let ps = std_space();
    let g = ps.generators().clone();
    let poly = |s: &str| eval_expression(s, &g, N).unwrap().value;
    let weyl = ps.weyl_form();
    let z = ps.z();
    let w = formal(&[1, 2]);
    let window = ExpWindow::new(3, 3);
    assert!(inner_automorphism_defect(&weyl, &z, &w, &poly("1"), window).unwrap().passed());
    // e^w ⋆ q ⋆ e^{-w} = q + 2zΛ(w, e_q) = q + 2(-ih)(2 · 1/2) = q - 2ih
    let shift = musical_shift(&weyl, &z, &w).unwrap();
    assert_eq!(shift[0], FormalScalar::monomial(N, 1, GaussianRational::from_integer(-2) * &GaussianRational::i()));
    assert_eq!(poly("q").translate(&shift).unwrap(), poly("q - 2*i*h"));
    assert!(inner_automorphism_defect(&weyl, &z, &w, &poly("q"), window).unwrap().passed());
    assert!(inner_automorphism_defect(&weyl, &z, &w, &poly("q^2"), window).unwrap().passed());
    assert!(inner_automorphism_defect(&weyl, &z, &w, &poly("p^2*q - 3*q"), window).unwrap().passed());
    assert_eq!(
        inner_automorphism_defect(&ps.standard_form(), &z, &w, &poly("q"), window).unwrap_err(),
        Error::NotAntisymmetric
    );
}

#[test]
fn continuity_example() {
    let ps = std_space();
    let form = ps.standard_form().map(|c| NumericScalar(c.evaluate_at(1.0)));
    let spec = SeminormSpec::uniform(2, 0.5).unwrap();
    let z = NumericScalar::new(0.0, -1.0).unwrap();
    let report = continuity_diagnostic(&spec, &form, z, &[num(0.0), num(1.0)], &[num(1.0), num(0.0)], 40).unwrap();
    assert!(report.passed(), "tail {} monotone {}", report.tail, report.monotone);
}

fn arb_numeric(n: usize, max_deg: u32) -> impl Strategy<Value = NumericPolynomial> {
    let term = (proptest::collection::vec(0..=max_deg, n), -5.0..5.0f64, -5.0..5.0f64);
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        let g = Generators::numbered("v", n).unwrap();
        let mut p = Polynomial::zero(&g);
        for (mut e, re, im) in terms {
            while e.iter().sum::<u32>() > max_deg {
                let j = e.iter().position(|&x| x > 0).unwrap();
                e[j] -= 1;
            }
            p.add_term(MultiIndex::new(e), NumericScalar::new(re, im).unwrap());
        }
        p
    })
}

fn arb_spec(n: usize) -> impl Strategy<Value = SeminormSpec> {
    (proptest::collection::vec(0.1..3.0f64, n), 0.5..2.0f64).prop_map(|(w, r)| SeminormSpec::new(w, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seminorm_axioms(spec in arb_spec(3), a in arb_numeric(3, 4), b in arb_numeric(3, 4), re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let pa = seminorm_p_r(&spec, &a).unwrap();
        let pb = seminorm_p_r(&spec, &b).unwrap();
        let pab = seminorm_p_r(&spec, &a.try_add(&b).unwrap()).unwrap();
        prop_assert!(pab <= (pa + pb) * (1.0 + RELATIVE_TOLERANCE));
        let lambda = NumericScalar::new(re, im).unwrap();
        let scaled = seminorm_p_r(&spec, &a.scale(&lambda)).unwrap();
        prop_assert!((scaled - lambda.abs() * pa).abs() <= RELATIVE_TOLERANCE * scaled.max(lambda.abs() * pa).max(1e-300));
        prop_assert!(pa >= 0.0);
    }

    #[test]
    fn grading_consistency(spec in arb_spec(3), a in arb_numeric(3, 5)) {
        let direct = seminorm_p_r(&spec, &a).unwrap();
        let mut graded = 0.0;
        for k in 0..=a.degree().unwrap_or(0) {
            let words = tensor_norm_by_words(&spec, &a.graded_component(k), k).unwrap();
            graded += super::seminorm::factorial_power(k, spec.r()) * words;
        }
        prop_assert!(close_relative(direct, graded, RELATIVE_TOLERANCE) || direct == graded);
    }

    #[test]
    fn monotone_in_r(spec in arb_spec(2), a in arb_numeric(2, 5), dr in 0.0..1.5f64) {
        let low = seminorm_p_r(&spec, &a).unwrap();
        let high = seminorm_p_r(&spec.with_r(spec.r() + dr).unwrap(), &a).unwrap();
        prop_assert!(low <= high * (1.0 + RELATIVE_TOLERANCE));
    }

    #[test]
    fn translations_preserve_star(entries in proptest::collection::vec((-3i64..=3, 1i64..=3), 4),
                                  shift in proptest::collection::vec((-3i64..=3, 1i64..=3), 2),
                                  a in arb_poly(2, 3), b in arb_poly(2, 3)) {
        let g = a.gens().clone();
        let c = |(x, y): (i64, i64)| FormalScalar::constant(N, GaussianRational::from_ratio(x, y));
        let rows = vec![vec![c(entries[0]), c(entries[1])], vec![c(entries[2]), c(entries[3])]];
        let lam = BilinearForm::new(&g, rows).unwrap();
        let s: Vec<_> = shift.into_iter().map(c).collect();
        let d: FormalPolynomial = translation_automorphism_defect(&lam, &FormalScalar::minus_i_hbar(N), &s, &a, &b).unwrap();
        prop_assert!(d.is_zero());
    }
}

use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::parse::eval_expression;
use crate::scalars::{FormalScalar, GaussianRational, DEFAULT_TRUNCATION as N};
use crate::symalg::tests::arb_poly;
use crate::symalg::{FormalPolynomial, Generators};

fn qp() -> Arc<Generators> {
    Generators::new(["q", "p"]).unwrap()
}

fn poly(gens: &Arc<Generators>, src: &str) -> FormalPolynomial {
    eval_expression(src, gens, N).unwrap().value
}

/// `Λ(e_p, e_q) = 1` on `(q, p)`.
fn lambda_pq() -> BilinearForm<FormalScalar> {
    let g = qp();
    let mut f = BilinearForm::zero(&g, &FormalScalar::zero(N));
    f.set(1, 0, FormalScalar::one(N));
    f
}

fn hbar() -> FormalScalar {
    FormalScalar::hbar(N)
}

fn space() -> PhaseSpace {
    PhaseSpace::new(1, N).unwrap()
}

fn op(src: &str) -> DifferentialOperator {
    let ps = space();
    let sym_gens = DifferentialOperator::symbol_generators(ps.config()).unwrap();
    let sym = eval_expression(src, &sym_gens, N).unwrap().value;
    DifferentialOperator::from_symbol(ps.config(), &sym).unwrap()
}

fn rational_form(gens: &Arc<Generators>, entries: &[(i64, i64)]) -> BilinearForm<FormalScalar> {
    let n = gens.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, b) = entries[i * n + j];
                    FormalScalar::constant(N, GaussianRational::from_ratio(a, b))
                })
                .collect()
        })
        .collect();
    BilinearForm::new(gens, rows).unwrap()
}

#[test]
fn biderivation_examples() {
    let g = qp();
    let lam = lambda_pq();
    let q = poly(&g, "q");
    let p = poly(&g, "p");
    let one = poly(&g, "1");
    assert!(p_lambda(&lam, &TensorSquareElement::from_pair(&q, &p).unwrap()).is_zero());
    let t = p_lambda(&lam, &TensorSquareElement::from_pair(&p, &q).unwrap());
    assert_eq!(t, TensorSquareElement::from_pair(&one, &one).unwrap());
    let a = poly(&g, "q^3*p - 2*p^2 + q");
    assert!(p_lambda(&lam, &TensorSquareElement::from_pair(&a, &one).unwrap()).is_zero());
}

#[test]
fn star_examples_with_free_parameter() {
    // z kept symbolic as h so the coefficients can be read off.
    let g = qp();
    let lam = lambda_pq();
    let z = hbar();
    assert_eq!(star(&lam, &z, &poly(&g, "q"), &poly(&g, "p")).unwrap(), poly(&g, "q*p"));
    assert_eq!(star(&lam, &z, &poly(&g, "p"), &poly(&g, "q")).unwrap(), poly(&g, "p*q + h"));
    assert_eq!(
        star(&lam, &z, &poly(&g, "p^2"), &poly(&g, "q^2")).unwrap(),
        poly(&g, "p^2*q^2 + 4*h*p*q + 2*h^2")
    );
}

#[test]
fn star_rejects_mismatched_generators() {
    let lam = lambda_pq();
    let other = Generators::new(["x", "y"]).unwrap();
    let a = poly(&other, "x");
    assert!(matches!(star(&lam, &hbar(), &a, &a), Err(Error::IncompatibleAlgebras(_))));
}

#[test]
fn standard_ordering_examples() {
    let ps = space();
    let g = ps.generators().clone();
    assert_eq!(ps.star_standard(&poly(&g, "q"), &poly(&g, "p")).unwrap(), poly(&g, "q*p"));
    let pq = ps.star_standard(&poly(&g, "p"), &poly(&g, "q")).unwrap();
    assert_eq!(pq, poly(&g, "p*q - i*h"));
    assert_eq!(pq.to_string(), "q*p - i*h");
    let f = poly(&g, "q^3*p^2 - (1/3)*i*h*p + 7");
    assert_eq!(ps.star_standard(&f, &poly(&g, "1")).unwrap(), f);
}

#[test]
fn weyl_ordering_examples() {
    let ps = space();
    let g = ps.generators().clone();
    let (q, p) = (poly(&g, "q"), poly(&g, "p"));
    let qp_w = ps.star_weyl(&q, &p).unwrap();
    let pq_w = ps.star_weyl(&p, &q).unwrap();
    assert_eq!(qp_w, poly(&g, "q*p + (1/2)*i*h"));
    assert_eq!(pq_w, poly(&g, "p*q - (1/2)*i*h"));
    assert_eq!(qp_w.try_sub(&pq_w).unwrap(), poly(&g, "i*h"));
    for (a, b) in [("q", "p"), ("q^2", "p^2"), ("q*p", "q*p"), ("p^3*q", "q^2 + p")] {
        let (a, b) = (poly(&g, a), poly(&g, b));
        assert_eq!(ps.star_weyl(&a, &b).unwrap(), ps.star_weyl_via_n(&a, &b).unwrap());
    }
}

#[test]
fn poisson_examples() {
    let g = qp();
    let lam = lambda_pq();
    assert_eq!(poisson_bracket(&lam, &poly(&g, "q"), &poly(&g, "p")).unwrap(), poly(&g, "-1"));
    let a = poly(&g, "q^2*p + 3*p - q");
    assert!(poisson_bracket(&lam, &a, &a).unwrap().is_zero());
    assert_eq!(poisson_bracket(&lam, &poly(&g, "q^2"), &poly(&g, "p")).unwrap(), poly(&g, "-2*q"));
}

#[test]
fn jacobi_examples() {
    let g = qp();
    let lam = lambda_pq();
    let br = |a: &FormalPolynomial, b: &FormalPolynomial| poisson_bracket(&lam, a, b);
    let d = jacobi_defect(br, &poly(&g, "q"), &poly(&g, "p"), &poly(&g, "q*p")).unwrap();
    assert!(d.is_zero());
    let f = poly(&g, "q^2 + p^3*q");
    let d = jacobi_defect(br, &f, &f, &poly(&g, "p^2*q")).unwrap();
    assert!(d.is_zero());
}

#[test]
fn hbar_coefficients() {
    let ps = space();
    let g = ps.generators().clone();
    let pq = ps.star_standard(&poly(&g, "p"), &poly(&g, "q")).unwrap();
    assert_eq!(pq.hbar_coefficient(1).unwrap(), poly(&g, "-i"));
    assert_eq!(pq.hbar_coefficient(0).unwrap(), poly(&g, "q*p"));
    assert!(matches!(pq.hbar_coefficient(N + 1), Err(Error::TruncationExceeded { .. })));
    let f = poly(&g, "q^2*p + p^2");
    let unit = ps.star_standard(&poly(&g, "1"), &f).unwrap();
    for r in 1..=N {
        assert!(unit.hbar_coefficient(r).unwrap().is_zero());
    }
}

#[test]
fn ordering_operator_examples() {
    let ps = space();
    let g = ps.generators().clone();
    let n_op = ps.n_operator();
    assert_eq!(n_op.apply(&poly(&g, "q*p")).unwrap(), poly(&g, "q*p - (1/2)*i*h"));
    let s = rational_form(&g, &[(2, 3), (-1, 2), (-1, 2), (5, 1)]);
    let t = OrderingOperator::new(s, FormalScalar::minus_i_hbar(N)).unwrap();
    assert_eq!(t.apply(&poly(&g, "q")).unwrap(), poly(&g, "q"));
    let f = poly(&g, "q^4*p^2 - 3*q*p^3 + (1/2)*p^6 + q^2");
    assert_eq!(t.inverse().apply(&t.apply(&f).unwrap()).unwrap(), f);
    assert_eq!(t.apply(&t.inverse().apply(&f).unwrap()).unwrap(), f);
}

#[test]
fn ordering_operator_rejects_asymmetric_form() {
    let err = OrderingOperator::new(lambda_pq(), hbar()).unwrap_err();
    assert_eq!(err, Error::NotSymmetric);
}

#[test]
fn equivalence_examples() {
    let ps = space();
    let g = ps.generators().clone();
    let std = ps.standard_form();
    let t = ps.n_operator();
    for (a, b) in [("q", "p"), ("q^2", "p^2"), ("q*p", "q*p")] {
        let (a, b) = (poly(&g, a), poly(&g, b));
        let via_t = apply_equivalence(&t, &std, &ps.z(), &a, &b).unwrap();
        assert_eq!(via_t, star(&ps.weyl_form(), &ps.z(), &a, &b).unwrap());
    }
    let zero_s = BilinearForm::zero(&g, &FormalScalar::zero(N));
    let id = OrderingOperator::new(zero_s, ps.z()).unwrap();
    let (a, b) = (poly(&g, "p^2*q"), poly(&g, "q^3 - p"));
    assert_eq!(apply_equivalence(&id, &std, &ps.z(), &a, &b).unwrap(), ps.star_standard(&a, &b).unwrap());
}

#[test]
fn std_rep_examples() {
    let ps = space();
    let g = ps.generators().clone();
    assert_eq!(ps.std_rep(&poly(&g, "q^2*p")).unwrap(), op("-i*h*q^2*Dq"));
    assert_eq!(ps.std_rep(&poly(&g, "1")).unwrap(), DifferentialOperator::identity(ps.config(), N));
    assert_eq!(ps.std_rep(&poly(&g, "p^2")).unwrap(), op("-h^2*Dq^2"));
}

#[test]
fn weyl_rep_examples() {
    let ps = space();
    let g = ps.generators().clone();
    assert_eq!(ps.weyl_rep(&poly(&g, "q*p")).unwrap(), op("-i*h*q*Dq - (1/2)*i*h"));
    assert_eq!(ps.weyl_rep(&poly(&g, "q")).unwrap(), op("q"));
    assert_eq!(ps.weyl_rep(&poly(&g, "p")).unwrap(), op("-i*h*Dq"));
}

#[test]
fn adjoint_examples() {
    let ps = space();
    let g = ps.generators().clone();
    assert_eq!(op("Dq").formal_adjoint(), op("-Dq"));
    assert_eq!(op("q*Dq").formal_adjoint(), op("-1 - q*Dq"));
    let lhs = ps.std_rep(&poly(&g, "q*p")).unwrap().formal_adjoint();
    assert_eq!(lhs, op("-i*h*q*Dq - i*h"));
    let n2 = ps.n_operator().apply(&ps.n_operator().apply(&poly(&g, "q*p")).unwrap()).unwrap();
    assert_eq!(lhs, ps.std_rep(&n2).unwrap());
}

#[test]
fn operator_application() {
    let ps = space();
    let cfg = ps.config().clone();
    let f = eval_expression("q^3", &cfg, N).unwrap().value;
    let d = op("q*Dq^2 + 2");
    assert_eq!(d.apply(&f).unwrap(), eval_expression("6*q^2 + 2*q^3", &cfg, N).unwrap().value);
    let e = op("Dq + q");
    let composed = d.compose(&e).unwrap();
    assert_eq!(composed.apply(&f).unwrap(), d.apply(&e.apply(&f).unwrap()).unwrap());
}

#[test]
fn conjugation_examples() {
    let ps = space();
    let g = ps.generators().clone();
    assert_eq!(poly(&g, "i*q").conj(), poly(&g, "-i*q"));
    let (q, p) = (poly(&g, "q"), poly(&g, "p"));
    assert_eq!(ps.star_weyl(&q, &p).unwrap().conj(), ps.star_weyl(&p, &q).unwrap());
    assert_eq!(ps.star_weyl(&q, &p).unwrap().conj(), poly(&g, "q*p - (1/2)*i*h"));
    let lhs = ps.star_standard(&p, &q).unwrap().conj();
    let rhs = ps.star_standard(&q.conj(), &p.conj()).unwrap();
    assert_ne!(lhs, rhs);
}

#[test]
fn zero_form_is_commutative_product() {
    let g = qp();
    let zero = BilinearForm::zero(&g, &FormalScalar::zero(N));
    let (a, b) = (poly(&g, "q^2*p + i"), poly(&g, "p^3 - q"));
    assert_eq!(star(&zero, &hbar(), &a, &b).unwrap(), &a * &b);
}

#[test]
fn termination_count() {
    let g = qp();
    let lam = lambda_pq();
    let (a, b) = (poly(&g, "p^3*q + p"), poly(&g, "q^2 + 1"));
    let (_, stats) = star_with_stats(&lam, &hbar(), &a, &b).unwrap();
    assert_eq!(stats.orders_evaluated, 3);
    // P_Λ^(min deg + 1) annihilates a ⊗ b
    let mut t = TensorSquareElement::from_pair(&a, &b).unwrap();
    for _ in 0..3 {
        t = p_lambda(&lam, &t);
    }
    assert!(t.is_zero());
}

fn arb_form(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-3i64..=3, 1i64..=3), n * n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity(entries in arb_form(3), f in arb_poly(3, 3), g in arb_poly(3, 3), h in arb_poly(3, 3)) {
        let lam = rational_form(f.gens(), entries.as_slice());
        let z = FormalScalar::minus_i_hbar(N);
        let lhs = star(&lam, &z, &star(&lam, &z, &f, &g).unwrap(), &h).unwrap();
        let rhs = star(&lam, &z, &f, &star(&lam, &z, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_and_classical_limit(entries in arb_form(3), f in arb_poly(3, 4), g in arb_poly(3, 4)) {
        let lam = rational_form(f.gens(), entries.as_slice());
        let z = FormalScalar::minus_i_hbar(N);
        let one = FormalPolynomial::one(f.gens(), N);
        prop_assert_eq!(star(&lam, &z, &f, &one).unwrap(), f.clone());
        prop_assert_eq!(star(&lam, &z, &one, &f).unwrap(), f.clone());
        let fg = star(&lam, &z, &f, &g).unwrap();
        prop_assert_eq!(fg.hbar_coefficient(0).unwrap(), f.hbar_coefficient(0).unwrap().try_mul(&g.hbar_coefficient(0).unwrap()).unwrap().hbar_coefficient(0).unwrap());
        let (_, stats) = star_with_stats(&lam, &z, &f, &g).unwrap();
        if let (Some(a), Some(b)) = (f.degree(), g.degree()) {
            prop_assert_eq!(stats.orders_evaluated, a.min(b) + 1);
        }
    }

    #[test]
    fn equivalence_law(lam_e in arb_form(2), s_e in proptest::collection::vec((-3i64..=3, 1i64..=3), 3),
                       f in arb_poly(2, 3), g in arb_poly(2, 3)) {
        let gens = f.gens().clone();
        let lam = rational_form(&gens, lam_e.as_slice());
        let s = rational_form(&gens, &[s_e[0], s_e[1], s_e[1], s_e[2]]);
        let z = FormalScalar::minus_i_hbar(N);
        let t = OrderingOperator::new(s.clone(), z.clone()).unwrap();
        let lhs = apply_equivalence(&t, &lam, &z, &f, &g).unwrap();
        let rhs = star(&lam.try_sub(&s).unwrap(), &z, &f, &g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_laws(entries in arb_form(3), a in arb_poly(3, 3), b in arb_poly(3, 3), c in arb_poly(3, 3)) {
        let lam = rational_form(a.gens(), entries.as_slice());
        let br = |x: &FormalPolynomial, y: &FormalPolynomial| poisson_bracket(&lam, x, y);
        prop_assert!(jacobi_defect(br, &a, &b, &c).unwrap().is_zero());
        let ab = br(&a, &b).unwrap();
        prop_assert_eq!(ab.clone(), -&br(&b, &a).unwrap());
        let leibniz = &(&br(&a, &c).unwrap() * &b) + &(&a * &br(&b, &c).unwrap());
        prop_assert_eq!(br(&(&a * &b), &c).unwrap(), leibniz);
    }

    #[test]
    fn representations_are_homomorphisms(f in arb_poly(2, 3), g in arb_poly(2, 3)) {
        let ps = space();
        let rename = |x: &FormalPolynomial| FormalPolynomial::from_terms(ps.generators(), x.terms().map(|(e, c)| (e.clone(), c.clone())));
        let (f, g) = (rename(&f), rename(&g));
        let lhs = ps.std_rep(&ps.star_standard(&f, &g).unwrap()).unwrap();
        let rhs = ps.std_rep(&f).unwrap().compose(&ps.std_rep(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = ps.weyl_rep(&ps.star_weyl(&f, &g).unwrap()).unwrap();
        let rhs = ps.weyl_rep(&f).unwrap().compose(&ps.weyl_rep(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

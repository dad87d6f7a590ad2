use std::sync::Arc;

use proptest::prelude::*;
use starq::gutt::{bch, gutt_star, LieAlgebra};
use starq::oracle::{naive_bch_via_ue, naive_star, DensePolynomial, DEFAULT_BOX};
use starq::parse::eval_expression;
use starq::scalars::{FormalScalar, GaussianRational, DEFAULT_TRUNCATION as N};
use starq::session::Session;
use starq::starprod::{star, BilinearForm, PhaseSpace};
use starq::symalg::{FormalPolynomial, Generators, MultiIndex};

fn poly(g: &Arc<Generators>, src: &str) -> FormalPolynomial {
    eval_expression(src, g, N).unwrap().value
}

#[test]
fn standard_and_weyl_products() {
    let ps = PhaseSpace::new(1, N).unwrap();
    let g = ps.generators().clone();
    assert_eq!(ps.star_standard(&poly(&g, "p"), &poly(&g, "q")).unwrap(), poly(&g, "p*q - i*h"));
    assert_eq!(ps.star_weyl(&poly(&g, "q"), &poly(&g, "p")).unwrap(), poly(&g, "q*p + (1/2)*i*h"));
    // [q, p] = iħ under both orderings
    for prod in [PhaseSpace::star_standard, PhaseSpace::star_weyl] {
        let qp = prod(&ps, &poly(&g, "q"), &poly(&g, "p")).unwrap();
        let pq = prod(&ps, &poly(&g, "p"), &poly(&g, "q")).unwrap();
        assert_eq!(qp.try_sub(&pq).unwrap(), poly(&g, "i*h"));
    }
}

#[test]
fn two_degrees_of_freedom() {
    let ps = PhaseSpace::new(2, N).unwrap();
    let g = ps.generators().clone();
    assert_eq!(g.names(), ["q1", "q2", "p1", "p2"]);
    let f = poly(&g, "p1*p2");
    let h = poly(&g, "q1*q2");
    let expect = poly(&g, "q1*q2*p1*p2 - i*h*q1*p1 - i*h*q2*p2 - h^2");
    assert_eq!(ps.star_standard(&f, &h).unwrap(), expect);
}

#[test]
fn session_drives_the_kernel() {
    let s = Session::standard(N);
    let f = s.parse_polynomial("p^2").unwrap();
    let h = s.parse_polynomial("q^2").unwrap();
    let out = star(s.form().unwrap(), s.z(), &f, &h).unwrap();
    assert_eq!(out, s.parse_polynomial("q^2*p^2 - 4*i*h*q*p - 2*h^2").unwrap());
}

#[test]
fn gutt_on_heisenberg_matches_weyl() {
    // h3 with Z central at value 1 is the Weyl algebra in symmetric ordering
    let h3 = LieAlgebra::heisenberg();
    let b = h3.basis().clone();
    let xy = gutt_star(&h3, &poly(&b, "X"), &poly(&b, "Y")).unwrap();
    assert_eq!(xy, poly(&b, "X*Y + (1/2)*i*h*Z"));
    let x2y = gutt_star(&h3, &poly(&b, "X^2"), &poly(&b, "Y")).unwrap();
    assert_eq!(x2y, poly(&b, "X^2*Y + i*h*X*Z"));
}

fn arb_rational() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| GaussianRational::from_ratio(a, b))
}

fn arb_form(n: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    proptest::collection::vec(arb_rational(), n * n)
}

fn arb_dense_poly(n: usize, max_deg: u32) -> impl Strategy<Value = FormalPolynomial> {
    let term = (proptest::collection::vec(0..=max_deg, n), arb_rational(), 0u32..=1);
    proptest::collection::vec(term, 1..4).prop_map(move |terms| {
        let g = Generators::numbered("x", n).unwrap();
        let mut p = FormalPolynomial::zero(&g);
        for (mut e, c, k) in terms {
            while e.iter().sum::<u32>() > max_deg {
                let j = e.iter().position(|&x| x > 0).unwrap();
                e[j] -= 1;
            }
            p.add_term(MultiIndex::new(e), FormalScalar::monomial(N, k, c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn star_agrees_with_naive_oracle(entries in arb_form(2), a in arb_dense_poly(2, 4), b in arb_dense_poly(2, 4)) {
        let g = a.gens().clone();
        let rows: Vec<Vec<FormalScalar>> = entries
            .chunks(2)
            .map(|r| r.iter().map(|c| FormalScalar::constant(N, c.clone())).collect())
            .collect();
        let form = BilinearForm::new(&g, rows.clone()).unwrap();
        let z = FormalScalar::minus_i_hbar(N);
        let fast = star(&form, &z, &a, &b).unwrap();
        let da = DensePolynomial::from_polynomial(&a, DEFAULT_BOX, N).unwrap();
        let db = DensePolynomial::from_polynomial(&b, DEFAULT_BOX, N).unwrap();
        let slow = naive_star(&rows, &z, &da, &db).unwrap().to_polynomial(&g).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn bch_agrees_with_enveloping_algebra(x in proptest::collection::vec(arb_rational(), 3),
                                          y in proptest::collection::vec(arb_rational(), 3),
                                          sl2 in any::<bool>()) {
        let g = if sl2 { LieAlgebra::sl2() } else { LieAlgebra::heisenberg() };
        prop_assert_eq!(bch(&g, &x, &y, 4).unwrap(), naive_bch_via_ue(&g, &x, &y, 4).unwrap());
    }
}

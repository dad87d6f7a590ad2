use super::*;
use crate::error::Error;
use crate::gutt::{bch, LieAlgebra};
use crate::parse::eval_expression;
use crate::scalars::{FormalScalar, GaussianRational, DEFAULT_TRUNCATION as N};
use crate::symalg::Generators;

fn vector(xs: &[i64]) -> Vec<GaussianRational> {
    xs.iter().map(|&x| GaussianRational::from_integer(x)).collect()
}

#[test]
fn naive_star_examples() {
    let g = Generators::new(["q", "p"]).unwrap();
    let poly = |s: &str| eval_expression(s, &g, N).unwrap().value;
    let dense = |s: &str| DensePolynomial::from_polynomial(&poly(s), DEFAULT_BOX, N).unwrap();
    let zero = FormalScalar::zero(N);
    let one = FormalScalar::one(N);
    let lambda = vec![vec![zero.clone(), zero.clone()], vec![one, zero.clone()]];
    let z = FormalScalar::hbar(N);
    let out = naive_star(&lambda, &z, &dense("p^2"), &dense("q^2")).unwrap();
    assert_eq!(out.to_polynomial(&g).unwrap(), poly("p^2*q^2 + 4*h*p*q + 2*h^2"));
    let zeros = vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), zero]];
    let out = naive_star(&zeros, &z, &dense("q^3 + p"), &dense("q*p - 2")).unwrap();
    assert_eq!(out.to_polynomial(&g).unwrap(), poly("q^4*p - 2*q^3 + q*p^2 - 2*p"));
}

#[test]
fn dense_box_is_checked() {
    let g = Generators::new(["q", "p"]).unwrap();
    let p = eval_expression("q^9", &g, N).unwrap().value;
    assert_eq!(
        DensePolynomial::from_polynomial(&p, DEFAULT_BOX, N).unwrap_err(),
        Error::BoxOverflow { exponent: 9, bound: 8 }
    );
    let a = DensePolynomial::from_polynomial(&eval_expression("q^5", &g, N).unwrap().value, DEFAULT_BOX, N).unwrap();
    assert!(matches!(a.mul(&a), Err(Error::BoxOverflow { .. })));
    let round = eval_expression("(1/2)*q^8*p^8 - i*h*q", &g, N).unwrap().value;
    let d = DensePolynomial::from_polynomial(&round, DEFAULT_BOX, N).unwrap();
    assert_eq!(d.to_polynomial(&g).unwrap(), round);
}

#[test]
fn naive_bch_examples() {
    let h3 = LieAlgebra::heisenberg();
    let s = naive_bch_via_ue(&h3, &vector(&[1, 0, 0]), &vector(&[0, 1, 0]), 5).unwrap();
    assert_eq!(s.display(&h3).to_string(), "h*X + h*Y + (1/2)*h^2*Z");
    let ab = LieAlgebra::abelian(Generators::new(["A", "B"]).unwrap());
    let s = naive_bch_via_ue(&ab, &vector(&[1, 0]), &vector(&[0, 1]), 4).unwrap();
    assert_eq!(s.display(&ab).to_string(), "h*A + h*B");
    let sl2 = LieAlgebra::sl2();
    let (x, y) = (vector(&[1, -1, 2]), vector(&[0, 3, 1]));
    assert_eq!(naive_bch_via_ue(&sl2, &x, &y, 4).unwrap(), bch(&sl2, &x, &y, 4).unwrap());
}

//! Seeded property sweeps, one suite per checked law. `starq verify` and
//! the acceptance target both run these.
//!
//! Everything is driven by a ChaCha stream seeded from the caller's seed,
//! so a suite's report is a pure function of `(suite, seed)`. Reports
//! carry no timings.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    close_relative, continuity_diagnostic, exponential_convergence_report, exponential_norm_closed_form,
    inner_automorphism_defect, seminorm_p_r, translation_automorphism_defect, truncated_exponential,
    weyl_relation_defect, ConvergenceStatus, ExpWindow, SeminormSpec, RELATIVE_TOLERANCE, TAIL_TOLERANCE,
};
use crate::error::Result;
use crate::gutt::{bch, check_bch_property, gutt_star, kks_bracket, BchWindow, LieAlgebra, LieSeries};
use crate::oracle::{naive_bch_via_ue, naive_star, DensePolynomial, DEFAULT_BOX};
use crate::parse::eval_expression;
use crate::scalars::{FormalScalar, GaussianRational, NumericScalar, DEFAULT_TRUNCATION as N};
use crate::starprod::{apply_equivalence, poisson_bracket, star, BilinearForm, OrderingOperator, PhaseSpace};
use crate::symalg::{FormalPolynomial, Generators, MultiIndex, NumericPolynomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Associativity,
    Axioms,
    Oracle,
    Orderings,
    Adjoint,
    Equivalence,
    Gutt,
    Seminorms,
    Weyl,
    Continuity,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Associativity,
        Suite::Axioms,
        Suite::Oracle,
        Suite::Orderings,
        Suite::Adjoint,
        Suite::Equivalence,
        Suite::Gutt,
        Suite::Seminorms,
        Suite::Weyl,
        Suite::Continuity,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Associativity => "associativity",
            Suite::Axioms => "axioms",
            Suite::Oracle => "oracle",
            Suite::Orderings => "orderings",
            Suite::Adjoint => "adjoint",
            Suite::Equivalence => "equivalence",
            Suite::Gutt => "gutt",
            Suite::Seminorms => "seminorms",
            Suite::Weyl => "weyl",
            Suite::Continuity => "continuity",
            Suite::Roundtrip => "roundtrip",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(f, "{} {} (seed {})", mark(self.passed), self.suite, self.seed)?;
        for c in &self.checks {
            write!(f, "  {} {}: {}/{} cases", mark(c.passed), c.name, c.cases - c.failures, c.cases)?;
            if let Some(why) = &c.first_failure {
                write!(f, " -- first failure: {why}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates the outcome of one named check across cases.
struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: 0, first_failure: None }
    }

    /// Records one case; `describe` is only called on failure.
    fn record(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        self.cases += 1;
        let why = match outcome {
            Ok(true) => return,
            Ok(false) => describe(),
            Err(e) => format!("{} ({e})", describe()),
        };
        self.failures += 1;
        self.first_failure.get_or_insert(why);
    }

    fn finish(self) -> Check {
        Check {
            name: self.name.into(),
            passed: self.failures == 0 && self.cases > 0,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

/// Random inputs with small rational coefficients.
struct Gen(ChaCha8Rng);

impl Gen {
    fn new(seed: u64, suite: Suite) -> Self {
        // distinct stream per suite so `verify all` matches single runs
        let salt = Suite::ALL.iter().position(|&s| s == suite).unwrap_or(0) as u64;
        Self(ChaCha8Rng::seed_from_u64(seed ^ (salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))))
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    fn rational(&mut self) -> GaussianRational {
        GaussianRational::from_ratio(self.int(-4, 4), self.int(1, 3))
    }

    fn gaussian(&mut self) -> GaussianRational {
        let re = self.rational();
        if self.0.gen_bool(0.3) {
            re + &(GaussianRational::i() * &self.rational())
        } else {
            re
        }
    }

    fn formal(&mut self, hbar: bool) -> FormalScalar {
        let mut terms = vec![(0, self.gaussian())];
        if hbar && self.0.gen_bool(0.3) {
            terms.push((self.int(1, 2) as u32, self.gaussian()));
        }
        FormalScalar::from_terms(N, terms)
    }

    fn poly(&mut self, gens: &Arc<Generators>, max_deg: u32, max_terms: usize, hbar: bool) -> FormalPolynomial {
        let monomials: Vec<MultiIndex> = (0..=max_deg).flat_map(|d| MultiIndex::of_degree(gens.len(), d)).collect();
        let k = self.0.gen_range(1..=max_terms);
        let mut p = FormalPolynomial::zero(gens);
        for _ in 0..k {
            let e = monomials[self.0.gen_range(0..monomials.len())].clone();
            p.add_term(e, self.formal(hbar));
        }
        p
    }

    fn form(&mut self, gens: &Arc<Generators>) -> BilinearForm<FormalScalar> {
        let n = gens.len();
        let rows = (0..n).map(|_| (0..n).map(|_| FormalScalar::constant(N, self.rational())).collect()).collect();
        BilinearForm::new(gens, rows).expect("square")
    }

    fn symmetric_form(&mut self, gens: &Arc<Generators>) -> BilinearForm<FormalScalar> {
        let n = gens.len();
        let mut f = BilinearForm::zero(gens, &FormalScalar::zero(N));
        for i in 0..n {
            for j in i..n {
                let c = FormalScalar::constant(N, self.rational());
                f.set(i, j, c.clone());
                f.set(j, i, c);
            }
        }
        f
    }

    fn antisymmetric_form(&mut self, gens: &Arc<Generators>) -> BilinearForm<FormalScalar> {
        let n = gens.len();
        let mut f = BilinearForm::zero(gens, &FormalScalar::zero(N));
        for i in 0..n {
            for j in i + 1..n {
                let c = FormalScalar::constant(N, self.rational());
                f.set(i, j, c.clone());
                f.set(j, i, -c);
            }
        }
        f
    }

    fn vector(&mut self, n: usize) -> Vec<GaussianRational> {
        (0..n).map(|_| self.rational()).collect()
    }

    fn real(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.gen_range(lo..hi)
    }

    fn numeric_poly(&mut self, gens: &Arc<Generators>, max_deg: u32, max_terms: usize) -> NumericPolynomial {
        let monomials: Vec<MultiIndex> = (0..=max_deg).flat_map(|d| MultiIndex::of_degree(gens.len(), d)).collect();
        let k = self.0.gen_range(1..=max_terms);
        let mut p = Polynomial::zero(gens);
        for _ in 0..k {
            let e = monomials[self.0.gen_range(0..monomials.len())].clone();
            let c = NumericScalar::new(self.real(-3.0, 3.0), self.real(-3.0, 3.0)).expect("finite");
            p.add_term(e, c);
        }
        p
    }
}

fn z() -> FormalScalar {
    FormalScalar::minus_i_hbar(N)
}

fn formal_vector(v: &[GaussianRational]) -> Vec<FormalScalar> {
    v.iter().map(|c| FormalScalar::constant(N, c.clone())).collect()
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed, suite);
    let checks = match suite {
        Suite::Associativity => associativity(&mut g),
        Suite::Axioms => axioms(&mut g),
        Suite::Oracle => oracle(&mut g),
        Suite::Orderings => orderings(&mut g),
        Suite::Adjoint => adjoint(),
        Suite::Equivalence => equivalence(&mut g),
        Suite::Gutt => gutt(&mut g),
        Suite::Seminorms => seminorms(&mut g),
        Suite::Weyl => weyl(&mut g),
        Suite::Continuity => continuity(&mut g),
        Suite::Roundtrip => roundtrip(&mut g),
    };
    SuiteReport {
        suite: suite.name().into(),
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, seed)).collect()
}

fn associativity(g: &mut Gen) -> Vec<Check> {
    let mut t = Tally::new("(f*g)*h = f*(g*h)");
    let z = z();
    for case in 0..200 {
        let n = 1 + case % 4;
        let gens = Generators::numbered("x", n).expect("names");
        let lam = g.form(&gens);
        let (a, b, c) = (g.poly(&gens, 4, 3, true), g.poly(&gens, 4, 3, true), g.poly(&gens, 4, 3, true));
        let outcome = (|| {
            let lhs = star(&lam, &z, &star(&lam, &z, &a, &b)?, &c)?;
            let rhs = star(&lam, &z, &a, &star(&lam, &z, &b, &c)?)?;
            Ok(lhs == rhs)
        })();
        t.record(outcome, || format!("n={n} f={a} g={b} h={c}"));
    }
    vec![t.finish()]
}

fn axioms(g: &mut Gen) -> Vec<Check> {
    let mut c0 = Tally::new("C_0(f,g) = fg");
    let mut c1 = Tally::new("C_1(f,g) - C_1(g,f) = i{g,f}");
    let mut unit = Tally::new("C_r(1,f) = C_r(f,1) = 0, 1<=r<=8");
    let z = z();
    let i = FormalScalar::constant(N, GaussianRational::i());
    for case in 0..100 {
        let n = 1 + case % 3;
        let gens = Generators::numbered("x", n).expect("names");
        let lam = g.form(&gens);
        let (a, b) = (g.poly(&gens, 4, 4, false), g.poly(&gens, 4, 4, false));
        let one = FormalPolynomial::one(&gens, N);
        let describe = || format!("n={n} f={a} g={b}");
        c0.record(
            (|| Ok(star(&lam, &z, &a, &b)?.hbar_coefficient(0)? == &a * &b))(),
            describe,
        );
        c1.record(
            (|| {
                let ab = star(&lam, &z, &a, &b)?.hbar_coefficient(1)?;
                let ba = star(&lam, &z, &b, &a)?.hbar_coefficient(1)?;
                Ok(ab.try_sub(&ba)? == poisson_bracket(&lam, &b, &a)?.scale(&i))
            })(),
            describe,
        );
        unit.record(
            (|| {
                let left = star(&lam, &z, &one, &a)?;
                let right = star(&lam, &z, &a, &one)?;
                for r in 1..=N {
                    if !left.hbar_coefficient(r)?.is_zero() || !right.hbar_coefficient(r)?.is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
            describe,
        );
    }
    vec![c0.finish(), c1.finish(), unit.finish()]
}

fn oracle(g: &mut Gen) -> Vec<Check> {
    let mut t = Tally::new("star = naive_star, deg a + deg b <= 5, n = 3");
    let gens = Generators::numbered("x", 3).expect("names");
    let z = z();
    let monomials: Vec<MultiIndex> = (0..=5).flat_map(|d| MultiIndex::of_degree(3, d)).collect();
    for _ in 0..5 {
        let lam = g.form(&gens);
        let rows = lam.rows().to_vec();
        for ea in &monomials {
            for eb in monomials.iter().filter(|eb| ea.degree() + eb.degree() <= 5) {
                let a = FormalPolynomial::monomial(&gens, ea.clone(), FormalScalar::one(N));
                let b = FormalPolynomial::monomial(&gens, eb.clone(), FormalScalar::one(N));
                let outcome = (|| {
                    let fast = star(&lam, &z, &a, &b)?;
                    let da = DensePolynomial::from_polynomial(&a, DEFAULT_BOX, N)?;
                    let db = DensePolynomial::from_polynomial(&b, DEFAULT_BOX, N)?;
                    let slow = naive_star(&rows, &z, &da, &db)?.to_polynomial(&gens)?;
                    Ok(fast == slow)
                })();
                t.record(outcome, || format!("a={a} b={b}"));
            }
        }
    }
    vec![t.finish()]
}

fn orderings(g: &mut Gen) -> Vec<Check> {
    let ps = PhaseSpace::new(1, N).expect("q, p");
    let gens = ps.generators().clone();
    let poly = |s: &str| eval_expression(s, &gens, N).map(|o| o.value);
    let mut std_pq = Tally::new("p *std q = pq - ih");
    std_pq.record((|| Ok(ps.star_standard(&poly("p")?, &poly("q")?)? == poly("p*q - i*h")?))(), || "p, q".into());
    let mut weyl_qp = Tally::new("q *W p = qp + ih/2");
    weyl_qp.record((|| Ok(ps.star_weyl(&poly("q")?, &poly("p")?)? == poly("q*p + (1/2)*i*h")?))(), || "q, p".into());

    let mut conj = Tally::new("conj(f *W g) = conj(g) *W conj(f)");
    for _ in 0..100 {
        let (a, b) = (g.poly(&gens, 3, 4, true), g.poly(&gens, 3, 4, true));
        let outcome = (|| Ok(ps.star_weyl(&a, &b)?.conj() == ps.star_weyl(&b.conj(), &a.conj())?))();
        conj.record(outcome, || format!("f={a} g={b}"));
    }
    let mut std_rep = Tally::new("rho_std(f *std g) = rho_std(f) rho_std(g)");
    let mut weyl_rep = Tally::new("rho_W(f *W g) = rho_W(f) rho_W(g)");
    for _ in 0..40 {
        let (a, b) = (g.poly(&gens, 4, 3, true), g.poly(&gens, 4, 3, true));
        std_rep.record(
            (|| Ok(ps.std_rep(&ps.star_standard(&a, &b)?)? == ps.std_rep(&a)?.compose(&ps.std_rep(&b)?)?))(),
            || format!("f={a} g={b}"),
        );
        weyl_rep.record(
            (|| Ok(ps.weyl_rep(&ps.star_weyl(&a, &b)?)? == ps.weyl_rep(&a)?.compose(&ps.weyl_rep(&b)?)?))(),
            || format!("f={a} g={b}"),
        );
    }
    vec![std_pq.finish(), weyl_qp.finish(), conj.finish(), std_rep.finish(), weyl_rep.finish()]
}

fn adjoint() -> Vec<Check> {
    let ps = PhaseSpace::new(1, N).expect("q, p");
    let gens = ps.generators().clone();
    let n_op = ps.n_operator();
    let mut t = Tally::new("adjoint(rho_std(f)) = rho_std(N^2 conj f), f = q^n p^m, n+m <= 5");
    for d in 0..=5u32 {
        for n in 0..=d {
            let f = FormalPolynomial::monomial(&gens, MultiIndex::new(vec![n, d - n]), FormalScalar::one(N));
            let outcome = (|| {
                let lhs = ps.std_rep(&f)?.formal_adjoint();
                let rhs = ps.std_rep(&n_op.apply(&n_op.apply(&f.conj())?)?)?;
                Ok(lhs == rhs)
            })();
            t.record(outcome, || format!("f={f}"));
        }
    }
    vec![t.finish()]
}

fn equivalence(g: &mut Gen) -> Vec<Check> {
    let mut t = Tally::new("exp(z Delta_S) intertwines star(L) and star(L - S)");
    let z = z();
    for case in 0..50 {
        let n = 1 + case % 3;
        let gens = Generators::numbered("x", n).expect("names");
        let lam = g.form(&gens);
        let s = g.symmetric_form(&gens);
        let (a, b) = (g.poly(&gens, 3, 3, true), g.poly(&gens, 3, 3, true));
        let outcome = (|| {
            let t_s = OrderingOperator::new(s.clone(), z.clone())?;
            Ok(apply_equivalence(&t_s, &lam, &z, &a, &b)? == star(&lam.try_sub(&s)?, &z, &a, &b)?)
        })();
        t.record(outcome, || format!("n={n} f={a} g={b}"));
    }
    vec![t.finish()]
}

fn gutt(g: &mut Gen) -> Vec<Check> {
    let algebras = [("h3", LieAlgebra::heisenberg()), ("sl2", LieAlgebra::sl2())];
    let ihbar = FormalScalar::i_hbar(N);

    let mut assoc = Tally::new("gutt_star associative, degree <= 3");
    let mut comm = Tally::new("x *G y - y *G x = ih{x,y}_KKS");
    for (name, alg) in &algebras {
        let basis = alg.basis();
        for _ in 0..8 {
            let (a, b, c) = (g.poly(basis, 3, 3, true), g.poly(basis, 3, 3, true), g.poly(basis, 3, 3, true));
            let outcome = (|| {
                let lhs = gutt_star(alg, &gutt_star(alg, &a, &b)?, &c)?;
                let rhs = gutt_star(alg, &a, &gutt_star(alg, &b, &c)?)?;
                Ok(lhs == rhs)
            })();
            assoc.record(outcome, || format!("{name}: a={a} b={b} c={c}"));
        }
        let mut linear: Vec<FormalPolynomial> = (0..alg.dim()).map(|i| FormalPolynomial::var(basis, i, N)).collect();
        for _ in 0..4 {
            linear.push(FormalPolynomial::linear(basis, &formal_vector(&g.vector(alg.dim()))).expect("dim"));
        }
        for x in &linear {
            for y in &linear {
                let outcome = (|| {
                    let lhs = gutt_star(alg, x, y)?.try_sub(&gutt_star(alg, y, x)?)?;
                    Ok(lhs == kks_bracket(alg, x, y)?.scale(&ihbar))
                })();
                comm.record(outcome, || format!("{name}: x={x} y={y}"));
            }
        }
    }

    let h3 = &algebras[0].1;
    let sl2 = &algebras[1].1;
    let e = |i: usize| {
        let mut v = vec![GaussianRational::zero(); 3];
        v[i] = GaussianRational::one();
        v
    };
    let mut closed = Tally::new("BCH(hX, hY) = hX + hY + (1/2)h^2 Z on h3");
    closed.record(
        (|| {
            let mut orders = vec![vec![GaussianRational::zero(); 3]; 7];
            orders[1] = vec![GaussianRational::one(), GaussianRational::one(), GaussianRational::zero()];
            orders[2] = vec![GaussianRational::zero(), GaussianRational::zero(), GaussianRational::from_ratio(1, 2)];
            Ok(bch(h3, &e(0), &e(1), 6)? == LieSeries::from_orders(3, orders))
        })(),
        || "X, Y through order 6".into(),
    );
    let mut property = Tally::new("e^xi *G e^eta = exp(BCH) on the window");
    let mut cases: Vec<(&str, &LieAlgebra, Vec<GaussianRational>, Vec<GaussianRational>, BchWindow)> =
        vec![("h3", h3, e(0), e(1), BchWindow::new(6, 3))];
    cases.push(("sl2", sl2, g.vector(3), g.vector(3), BchWindow::new(5, 2)));
    cases.push(("sl2", sl2, e(1), e(2), BchWindow::new(5, 2)));
    cases.push(("h3", h3, g.vector(3), g.vector(3), BchWindow::new(6, 3)));
    for (name, alg, x, y, window) in &cases {
        let outcome = check_bch_property(alg, x, y, *window).map(|r| r.passed());
        property.record(outcome, || format!("{name}: xi={x:?} eta={y:?} orders={}", window.orders));
    }
    let mut naive = Tally::new("bch = naive BCH in U(g) through order 5");
    for (name, alg) in &algebras {
        for _ in 0..3 {
            let (x, y) = (g.vector(3), g.vector(3));
            let outcome = (|| Ok(bch(alg, &x, &y, 5)? == naive_bch_via_ue(alg, &x, &y, 5)?))();
            naive.record(outcome, || format!("{name}: x={x:?} y={y:?}"));
        }
    }
    vec![assoc.finish(), comm.finish(), closed.finish(), property.finish(), naive.finish()]
}

fn seminorms(g: &mut Gen) -> Vec<Check> {
    let tol = RELATIVE_TOLERANCE;
    let mut axioms = Tally::new("p_R seminorm axioms");
    for case in 0..50 {
        let n = 1 + case % 3;
        let gens = Generators::numbered("v", n).expect("names");
        let weights: Vec<f64> = (0..n).map(|_| g.real(0.1, 3.0)).collect();
        let r = g.real(0.5, 2.0);
        let (a, b) = (g.numeric_poly(&gens, 4, 4), g.numeric_poly(&gens, 4, 4));
        let lambda = NumericScalar::new(g.real(-3.0, 3.0), g.real(-3.0, 3.0)).expect("finite");
        let outcome = (|| {
            let spec = SeminormSpec::new(weights.clone(), r)?;
            let (pa, pb) = (seminorm_p_r(&spec, &a)?, seminorm_p_r(&spec, &b)?);
            let pab = seminorm_p_r(&spec, &a.try_add(&b)?)?;
            let scaled = seminorm_p_r(&spec, &a.scale(&lambda))?;
            let zero = seminorm_p_r(&spec, &Polynomial::zero(&gens))?;
            Ok(pa >= 0.0
                && zero == 0.0
                && pab <= (pa + pb) * (1.0 + tol)
                && close_relative(scaled, lambda.abs() * pa, tol))
        })();
        axioms.record(outcome, || format!("R={r} a={a} b={b}"));
    }

    let mut closed = Tally::new("p_R(e^{alpha v}) = sum_k k!^(R-1) (|alpha| p(v))^k");
    for case in 0..30 {
        let n = 1 + case % 3;
        let gens = Generators::numbered("v", n).expect("names");
        let weights: Vec<f64> = (0..n).map(|_| g.real(0.1, 2.0)).collect();
        let r = g.real(0.5, 1.0);
        let v: Vec<NumericScalar> = (0..n).map(|_| NumericScalar::real(g.real(-1.5, 1.5))).collect();
        let alpha = NumericScalar::real(g.real(-1.5, 1.5));
        let k = g.int(0, 12) as u32;
        let outcome = (|| {
            let spec = SeminormSpec::new(weights.clone(), r)?;
            let measured = truncated_exponential(&gens, &v, &alpha, k)?.seminorm(&spec)?;
            let rate = alpha.abs() * spec.norm_of_vector(&v)?;
            Ok(close_relative(measured, exponential_norm_closed_form(r, rate, k), tol))
        })();
        closed.record(outcome, || format!("R={r} K={k} v={v:?} alpha={alpha:?}"));
    }

    let mut half = Tally::new("R = 1/2: exponentials converge");
    for _ in 0..10 {
        let v = [NumericScalar::real(g.real(-1.5, 1.5)), NumericScalar::real(g.real(-1.5, 1.5))];
        let alpha = NumericScalar::real(g.real(0.1, 2.0));
        let outcome = (|| {
            let spec = SeminormSpec::uniform(2, 0.5)?;
            let report = exponential_convergence_report(&spec, &v, alpha, 400)?;
            Ok(matches!(report.status, ConvergenceStatus::Converged { tail_bound, .. } if tail_bound < TAIL_TOLERANCE))
        })();
        half.record(outcome, || format!("v={v:?} alpha={alpha:?}"));
    }

    let mut divergent = Tally::new("R = 1, |alpha| p(v) >= 1: flagged divergent");
    for rate in [1.0, 1.5, 3.0] {
        let outcome = (|| {
            let spec = SeminormSpec::uniform(1, 1.0)?;
            Ok(exponential_convergence_report(&spec, &[NumericScalar::real(1.0)], NumericScalar::real(rate), 200)?.diverged())
        })();
        divergent.record(outcome, || format!("rate={rate}"));
    }

    let mut two = Tally::new("R = 1, |alpha| p(v) = 1/2: limit 2");
    let outcome = (|| {
        let spec = SeminormSpec::uniform(1, 1.0)?;
        let report = exponential_convergence_report(&spec, &[NumericScalar::real(1.0)], NumericScalar::real(0.5), 200)?;
        Ok(matches!(report.status, ConvergenceStatus::Converged { limit, tail_bound }
            if (limit - 2.0).abs() < TAIL_TOLERANCE && tail_bound < TAIL_TOLERANCE))
    })();
    two.record(outcome, || "v=1 alpha=1/2".into());

    vec![axioms.finish(), closed.finish(), half.finish(), divergent.finish(), two.finish()]
}

fn weyl(g: &mut Gen) -> Vec<Check> {
    let z = z();
    let window = ExpWindow::new(6, 4);
    let ps = PhaseSpace::new(1, N).expect("q, p");
    let qp = ps.generators().clone();

    let mut rel = Tally::new("e^v * e^w = e^{z L(v,w)} e^{v+w}, degree <= 6, orders <= 4");
    let mut forms = vec![("std", ps.standard_form()), ("weyl", ps.weyl_form())];
    for _ in 0..2 {
        forms.push(("random", g.form(&qp)));
    }
    for (name, form) in &forms {
        let (v, w) = (formal_vector(&g.vector(2)), formal_vector(&g.vector(2)));
        let outcome = weyl_relation_defect(form, &z, &v, &w, window).map(|r| r.passed());
        rel.record(outcome, || format!("{name}: v={v:?} w={w:?}"));
    }

    let mut translation = Tally::new("translations are automorphisms");
    for case in 0..100 {
        let n = 1 + case % 3;
        let gens = Generators::numbered("x", n).expect("names");
        let lam = g.form(&gens);
        let shift: Vec<FormalScalar> = (0..n).map(|_| g.formal(true)).collect();
        let (a, b) = (g.poly(&gens, 3, 3, true), g.poly(&gens, 3, 3, true));
        let outcome = translation_automorphism_defect(&lam, &z, &shift, &a, &b).map(|d| d.is_zero());
        translation.record(outcome, || format!("n={n} a={a} b={b} shift={shift:?}"));
    }

    let mut inner = Tally::new("e^w * a * e^{-w} = translate(a, phi_w), antisymmetric L");
    let mut antisym = vec![("weyl", ps.weyl_form())];
    antisym.push(("random", g.antisymmetric_form(&qp)));
    for (name, form) in &antisym {
        for _ in 0..2 {
            let w = formal_vector(&g.vector(2));
            let a = g.poly(&qp, 2, 2, false);
            let outcome = inner_automorphism_defect(form, &z, &w, &a, window).map(|r| r.passed());
            inner.record(outcome, || format!("{name}: w={w:?} a={a}"));
        }
    }
    vec![rel.finish(), translation.finish(), inner.finish()]
}

fn continuity(g: &mut Gen) -> Vec<Check> {
    let mut t = Tally::new("R = 1/2: p_R partial sums of e^v * e^w settle by K = 40");
    let ps = PhaseSpace::new(1, N).expect("q, p");
    // z = -i at h = 1
    let form = ps.standard_form().map(|c| NumericScalar(c.evaluate_at(1.0)));
    let zn = NumericScalar::new(0.0, -1.0).expect("finite");
    let mut pairs = vec![([0.0, 1.0], [1.0, 0.0])];
    for _ in 0..3 {
        pairs.push(([g.real(-1.0, 1.0), g.real(-1.0, 1.0)], [g.real(-1.0, 1.0), g.real(-1.0, 1.0)]));
    }
    for (v, w) in pairs {
        let outcome = (|| {
            let spec = SeminormSpec::uniform(2, 0.5)?;
            let v = v.map(NumericScalar::real);
            let w = w.map(NumericScalar::real);
            Ok(continuity_diagnostic(&spec, &form, zn, &v, &w, 40)?.passed())
        })();
        t.record(outcome, || format!("v={v:?} w={w:?}"));
    }
    vec![t.finish()]
}

fn roundtrip(g: &mut Gen) -> Vec<Check> {
    let mut t = Tally::new("parse(print(a)) = a");
    let sets = [
        Generators::new(["q", "p"]).expect("names"),
        Generators::numbered("x", 3).expect("names"),
        Generators::new(["X", "Y", "Z"]).expect("names"),
    ];
    for case in 0..100 {
        let gens = &sets[case % sets.len()];
        let mut a = g.poly(gens, 5, 5, true);
        if case % 10 == 0 {
            // exercise larger and negative rationals
            let big = BigRational::new(BigInt::from(-1_000_003), BigInt::from(97));
            a = a.scale(&FormalScalar::rational(N, big));
        }
        let text = a.to_string();
        let outcome = eval_expression(&text, gens, N).map(|o| o.value == a);
        t.record(outcome, || text.clone());
    }
    vec![t.finish()]
}

/// Plain-text report for a list of suites, ending in a summary line.
pub fn render_text(reports: &[SuiteReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = write!(s, "{r}");
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(s, "{passed}/{} suites passed", reports.len());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("everything"), None);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Suite::Roundtrip, 11);
        let b = run_suite(Suite::Roundtrip, 11);
        assert_eq!(a, b);
        assert!(a.passed, "{a}");
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn failures_are_reported() {
        let mut t = Tally::new("demo");
        t.record(Ok(true), || unreachable!());
        t.record(Ok(false), || "case two".into());
        t.record(Ok(false), || "case three".into());
        let c = t.finish();
        assert!(!c.passed);
        assert_eq!((c.cases, c.failures), (3, 2));
        assert_eq!(c.first_failure.as_deref(), Some("case two"));
    }
}

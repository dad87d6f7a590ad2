use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use starq::analysis::{
    exponential_convergence_report, seminorm_p_r, weyl_relation_defect, ConvergenceReport, ConvergenceStatus,
    ExpWindow, SeminormSpec,
};
use starq::gutt::{bch, gutt_star, kks_bracket, LieAlgebra};
use starq::parse::{eval_expression, parse_scalar};
use starq::scalars::{FormalScalar, GaussianRational, NumericScalar};
use starq::session::{Session, SessionConfig, Structure};
use starq::starprod::{apply_equivalence, commutator, poisson_bracket, star, BilinearFormJson, DifferentialOperator, OrderingOperator};
use starq::symalg::{FormalPolynomial, Generators, PolynomialJson};
use starq::verify::{render_text, run_all, run_suite, Suite};
use starq::Error;

use crate::{Algebra, Cli, Command, Ordering};

pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: u8,
}

pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 2 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidInput(_)
            | Error::InvalidGenerators(_)
            | Error::InvalidSeminorm(_)
            | Error::InvalidLieAlgebra(_)
            | Error::OrderBeyondCap { .. }
            | Error::NotSymmetric
            | Error::NotAntisymmetric => 2,
            _ => 1,
        };
        Self { message: e.to_string(), code }
    }
}

type Res<T> = Result<T, Failure>;

struct Ctx<'a> {
    cli: &'a Cli,
    session: Session,
    warnings: Vec<String>,
}

impl Ctx<'_> {
    fn poly(&mut self, src: &str) -> Res<FormalPolynomial> {
        let gens = self.session.generators().clone();
        self.poly_on(src, &gens)
    }

    fn poly_on(&mut self, src: &str, gens: &std::sync::Arc<Generators>) -> Res<FormalPolynomial> {
        let out = eval_expression(src, gens, self.session.truncation())?;
        self.warnings.extend(out.warnings);
        Ok(out.value)
    }

    /// `--algebra`, else the configured Lie algebra, else h3.
    fn algebra(&self) -> LieAlgebra {
        match self.cli.algebra {
            Some(Algebra::H3) => LieAlgebra::heisenberg(),
            Some(Algebra::Sl2) => LieAlgebra::sl2(),
            None => match self.session.structure() {
                Some(Structure::Lie(g)) => g.clone(),
                _ => LieAlgebra::heisenberg(),
            },
        }
    }

    fn polynomial_result(&self, command: &str, p: &FormalPolynomial) -> String {
        if self.cli.json {
            let v = json!({
                "command": command,
                "result": p.to_string(),
                "polynomial": PolynomialJson::from_polynomial(p, self.session.truncation()),
            });
            line(&v)
        } else {
            format!("{p}\n")
        }
    }
}

fn line(v: &Value) -> String {
    format!("{}\n", serde_json::to_string(v).expect("serializable"))
}

fn read_file(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_session(cli: &Cli) -> Res<Session> {
    let cfg: SessionConfig = match &cli.config {
        Some(path) => serde_json::from_str(&read_file(path)?)
            .map_err(|e| Failure::usage(format!("invalid config {}: {e}", path.display())))?,
        None => SessionConfig::default(),
    };
    let mut session = Session::from_config(&cfg, cli.truncation)?;
    if let Some(h) = cli.hbar_value {
        if !h.is_finite() {
            return Err(Failure::usage("--hbar-value must be finite"));
        }
        session.set_hbar_value(h);
    }
    Ok(session)
}

pub fn run(cli: &Cli) -> Res<Output> {
    let session = load_session(cli)?;
    let mut ctx = Ctx { cli, session, warnings: Vec::new() };
    let mut code = 0;
    let stdout = match &cli.command {
        Command::Star { f, g } => {
            let (a, b) = (ctx.poly(f)?, ctx.poly(g)?);
            let s = &ctx.session;
            let p = star(s.form()?, s.z(), &a, &b)?;
            ctx.polynomial_result("star", &p)
        }
        Command::Commutator { f, g } => {
            let (a, b) = (ctx.poly(f)?, ctx.poly(g)?);
            let s = &ctx.session;
            let p = commutator(s.form()?, s.z(), &a, &b)?;
            ctx.polynomial_result("commutator", &p)
        }
        Command::Poisson { f, g } => {
            let lie = cli.algebra.is_some() || matches!(ctx.session.structure(), Some(Structure::Lie(_)));
            let p = if lie {
                let alg = ctx.algebra();
                let (a, b) = (ctx.poly_on(f, alg.basis())?, ctx.poly_on(g, alg.basis())?);
                kks_bracket(&alg, &a, &b)?
            } else {
                let (a, b) = (ctx.poly(f)?, ctx.poly(g)?);
                poisson_bracket(ctx.session.form()?, &a, &b)?
            };
            ctx.polynomial_result("poisson", &p)
        }
        Command::Gutt { f, g } => {
            let alg = ctx.algebra();
            let (a, b) = (ctx.poly_on(f, alg.basis())?, ctx.poly_on(g, alg.basis())?);
            let p = gutt_star(&alg, &a, &b)?;
            ctx.polynomial_result("gutt", &p)
        }
        Command::Bch { x, y, order } => bch_command(&mut ctx, x, y, *order)?,
        Command::Equiv { sym, f, g } => {
            let s_json: BilinearFormJson = serde_json::from_str(&read_file(sym)?)
                .map_err(|e| Failure::usage(format!("invalid form {}: {e}", sym.display())))?;
            let (a, b) = (ctx.poly(f)?, ctx.poly(g)?);
            let s = &ctx.session;
            let s_form = s_json.to_form(s.generators(), s.truncation())?;
            let t = OrderingOperator::new(s_form.clone(), s.z().clone())?;
            let lam = s.form()?;
            let p = apply_equivalence(&t, lam, s.z(), &a, &b)?;
            if cli.json {
                let direct = star(&lam.try_sub(&s_form)?, s.z(), &a, &b)?;
                line(&json!({
                    "command": "equiv",
                    "result": p.to_string(),
                    "polynomial": PolynomialJson::from_polynomial(&p, s.truncation()),
                    "matches_shifted_form": p == direct,
                }))
            } else {
                format!("{p}\n")
            }
        }
        Command::Rep { ordering, f } => {
            let a = ctx.poly(f)?;
            let ps = ctx.session.phase_space()?;
            let op = match ordering {
                Ordering::Std => ps.std_rep(&a)?,
                Ordering::Weyl => ps.weyl_rep(&a)?,
            };
            let name = match ordering {
                Ordering::Std => "std",
                Ordering::Weyl => "weyl",
            };
            operator_result(&ctx, "rep", Some(name), &op)?
        }
        Command::Adjoint { op } => {
            let ps = ctx.session.phase_space()?;
            let sym_gens = DifferentialOperator::symbol_generators(ps.config())?;
            let symbol = ctx.poly_on(op, &sym_gens)?;
            let d = DifferentialOperator::from_symbol(ps.config(), &symbol)?;
            operator_result(&ctx, "adjoint", None, &d.formal_adjoint())?
        }
        Command::Seminorm { f, r } => {
            let a = ctx.poly(f)?;
            let s = &ctx.session;
            let spec = match r {
                Some(r) => s.seminorm().with_r(*r)?,
                None => s.seminorm().clone(),
            };
            let value = seminorm_p_r(&spec, &a.to_numeric(s.hbar_value()))?;
            if cli.json {
                line(&json!({
                    "command": "seminorm",
                    "R": spec.r(),
                    "weights": spec.weights(),
                    "hbar_value": s.hbar_value(),
                    "value": value,
                }))
            } else {
                format!("{value}\n")
            }
        }
        Command::Expcheck { v, alpha, r, k_max } => {
            let v = parse_reals(v)?;
            let s = &ctx.session;
            let r = r.unwrap_or(s.seminorm().r());
            let weights = if s.seminorm().weights().len() == v.len() {
                s.seminorm().weights().to_vec()
            } else {
                vec![1.0; v.len()]
            };
            let spec = SeminormSpec::new(weights, r)?;
            let alpha = NumericScalar::real(*alpha).checked()?;
            let report = exponential_convergence_report(&spec, &v, alpha, *k_max)?;
            expcheck_output(cli.json, &report)
        }
        Command::Weylrel { v, w, degree, orders } => {
            let s = &ctx.session;
            let v = parse_scalars(v, s.truncation())?;
            let w = parse_scalars(w, s.truncation())?;
            let report = weyl_relation_defect(s.form()?, s.z(), &v, &w, ExpWindow::new(*degree, *orders))?;
            if !report.passed() {
                code = 3;
            }
            if cli.json {
                line(&serde_json::to_value(&report).expect("serializable"))
            } else {
                format!(
                    "{} degree<={} orders<={}: {} (defect_max {})\n",
                    report.check, report.window.degree, report.window.orders, report.status, report.defect_max
                )
            }
        }
        Command::Verify { suite } => {
            let reports = if suite == "all" {
                run_all(cli.seed)
            } else {
                let s = Suite::from_name(suite).ok_or_else(|| {
                    let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                    Failure::usage(format!("unknown suite `{suite}`; expected all, {}", names.join(", ")))
                })?;
                vec![run_suite(s, cli.seed)]
            };
            let passed = reports.iter().all(|r| r.passed);
            if !passed {
                code = 3;
            }
            if cli.json {
                line(&json!({ "seed": cli.seed, "passed": passed, "suites": reports }))
            } else {
                render_text(&reports)
            }
        }
    };
    Ok(Output { stdout, warnings: ctx.warnings, code })
}

fn bch_command(ctx: &mut Ctx<'_>, x: &str, y: &str, order: u32) -> Res<String> {
    let alg = ctx.algebra();
    let xv = lie_vector(ctx, &alg, x)?;
    let yv = lie_vector(ctx, &alg, y)?;
    let series = bch(&alg, &xv, &yv, order)?;
    let text = series.display(&alg).to_string();
    if ctx.cli.json {
        let orders: Vec<Vec<String>> = (0..=order)
            .map(|m| series.order(m).iter().map(|c| FormalScalar::constant(0, c.clone()).to_string()).collect())
            .collect();
        Ok(line(&json!({
            "command": "bch",
            "basis": alg.basis().names(),
            "order": order,
            "result": text,
            "orders": orders,
        })))
    } else {
        Ok(format!("{text}\n"))
    }
}

/// A linear, h-free element of g written in the basis names.
fn lie_vector(ctx: &mut Ctx<'_>, alg: &LieAlgebra, src: &str) -> Res<Vec<GaussianRational>> {
    let p = ctx.poly_on(src, alg.basis())?;
    let mut v = vec![GaussianRational::zero(); alg.dim()];
    for (e, c) in p.terms() {
        let i = (e.degree() == 1).then(|| e.exponents().iter().position(|&k| k == 1)).flatten();
        let Some(i) = i else {
            return Err(Failure::usage(format!("`{src}` is not a linear element of the Lie algebra")));
        };
        if c.terms().any(|(k, _)| k > 0) {
            return Err(Failure::usage(format!("`{src}`: coefficients of Lie algebra elements must not involve h")));
        }
        v[i] = c.coeff(0);
    }
    Ok(v)
}

fn operator_result(ctx: &Ctx<'_>, command: &str, ordering: Option<&str>, op: &DifferentialOperator) -> Res<String> {
    if !ctx.cli.json {
        return Ok(format!("{op}\n"));
    }
    let symbol = op.to_symbol()?;
    let mut v = json!({
        "command": command,
        "result": op.to_string(),
        "symbol": PolynomialJson::from_polynomial(&symbol, ctx.session.truncation()),
    });
    if let Some(o) = ordering {
        v["ordering"] = json!(o);
    }
    Ok(line(&v))
}

fn expcheck_output(json_out: bool, report: &ConvergenceReport) -> String {
    if json_out {
        let mut v = serde_json::to_value(report).expect("serializable");
        v["command"] = json!("expcheck");
        return line(&v);
    }
    let mut s = report.to_csv();
    let verdict = match &report.status {
        ConvergenceStatus::Converged { limit, tail_bound } => {
            format!("status: converged (limit {limit}, tail bound {tail_bound:e})")
        }
        ConvergenceStatus::Diverged { reason } => format!("status: diverged ({reason})"),
        ConvergenceStatus::Undecided { tail_bound } => format!("status: undecided (tail bound {tail_bound:e})"),
    };
    s.push_str(&verdict);
    s.push('\n');
    s
}

fn parse_reals(src: &str) -> Res<Vec<NumericScalar>> {
    src.split(',')
        .map(|t| {
            let x: f64 = t.trim().parse().map_err(|_| Failure::usage(format!("`{}` is not a real number", t.trim())))?;
            Ok(NumericScalar::real(x).checked()?)
        })
        .collect()
}

fn parse_scalars(src: &str, truncation: u32) -> Res<Vec<FormalScalar>> {
    src.split(',').map(|t| Ok(parse_scalar(t.trim(), truncation)?)).collect()
}

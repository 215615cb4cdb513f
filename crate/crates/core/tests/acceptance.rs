//! Acceptance suite. Every expected value here comes from a closed form or a
//! hand-rolled computation in this file, not from the library under test.
//! Prints one line per criterion and exits nonzero if any fails.

// `!(dev <= tol)` is meant to fail on NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use slab::bochner::{classify, CaseTag, ClassificationRecord, Interval, Mode};
use slab::cli::{cmd_classify, cmd_example_4th, render_json, SecondOrderSpec};
use slab::exactalg::{Parity, Polynomial, Rational, RationalFunction};
use slab::highorder::{boundary_difference_vanishes, derive_order4, example_order4, fourth_order_family};
use slab::numcheck::quad_inner_product;
use slab::operator::DiffOperator;
use slab::verify::{eigenpolynomials, moments_upto};
use slab::weight::WeightForm;

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

fn ints(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

fn lin(c0: &Rational, c1: &Rational) -> Polynomial {
    Polynomial::new(vec![c0.clone(), c1.clone()])
}

fn binom(n: usize, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * int((n - i) as i64) / int(i as i64 + 1))
}

fn falling(n: i64, k: usize) -> Rational {
    (0..k as i64).map(|i| int(n - i)).product()
}

/// a y'' + b y' + c y with nothing but polynomial calculus.
fn apply2(a: &Polynomial, b: &Polynomial, y: &Polynomial) -> Polynomial {
    &(a * &y.differentiate(2)) + &(b * &y.differentiate(1))
}

/// Closed-form description of one family: the weight's logarithmic
/// derivative and exponential part, its eigenvalues and its moment ratios.
struct Golden {
    name: String,
    a: Polynomial,
    b: Polynomial,
    log_derivative: RationalFunction,
    exp_part: Polynomial,
    eigenvalue: Box<dyn Fn(i64) -> Rational>,
    ratio: Box<dyn Fn(usize) -> Rational>,
}

fn over(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::new(num, den).unwrap()
}

/// (1-x)^ea (1+x)^eb on [-1, 1].
fn jacobi(name: &str, ea: Rational, eb: Rational) -> Golden {
    // b = a' + a p'/p with p'/p = -ea/(1-x) + eb/(1+x)
    let alpha = -(&(&ea + &eb) + &int(2));
    let beta = &eb - &ea;
    let logd =
        &over(Polynomial::constant(-&ea), ints(&[1, -1])) + &over(Polynomial::constant(eb.clone()), ints(&[1, 1]));
    let al = alpha.clone();
    let (ra, rb) = (ea.clone(), eb.clone());
    Golden {
        name: format!("{name} (1-x)^{ea} (1+x)^{eb}"),
        a: ints(&[1, 0, -1]),
        b: lin(&beta, &alpha),
        log_derivative: logd,
        exp_part: Polynomial::zero(),
        eigenvalue: Box::new(move |n| &al * &int(n) - int(n * (n - 1))),
        ratio: Box::new(move |k| {
            // x = 2t - 1 turns the moments into ratios of beta integrals
            (0..=k)
                .map(|j| {
                    let sign = if (k - j) % 2 == 0 { int(1) } else { int(-1) };
                    let beta_ratio: Rational = (0..j)
                        .map(|i| (&rb + &int(1 + i as i64)) / (&(&ra + &rb) + &int(2 + i as i64)))
                        .product();
                    binom(k, j) * int(2).pow(j as u32) * sign * beta_ratio
                })
                .sum()
        }),
    }
}

/// x^(c-1) e^(-x) on [0, inf).
fn confluent(c: Rational) -> Golden {
    let cc = c.clone();
    Golden {
        name: format!("confluent c={c}"),
        a: ints(&[0, 1]),
        b: lin(&c, &int(-1)),
        log_derivative: &over(Polynomial::constant(&c - &int(1)), ints(&[0, 1])) + &RationalFunction::from(ints(&[-1])),
        exp_part: ints(&[0, -1]),
        eigenvalue: Box::new(|n| int(-n)),
        ratio: Box::new(move |k| (0..k).map(|i| &cc + &int(i as i64)).product()),
    }
}

/// exp(-x^2 / (2 s)) on the real line; moments (k-1)!! s^(k/2).
fn gaussian(name: &str, s: Rational) -> Golden {
    let inv = Rational::one() / &s;
    let ss = s.clone();
    Golden {
        name: name.into(),
        a: ints(&[1]),
        b: lin(&int(0), &-&inv),
        log_derivative: RationalFunction::from(lin(&int(0), &-&inv)),
        exp_part: Polynomial::new(vec![int(0), int(0), -(&inv / &int(2))]),
        eigenvalue: Box::new(move |n| -(&inv * &int(n))),
        ratio: Box::new(move |k| {
            if k % 2 == 1 {
                return int(0);
            }
            let double_fact: Rational = (1..k as i64).step_by(2).map(int).product();
            double_fact * ss.pow(k as u32 / 2)
        }),
    }
}

fn goldens() -> Vec<Golden> {
    vec![
        jacobi("legendre", int(0), int(0)),
        confluent(int(1)),
        gaussian("hermite", q(1, 2)),
        gaussian("gaussian unit variance", int(1)),
        confluent(q(3, 2)),
        confluent(q(5, 2)),
        confluent(int(3)),
        jacobi("chebyshev", q(-1, 2), q(-1, 2)),
        jacobi("gegenbauer", q(1, 2), q(1, 2)),
        jacobi("jacobi", int(1), int(2)),
        jacobi("jacobi", q(1, 2), q(-1, 2)),
        jacobi("jacobi", q(-1, 3), q(2, 3)),
        jacobi("jacobi", q(3, 2), int(0)),
    ]
}

fn record(g: &Golden) -> Result<ClassificationRecord, String> {
    classify(&g.a, &g.b, &int(0)).map_err(|e| format!("{}: {e}", g.name))
}

fn weight_of(g: &Golden, rec: &ClassificationRecord) -> Result<WeightForm, String> {
    rec.weight.clone().ok_or_else(|| format!("{}: no weight", g.name))
}

fn oracle_gram(g: &Golden, polys: &[Polynomial]) -> Vec<Vec<Rational>> {
    let top = polys.iter().filter_map(|p| p.deg()).max().unwrap_or(0);
    let r: Vec<Rational> = (0..=2 * top).map(|k| (g.ratio)(k)).collect();
    polys
        .iter()
        .map(|pm| {
            polys
                .iter()
                .map(|pn| {
                    let mut s = int(0);
                    for (i, ci) in pm.coeffs().iter().enumerate() {
                        for (j, cj) in pn.coeffs().iter().enumerate() {
                            s = s + ci * cj * &r[i + j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    check!(t < limit, "took {t:?}, limit {limit:?}");
    Ok(t)
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let gs = goldens();
    let names = [
        "legendre",
        "confluent c=1",
        "hermite",
        "confluent c=3/2",
        "chebyshev",
        "jacobi",
    ];
    for want in names {
        check!(gs.iter().any(|g| g.name.starts_with(want)), "family {want} missing");
    }
    for g in &gs {
        let rec = record(g)?;
        let w = weight_of(g, &rec)?;
        check!(
            w.log_derivative() == g.log_derivative,
            "{}: p'/p = {:?}",
            g.name,
            w.log_derivative()
        );
        check!(
            w.exp_arg == RationalFunction::from(g.exp_part.clone()),
            "{}: exponential part differs",
            g.name
        );
        check!(w.constant.is_positive(), "{}: constant {}", g.name, w.constant);
        for n in 0..=20i64 {
            let want = (g.eigenvalue)(n);
            check!(
                rec.eigenvalues.eval(n as u64) == want,
                "{}: lambda_{n} = {}",
                g.name,
                rec.eigenvalues.eval(n as u64)
            );
            // leading coefficient of L(x^n)
            let xn = Polynomial::monomial(int(1), n as usize);
            let direct = apply2(&g.a, &g.b, &xn).coeff(n as usize);
            check!(direct == want, "{}: L(x^{n}) has diagonal {direct}", g.name);
        }
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("{} families, n <= 20, {t:.2?}", gs.len()))
}

fn grid() -> Vec<(Rational, Rational)> {
    let vals: Vec<Rational> = (-10..=10).map(|k| q(k, 3)).collect();
    vals.iter()
        .flat_map(|a| vals.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

fn criterion2() -> Outcome {
    let zero = int(0);
    let pairs = grid();
    check!(pairs.len() >= 100, "grid too small");
    let inputs = [
        (CaseTag::CaseI, ints(&[1, 0, -1])),
        (CaseTag::CaseII, ints(&[0, 0, 1])),
        (CaseTag::CaseIII, ints(&[0, 1])),
        (CaseTag::CaseIV, ints(&[1])),
    ];
    let mut admissible = [0usize; 4];
    for (idx, (case, a)) in inputs.iter().enumerate() {
        for (alpha, beta) in &pairs {
            let b = lin(beta, alpha);
            let rec = classify(a, &b, &zero).map_err(|e| format!("{a}, {b}: {e}"))?;
            check!(rec.case_tag == *case, "{a}, {b}: routed to {}", rec.case_tag.name());
            for c in &rec.constraints {
                check!(
                    c.satisfied == c.relation.holds(&c.lhs, &c.rhs),
                    "{a}, {b}: constraint {}",
                    c.description
                );
            }
            // positive alpha on the half-line is reflected onto (-inf, 0]
            let (al, be) = if *case == CaseTag::CaseIII && alpha > &zero {
                (-alpha, beta.clone())
            } else {
                (alpha.clone(), beta.clone())
            };
            check!(
                rec.alpha == al && rec.beta == be,
                "{a}, {b}: canonical parameters ({}, {})",
                rec.alpha,
                rec.beta
            );
            let want = match case {
                CaseTag::CaseI => {
                    if &(&be - &al) - &int(2) >= zero && &(&be + &al) + &int(2) <= zero {
                        Mode::StrictWeight
                    } else if al < be && be < -&al {
                        Mode::InessentialSingularity
                    } else {
                        Mode::NotAdmissible
                    }
                }
                // with beta = 0 the weight is a pure power of |x| and no half-line is singled out
                CaseTag::CaseII if be.is_zero() => Mode::NotAdmissible,
                CaseTag::CaseII => Mode::Vacuous,
                CaseTag::CaseIII if al < zero && be >= int(1) => Mode::StrictWeight,
                CaseTag::CaseIV if al < zero => Mode::StrictWeight,
                _ => Mode::NotAdmissible,
            };
            check!(
                rec.mode == want,
                "{a}, {b}: mode {}, expected {}",
                rec.mode.name(),
                want.name()
            );
            if want.is_admissible() {
                admissible[idx] += 1;
            }
        }
    }
    Ok(format!(
        "{} pairs per case, admissible counts {:?}",
        pairs.len(),
        admissible
    ))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let gs = goldens();
    for g in &gs {
        let rec = record(g)?;
        check!(rec.is_admissible(), "{}: {}", g.name, rec.mode.name());
        let polys = eigenpolynomials(&rec, 10).map_err(|e| format!("{}: {e}", g.name))?;
        for (n, p) in polys.iter().enumerate() {
            check!(
                p.deg() == Some(n) && p.leading_coefficient().is_one(),
                "{}: P_{n} = {p}",
                g.name
            );
            let lam = (g.eigenvalue)(n as i64);
            check!(
                apply2(&g.a, &g.b, p) == p.scale(&lam),
                "{}: P_{n} is not an eigenfunction",
                g.name
            );
        }
        let gram = oracle_gram(g, &polys);
        for m in 0..=10 {
            check!(gram[m][m].is_positive(), "{}: <P_{m}, P_{m}> = {}", g.name, gram[m][m]);
            for n in 0..m {
                check!(gram[m][n].is_zero(), "{}: <P_{m}, P_{n}> = {}", g.name, gram[m][n]);
            }
        }
        let table = moments_upto(&rec, 20).map_err(|e| format!("{}: {e}", g.name))?;
        for k in 0..=20 {
            check!(
                table.ratios[k] == (g.ratio)(k),
                "{}: r_{k} = {}",
                g.name,
                table.ratios[k]
            );
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("{} records, n <= 10, {t:.2?}", gs.len()))
}

fn criterion4() -> Outcome {
    let laguerre = classify(&ints(&[0, 1]), &ints(&[1, -1]), &int(0)).map_err(|e| e.to_string())?;
    let table = moments_upto(&laguerre, 10).map_err(|e| e.to_string())?;
    let mut fact = int(1);
    for k in 0..=10usize {
        if k > 0 {
            fact = fact * int(k as i64);
        }
        check!(table.ratios[k] == fact, "laguerre r_{k} = {}", table.ratios[k]);
    }
    let legendre = classify(&ints(&[1, 0, -1]), &ints(&[0, -2]), &int(0)).map_err(|e| e.to_string())?;
    let table = moments_upto(&legendre, 10).map_err(|e| e.to_string())?;
    for k in 0..=10usize {
        // (1/2) [x^(k+1) / (k+1)] from -1 to 1
        let e = k as u32 + 1;
        let integral = (int(1).pow(e) - int(-1).pow(e)) / int(e as i64) / int(2);
        let closed = if k % 2 == 1 { int(0) } else { q(1, k as i64 + 1) };
        check!(
            integral == closed,
            "integration oracle disagrees with closed form at k = {k}"
        );
        check!(table.ratios[k] == closed, "legendre r_{k} = {}", table.ratios[k]);
    }
    Ok("laguerre k!, legendre 1/(k+1), k <= 10".into())
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let gs = goldens();
    let mut worst = 0.0f64;
    for name in ["legendre", "chebyshev", "confluent c=1", "hermite"] {
        let g = gs.iter().find(|g| g.name.starts_with(name)).unwrap();
        let rec = record(g)?;
        let polys = eigenpolynomials(&rec, 6).map_err(|e| e.to_string())?;
        let gram = oracle_gram(g, &polys);
        for m in 0..=6 {
            for n in 0..=6 {
                let exact = gram[m][n].to_f64();
                let got = quad_inner_product(&rec, &polys[m], &polys[n], 1e-10)
                    .map_err(|e| format!("{name} ({m}, {n}): {e}"))?;
                let tol = if gram[m][n].is_zero() { 1e-8 } else { 1e-8 * exact.abs() };
                let dev = (got.value - exact).abs();
                worst = worst.max(dev / tol);
                check!(
                    dev <= tol,
                    "{name} ({m}, {n}): quadrature {} vs exact {exact}",
                    got.value
                );
            }
        }
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("worst deviation {worst:.1e} of tolerance, {t:.2?}"))
}

/// ∫_{-1}^{1} (u L y - y L u) dx for an operator with unit weight.
fn green_integral(op: &DiffOperator, u: &Polynomial, y: &Polynomial) -> Rational {
    let f = &(u * &op.apply(y)) - &(y * &op.apply(u));
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(k, _)| k % 2 == 0)
        .map(|(k, c)| c * &q(2, k as i64 + 1))
        .sum()
}

fn criterion6() -> Outcome {
    let a4 = &ints(&[1, 0, -1]) * &ints(&[1, 0, -1]);
    let (a3, link) = derive_order4(&a4, &WeightForm::unit()).map_err(|e| e.to_string())?;
    let want_a3 = &ints(&[0, -8]) * &ints(&[1, 0, -1]);
    check!(a3 == want_a3, "a3 = {a3}");
    check!(link.to_string() == "a2' = 24*x + a1", "linkage {link}");
    let (sys, formula) = example_order4().map_err(|e| e.to_string())?;
    check!(sys.residuals_vanish(), "nonzero determining residual");
    let op = sys.operator();
    for n in 0..=10i64 {
        let oracle = falling(n, 3) * int(n + 5) - int(24 * n);
        check!(
            formula.eval(n as u64) == oracle,
            "lambda_{n} = {}",
            formula.eval(n as u64)
        );
        let direct = op.apply(&Polynomial::monomial(int(1), n as usize)).coeff(n as usize);
        check!(direct == oracle, "L(x^{n}) diagonal {direct}");
    }
    let cube = Polynomial::monomial(int(1), 3);
    check!(op.apply(&cube) == cube.scale(&int(-24)), "L(x^3) = {}", op.apply(&cube));
    let iv = Interval::closed(int(-1), int(1)).map_err(|e| e.to_string())?;
    let bc = boundary_difference_vanishes(&sys.boundary, &iv, 8).map_err(|e| e.to_string())?;
    check!(
        bc.vanishes && bc.pairs_checked >= 81,
        "boundary witness {:?}",
        bc.witness
    );
    for i in 0..=8 {
        for j in 0..=8 {
            let (u, y) = (Polynomial::monomial(int(1), i), Polynomial::monomial(int(1), j));
            check!(
                green_integral(&op, &u, &y).is_zero(),
                "Green integral nonzero for x^{i}, x^{j}"
            );
        }
    }
    let iv = Interval::closed(int(-1), int(1)).map_err(|e| e.to_string())?;
    let report = cmd_example_4th(&iv, 8, 10).map_err(|e| e.to_string())?.report;
    let notice = report["discrepancies"][0]["notice"].as_str().unwrap_or("");
    check!(
        notice.contains("- 24 ") || notice.ends_with("- 24"),
        "printed -24 variant not flagged: {notice:?}"
    );
    Ok(format!("{} monomial pairs, printed variant flagged", bc.pairs_checked))
}

fn criterion7() -> Outcome {
    let rec = classify(&ints(&[0, 0, 1]), &ints(&[1, 1]), &int(0)).map_err(|e| e.to_string())?;
    check!(
        rec.case_tag == CaseTag::CaseII && rec.mode == Mode::Vacuous,
        "x^2: {} / {}",
        rec.case_tag.name(),
        rec.mode.name()
    );
    check!(
        rec.notes.iter().any(|n| n.contains("finite norm")),
        "no norm-divergence explanation in {:?}",
        rec.notes
    );
    let rec = classify(&ints(&[1, 0, 1]), &ints(&[0, 1]), &int(0)).map_err(|e| e.to_string())?;
    check!(rec.mode == Mode::NotAdmissible, "1 + x^2: {}", rec.mode.name());
    let sys = fourth_order_family(&ints(&[0, 0, 1])).map_err(|e| e.to_string())?;
    let iv = Interval::closed(int(-1), int(1)).map_err(|e| e.to_string())?;
    let bc = boundary_difference_vanishes(&sys.boundary, &iv, 8).map_err(|e| e.to_string())?;
    let w = bc.witness.ok_or("even a2 family passed the boundary check")?;
    check!(
        (w.u_degree, w.y_degree) == (0, 2) && w.difference == int(-28),
        "witness {w:?}"
    );
    let green = green_integral(&sys.operator(), &Polynomial::one(), &Polynomial::monomial(int(1), 2));
    check!(green == int(-28), "Green integral for (1, x^2) is {green}");
    Ok("vacuous, no real roots, witness (1, x^2, -28)".into())
}

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rat(), 0..=max_deg + 1).prop_map(Polynomial::new)
}

fn operator() -> impl Strategy<Value = DiffOperator> {
    (1usize..=4)
        .prop_flat_map(|order| (prop::collection::vec(poly(order), order + 1), Just(order)))
        .prop_map(|(mut coeffs, order)| {
            // a_k of degree at most k, top one nonzero
            for (k, c) in coeffs.iter_mut().enumerate() {
                *c = Polynomial::new(c.coeffs().iter().take(k + 1).cloned().collect());
            }
            if coeffs[order].is_zero() {
                coeffs[order] = Polynomial::one();
            }
            DiffOperator::new(coeffs).unwrap()
        })
}

const CASES: u32 = 256;

fn run<S: Strategy>(name: &str, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&s, f).map_err(|e| format!("{name}: {e}"))
}

fn criterion8() -> Outcome {
    run("triangularity", (operator(), 0usize..=6), |(op, n)| {
        let m = op.matrix_on_pn(n).unwrap();
        for i in 0..=n {
            // diagonal entry is the x^i coefficient of L(x^i)
            let direct = op.apply(&Polynomial::monomial(int(1), i)).coeff(i);
            prop_assert_eq!(&m[i][i], &direct);
            for j in 0..i {
                prop_assert!(m[i][j].is_zero());
            }
        }
        Ok(())
    })?;
    run("product rule", (poly(5), poly(5)), |(p, r)| {
        let lhs = (&p * &r).differentiate(1);
        prop_assert_eq!(lhs, &(&p.differentiate(1) * &r) + &(&p * &r.differentiate(1)));
        Ok(())
    })?;
    run("parity", (rat(), rat(), rat(), 0usize..=8), |(a0, a2, b1, n)| {
        let a2 = if a2.is_zero() { int(1) } else { a2 };
        let op = DiffOperator::second_order(
            &Polynomial::new(vec![a2, int(0), a0]),
            &lin(&int(0), &b1),
            &Polynomial::zero(),
        )
        .unwrap();
        if let Ok(pair) = op.monic_eigenpolynomial(n) {
            let want = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
            prop_assert_eq!(pair.eigenpolynomial.parity(), want);
        }
        Ok(())
    })?;
    run("eigen-residual", (operator(), 0usize..=7), |(op, n)| {
        match op.monic_eigenpolynomial(n) {
            Ok(pair) => {
                let residual = &op.apply(&pair.eigenpolynomial) - &pair.eigenpolynomial.scale(&pair.eigenvalue);
                prop_assert!(residual.is_zero());
            }
            Err(slab::Error::EigenvalueCollisionUnsolvable { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
        Ok(())
    })?;
    run("report round-trip", (poly(2), poly(1), rat()), |(a, b, c)| {
        prop_assume!(!a.is_zero());
        let spec = SecondOrderSpec { a, b, c };
        let first = cmd_classify(&spec).map(|o| render_json(&o.report));
        prop_assert_eq!(&first, &cmd_classify(&spec).map(|o| render_json(&o.report)));
        if let Ok(text) = first {
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            let field = |k: &str| v["input"][k].as_str().unwrap().to_string();
            let back = SecondOrderSpec::parse(&field("a"), &field("b"), &field("c")).unwrap();
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(render_json(&cmd_classify(&back).unwrap().report), text);
        }
        Ok(())
    })?;
    Ok(format!("5 properties x {CASES} cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "six-family golden suite", criterion1),
        (2, "classification dispatch", criterion2),
        (3, "orthogonality", criterion3),
        (4, "moment oracle", criterion4),
        (5, "numeric mirror", criterion5),
        (6, "fourth-order example", criterion6),
        (7, "negative controls", criterion7),
        (8, "property suites", criterion8),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {id} {tag} {name}: {detail} [{:.2?}]", start.elapsed());
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}

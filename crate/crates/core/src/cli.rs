//! Command-line surface: expression parser, JSON/CSV reports and the
//! `slab` subcommands.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::bochner::{classify, ClassificationRecord, Endpoint, Interval};
use crate::error::{Error, Result};
use crate::exactalg::{Parity, Polynomial, Rational};
use crate::highorder::{
    boundary_difference_vanishes, derive_order3, derive_order4, example_order4, oracle_example_eigenvalue,
    printed_example_eigenvalue, solve_order3_a0, solve_order4_a1, HighOrderSystem, Linkage, SystemOrder,
};
use crate::numcheck::quad_inner_product;
use crate::operator::EigenvalueFormula;
use crate::selftest::{run_selftest, SelftestOptions};
use crate::verify::{eigenpolynomials, gram_matrix, GramMatrix};
use crate::weight::{
    decay_dominates_polynomials, derive_weight, finiteness_at_point, Direction, WeightForm, WeightOrder,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Agreement required between quadrature and exact Gram entries.
pub const NUMERIC_AGREEMENT: f64 = 1e-8;

// ---------------------------------------------------------------------------
// expression grammar
//
//   expr  := term (('+' | '-') term)*
//   term  := unary ('*' unary)*
//   unary := ('-' | '+') unary | power
//   power := atom ('^' INT)?
//   atom  := INT ('/' INT)? | 'x' | '(' expr ')'

const MAX_EXPONENT: u32 = 4096;

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> Error {
        match self.src.get(self.pos) {
            Some(c) => Error::parse(self.pos, format!("unexpected character '{}'", *c as char)),
            None => Error::parse(self.pos, "unexpected end of input"),
        }
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.src.get(self.pos) {
                Some(_) => Error::parse(self.pos, "expected an integer"),
                None => Error::parse(self.pos, "unexpected end of input"),
            });
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let e = self.integer()?;
        let e: u32 = u32::try_from(&e)
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| Error::parse(at, format!("exponent larger than {MAX_EXPONENT}")))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() != Some(b'/') {
                    return Ok(Polynomial::constant(Rational::from(num)));
                }
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let den = self.integer()?;
                let r = Rational::new(num, den).map_err(|_| Error::parse(at, "zero denominator"))?;
                Ok(Polynomial::constant(r))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Polynomial::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses the report grammar; errors carry the byte offset.
pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    let mut p = ExprParser {
        src: src.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(out)
}

fn parse_field(flag: &str, src: &str) -> Result<Polynomial> {
    parse_polynomial(src).map_err(|e| match e {
        Error::Parse { pos, message } => Error::Parse {
            pos,
            message: format!("--{flag} {src:?}: {message}"),
        },
        other => other,
    })
}

fn parse_constant(flag: &str, src: &str) -> Result<Rational> {
    let p = parse_field(flag, src)?;
    if !p.is_constant() {
        return Err(Error::DegreeViolation(format!("--{flag} must be a constant, got {p}")));
    }
    Ok(p.coeff(0))
}

fn parse_rational(src: &str) -> Result<Rational> {
    parse_constant("interval", src)
}

// ---------------------------------------------------------------------------
// specs and outcomes

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondOrderSpec {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Rational,
}

impl SecondOrderSpec {
    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self> {
        Ok(SecondOrderSpec {
            a: parse_field("a", a)?,
            b: parse_field("b", b)?,
            c: parse_constant("c", c)?,
        })
    }
}

/// Order-3 or order-4 coefficients; missing ones are derived where the
/// determining equations fix them and default to zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HighOrderSpec {
    pub a4: Option<Polynomial>,
    pub a3: Option<Polynomial>,
    pub a2: Option<Polynomial>,
    pub a1: Option<Polynomial>,
    pub a0: Option<Polynomial>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
    pub csv: Option<String>,
}

impl Outcome {
    fn new(report: Value, exit_code: i32) -> Self {
        Outcome {
            report,
            exit_code,
            csv: None,
        }
    }
}

fn exit_for(admissible: bool) -> i32 {
    if admissible {
        0
    } else {
        2
    }
}

// ---------------------------------------------------------------------------
// JSON fragments

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn poly(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

fn endpoint(e: &Endpoint) -> Value {
    Value::String(e.to_string())
}

fn report(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m
}

fn input_json(spec: &SecondOrderSpec) -> Value {
    json!({ "a": poly(&spec.a), "b": poly(&spec.b), "c": rat(&spec.c) })
}

fn interval_json(iv: &Interval) -> Value {
    json!({
        "lo": endpoint(&iv.lo),
        "hi": endpoint(&iv.hi),
        "loOpen": iv.lo_open,
        "hiOpen": iv.hi_open,
        "display": iv.to_string(),
    })
}

fn weight_json(w: &WeightForm) -> Value {
    json!({
        "display": w.to_string(),
        "constant": rat(&w.constant),
        "powerFactors": w.power_factors.iter().map(|f| json!({
            "root": rat(&f.root),
            "exponent": rat(&f.exponent),
        })).collect::<Vec<_>>(),
        "expArg": w.exp_arg.to_string(),
    })
}

fn formula_json(f: &EigenvalueFormula, n_max: usize) -> Value {
    json!({
        "fallingFactorial": f.falling_factorial_coeffs.iter().map(rat).collect::<Vec<_>>(),
        "expanded": f.expanded_in_n().to_string().replace('x', "n"),
        "table": (0..=n_max as u64).map(|n| json!({ "n": n, "lambda": rat(&f.eval(n)) })).collect::<Vec<_>>(),
    })
}

fn classification_json(rec: &ClassificationRecord) -> Value {
    json!({
        "case": rec.case_tag.name(),
        "mode": rec.mode.name(),
        "admissible": rec.is_admissible(),
        "interval": interval_json(&rec.interval),
        "alpha": rat(&rec.alpha),
        "beta": rat(&rec.beta),
        "canonicalFactor": rat(&rec.canonical_factor),
        "affineMap": { "scale": rat(&rec.affine_map.scale), "shift": rat(&rec.affine_map.shift) },
        "constraints": rec.constraints.iter().map(|c| json!({
            "description": c.description,
            "lhs": rat(&c.lhs),
            "relation": c.relation.symbol(),
            "rhs": rat(&c.rhs),
            "satisfied": c.satisfied,
        })).collect::<Vec<_>>(),
        "notes": rec.notes,
        "boundaryTermsVanish": rec.boundary_terms_vanish().ok(),
    })
}

fn gram_json(g: &GramMatrix) -> Value {
    json!({
        "entries": g.entries.iter().map(|row| row.iter().map(rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "symmetric": g.is_symmetric(),
        "diagonal": g.is_diagonal(),
        "diagonalPositive": g.diagonal_positive(),
    })
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Zero => "zero",
        Parity::Even => "even",
        Parity::Odd => "odd",
        Parity::Mixed => "mixed",
    }
}

// ---------------------------------------------------------------------------
// commands

pub fn cmd_classify(spec: &SecondOrderSpec) -> Result<Outcome> {
    let rec = classify(&spec.a, &spec.b, &spec.c)?;
    let mut r = report("classify");
    r.insert("input".into(), input_json(spec));
    r.insert("classification".into(), classification_json(&rec));
    r.insert("weight".into(), rec.weight.as_ref().map_or(Value::Null, weight_json));
    r.insert("eigenvalues".into(), formula_json(&rec.eigenvalues, 5));
    Ok(Outcome::new(Value::Object(r), exit_for(rec.is_admissible())))
}

pub fn cmd_weight(spec: &SecondOrderSpec, order: WeightOrder) -> Result<Outcome> {
    let w = derive_weight(&spec.a, &spec.b, order)?;
    let mut points: Vec<Rational> = w.power_factors.iter().map(|f| f.root.clone()).collect();
    let (poles, _) = w.exp_arg.den().rational_roots_partial();
    points.extend(poles.into_iter().map(|(r, _)| r));
    points.sort();
    points.dedup();
    let finiteness: Vec<Value> = points
        .iter()
        .map(|x| {
            let f = finiteness_at_point(&w, x);
            json!({ "point": rat(x), "left": f.left.name(), "right": f.right.name() })
        })
        .collect();
    let mut r = report("weight");
    r.insert("input".into(), input_json(spec));
    r.insert("order".into(), json!(order_number(order)));
    r.insert("multiplier".into(), rat(&order.multiplier()));
    r.insert("weight".into(), weight_json(&w));
    r.insert("finiteness".into(), Value::Array(finiteness));
    r.insert(
        "decayAtInfinity".into(),
        json!({
            "+inf": decay_dominates_polynomials(&w, Direction::PosInfinity),
            "-inf": decay_dominates_polynomials(&w, Direction::NegInfinity),
        }),
    );
    Ok(Outcome::new(Value::Object(r), 0))
}

fn order_number(order: WeightOrder) -> usize {
    match order {
        WeightOrder::One => 1,
        WeightOrder::Two => 2,
        WeightOrder::Three => 3,
        WeightOrder::Four => 4,
    }
}

/// Samples for `--plot-csv`: the classification interval, with infinite
/// ends cut ten units from the finite one (or `[-5, 5]`).
pub fn plot_range(iv: &Interval) -> (f64, f64) {
    match (&iv.lo, &iv.hi) {
        (Endpoint::Finite(lo), Endpoint::Finite(hi)) => (lo.to_f64(), hi.to_f64()),
        (Endpoint::Finite(lo), _) => (lo.to_f64(), lo.to_f64() + 10.0),
        (_, Endpoint::Finite(hi)) => (hi.to_f64() - 10.0, hi.to_f64()),
        _ => (-5.0, 5.0),
    }
}

pub const PLOT_SAMPLES: usize = 201;

/// CSV with a header row `x,P_0,...` and 17 significant digits.
pub fn plot_csv(polys: &[Polynomial], lo: f64, hi: f64, samples: usize) -> String {
    let mut out = String::from("x");
    for n in 0..polys.len() {
        let _ = write!(out, ",P_{n}");
    }
    out.push('\n');
    let steps = samples.max(2) - 1;
    for k in 0..=steps {
        let x = lo + (hi - lo) * k as f64 / steps as f64;
        let _ = write!(out, "{x:.16e}");
        // exact at the sampled abscissa, rounded once
        let xr = Rational::from_f64_exact(x);
        for p in polys {
            let y = xr.as_ref().map_or_else(|| p.eval_f64(x), |xr| p.evaluate(xr).to_f64());
            let _ = write!(out, ",{y:.16e}");
        }
        out.push('\n');
    }
    out
}

pub fn cmd_polys(spec: &SecondOrderSpec, n_max: usize, plot: Option<(f64, f64)>) -> Result<Outcome> {
    let rec = classify(&spec.a, &spec.b, &spec.c)?;
    let mut r = report("polys");
    r.insert("input".into(), input_json(spec));
    r.insert("classification".into(), classification_json(&rec));
    if !rec.is_admissible() {
        return Ok(Outcome::new(Value::Object(r), 2));
    }
    let polys = eigenpolynomials(&rec, n_max)?;
    r.insert(
        "eigenpolynomials".into(),
        Value::Array(
            polys
                .iter()
                .enumerate()
                .map(|(n, p)| json!({ "n": n, "lambda": rat(&rec.eigenvalues.eval(n as u64)), "polynomial": poly(p) }))
                .collect(),
        ),
    );
    r.insert("eigenvalues".into(), formula_json(&rec.eigenvalues, n_max));
    let csv = plot.map(|(lo, hi)| plot_csv(&polys, lo, hi, PLOT_SAMPLES));
    Ok(Outcome {
        report: Value::Object(r),
        exit_code: 0,
        csv,
    })
}

pub fn cmd_gram(spec: &SecondOrderSpec, n_max: usize, numeric_tol: Option<f64>) -> Result<Outcome> {
    let rec = classify(&spec.a, &spec.b, &spec.c)?;
    let mut r = report("gram");
    r.insert("input".into(), input_json(spec));
    r.insert("classification".into(), classification_json(&rec));
    if !rec.is_admissible() {
        return Ok(Outcome::new(Value::Object(r), 2));
    }
    let g = gram_matrix(&rec, n_max)?;
    r.insert("gram".into(), gram_json(&g));
    let mut ok = g.is_diagonal() && g.diagonal_positive();
    if let Some(tol) = numeric_tol {
        let polys = eigenpolynomials(&rec, n_max)?;
        let mut values = Vec::new();
        let mut deviations = Vec::new();
        let mut evaluations = 0;
        let mut max_dev = 0.0f64;
        let mut within = true;
        for (m, pm) in polys.iter().enumerate() {
            let mut vrow = Vec::new();
            let mut drow = Vec::new();
            for (n, pn) in polys.iter().enumerate() {
                let q = quad_inner_product(&rec, pm, pn, tol)?;
                let exact = g.entries[m][n].to_f64();
                let dev = (q.value - exact).abs();
                // zero entries are measured against the Cauchy-Schwarz scale sqrt(G_mm G_nn)
                let scale = if g.entries[m][n].is_zero() {
                    (g.entries[m][m].to_f64() * g.entries[n][n].to_f64())
                        .abs()
                        .sqrt()
                        .max(1.0)
                } else {
                    exact.abs()
                };
                within &= dev <= NUMERIC_AGREEMENT * scale;
                max_dev = max_dev.max(dev);
                evaluations += q.evaluations;
                vrow.push(json!(q.value));
                drow.push(json!(dev));
            }
            values.push(Value::Array(vrow));
            deviations.push(Value::Array(drow));
        }
        ok &= within;
        r.insert(
            "numeric".into(),
            json!({
                "tol": tol,
                "values": values,
                "deviations": deviations,
                "maxDeviation": max_dev,
                "withinTolerance": within,
                "evaluations": evaluations,
            }),
        );
    }
    Ok(Outcome::new(Value::Object(r), if ok { 0 } else { 1 }))
}

fn linkage_json(link: &Linkage) -> Value {
    json!({ "solved": link.to_string(), "identity": link.identity_string() })
}

fn system_json(sys: &HighOrderSystem, interval: &Interval, degree_bound: usize, n_max: usize) -> Result<(Value, bool)> {
    let mut m = Map::new();
    m.insert("order".into(), json!(sys.order.as_usize()));
    let coeffs: Map<String, Value> = sys
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| (format!("a{k}"), poly(a)))
        .collect();
    m.insert("coefficients".into(), Value::Object(coeffs));
    m.insert("weight".into(), weight_json(&sys.weight));
    m.insert(
        "residuals".into(),
        Value::Array(
            sys.constraints
                .iter()
                .map(
                    |c| json!({ "equation": c.name, "residual": c.residual.to_string(), "zero": c.residual.is_zero() }),
                )
                .collect(),
        ),
    );
    m.insert(
        "boundary".into(),
        json!({
            "terms": sys.boundary.terms.iter().map(|t| json!({
                "uOrder": t.u_order,
                "yOrder": t.y_order,
                "coefficient": poly(&t.coeff),
            })).collect::<Vec<_>>(),
            "antisymmetric": sys.boundary.is_antisymmetric(),
            "symmetric": sys.boundary.is_symmetric(),
        }),
    );
    let check = boundary_difference_vanishes(&sys.boundary, interval, degree_bound)?;
    m.insert(
        "boundaryCheck".into(),
        json!({
            "interval": interval_json(interval),
            "degreeBound": degree_bound,
            "pairsChecked": check.pairs_checked,
            "vanishes": check.vanishes,
            "witness": check.witness.as_ref().map(|w| json!({
                "u": poly(&Polynomial::monomial(Rational::one(), w.u_degree)),
                "y": poly(&Polynomial::monomial(Rational::one(), w.y_degree)),
                "difference": rat(&w.difference),
            })),
        }),
    );
    let op = sys.operator();
    if op.maps_poly_to_poly() {
        let f = op.eigenvalue_formula()?;
        m.insert("eigenvalues".into(), formula_json(&f, n_max));
        let polys: Vec<Value> = (0..=n_max)
            .map(|n| match op.monic_eigenpolynomial(n) {
                Ok(e) => json!({
                    "n": n,
                    "lambda": rat(&e.eigenvalue),
                    "polynomial": poly(&e.eigenpolynomial),
                    "parity": parity_name(e.eigenpolynomial.parity()),
                }),
                Err(e) => json!({ "n": n, "error": e.to_string() }),
            })
            .collect();
        m.insert("eigenpolynomials".into(), Value::Array(polys));
    }
    let ok = sys.residuals_vanish() && check.vanishes;
    Ok((Value::Object(m), ok))
}

pub fn cmd_highorder(spec: &HighOrderSpec, interval: &Interval, degree_bound: usize, n_max: usize) -> Result<Outcome> {
    let p = WeightForm::unit();
    let mut derived = Vec::new();
    let (sys, linkage) = if let Some(a4) = &spec.a4 {
        let (a3_derived, link) = derive_order4(a4, &p)?;
        let a3 = spec.a3.clone().unwrap_or_else(|| {
            derived.push("a3");
            a3_derived
        });
        let a2 = spec.a2.clone().unwrap_or_default();
        let a1 = match &spec.a1 {
            Some(a1) => a1.clone(),
            None => {
                derived.push("a1");
                solve_order4_a1(&a3, &a2, &p)?
            }
        };
        let a0 = spec.a0.clone().unwrap_or_default();
        (
            HighOrderSystem::new(SystemOrder::Four, vec![a0, a1, a2, a3, a4.clone()], p)?,
            link,
        )
    } else if let Some(a3) = &spec.a3 {
        let (a2_derived, link) = derive_order3(a3, &p)?;
        let a2 = spec.a2.clone().unwrap_or_else(|| {
            derived.push("a2");
            a2_derived
        });
        let a1 = spec.a1.clone().unwrap_or_default();
        let a0 = match &spec.a0 {
            Some(a0) => a0.clone(),
            None => {
                derived.push("a0");
                solve_order3_a0(&a2, &a1, &p)?
            }
        };
        (
            HighOrderSystem::new(SystemOrder::Three, vec![a0, a1, a2, a3.clone()], p)?,
            link,
        )
    } else {
        return Err(Error::PreconditionViolation(
            "highorder needs --a4 or --a3 (or --example-4th)".into(),
        ));
    };
    let mut r = report("highorder");
    let (body, ok) = system_json(&sys, interval, degree_bound, n_max)?;
    r.insert("system".into(), body);
    r.insert("derived".into(), json!(derived));
    r.insert("linkage".into(), linkage_json(&linkage));
    Ok(Outcome::new(Value::Object(r), exit_for(ok)))
}

pub fn cmd_example_4th(interval: &Interval, degree_bound: usize, n_max: usize) -> Result<Outcome> {
    let (sys, formula) = example_order4()?;
    let (_, link) = derive_order4(&sys.coeffs[4], &sys.weight)?;
    let mut r = report("highorder");
    let (body, ok) = system_json(&sys, interval, degree_bound, n_max)?;
    r.insert("system".into(), body);
    r.insert("derived".into(), json!(["a3", "a1"]));
    r.insert("linkage".into(), linkage_json(&link));
    let cube = Polynomial::monomial(Rational::one(), 3);
    r.insert("imageOfCube".into(), poly(&sys.operator().apply(&cube)));
    let rows: Vec<Value> = (0..=n_max as u64)
        .map(|n| {
            json!({
                "n": n,
                "operator": rat(&formula.eval(n)),
                "closedForm": rat(&oracle_example_eigenvalue(n)),
                "printed": rat(&printed_example_eigenvalue(n)),
                "agrees": formula.eval(n) == printed_example_eigenvalue(n),
            })
        })
        .collect();
    r.insert(
        "discrepancies".into(),
        json!([{
            "quantity": "eigenvalues",
            "notice": "the printed closed form n(n-1)(n-2)(n+5) - 24 differs from the operator's \
                       eigenvalues n(n-1)(n-2)(n+5) - 24n except at n = 1",
            "table": rows,
        }]),
    );
    Ok(Outcome::new(Value::Object(r), exit_for(ok)))
}

pub fn cmd_selftest(opts: &SelftestOptions) -> Outcome {
    let results = run_selftest(opts);
    let passed = results.iter().all(|c| c.passed);
    let mut r = report("selftest");
    r.insert(
        "criteria".into(),
        Value::Array(
            results
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                        "elapsedMs": c.elapsed.as_millis() as u64,
                    })
                })
                .collect(),
        ),
    );
    r.insert("passed".into(), json!(passed));
    Outcome::new(Value::Object(r), if passed { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// rendering

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match scalar(v) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None if is_flat_array(v) => {
                        let _ = writeln!(out, "{pad}{k}: {}", flat_array(v));
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_into(out, v, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None if is_flat_array(item) => {
                        let _ = writeln!(out, "{pad}- {}", flat_array(item));
                    }
                    None => {
                        let mut nested = String::new();
                        render_into(&mut nested, item, indent + 1);
                        let inner = "  ".repeat(indent + 1);
                        match nested.strip_prefix(inner.as_str()) {
                            Some(rest) => {
                                let _ = write!(out, "{pad}- {rest}");
                            }
                            None => {
                                let _ = writeln!(out, "{pad}-");
                                out.push_str(&nested);
                            }
                        }
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(|i| scalar(i).is_some()))
}

fn flat_array(v: &Value) -> String {
    let Value::Array(items) = v else { return String::new() };
    let parts: Vec<String> = items.iter().filter_map(scalar).collect();
    format!("[{}]", parts.join(", "))
}

/// Indented `key: value` text for terminals.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

// ---------------------------------------------------------------------------
// argument surface

#[derive(Debug, Parser)]
#[command(
    name = "slab",
    version,
    about = "Exact Sturm-Liouville weights, Bochner classification and orthogonality checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a y'' + b y' + c y into the Bochner cases.
    Classify(OpArgs),
    /// Derive the weight of a y'' + b y' (or of order 1, 3, 4 with --order).
    Weight(OpArgs),
    /// Monic eigenpolynomials and eigenvalues up to --n-max.
    Polys(OpArgs),
    /// Exact Gram matrix of the eigenpolynomials, optionally with quadrature.
    Gram(OpArgs),
    /// Determining equations and boundary form of an order-3 or order-4 operator.
    Highorder(OpArgs),
    /// Run the built-in acceptance suite.
    Selftest(OpArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OpArgs {
    /// Leading coefficient a(x).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// First-derivative coefficient b(x).
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub b: String,
    /// Constant term c.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub c: String,
    /// Coefficient of y'''' for highorder; --a3 .. --a0 likewise, omitted ones are derived where possible.
    #[arg(long, allow_hyphen_values = true)]
    pub a4: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a0: Option<String>,
    /// Weight for highorder; only 1 is accepted.
    #[arg(long, default_value = "1")]
    pub p: String,
    /// Order of the determining relation for `weight`.
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    /// Highest degree tabulated (5 for polys and gram, 6 for highorder).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Interval for the boundary check or plot, e.g. `--interval -1 1`.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    pub interval: Option<Vec<String>>,
    /// Largest monomial degree used in the boundary-difference check.
    #[arg(long, default_value_t = 8)]
    pub degree_bound: usize,
    /// Add quadrature values to the Gram report.
    #[arg(long)]
    pub numeric: bool,
    /// Quadrature tolerance for --numeric.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Write sampled eigenpolynomials as CSV.
    #[arg(long, value_name = "PATH")]
    pub plot_csv: Option<PathBuf>,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
    /// Use the built-in fourth-order example with a4 = (1 - x^2)^2.
    #[arg(long = "example-4th")]
    pub example_4th: bool,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

impl OpArgs {
    fn second_order(&self) -> Result<SecondOrderSpec> {
        let a = self
            .a
            .as_deref()
            .ok_or_else(|| Error::PreconditionViolation("--a is required".into()))?;
        SecondOrderSpec::parse(a, &self.b, &self.c)
    }

    fn high_order(&self) -> Result<HighOrderSpec> {
        let field = |flag: &str, v: &Option<String>| v.as_deref().map(|s| parse_field(flag, s)).transpose();
        Ok(HighOrderSpec {
            a4: field("a4", &self.a4)?,
            a3: field("a3", &self.a3)?,
            a2: field("a2", &self.a2)?,
            a1: field("a1", &self.a1)?,
            a0: field("a0", &self.a0)?,
        })
    }

    fn interval(&self) -> Result<Option<Interval>> {
        let Some(v) = &self.interval else { return Ok(None) };
        let lo = parse_rational(&v[0])?;
        let hi = parse_rational(&v[1])?;
        Interval::closed(lo, hi).map(Some)
    }
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

fn dispatch(cmd: &Command) -> Result<(Outcome, &OpArgs)> {
    let out = match cmd {
        Command::Classify(args) => (cmd_classify(&args.second_order()?)?, args),
        Command::Weight(args) => (
            cmd_weight(&args.second_order()?, WeightOrder::from_order(args.order)?)?,
            args,
        ),
        Command::Polys(args) => {
            let spec = args.second_order()?;
            let plot = match &args.plot_csv {
                None => None,
                Some(_) => Some(match args.interval()? {
                    Some(iv) => plot_range(&iv),
                    None => plot_range(&classify(&spec.a, &spec.b, &spec.c)?.interval),
                }),
            };
            (cmd_polys(&spec, args.n_max.unwrap_or(5), plot)?, args)
        }
        Command::Gram(args) => {
            let tol = args.numeric.then_some(args.tol);
            (cmd_gram(&args.second_order()?, args.n_max.unwrap_or(5), tol)?, args)
        }
        Command::Highorder(args) => {
            if args.p.trim() != "1" {
                return Err(Error::PreconditionViolation(format!(
                    "--p {}: only the unit weight is supported here",
                    args.p
                )));
            }
            let iv = match args.interval()? {
                Some(iv) => iv,
                None => Interval::closed(Rational::from(-1), Rational::one())?,
            };
            let n_max = args.n_max.unwrap_or(6);
            let out = if args.example_4th {
                cmd_example_4th(&iv, args.degree_bound, n_max)?
            } else {
                cmd_highorder(&args.high_order()?, &iv, args.degree_bound, n_max)?
            };
            (out, args)
        }
        Command::Selftest(args) => (
            cmd_selftest(&SelftestOptions {
                inject_fault: args.inject_fault,
            }),
            args,
        ),
    };
    Ok(out)
}

fn command_name(cmd: &Command) -> (&'static str, &OpArgs) {
    match cmd {
        Command::Classify(a) => ("classify", a),
        Command::Weight(a) => ("weight", a),
        Command::Polys(a) => ("polys", a),
        Command::Gram(a) => ("gram", a),
        Command::Highorder(a) => ("highorder", a),
        Command::Selftest(a) => ("selftest", a),
    }
}

/// Runs a parsed command line, writing the plot file if one was requested.
pub fn execute(cli: &Cli) -> Execution {
    let (name, args) = command_name(&cli.command);
    let fail = |e: Error| {
        let mut r = report(name);
        r.insert("error".into(), json!({ "kind": e.kind(), "message": e.to_string() }));
        Execution {
            stdout: if args.json {
                render_json(&Value::Object(r))
            } else {
                String::new()
            },
            stderr: format!("error: {e}\n"),
            exit_code: 1,
        }
    };
    let (outcome, args) = match dispatch(&cli.command) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    if let (Some(path), Some(csv)) = (&args.plot_csv, &outcome.csv) {
        if let Err(e) = std::fs::write(path, csv) {
            return Execution {
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
                exit_code: 1,
            };
        }
    }
    let stdout = if args.json {
        render_json(&outcome.report)
    } else {
        render_text(&outcome.report)
    };
    Execution {
        stdout,
        stderr: String::new(),
        exit_code: outcome.exit_code,
    }
}

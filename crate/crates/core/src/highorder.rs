//! Determining equations and boundary forms for operators of order 3 and 4
//! (order 2 is accepted as well, for cross-checking against the classical
//! concomitant `p a (u y' - u' y)`).
//!
//! Every quantity is divided by the weight: `(f p)' / p = f' + f·(log p)'`
//! is a rational function whenever the weight is in factored form, so the
//! identities can be checked exactly.

use std::fmt;

use crate::bochner::{Endpoint, Interval};
use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational, RationalFunction};
use crate::operator::{DiffOperator, EigenvalueFormula};
use crate::weight::{finiteness_at_point, WeightForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemOrder {
    Two,
    Three,
    Four,
}

impl SystemOrder {
    pub fn as_usize(self) -> usize {
        match self {
            SystemOrder::Two => 2,
            SystemOrder::Three => 3,
            SystemOrder::Four => 4,
        }
    }

    pub fn from_usize(order: usize) -> Result<Self> {
        match order {
            2 => Ok(SystemOrder::Two),
            3 => Ok(SystemOrder::Three),
            4 => Ok(SystemOrder::Four),
            _ => Err(Error::PreconditionViolation(format!(
                "determining equations are implemented for orders 2 to 4, got {order}"
            ))),
        }
    }
}

/// `(f p)' / p`.
fn weighted_derivative(f: &RationalFunction, log_deriv: &RationalFunction) -> RationalFunction {
    &f.differentiate() + &(f * log_deriv)
}

fn rf(p: &Polynomial) -> RationalFunction {
    RationalFunction::from(p.clone())
}

fn require_polynomial(r: &RationalFunction, what: &str) -> Result<Polynomial> {
    r.as_polynomial()
        .ok_or_else(|| Error::NonPolynomialResult(format!("{what} = {r}")))
}

/// A linear relation `Σ coeff · a_k^(d) + forcing = 0` between still-free
/// coefficients of the operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linkage {
    pub terms: Vec<LinkageTerm>,
    pub forcing: RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkageTerm {
    /// Index `k` of the coefficient `a_k`.
    pub index: usize,
    pub derivative: usize,
    pub coeff: RationalFunction,
}

impl Linkage {
    /// Left-hand side evaluated on `coeffs[k] = a_k`; zero iff satisfied.
    pub fn residual(&self, coeffs: &[Polynomial]) -> RationalFunction {
        self.terms.iter().fold(self.forcing.clone(), |acc, t| {
            let a = coeffs.get(t.index).cloned().unwrap_or_default();
            &acc + &(&t.coeff * &rf(&a.differentiate(t.derivative)))
        })
    }

    /// `Σ coeff · a_k^(d) + forcing = 0` as written.
    pub fn identity_string(&self) -> String {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| format!("({})*{}", t.coeff, term_name(t.index, t.derivative)))
            .collect();
        if !self.forcing.is_zero() {
            parts.push(format!("({})", self.forcing));
        }
        format!("{} = 0", parts.join(" + "))
    }
}

fn term_name(index: usize, derivative: usize) -> String {
    format!("a{index}{}", "'".repeat(derivative))
}

/// Solved for the first term: `a_k^(d) = ...`.
impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((head, rest)) = self.terms.split_first() else {
            return write!(f, "{} = 0", self.forcing);
        };
        let inv = head
            .coeff
            .as_polynomial()
            .filter(Polynomial::is_constant)
            .map(|c| -(Rational::one() / c.leading_coefficient()));
        let Some(inv) = inv else {
            return f.write_str(&self.identity_string());
        };
        let mut parts = Vec::new();
        let forcing = self.forcing.scale(&inv);
        if !forcing.is_zero() {
            parts.push(forcing.to_string());
        }
        for t in rest {
            let c = t.coeff.scale(&inv);
            if c.is_zero() {
                continue;
            }
            let name = term_name(t.index, t.derivative);
            match c.as_polynomial() {
                Some(p) if p == Polynomial::one() => parts.push(name),
                Some(p) if p.is_constant() => {
                    parts.push(format!("{}*{name}", display_constant(&p.leading_coefficient())))
                }
                _ => parts.push(format!("({c})*{name}")),
            }
        }
        let rhs = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        write!(f, "{} = {rhs}", term_name(head.index, head.derivative))
    }
}

fn display_constant(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

/// `a3 = 2(a4 p)'/p` and the linkage `(a3 p)'' - 2(a2 p)' + 2 a1 p = 0`.
pub fn derive_order4(a4: &Polynomial, p: &WeightForm) -> Result<(Polynomial, Linkage)> {
    let l = p.log_derivative();
    let a3_rf = weighted_derivative(&rf(a4), &l).scale(&Rational::from(2));
    let a3 = require_polynomial(&a3_rf, "a3 = 2 (a4 p)'/p")?;
    let forcing = weighted_derivative(&weighted_derivative(&rf(&a3), &l), &l);
    let linkage = Linkage {
        terms: vec![
            LinkageTerm {
                index: 2,
                derivative: 1,
                coeff: rf(&Polynomial::from_ints(&[-2])),
            },
            LinkageTerm {
                index: 1,
                derivative: 0,
                coeff: rf(&Polynomial::from_ints(&[2])),
            },
            LinkageTerm {
                index: 2,
                derivative: 0,
                coeff: l.scale(&Rational::from(-2)),
            },
        ],
        forcing,
    };
    Ok((a3, linkage))
}

/// `a2 = (3/2)(a3 p)'/p` and the linkage `(a2 p)'' - 3(a1 p)' + 6 a0 p = 0`.
pub fn derive_order3(a3: &Polynomial, p: &WeightForm) -> Result<(Polynomial, Linkage)> {
    let l = p.log_derivative();
    let a2_rf = weighted_derivative(&rf(a3), &l).scale(&Rational::frac(3, 2));
    let a2 = require_polynomial(&a2_rf, "a2 = (3/2)(a3 p)'/p")?;
    let forcing = weighted_derivative(&weighted_derivative(&rf(&a2), &l), &l);
    let linkage = Linkage {
        terms: vec![
            LinkageTerm {
                index: 1,
                derivative: 1,
                coeff: rf(&Polynomial::from_ints(&[-3])),
            },
            LinkageTerm {
                index: 0,
                derivative: 0,
                coeff: rf(&Polynomial::from_ints(&[6])),
            },
            LinkageTerm {
                index: 1,
                derivative: 0,
                coeff: l.scale(&Rational::from(-3)),
            },
        ],
        forcing,
    };
    Ok((a2, linkage))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub u_order: usize,
    pub y_order: usize,
    pub coeff: Polynomial,
}

/// `B(u, y)(x) = p(x) · Σ coeff_{i,j}(x) u^(i)(x) y^(j)(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryExpression {
    pub weight: WeightForm,
    pub terms: Vec<BoundaryTerm>,
}

impl BoundaryExpression {
    fn from_entries(weight: &WeightForm, entries: Vec<(usize, usize, Polynomial)>) -> Self {
        let mut terms: Vec<BoundaryTerm> = Vec::new();
        for (u_order, y_order, coeff) in entries {
            match terms.iter_mut().find(|t| t.u_order == u_order && t.y_order == y_order) {
                Some(t) => t.coeff = &t.coeff + &coeff,
                None => terms.push(BoundaryTerm {
                    u_order,
                    y_order,
                    coeff,
                }),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by_key(|t| (t.u_order, t.y_order));
        BoundaryExpression {
            weight: weight.clone(),
            terms,
        }
    }

    pub fn coeff(&self, u_order: usize, y_order: usize) -> Polynomial {
        self.terms
            .iter()
            .find(|t| t.u_order == u_order && t.y_order == y_order)
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    fn max_order(&self) -> usize {
        self.terms.iter().map(|t| t.u_order.max(t.y_order)).max().unwrap_or(0)
    }

    /// `coeff(i, j) = -coeff(j, i)` for all pairs.
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.max_order();
        (0..=n).all(|i| (0..=n).all(|j| self.coeff(i, j) == -self.coeff(j, i)))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.max_order();
        (0..=n).all(|i| (0..=n).all(|j| self.coeff(i, j) == self.coeff(j, i)))
    }

    /// `Σ coeff_{i,j} u^(i) y^(j)` without the weight factor.
    pub fn bracket(&self, u: &Polynomial, y: &Polynomial) -> Polynomial {
        self.terms.iter().fold(Polynomial::zero(), |acc, t| {
            &acc + &(&t.coeff * &(&u.differentiate(t.u_order) * &y.differentiate(t.y_order)))
        })
    }

    /// Exact value of `B(u, y)` at `x0`.
    pub fn evaluate(&self, u: &Polynomial, y: &Polynomial, x0: &Rational) -> Result<Rational> {
        let inner = self.bracket(u, y).evaluate(x0);
        if inner.is_zero()
            && finiteness_at_point(&self.weight, x0)
                .two_sided()
                .is_some_and(|t| t.is_finite())
        {
            return Ok(inner);
        }
        let w = exact_weight_value(&self.weight, x0).ok_or_else(|| {
            Error::PreconditionViolation(format!("weight {} has no exact rational value at {x0}", self.weight))
        })?;
        Ok(w * inner)
    }
}

/// Value of the weight at `x0` when it is rational: integer exponents and a
/// vanishing exponential argument.
pub fn exact_weight_value(w: &WeightForm, x0: &Rational) -> Option<Rational> {
    if !w.exp_arg.is_zero() && w.exp_arg.evaluate(x0)? != Rational::zero() {
        return None;
    }
    let mut acc = w.constant.clone();
    for f in &w.power_factors {
        if f.exponent.is_zero() {
            continue;
        }
        if !f.exponent.is_integer() {
            return None;
        }
        let base = (x0 - &f.root).abs();
        let e: i64 = f.exponent.numer().try_into().ok()?;
        if base.is_zero() {
            if e > 0 {
                return Some(Rational::zero());
            }
            return None;
        }
        let pow = base.pow(e.unsigned_abs() as u32);
        acc = if e >= 0 { acc * pow } else { acc * pow.recip().ok()? };
    }
    Some(acc)
}

pub fn boundary_expression(
    order: SystemOrder,
    coeffs: &[Polynomial],
    weight: &WeightForm,
) -> Result<BoundaryExpression> {
    let l = weight.log_derivative();
    let a = |k: usize| coeffs.get(k).cloned().unwrap_or_default();
    let entries = match order {
        SystemOrder::Two => {
            let a2 = a(2);
            vec![(0, 1, a2.clone()), (1, 0, -&a2)]
        }
        SystemOrder::Three => {
            let (a3, a2, a1) = (a(3), a(2), a(1));
            let third = Rational::frac(1, 3);
            // -(1/3)((a2 p)'/p - 3 a1)
            let tail_rf = &weighted_derivative(&rf(&a2), &l) - &rf(&a1.scale(&Rational::from(3)));
            let tail = require_polynomial(&tail_rf.scale(&-&third), "order-3 boundary coefficient")?;
            let a2_third = a2.scale(&third);
            vec![
                (0, 2, a3.clone()),
                (1, 1, -&a3),
                (2, 0, a3),
                (0, 1, a2_third.clone()),
                (1, 0, a2_third),
                (0, 0, tail),
            ]
        }
        SystemOrder::Four => {
            let (a4, a3, a2) = (a(4), a(3), a(2));
            let half = Rational::frac(1, 2);
            // -(1/2)((a3 p)'/p - 2 a2)
            let mid_rf = &weighted_derivative(&rf(&a3), &l) - &rf(&a2.scale(&Rational::from(2)));
            let mid = require_polynomial(&mid_rf.scale(&-&half), "order-4 boundary coefficient")?;
            let a3_half = a3.scale(&half);
            vec![
                (0, 3, a4.clone()),
                (1, 2, -&a4),
                (2, 1, a4.clone()),
                (3, 0, -&a4),
                (0, 2, a3_half.clone()),
                (2, 0, -&a3_half),
                (0, 1, mid.clone()),
                (1, 0, -&mid),
            ]
        }
    };
    Ok(BoundaryExpression::from_entries(weight, entries))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminingResidual {
    pub name: String,
    /// The identity divided by `p`; zero iff it holds.
    pub residual: RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighOrderSystem {
    pub order: SystemOrder,
    /// `a_0 ..= a_order`.
    pub coeffs: Vec<Polynomial>,
    pub weight: WeightForm,
    pub constraints: Vec<DeterminingResidual>,
    pub boundary: BoundaryExpression,
}

impl HighOrderSystem {
    pub fn new(order: SystemOrder, coeffs: Vec<Polynomial>, weight: WeightForm) -> Result<Self> {
        let m = order.as_usize();
        if coeffs.len() != m + 1 || coeffs[m].is_zero() {
            return Err(Error::PreconditionViolation(format!(
                "an order-{m} system needs {} coefficients with a nonzero leading one",
                m + 1
            )));
        }
        let constraints = determining_residuals(order, &coeffs, &weight);
        let boundary = boundary_expression(order, &coeffs, &weight)?;
        Ok(HighOrderSystem {
            order,
            coeffs,
            weight,
            constraints,
            boundary,
        })
    }

    pub fn residuals_vanish(&self) -> bool {
        self.constraints.iter().all(|c| c.residual.is_zero())
    }

    pub fn operator(&self) -> DiffOperator {
        DiffOperator::new(self.coeffs.clone()).expect("nonzero leading coefficient")
    }
}

fn determining_residuals(order: SystemOrder, coeffs: &[Polynomial], weight: &WeightForm) -> Vec<DeterminingResidual> {
    let l = weight.log_derivative();
    let a = |k: usize| rf(&coeffs[k]);
    let d = |f: &RationalFunction| weighted_derivative(f, &l);
    let sc = |f: &RationalFunction, n: i64, q: i64| f.scale(&Rational::frac(n, q));
    let named = |name: &str, residual| DeterminingResidual {
        name: name.into(),
        residual,
    };
    match order {
        SystemOrder::Two => vec![named("(a2 p)' - a1 p", &d(&a(2)) - &a(1))],
        SystemOrder::Three => vec![
            named("(a3 p)' - (2/3) a2 p", &d(&a(3)) - &sc(&a(2), 2, 3)),
            named(
                "(a2 p)'' - 3 (a1 p)' + 6 a0 p",
                &(&d(&d(&a(2))) - &sc(&d(&a(1)), 3, 1)) + &sc(&a(0), 6, 1),
            ),
        ],
        SystemOrder::Four => vec![
            named("(a4 p)' - (1/2) a3 p", &d(&a(4)) - &sc(&a(3), 1, 2)),
            named(
                "(a3 p)'' - 2 (a2 p)' + 2 a1 p",
                &(&d(&d(&a(3))) - &sc(&d(&a(2)), 2, 1)) + &sc(&a(1), 2, 1),
            ),
        ],
    }
}

/// `a1` from the order-4 linkage: `(a2 p)'/p - (1/2)(a3 p)''/p`.
pub fn solve_order4_a1(a3: &Polynomial, a2: &Polynomial, p: &WeightForm) -> Result<Polynomial> {
    let l = p.log_derivative();
    let a1 = &weighted_derivative(&rf(a2), &l)
        - &weighted_derivative(&weighted_derivative(&rf(a3), &l), &l).scale(&Rational::frac(1, 2));
    require_polynomial(&a1, "a1")
}

/// `a0` from the order-3 linkage: `(3 (a1 p)'/p - (a2 p)''/p) / 6`.
pub fn solve_order3_a0(a2: &Polynomial, a1: &Polynomial, p: &WeightForm) -> Result<Polynomial> {
    let l = p.log_derivative();
    let a0 = (&weighted_derivative(&rf(a1), &l).scale(&Rational::from(3))
        - &weighted_derivative(&weighted_derivative(&rf(a2), &l), &l))
        .scale(&Rational::frac(1, 6));
    require_polynomial(&a0, "a0")
}

/// Completes an order-4 system from `a4`, `a2`, `a0` and the weight.
pub fn complete_order4(a4: &Polynomial, a2: &Polynomial, a0: &Polynomial, p: &WeightForm) -> Result<HighOrderSystem> {
    let (a3, _) = derive_order4(a4, p)?;
    let a1 = solve_order4_a1(&a3, a2, p)?;
    HighOrderSystem::new(
        SystemOrder::Four,
        vec![a0.clone(), a1, a2.clone(), a3, a4.clone()],
        p.clone(),
    )
}

/// Completes an order-3 system from `a3`, `a1` and the weight.
pub fn complete_order3(a3: &Polynomial, a1: &Polynomial, p: &WeightForm) -> Result<HighOrderSystem> {
    let (a2, _) = derive_order3(a3, p)?;
    let a0 = solve_order3_a0(&a2, a1, p)?;
    HighOrderSystem::new(SystemOrder::Three, vec![a0, a1.clone(), a2, a3.clone()], p.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryWitness {
    pub u_degree: usize,
    pub y_degree: usize,
    pub difference: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCheck {
    pub vanishes: bool,
    pub witness: Option<BoundaryWitness>,
    pub pairs_checked: usize,
}

/// Evaluates `B(x^i, x^j)(hi) - B(x^i, x^j)(lo)` for all `i, j ≤
/// degree_bound`, reporting the first nonzero difference in `(i, j)` order.
pub fn boundary_difference_vanishes(
    bexpr: &BoundaryExpression,
    interval: &Interval,
    degree_bound: usize,
) -> Result<BoundaryCheck> {
    let (Endpoint::Finite(lo), Endpoint::Finite(hi)) = (&interval.lo, &interval.hi) else {
        return Err(Error::PreconditionViolation(
            "boundary differences need finite endpoints".into(),
        ));
    };
    let mut pairs = 0;
    for i in 0..=degree_bound {
        let u = Polynomial::monomial(Rational::one(), i);
        for j in 0..=degree_bound {
            let y = Polynomial::monomial(Rational::one(), j);
            pairs += 1;
            let diff = bexpr.evaluate(&u, &y, hi)? - bexpr.evaluate(&u, &y, lo)?;
            if !diff.is_zero() {
                return Ok(BoundaryCheck {
                    vanishes: false,
                    witness: Some(BoundaryWitness {
                        u_degree: i,
                        y_degree: j,
                        difference: diff,
                    }),
                    pairs_checked: pairs,
                });
            }
        }
    }
    Ok(BoundaryCheck {
        vanishes: true,
        witness: None,
        pairs_checked: pairs,
    })
}

/// The family with `p = 1`, `a4 = (1 - x²)²` and free `a2`; `a1` follows
/// from the linkage and `a0 = 0`.
pub fn fourth_order_family(a2: &Polynomial) -> Result<HighOrderSystem> {
    let a4 = Polynomial::from_ints(&[1, 0, -1]).pow(2);
    complete_order4(&a4, a2, &Polynomial::zero(), &WeightForm::unit())
}

/// The member with `a2 = 8`, i.e. `(1-x²)² y'''' - 8x(1-x²) y''' + 8 y'' -
/// 24x y'`, and its eigenvalues computed from the operator.
pub fn example_order4() -> Result<(HighOrderSystem, EigenvalueFormula)> {
    let sys = fourth_order_family(&Polynomial::from_ints(&[8]))?;
    let formula = sys.operator().eigenvalue_formula()?;
    Ok((sys, formula))
}

/// `n(n-1)(n-2)(n+5) - 24`, the closed form usually quoted for the example.
/// It agrees with the operator only at `n = 1`.
pub fn printed_example_eigenvalue(n: u64) -> Rational {
    let n = n as i64;
    Rational::from(n * (n - 1) * (n - 2) * (n + 5) - 24)
}

/// `n(n-1)(n-2)(n+5) - 24n`.
pub fn oracle_example_eigenvalue(n: u64) -> Rational {
    let n = n as i64;
    Rational::from(n * (n - 1) * (n - 2) * (n + 5) - 24 * n)
}

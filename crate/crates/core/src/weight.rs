//! Weight functions solving the first-order determining relation of an
//! operator, in the factored form `C · Π |x - r|^e · exp(q(x))`, plus the
//! side-aware finiteness and decay analysis used by classification.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{partial_fractions, Polynomial, Rational, RationalFunction};

/// Which determining relation fixes the weight; each integrates to
/// `p = (1/|a|) exp(∫ m·b/a)` for its multiplier `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightOrder {
    /// `(a p)' = 2 b p`
    One,
    /// `(p a)' = p b`
    Two,
    /// `(a3 p)' = (2/3) a2 p`
    Three,
    /// `(a4 p)' = (1/2) a3 p`
    Four,
}

impl WeightOrder {
    pub fn multiplier(self) -> Rational {
        match self {
            WeightOrder::One => Rational::from(2),
            WeightOrder::Two => Rational::one(),
            WeightOrder::Three => Rational::frac(2, 3),
            WeightOrder::Four => Rational::frac(1, 2),
        }
    }

    pub fn from_order(order: usize) -> Result<Self> {
        match order {
            1 => Ok(WeightOrder::One),
            2 => Ok(WeightOrder::Two),
            3 => Ok(WeightOrder::Three),
            4 => Ok(WeightOrder::Four),
            _ => Err(Error::PreconditionViolation(format!(
                "weight derivation supports orders 1 to 4, got {order}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerFactor {
    pub root: Rational,
    pub exponent: Rational,
}

/// `constant · Π |x - root|^exponent · exp(exp_arg(x))`.
///
/// Roots are distinct and ascending. Factors with a zero exponent are kept
/// when they mark a zero of the leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightForm {
    pub constant: Rational,
    pub power_factors: Vec<PowerFactor>,
    pub exp_arg: RationalFunction,
}

impl WeightForm {
    pub fn unit() -> Self {
        WeightForm {
            constant: Rational::one(),
            power_factors: Vec::new(),
            exp_arg: RationalFunction::zero(),
        }
    }

    /// True when the weight is a positive constant.
    pub fn is_constant(&self) -> bool {
        self.power_factors.iter().all(|f| f.exponent.is_zero()) && self.exp_arg.is_zero()
    }

    pub fn exponent_at(&self, x0: &Rational) -> Rational {
        self.power_factors
            .iter()
            .find(|f| &f.root == x0)
            .map(|f| f.exponent.clone())
            .unwrap_or_default()
    }

    /// `d/dx log w = Σ e/(x - r) + q'(x)`.
    pub fn log_derivative(&self) -> RationalFunction {
        self.power_factors
            .iter()
            .filter(|f| !f.exponent.is_zero())
            .fold(self.exp_arg.differentiate(), |acc, f| {
                let term = RationalFunction::new(
                    Polynomial::constant(f.exponent.clone()),
                    Polynomial::linear_factor(&f.root),
                )
                .expect("nonzero denominator");
                &acc + &term
            })
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::PreconditionViolation(
                "weights may only be scaled by positive constants".into(),
            ));
        }
        Ok(WeightForm {
            constant: &self.constant * c,
            ..self.clone()
        })
    }

    /// Factored form of `|poly| · w`; `poly` must split over the rationals.
    pub fn times_polynomial(&self, poly: &Polynomial) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::PreconditionViolation(
                "cannot multiply a weight by the zero polynomial".into(),
            ));
        }
        let mut out = self.clone();
        out.constant = &out.constant * &poly.leading_coefficient().abs();
        for (root, mult) in poly.rational_roots()? {
            let m = Rational::from(mult);
            match out.power_factors.iter_mut().find(|f| f.root == root) {
                Some(f) => f.exponent = &f.exponent + &m,
                None => out.power_factors.push(PowerFactor { root, exponent: m }),
            }
        }
        out.power_factors.sort_by(|a, b| a.root.cmp(&b.root));
        Ok(out)
    }

    /// `ln w(x)`, with `|x - r|` for the factor at index `near` replaced by
    /// `dist` (avoids cancellation next to a singular endpoint).
    pub fn ln_eval_f64(&self, x: f64, near: Option<(usize, f64)>) -> f64 {
        let mut acc = self.constant.to_f64().ln();
        for (i, f) in self.power_factors.iter().enumerate() {
            if f.exponent.is_zero() {
                continue;
            }
            let d = match near {
                Some((j, dist)) if j == i => dist,
                _ => (x - f.root.to_f64()).abs(),
            };
            acc += f.exponent.to_f64() * d.ln();
        }
        if !self.exp_arg.is_zero() {
            acc += self.exp_arg.eval_f64(x);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.ln_eval_f64(x, None).exp()
    }
}

impl fmt::Display for WeightForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_one() {
            parts.push(display_rational(&self.constant));
        }
        for pf in self.power_factors.iter().filter(|p| !p.exponent.is_zero()) {
            let base = if pf.root.is_zero() {
                "|x|".to_string()
            } else {
                format!("|{}|", Polynomial::linear_factor(&pf.root))
            };
            if pf.exponent.is_one() {
                parts.push(base);
            } else {
                parts.push(format!("{base}^({})", display_rational(&pf.exponent)));
            }
        }
        if !self.exp_arg.is_zero() {
            parts.push(format!("exp({})", self.exp_arg));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

fn display_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

/// Solves the determining relation of the given order for the weight,
/// fixing the integration constant so that `constant = 1`.
pub fn derive_weight(a: &Polynomial, b: &Polynomial, order: WeightOrder) -> Result<WeightForm> {
    if a.is_zero() {
        return Err(Error::PreconditionViolation(
            "leading coefficient must be nonzero".into(),
        ));
    }
    let a_roots = a.rational_roots()?;
    let integrand = RationalFunction::new(b.scale(&order.multiplier()), a.clone())?;
    let pf = partial_fractions(&integrand)?;

    // -log|a| contributes -m_i at each root; simple poles contribute their
    // residue as a logarithm.
    let mut power_factors: Vec<PowerFactor> = a_roots
        .iter()
        .map(|(root, mult)| PowerFactor {
            root: root.clone(),
            exponent: pf.residue(root) - Rational::from(*mult),
        })
        .collect();
    power_factors.sort_by(|x, y| x.root.cmp(&y.root));

    let mut exp_arg = RationalFunction::from(pf.poly_part.antiderivative());
    for term in pf.pole_terms.iter().filter(|t| t.order >= 2) {
        // ∫ c (x - r)^{-k} = c / ((1 - k)(x - r)^{k-1})
        let k = term.order as i64;
        let coeff = &term.coefficient / Rational::from(1 - k);
        let piece = RationalFunction::new(
            Polynomial::constant(coeff),
            Polynomial::linear_factor(&term.root).pow((k - 1) as u32),
        )?;
        exp_arg = &exp_arg + &piece;
    }

    Ok(WeightForm {
        constant: Rational::one(),
        power_factors,
        exp_arg,
    })
}

/// `m·b/a - a'/a`, the logarithmic derivative a weight of the given order
/// must have.
pub fn defining_log_derivative(a: &Polynomial, b: &Polynomial, order: WeightOrder) -> Result<RationalFunction> {
    let lhs = &b.scale(&order.multiplier()) - &a.differentiate(1);
    RationalFunction::new(lhs, a.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FinitenessTag {
    ZeroLimit,
    FinitePositive,
    Infinite,
    /// Reserved; the decision rules below never produce it.
    OscillatesOrUndefined,
}

impl FinitenessTag {
    pub fn is_finite(self) -> bool {
        matches!(self, FinitenessTag::ZeroLimit | FinitenessTag::FinitePositive)
    }

    pub fn name(self) -> &'static str {
        match self {
            FinitenessTag::ZeroLimit => "ZeroLimit",
            FinitenessTag::FinitePositive => "FinitePositive",
            FinitenessTag::Infinite => "Infinite",
            FinitenessTag::OscillatesOrUndefined => "OscillatesOrUndefined",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Both,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Finiteness {
    pub tag: FinitenessTag,
    pub side: Side,
}

/// One-sided limits of a weight at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointFiniteness {
    pub left: FinitenessTag,
    pub right: FinitenessTag,
}

impl PointFiniteness {
    fn both(tag: FinitenessTag) -> Self {
        PointFiniteness { left: tag, right: tag }
    }

    /// A single `Both` entry when the sides agree, otherwise one per side.
    pub fn findings(&self) -> Vec<Finiteness> {
        if self.left == self.right {
            vec![Finiteness {
                tag: self.left,
                side: Side::Both,
            }]
        } else {
            vec![
                Finiteness {
                    tag: self.left,
                    side: Side::Left,
                },
                Finiteness {
                    tag: self.right,
                    side: Side::Right,
                },
            ]
        }
    }

    pub fn two_sided(&self) -> Option<FinitenessTag> {
        (self.left == self.right).then_some(self.left)
    }
}

fn tag_from_sign(sign: i32) -> FinitenessTag {
    if sign < 0 {
        FinitenessTag::ZeroLimit
    } else {
        FinitenessTag::Infinite
    }
}

/// Leading Laurent coefficient and pole order of `q` at `x0`.
fn pole_at(q: &RationalFunction, x0: &Rational) -> Option<(usize, Rational)> {
    let k = q.den().root_multiplicity(x0);
    if k == 0 || q.is_zero() {
        return None;
    }
    let rest = q
        .den()
        .div_exact(&Polynomial::linear_factor(x0).pow(k as u32))
        .expect("nonzero")
        .expect("root factor divides");
    Some((k, q.num().evaluate(x0) / rest.evaluate(x0)))
}

pub fn finiteness_at_point(w: &WeightForm, x0: &Rational) -> PointFiniteness {
    if let Some((k, c)) = pole_at(&w.exp_arg, x0) {
        // exp(c/(x - x0)^k) dominates any power: the sign of the exponent
        // on each side decides.
        let right = tag_from_sign(c.signum());
        let left_sign = if k % 2 == 0 { c.signum() } else { -c.signum() };
        return PointFiniteness {
            left: tag_from_sign(left_sign),
            right,
        };
    }
    let e = w.exponent_at(x0);
    PointFiniteness::both(match e.signum() {
        1 => FinitenessTag::ZeroLimit,
        0 => FinitenessTag::FinitePositive,
        _ => FinitenessTag::Infinite,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    PosInfinity,
    NegInfinity,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::PosInfinity => "+inf",
            Direction::NegInfinity => "-inf",
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Direction::PosInfinity => 1.0,
            Direction::NegInfinity => -1.0,
        }
    }
}

/// True iff `x^k · w(x) → 0` in `direction` for every `k`, i.e. the
/// polynomial part of the exponent tends to `-∞` there.
pub fn decay_dominates_polynomials(w: &WeightForm, direction: Direction) -> bool {
    let (poly, _) = w.exp_arg.num().div_rem(w.exp_arg.den()).expect("nonzero denominator");
    match poly.deg() {
        Some(d) if d >= 1 => {
            let mut sign = poly.leading_coefficient().signum();
            if direction == Direction::NegInfinity && d % 2 == 1 {
                sign = -sign;
            }
            sign < 0
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Positive,
}

/// Local data of a first-order operator `a y' + b y` at a zero of `a`,
/// shifted to the origin: `a = x^α g`, `b = x^β f`, `b/a = x^{β-α} h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularPointData {
    pub alpha_exp: u32,
    pub beta_exp: u32,
    pub h_sign: Sign,
}

impl SingularPointData {
    /// Extracts the data at `x = 0`; `a(0)` must vanish and `b` be nonzero.
    pub fn from_coefficients(a: &Polynomial, b: &Polynomial) -> Result<Self> {
        let zero = Rational::zero();
        if a.is_zero() || b.is_zero() {
            return Err(Error::PreconditionViolation("both coefficients must be nonzero".into()));
        }
        let alpha = a.root_multiplicity(&zero);
        if alpha == 0 {
            return Err(Error::PreconditionViolation(format!("a = {a} does not vanish at 0")));
        }
        let beta = b.root_multiplicity(&zero);
        let g0 = a.coeff(alpha);
        let f0 = b.coeff(beta);
        let h0 = f0 / g0;
        Ok(SingularPointData {
            alpha_exp: alpha as u32,
            beta_exp: beta as u32,
            h_sign: if h0.is_negative() {
                Sign::Negative
            } else {
                Sign::Positive
            },
        })
    }

    pub fn net_exponent(&self) -> i64 {
        self.beta_exp as i64 - self.alpha_exp as i64
    }
}

/// One-sided limits of `e^{λ x^β} / |x^α|` at zero with `β = betaExp -
/// alphaExp < 0` and `sign λ = sign h(0)`.
pub fn order1_singular_classify(s: &SingularPointData) -> Result<PointFiniteness> {
    let beta = s.net_exponent();
    if beta >= 0 {
        return Err(Error::PreconditionViolation(format!(
            "betaExp - alphaExp = {beta} is not negative; the weight is regular at 0"
        )));
    }
    let lambda = match s.h_sign {
        Sign::Negative => -1,
        Sign::Positive => 1,
    };
    let left_lambda = if beta % 2 == 0 { lambda } else { -lambda };
    Ok(PointFiniteness {
        left: tag_from_sign(left_lambda),
        right: tag_from_sign(lambda),
    })
}

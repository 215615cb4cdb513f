//! Classification of second-order operators `a y'' + b y' + c y` with
//! `deg a ≤ 2`, `deg b ≤ 1` into the four canonical cases, deciding whether
//! the weight makes every polynomial eigenfunction admissible.
//!
//! After an affine change of variable `t = scale·x + shift` and division by
//! a constant, the leading coefficient becomes `1 - t²`, `t²`, `t` or `1`
//! and `b` becomes `α t + β`. Admissibility depends only on `(α, β)`;
//! eigenvalues are computed from the original operator, since an affine
//! substitution does not change them.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational};
use crate::operator::{DiffOperator, EigenvalueFormula};
use crate::weight::{
    decay_dominates_polynomials, derive_weight, finiteness_at_point, Direction, FinitenessTag, WeightForm, WeightOrder,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Endpoint::Finite(r) => Some(r),
            _ => None,
        }
    }

    fn rank(&self) -> (i32, Rational) {
        match self {
            Endpoint::NegInfinity => (-1, Rational::zero()),
            Endpoint::Finite(r) => (0, r.clone()),
            Endpoint::PosInfinity => (1, Rational::zero()),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInfinity => f.write_str("-inf"),
            Endpoint::PosInfinity => f.write_str("+inf"),
            Endpoint::Finite(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Result<Self> {
        if lo.rank() >= hi.rank() {
            return Err(Error::PreconditionViolation(format!(
                "interval endpoints out of order: {lo} >= {hi}"
            )));
        }
        let lo_open = lo.finite().is_none();
        let hi_open = hi.finite().is_none();
        Ok(Interval {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(Endpoint::Finite(lo), Endpoint::Finite(hi))
    }

    pub fn real_line() -> Self {
        Self::new(Endpoint::NegInfinity, Endpoint::PosInfinity).expect("ordered")
    }

    pub fn is_finite(&self) -> bool {
        self.lo.finite().is_some() && self.hi.finite().is_some()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// The substitution `t = scale·x + shift` taking the original variable to
/// the canonical one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub scale: Rational,
    pub shift: Rational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            scale: Rational::one(),
            shift: Rational::zero(),
        }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &(&self.scale * x) + &self.shift
    }

    pub fn invert(&self, t: &Rational) -> Rational {
        (t - &self.shift) / &self.scale
    }

    /// `t ↦ -t` composed after this map.
    fn flipped(&self) -> Self {
        AffineMap {
            scale: -&self.scale,
            shift: -&self.shift,
        }
    }

    /// Pulls an interval in `t` back to the original variable.
    fn pull_back(&self, lo: Endpoint, hi: Endpoint) -> Result<Interval> {
        let map = |e: Endpoint| match e {
            Endpoint::Finite(t) => Endpoint::Finite(self.invert(&t)),
            inf if self.scale.is_positive() => inf,
            Endpoint::NegInfinity => Endpoint::PosInfinity,
            Endpoint::PosInfinity => Endpoint::NegInfinity,
        };
        let (a, b) = (map(lo), map(hi));
        if a.rank() < b.rank() {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalForm {
    /// `1 - t²`
    TwoRealRoots,
    /// `t²`
    RepeatedRoot,
    /// `t`
    Linear,
    /// `1`
    Constant,
    NoRealRoots,
}

impl CanonicalForm {
    fn leading(self) -> Option<Polynomial> {
        match self {
            CanonicalForm::TwoRealRoots => Some(Polynomial::from_ints(&[1, 0, -1])),
            CanonicalForm::RepeatedRoot => Some(Polynomial::from_ints(&[0, 0, 1])),
            CanonicalForm::Linear => Some(Polynomial::from_ints(&[0, 1])),
            CanonicalForm::Constant => Some(Polynomial::one()),
            CanonicalForm::NoRealRoots => None,
        }
    }
}

/// Affine normalization of a leading coefficient of degree at most two.
pub fn normalize(a: &Polynomial) -> Result<(CanonicalForm, AffineMap)> {
    let deg = a
        .deg()
        .ok_or_else(|| Error::PreconditionViolation("leading coefficient must be nonzero".into()))?;
    match deg {
        0 => Ok((CanonicalForm::Constant, AffineMap::identity())),
        1 => {
            let root = -(a.coeff(0) / a.coeff(1));
            Ok((
                CanonicalForm::Linear,
                AffineMap {
                    scale: Rational::one(),
                    shift: -root,
                },
            ))
        }
        2 => {
            let disc = &(a.coeff(1) * a.coeff(1)) - &(Rational::from(4) * a.coeff(2) * a.coeff(0));
            if disc.is_negative() {
                return Ok((CanonicalForm::NoRealRoots, AffineMap::identity()));
            }
            let roots = a.rational_roots()?;
            match roots.as_slice() {
                [(r, 2)] => Ok((
                    CanonicalForm::RepeatedRoot,
                    AffineMap {
                        scale: Rational::one(),
                        shift: -r,
                    },
                )),
                [(r1, 1), (r2, 1)] => {
                    // t = (2x - r1 - r2)/(r2 - r1) sends r1, r2 to -1, 1.
                    let width = r2 - r1;
                    Ok((
                        CanonicalForm::TwoRealRoots,
                        AffineMap {
                            scale: Rational::from(2) / &width,
                            shift: -(r1 + r2) / width,
                        },
                    ))
                }
                _ => unreachable!("quadratic with rational roots"),
            }
        }
        _ => Err(Error::DegreeViolation(format!(
            "leading coefficient {a} has degree {deg} > 2"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamConstraint {
    pub description: String,
    pub satisfied: bool,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
}

impl ParamConstraint {
    pub fn new(description: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        ParamConstraint {
            description: description.into(),
            satisfied: relation.holds(&lhs, &rhs),
            lhs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    CaseI,
    CaseII,
    CaseIII,
    CaseIV,
    NoRealRoots,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::CaseI => "CaseI",
            CaseTag::CaseII => "CaseII",
            CaseTag::CaseIII => "CaseIII",
            CaseTag::CaseIV => "CaseIV",
            CaseTag::NoRealRoots => "NoRealRoots",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    StrictWeight,
    InessentialSingularity,
    NotAdmissible,
    Vacuous,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::StrictWeight => "StrictWeight",
            Mode::InessentialSingularity => "InessentialSingularity",
            Mode::NotAdmissible => "NotAdmissible",
            Mode::Vacuous => "Vacuous",
        }
    }

    pub fn is_admissible(self) -> bool {
        matches!(self, Mode::StrictWeight | Mode::InessentialSingularity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub case_tag: CaseTag,
    pub mode: Mode,
    pub interval: Interval,
    /// `None` only when `a` has no real roots.
    pub weight: Option<WeightForm>,
    /// Canonical `b = α t + β` after normalization.
    pub alpha: Rational,
    pub beta: Rational,
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Rational,
    pub constraints: Vec<ParamConstraint>,
    /// Eigenvalues of the original operator, `c` included.
    pub eigenvalues: EigenvalueFormula,
    pub affine_map: AffineMap,
    /// `a(x) = canonical_factor · A(t)` for the canonical leading term `A`.
    pub canonical_factor: Rational,
    pub notes: Vec<String>,
}

impl ClassificationRecord {
    pub fn is_admissible(&self) -> bool {
        self.mode.is_admissible()
    }

    pub fn operator(&self) -> DiffOperator {
        DiffOperator::second_order(&self.a, &self.b, &Polynomial::constant(self.c.clone()))
            .expect("nonzero leading coefficient")
    }

    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(format!(
                "{} / {}",
                self.case_tag.name(),
                self.mode.name()
            )))
        }
    }

    /// Checks that `a·p` vanishes at finite endpoints and decays faster than
    /// any polynomial at infinite ones.
    pub fn boundary_terms_vanish(&self) -> Result<bool> {
        let Some(w) = &self.weight else {
            return Ok(false);
        };
        let ap = w.times_polynomial(&self.a)?;
        let lo_ok = match &self.interval.lo {
            Endpoint::Finite(x) => finiteness_at_point(&ap, x).right == FinitenessTag::ZeroLimit,
            _ => decay_dominates_polynomials(&ap, Direction::NegInfinity),
        };
        let hi_ok = match &self.interval.hi {
            Endpoint::Finite(x) => finiteness_at_point(&ap, x).left == FinitenessTag::ZeroLimit,
            _ => decay_dominates_polynomials(&ap, Direction::PosInfinity),
        };
        Ok(lo_ok && hi_ok)
    }
}

/// Jacobi-type admissibility `α < β < -α`.
pub fn jacobi_admissible(alpha: &Rational, beta: &Rational) -> (bool, Vec<ParamConstraint>) {
    let constraints = vec![
        ParamConstraint::new("jacobi: alpha < beta", alpha.clone(), Relation::Lt, beta.clone()),
        ParamConstraint::new("jacobi: beta < -alpha", beta.clone(), Relation::Lt, -alpha),
    ];
    (constraints.iter().all(|c| c.satisfied), constraints)
}

/// Returns `(k, α, β)` with `a(x) = k·A(t)` and the canonical `b/(k·scale)
/// = α t + β`.
fn canonical_coefficients(
    a: &Polynomial,
    b: &Polynomial,
    leading: &Polynomial,
    map: &AffineMap,
) -> (Rational, Rational, Rational) {
    let inv_scale = Rational::one() / &map.scale;
    let inv_shift = -(&map.shift / &map.scale);
    let a_t = a.compose_affine(&inv_scale, &inv_shift);
    let k = a_t.leading_coefficient() / leading.leading_coefficient();
    let b_t = b
        .compose_affine(&inv_scale, &inv_shift)
        .scale(&(Rational::one() / (&k * &map.scale)));
    (k, b_t.coeff(1), b_t.coeff(0))
}

pub fn classify(a: &Polynomial, b: &Polynomial, c: &Rational) -> Result<ClassificationRecord> {
    if a.deg().is_some_and(|d| d > 2) {
        return Err(Error::DegreeViolation(format!("deg a = {} > 2", a.degree())));
    }
    if b.deg().is_some_and(|d| d > 1) {
        return Err(Error::DegreeViolation(format!("deg b = {} > 1", b.degree())));
    }
    let (form, mut map) = normalize(a)?;
    let eigenvalues = DiffOperator::second_order(a, b, &Polynomial::constant(c.clone()))?.eigenvalue_formula()?;

    let Some(leading) = form.leading() else {
        let disc = &(a.coeff(1) * a.coeff(1)) - &(Rational::from(4) * a.coeff(2) * a.coeff(0));
        return Ok(ClassificationRecord {
            case_tag: CaseTag::NoRealRoots,
            mode: Mode::NotAdmissible,
            interval: Interval::real_line(),
            weight: None,
            alpha: b.coeff(1),
            beta: b.coeff(0),
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            constraints: vec![ParamConstraint::new(
                "leading coefficient has a real root (discriminant >= 0)",
                disc,
                Relation::Ge,
                Rational::zero(),
            )],
            eigenvalues,
            affine_map: map,
            canonical_factor: Rational::one(),
            notes: vec![
                "a(x) has no real roots: the weight cannot vanish at finite endpoints and no \
                 interval satisfies the boundary and finite-norm requirements"
                    .into(),
            ],
        });
    };

    let (mut k, mut alpha, mut beta) = canonical_coefficients(a, b, &leading, &map);
    let weight = derive_weight(a, b, WeightOrder::Two)?;
    let zero = Rational::zero();
    let one = Rational::one();
    let mut notes = Vec::new();

    let (case_tag, mode, t_lo, t_hi, constraints) = match form {
        CanonicalForm::TwoRealRoots => {
            let two = Rational::from(2);
            let strict = vec![
                ParamConstraint::new(
                    "finite weight at -1: beta - alpha - 2 >= 0",
                    &(&beta - &alpha) - &two,
                    Relation::Ge,
                    zero.clone(),
                ),
                ParamConstraint::new(
                    "finite weight at 1: beta + alpha + 2 <= 0",
                    &(&beta + &alpha) + &two,
                    Relation::Le,
                    zero.clone(),
                ),
            ];
            let (jacobi, jacobi_constraints) = jacobi_admissible(&alpha, &beta);
            let mode = if strict.iter().all(|c| c.satisfied) {
                Mode::StrictWeight
            } else if jacobi {
                notes.push(
                    "weight is infinite at an endpoint but integrable against every polynomial \
                     (inessential singularity)"
                        .into(),
                );
                Mode::InessentialSingularity
            } else {
                Mode::NotAdmissible
            };
            let mut constraints = strict;
            constraints.extend(jacobi_constraints);
            (
                CaseTag::CaseI,
                mode,
                Endpoint::Finite(-&one),
                Endpoint::Finite(one.clone()),
                constraints,
            )
        }
        CanonicalForm::RepeatedRoot => {
            if beta.is_zero() {
                notes.push(
                    "beta = 0: the weight |t|^(alpha-2) is finite at 0 only for alpha >= 2, and \
                     then its integral over a half-line diverges"
                        .into(),
                );
                let constraints = vec![
                    ParamConstraint::new(
                        "finite weight at 0: alpha >= 2",
                        alpha.clone(),
                        Relation::Ge,
                        Rational::from(2),
                    ),
                    ParamConstraint::new(
                        "integrable weight on a half-line: alpha - 2 < -1",
                        &alpha - &Rational::from(2),
                        Relation::Lt,
                        Rational::from(-1),
                    ),
                ];
                (
                    CaseTag::CaseII,
                    Mode::NotAdmissible,
                    Endpoint::Finite(zero.clone()),
                    Endpoint::PosInfinity,
                    constraints,
                )
            } else {
                notes.push(
                    "polynomials do not have finite norm: the weight behaves like \
                     t^(alpha-2) at infinity, and the integral of t^k exp(-beta/t) over a \
                     half-line diverges for k >= -1"
                        .into(),
                );
                let constraints = vec![ParamConstraint::new(
                    "weight decays faster than every power at infinity (degree of the \
                     polynomial part of the exponent >= 1)",
                    zero.clone(),
                    Relation::Ge,
                    one.clone(),
                )];
                let (lo, hi) = if beta.is_positive() {
                    (Endpoint::Finite(zero.clone()), Endpoint::PosInfinity)
                } else {
                    (Endpoint::NegInfinity, Endpoint::Finite(zero.clone()))
                };
                (CaseTag::CaseII, Mode::Vacuous, lo, hi, constraints)
            }
        }
        CanonicalForm::Linear => {
            if alpha.is_positive() {
                // The half-line (-inf, 0] is the mirror image of [0, inf).
                map = map.flipped();
                (k, alpha, beta) = canonical_coefficients(a, b, &leading, &map);
                notes.push("flipped t -> -t so the working interval is [0, inf)".into());
            }
            let constraints = vec![
                ParamConstraint::new(
                    "decay at infinity: alpha < 0",
                    alpha.clone(),
                    Relation::Lt,
                    zero.clone(),
                ),
                ParamConstraint::new("finite weight at 0: beta >= 1", beta.clone(), Relation::Ge, one.clone()),
            ];
            let mode = if constraints.iter().all(|c| c.satisfied) {
                Mode::StrictWeight
            } else {
                Mode::NotAdmissible
            };
            (
                CaseTag::CaseIII,
                mode,
                Endpoint::Finite(zero.clone()),
                Endpoint::PosInfinity,
                constraints,
            )
        }
        CanonicalForm::Constant => {
            let constraints = vec![ParamConstraint::new(
                "decay at both infinities: alpha < 0",
                alpha.clone(),
                Relation::Lt,
                zero.clone(),
            )];
            let mode = if constraints[0].satisfied {
                Mode::StrictWeight
            } else {
                Mode::NotAdmissible
            };
            (
                CaseTag::CaseIV,
                mode,
                Endpoint::NegInfinity,
                Endpoint::PosInfinity,
                constraints,
            )
        }
        CanonicalForm::NoRealRoots => unreachable!("handled above"),
    };

    let mut interval = map.pull_back(t_lo, t_hi)?;
    if let Endpoint::Finite(x) = &interval.lo {
        interval.lo_open = !finiteness_at_point(&weight, x).right.is_finite();
    }
    if let Endpoint::Finite(x) = &interval.hi {
        interval.hi_open = !finiteness_at_point(&weight, x).left.is_finite();
    }

    Ok(ClassificationRecord {
        case_tag,
        mode,
        interval,
        weight: Some(weight),
        alpha,
        beta,
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        constraints,
        eigenvalues,
        affine_map: map,
        canonical_factor: k,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn classify_ints(a: &[i64], b: &[i64]) -> ClassificationRecord {
        classify(&p(a), &p(b), &Rational::zero()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let (form, map) = normalize(&p(&[4, 0, -1])).unwrap();
        assert_eq!(form, CanonicalForm::TwoRealRoots);
        assert_eq!(
            map,
            AffineMap {
                scale: r(1, 2),
                shift: r(0, 1)
            }
        );
        assert_eq!(map.apply(&r(2, 1)), r(1, 1));

        let (form, map) = normalize(&p(&[0, 1])).unwrap();
        assert_eq!(form, CanonicalForm::Linear);
        assert_eq!(map, AffineMap::identity());

        assert_eq!(normalize(&p(&[1, 0, 1])).unwrap().0, CanonicalForm::NoRealRoots);
        assert_eq!(normalize(&p(&[-2, 4, -2])).unwrap().0, CanonicalForm::RepeatedRoot);
        assert!(matches!(normalize(&p(&[0, 0, 0, 1])), Err(Error::DegreeViolation(_))));
        assert!(matches!(
            normalize(&p(&[-2, 0, 1])),
            Err(Error::IrrationalOrComplexRoots(_))
        ));
    }

    #[test]
    fn legendre_is_critical_case_one() {
        let rec = classify_ints(&[1, 0, -1], &[0, -2]);
        assert_eq!(rec.case_tag, CaseTag::CaseI);
        assert_eq!(rec.mode, Mode::StrictWeight);
        assert!(rec.constraints[..2].iter().all(|c| c.satisfied && c.lhs.is_zero()));
        assert!(rec.weight.as_ref().unwrap().is_constant());
        assert_eq!(rec.eigenvalues.eval(4), Rational::from(-20));
        assert_eq!(rec.interval.to_string(), "[-1/1, 1/1]");
        assert!(rec.boundary_terms_vanish().unwrap());
    }

    #[test]
    fn chebyshev_is_inessential() {
        let rec = classify_ints(&[1, 0, -1], &[0, -1]);
        assert_eq!(rec.mode, Mode::InessentialSingularity);
        let w = rec.weight.as_ref().unwrap();
        assert_eq!(w.exponent_at(&r(1, 1)), r(-1, 2));
        assert_eq!(w.exponent_at(&r(-1, 1)), r(-1, 2));
        assert_eq!(rec.eigenvalues.eval(3), Rational::from(-9));
        assert!(rec.interval.lo_open && rec.interval.hi_open);
        assert!(rec.boundary_terms_vanish().unwrap());
    }

    #[test]
    fn confluent_case_three() {
        let rec = classify_ints(&[0, 1], &[2, -1]);
        assert_eq!(rec.case_tag, CaseTag::CaseIII);
        assert_eq!(rec.mode, Mode::StrictWeight);
        assert_eq!(rec.weight.as_ref().unwrap().to_string(), "|x| * exp(-x)");
        assert_eq!(rec.eigenvalues.eval(5), Rational::from(-5));
    }

    #[test]
    fn case_three_mirror_interval() {
        // a = x, b = x + 2: weight |x| e^{x}, admissible on (-inf, 0]
        let rec = classify_ints(&[0, 1], &[2, 1]);
        assert_eq!(rec.mode, Mode::StrictWeight);
        assert_eq!(rec.alpha, r(-1, 1));
        assert_eq!(rec.interval.lo, Endpoint::NegInfinity);
        assert_eq!(rec.interval.hi, Endpoint::Finite(r(0, 1)));
        assert!(rec.boundary_terms_vanish().unwrap());
    }

    #[test]
    fn case_two_is_vacuous() {
        let rec = classify_ints(&[0, 0, 1], &[1, 1]);
        assert_eq!(rec.case_tag, CaseTag::CaseII);
        assert_eq!(rec.mode, Mode::Vacuous);
        assert!(!rec.notes.is_empty());
        let rec = classify_ints(&[0, 0, 1], &[0, 3]);
        assert_eq!(rec.mode, Mode::NotAdmissible);
    }

    #[test]
    fn hermite_case_four() {
        let rec = classify_ints(&[1], &[0, -2]);
        assert_eq!(rec.case_tag, CaseTag::CaseIV);
        assert_eq!(rec.mode, Mode::StrictWeight);
        assert_eq!(rec.eigenvalues.eval(3), Rational::from(-6));
        assert!(rec.boundary_terms_vanish().unwrap());
    }

    #[test]
    fn no_real_roots() {
        let rec = classify_ints(&[1, 0, 1], &[0, 1]);
        assert_eq!(rec.case_tag, CaseTag::NoRealRoots);
        assert_eq!(rec.mode, Mode::NotAdmissible);
        assert!(rec.weight.is_none());
    }

    #[test]
    fn scaled_interval_case_one() {
        // a = 4 - x^2 = 4(1 - t^2) with x = 2t; b(2t)/(4 · 1/2) = -2t
        let rec = classify_ints(&[4, 0, -1], &[0, -2]);
        assert_eq!(rec.case_tag, CaseTag::CaseI);
        assert_eq!(rec.interval.lo, Endpoint::Finite(r(-2, 1)));
        assert_eq!(rec.interval.hi, Endpoint::Finite(r(2, 1)));
        assert_eq!(rec.alpha, r(-2, 1));
        assert_eq!(rec.mode, Mode::StrictWeight);
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_admissible(&r(-2, 1), &r(0, 1)).0);
        assert!(jacobi_admissible(&r(-1, 1), &r(0, 1)).0);
        assert!(jacobi_admissible(&r(-3, 1), &r(0, 1)).0);
        assert!(!jacobi_admissible(&r(1, 1), &r(0, 1)).0);
        assert!(!jacobi_admissible(&r(-1, 1), &r(1, 1)).0);
    }

    #[test]
    fn degree_bounds() {
        assert!(matches!(
            classify(&p(&[0, 0, 0, 1]), &p(&[1]), &Rational::zero()),
            Err(Error::DegreeViolation(_))
        ));
        assert!(matches!(
            classify(&p(&[1]), &p(&[0, 0, 1]), &Rational::zero()),
            Err(Error::DegreeViolation(_))
        ));
    }

    #[test]
    fn constant_term_shifts_eigenvalues() {
        let rec = classify(&p(&[1]), &p(&[0, -2]), &r(5, 1)).unwrap();
        assert_eq!(rec.eigenvalues.eval(0), r(5, 1));
        assert_eq!(rec.eigenvalues.eval(2), r(1, 1));
        assert_eq!(rec.mode, Mode::StrictWeight);
    }
}

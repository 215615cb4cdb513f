//! Linear differential operators `L(y) = Σ a_k(x) y^(k)` with polynomial
//! coefficients, acting on polynomials.
//!
//! When `deg a_k ≤ k` for every `k`, `L` maps the space `P_n` of polynomials
//! of degree at most `n` into itself and its matrix on the monomial basis is
//! upper-triangular. The diagonal is the eigenvalue sequence and the monic
//! eigenpolynomials follow by back-substitution.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    coeffs: Vec<Polynomial>,
}

impl DiffOperator {
    /// `coeffs[k]` multiplies `y^(k)`. Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<Polynomial>) -> Result<Self> {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::PreconditionViolation(
                "differential operator has no nonzero coefficient".into(),
            ));
        }
        Ok(DiffOperator { coeffs })
    }

    /// `a y'' + b y' + c y`.
    pub fn second_order(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<Self> {
        Self::new(vec![c.clone(), b.clone(), a.clone()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// Coefficient of `y^(k)`, zero past the order.
    pub fn coeff(&self, k: usize) -> Polynomial {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn maps_poly_to_poly(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, a)| a.deg().is_none_or(|d| d <= k))
    }

    fn require_degree_bound(&self) -> Result<()> {
        match self
            .coeffs
            .iter()
            .enumerate()
            .find(|(k, a)| a.deg().is_some_and(|d| d > *k))
        {
            Some((k, a)) => Err(Error::DegreeViolation(format!(
                "coefficient a_{k} = {a} has degree above {k}"
            ))),
            None => Ok(()),
        }
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Polynomial::zero(), |acc, (k, a)| &acc + &(a * &p.differentiate(k)))
    }

    /// Matrix of `L` restricted to `P_n` in the monomial basis: column `j`
    /// holds the coefficients of `L(x^j)`.
    pub fn matrix_on_pn(&self, n: usize) -> Result<Vec<Vec<Rational>>> {
        self.require_degree_bound()?;
        let mut m = vec![vec![Rational::zero(); n + 1]; n + 1];
        for j in 0..=n {
            let image = self.apply(&Polynomial::monomial(Rational::one(), j));
            for (i, c) in image.coeffs().iter().enumerate() {
                m[i][j] = c.clone();
            }
        }
        Ok(m)
    }

    pub fn eigenvalue_formula(&self) -> Result<EigenvalueFormula> {
        self.require_degree_bound()?;
        let falling_factorial_coeffs = self.coeffs.iter().enumerate().map(|(k, a)| a.coeff(k)).collect();
        Ok(EigenvalueFormula {
            falling_factorial_coeffs,
        })
    }

    /// Monic eigenpolynomial of degree `n`.
    ///
    /// Solves `(M - λ_n I) c = 0` with `c_n = 1` bottom-up from row `n - 1`.
    /// A zero pivot (an earlier degree sharing `λ_n`) takes `c_m = 0` when
    /// its row is already satisfied and fails otherwise.
    pub fn monic_eigenpolynomial(&self, n: usize) -> Result<EigenPair> {
        let formula = self.eigenvalue_formula()?;
        let lambda = formula.eval(n as u64);
        self.eigenpolynomial_for(n, &lambda)
    }

    pub(crate) fn eigenpolynomial_for(&self, n: usize, lambda: &Rational) -> Result<EigenPair> {
        let m = self.matrix_on_pn(n)?;
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        for i in (0..n).rev() {
            let rhs: Rational = ((i + 1)..=n).map(|j| &m[i][j] * &c[j]).sum();
            let pivot = &m[i][i] - lambda;
            if pivot.is_zero() {
                if !rhs.is_zero() {
                    return Err(Error::EigenvalueCollisionUnsolvable { degree: n, row: i });
                }
                c[i] = Rational::zero();
            } else {
                c[i] = -(rhs / pivot);
            }
        }
        Ok(EigenPair {
            degree: n,
            eigenvalue: lambda.clone(),
            eigenpolynomial: Polynomial::new(c),
        })
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a})")?;
            match k {
                0 => f.write_str("*y")?,
                _ => write!(f, "*D^{k}y")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator({self})")
    }
}

/// `λ_n = Σ_k d_k · n(n-1)···(n-k+1)` where `d_k` is the `x^k` coefficient
/// of `a_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueFormula {
    pub falling_factorial_coeffs: Vec<Rational>,
}

impl EigenvalueFormula {
    pub fn eval(&self, n: u64) -> Rational {
        self.falling_factorial_coeffs
            .iter()
            .enumerate()
            .map(|(k, d)| d * falling_factorial(n, k))
            .sum()
    }

    /// The same formula as a polynomial in `n`.
    pub fn expanded_in_n(&self) -> Polynomial {
        self.falling_factorial_coeffs
            .iter()
            .enumerate()
            .fold(Polynomial::zero(), |acc, (k, d)| {
                let ff = (0..k).fold(Polynomial::one(), |p, i| {
                    &p * &Polynomial::new(vec![Rational::from(-(i as i64)), Rational::one()])
                });
                &acc + &ff.scale(d)
            })
    }

    /// Shifts every eigenvalue by `c`.
    pub fn shifted(&self, c: &Rational) -> Self {
        let mut coeffs = self.falling_factorial_coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        coeffs[0] = &coeffs[0] + c;
        EigenvalueFormula {
            falling_factorial_coeffs: coeffs,
        }
    }
}

pub fn falling_factorial(n: u64, k: usize) -> Rational {
    (0..k as u64).map(|i| Rational::from(n as i64 - i as i64)).product()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub degree: usize,
    pub eigenvalue: Rational,
    pub eigenpolynomial: Polynomial,
}

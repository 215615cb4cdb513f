use super::{Polynomial, Rational, RationalFunction};
use crate::error::Result;

/// One term `coefficient / (x - root)^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleTerm {
    pub root: Rational,
    pub order: usize,
    pub coefficient: Rational,
}

/// `poly_part + Σ coefficient / (x - root)^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly_part: Polynomial,
    pub pole_terms: Vec<PoleTerm>,
}

impl PartialFractions {
    pub fn reassemble(&self) -> RationalFunction {
        self.pole_terms
            .iter()
            .fold(RationalFunction::from(self.poly_part.clone()), |acc, t| {
                let term = RationalFunction::new(
                    Polynomial::constant(t.coefficient.clone()),
                    Polynomial::linear_factor(&t.root).pow(t.order as u32),
                )
                .expect("nonzero denominator");
                &acc + &term
            })
    }

    /// Coefficient of the simple pole at `root`, zero if absent.
    pub fn residue(&self, root: &Rational) -> Rational {
        self.pole_terms
            .iter()
            .find(|t| &t.root == root && t.order == 1)
            .map(|t| t.coefficient.clone())
            .unwrap_or_default()
    }
}

/// Decomposes a rational function whose denominator splits over the
/// rationals. Terms are ordered by root, then by ascending order; zero
/// coefficients are dropped.
pub fn partial_fractions(r: &RationalFunction) -> Result<PartialFractions> {
    let den = r.den();
    let roots = den.rational_roots()?;
    let (poly_part, rem) = r.num().div_rem(den)?;
    let mut pole_terms = Vec::new();
    for (root, mult) in &roots {
        // rem / den = N(t) / (t^m D(t)) with t = x - root and D(0) != 0.
        // The Laurent coefficients come from the power series of N/D.
        let cofactor = den
            .div_exact(&Polynomial::linear_factor(root).pow(*mult as u32))?
            .expect("root factor divides");
        let one = Rational::one();
        let n_t = rem.compose_affine(&one, root);
        let d_t = cofactor.compose_affine(&one, root);
        let series = power_series_quotient(&n_t, &d_t, *mult);
        for (j, c) in series.into_iter().enumerate() {
            if !c.is_zero() {
                pole_terms.push(PoleTerm {
                    root: root.clone(),
                    order: mult - j,
                    coefficient: c,
                });
            }
        }
    }
    pole_terms.sort_by(|a, b| a.root.cmp(&b.root).then(a.order.cmp(&b.order)));
    Ok(PartialFractions { poly_part, pole_terms })
}

/// First `terms` coefficients of `n(t)/d(t)` around `t = 0`, `d(0) != 0`.
fn power_series_quotient(n: &Polynomial, d: &Polynomial, terms: usize) -> Vec<Rational> {
    let d0 = d.coeff(0);
    let mut out: Vec<Rational> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = n.coeff(k);
        for (i, c) in out.iter().enumerate() {
            acc -= &(c * &d.coeff(k - i));
        }
        out.push(acc / &d0);
    }
    out
}

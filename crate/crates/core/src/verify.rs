//! Exact orthogonality checks from moment ratios.
//!
//! Integrating `(p·a·x^k)'` over an interval where `p·a·x^k` vanishes at
//! both ends, and using `(p a)' = p b`, gives
//!
//! ```text
//! Σ_i b_i μ_{k+i} + k Σ_i a_i μ_{k-1+i} = 0,    μ_j = ∫ p x^j
//! ```
//!
//! which fixes every `μ_j` as a rational multiple of `μ_0`. `μ_0` itself is
//! never evaluated.

use crate::bochner::{ClassificationRecord, Endpoint};
use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational};
use crate::weight::{decay_dominates_polynomials, finiteness_at_point, Direction, FinitenessTag};

/// The moment relations of a second-order operator `a y'' + b y' + ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentRecurrence {
    a: Polynomial,
    b: Polynomial,
}

impl MomentRecurrence {
    /// Coefficients of `μ_0 ..= μ_{k+1}` in the relation obtained from `x^k`.
    pub fn relation(&self, k: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); k + 2];
        let kr = Rational::from(k);
        for (i, bi) in self.b.coeffs().iter().enumerate() {
            if let Some(slot) = out.get_mut(k + i) {
                *slot += bi;
            }
        }
        if k > 0 {
            for (i, ai) in self.a.coeffs().iter().enumerate() {
                if let Some(slot) = out.get_mut(k - 1 + i) {
                    *slot += &(&kr * ai);
                }
            }
        }
        out
    }

    /// Coefficient of `μ_{k+1}` in relation `k`: `b_1 + k·a_2`.
    pub fn pivot(&self, k: usize) -> Rational {
        &self.b.coeff(1) + &(Rational::from(k) * self.a.coeff(2))
    }
}

/// The moment relations for `(a, b)`. Valid only where the boundary term
/// `p·a·x^k` vanishes, which admissible classifications guarantee.
pub fn moment_recurrence(a: &Polynomial, b: &Polynomial) -> Result<MomentRecurrence> {
    if a.deg().is_some_and(|d| d > 2) || b.deg().is_some_and(|d| d > 1) {
        return Err(Error::DegreeViolation(
            "moment recurrence needs deg a <= 2 and deg b <= 1".into(),
        ));
    }
    Ok(MomentRecurrence {
        a: a.clone(),
        b: b.clone(),
    })
}

/// `μ_k = ratios[k] · μ_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    pub ratios: Vec<Rational>,
    pub mu0_symbol: String,
}

impl MomentTable {
    pub fn len(&self) -> usize {
        self.ratios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ratios.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.ratios.len() - 1
    }
}

pub fn moments_from_recurrence(rec: &MomentRecurrence, n: usize) -> Result<MomentTable> {
    let mut ratios = vec![Rational::one()];
    for k in 0..n {
        let rel = rec.relation(k);
        let pivot = &rel[k + 1];
        if pivot.is_zero() {
            return Err(Error::PivotVanishes { k });
        }
        let lower: Rational = rel[..=k].iter().zip(&ratios).map(|(c, m)| c * m).sum();
        ratios.push(-(lower / pivot));
    }
    Ok(MomentTable {
        ratios,
        mu0_symbol: "mu0 = integral of p over I".into(),
    })
}

pub fn moments_upto(rec: &ClassificationRecord, n: usize) -> Result<MomentTable> {
    rec.require_admissible()?;
    moments_from_recurrence(&moment_recurrence(&rec.a, &rec.b)?, n)
}

/// `⟨P, Q⟩ / μ_0 = Σ P_i Q_j r_{i+j}`.
pub fn inner_product(table: &MomentTable, p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    let needed = p.deg().unwrap_or(0) + q.deg().unwrap_or(0) + 1;
    if needed > table.len() {
        return Err(Error::TableTooShort {
            needed,
            have: table.len(),
        });
    }
    let mut acc = Rational::zero();
    for (i, pi) in p.coeffs().iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (j, qj) in q.coeffs().iter().enumerate() {
            acc += &(pi * qj * &table.ratios[i + j]);
        }
    }
    Ok(acc)
}

/// Entry `(m, n)` is `⟨P_m, P_n⟩ / μ_0` for the monic eigenpolynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<Rational>>,
}

impl GramMatrix {
    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| i == j || v.is_zero()))
    }

    pub fn diagonal_positive(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| row[i].is_positive())
    }

    /// First nonzero off-diagonal entry, if any.
    pub fn first_off_diagonal(&self) -> Option<(usize, usize, Rational)> {
        self.entries.iter().enumerate().find_map(|(i, row)| {
            row.iter()
                .enumerate()
                .find(|(j, v)| *j != i && !v.is_zero())
                .map(|(j, v)| (i, j, v.clone()))
        })
    }
}

pub fn gram_of(table: &MomentTable, polys: &[Polynomial]) -> Result<GramMatrix> {
    let entries = polys
        .iter()
        .map(|p| polys.iter().map(|q| inner_product(table, p, q)).collect())
        .collect::<Result<_>>()?;
    Ok(GramMatrix { entries })
}

pub fn eigenpolynomials(rec: &ClassificationRecord, n_max: usize) -> Result<Vec<Polynomial>> {
    let op = rec.operator();
    (0..=n_max)
        .map(|n| op.monic_eigenpolynomial(n).map(|e| e.eigenpolynomial))
        .collect()
}

pub fn gram_matrix(rec: &ClassificationRecord, n_max: usize) -> Result<GramMatrix> {
    let table = moments_upto(rec, 2 * n_max)?;
    gram_of(&table, &eigenpolynomials(rec, n_max)?)
}

/// Whether every polynomial has finite norm: power singularities at finite
/// endpoints must be integrable (exponent > -1) and the weight must decay
/// faster than any power at infinite endpoints.
pub fn norm_finiteness(rec: &ClassificationRecord) -> bool {
    let Some(w) = &rec.weight else {
        return false;
    };
    let finite_end_ok = |x: &Rational, inside_right: bool| {
        let pt = finiteness_at_point(w, x);
        let tag = if inside_right { pt.right } else { pt.left };
        let from_exp = w.exp_arg.den().root_multiplicity(x) > 0;
        if from_exp {
            tag == FinitenessTag::ZeroLimit
        } else {
            w.exponent_at(x) > Rational::from(-1)
        }
    };
    let lo_ok = match &rec.interval.lo {
        Endpoint::Finite(x) => finite_end_ok(x, true),
        _ => decay_dominates_polynomials(w, Direction::NegInfinity),
    };
    let hi_ok = match &rec.interval.hi {
        Endpoint::Finite(x) => finite_end_ok(x, false),
        _ => decay_dominates_polynomials(w, Direction::PosInfinity),
    };
    lo_ok && hi_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bochner::classify;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn rec(a: &[i64], b: &[i64]) -> ClassificationRecord {
        classify(&p(a), &p(b), &Rational::zero()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn legendre_recurrence() {
        let mr = moment_recurrence(&p(&[1, 0, -1]), &p(&[0, -2])).unwrap();
        // (α - k) μ_{k+1} = -β μ_k - k μ_{k-1} with α = -2, β = 0
        for k in 1..6 {
            let rel = mr.relation(k);
            assert_eq!(rel[k + 1], Rational::from(-2 - k as i64));
            assert_eq!(rel[k - 1], Rational::from(k));
            assert!(rel[k].is_zero());
        }
        let t = moments_upto(&rec(&[1, 0, -1], &[0, -2]), 4).unwrap();
        assert_eq!(t.ratios, vec![r(1, 1), r(0, 1), r(1, 3), r(0, 1), r(1, 5)]);
    }

    #[test]
    fn laguerre_and_chebyshev_moments() {
        let t = moments_upto(&rec(&[0, 1], &[1, -1]), 3).unwrap();
        assert_eq!(t.ratios, ints(&[1, 1, 2, 6]));
        let t = moments_upto(&rec(&[1, 0, -1], &[0, -1]), 2).unwrap();
        assert_eq!(t.ratios, vec![r(1, 1), r(0, 1), r(1, 2)]);
    }

    #[test]
    fn hermite_moments() {
        let t = moments_upto(&rec(&[1], &[0, -2]), 6).unwrap();
        assert_eq!(
            t.ratios,
            vec![r(1, 1), r(0, 1), r(1, 2), r(0, 1), r(3, 4), r(0, 1), r(15, 8)]
        );
    }

    #[test]
    fn pivot_vanishes_guard() {
        // a = 1 - x^2, b = x: pivot b_1 + k a_2 = 1 - k vanishes at k = 1.
        let mr = moment_recurrence(&p(&[1, 0, -1]), &p(&[0, 1])).unwrap();
        assert_eq!(moments_from_recurrence(&mr, 3), Err(Error::PivotVanishes { k: 1 }));
    }

    #[test]
    fn inner_products() {
        let t = moments_upto(&rec(&[1, 0, -1], &[0, -2]), 4).unwrap();
        let p2 = Polynomial::new(vec![r(-1, 3), r(0, 1), r(1, 1)]);
        assert_eq!(
            inner_product(&t, &Polynomial::one(), &Polynomial::one()).unwrap(),
            r(1, 1)
        );
        assert_eq!(inner_product(&t, &Polynomial::x(), &p2).unwrap(), r(0, 1));
        assert_eq!(inner_product(&t, &p2, &p2).unwrap(), r(4, 45));
        assert_eq!(
            inner_product(&t, &p2, &p(&[0, 0, 0, 1])),
            Err(Error::TableTooShort { needed: 6, have: 5 })
        );
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(&rec(&[1, 0, -1], &[0, -2]), 2).unwrap();
        assert!(g.is_diagonal() && g.is_symmetric());
        assert_eq!(
            (0..3).map(|i| g.entries[i][i].clone()).collect::<Vec<_>>(),
            vec![r(1, 1), r(1, 3), r(4, 45)]
        );
        let g = gram_matrix(&rec(&[1], &[0, -2]), 1).unwrap();
        assert_eq!(g.entries, vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(1, 2)]]);
    }

    #[test]
    fn inadmissible_records_are_rejected() {
        let vacuous = rec(&[0, 0, 1], &[1, 1]);
        assert!(matches!(moments_upto(&vacuous, 2), Err(Error::NotAdmissible(_))));
        assert!(matches!(gram_matrix(&vacuous, 2), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn norm_finiteness_examples() {
        assert!(norm_finiteness(&rec(&[1, 0, -1], &[0, -1])));
        assert!(norm_finiteness(&rec(&[0, 1], &[1, -1])));
        assert!(!norm_finiteness(&rec(&[0, 0, 1], &[1, 1])));
        assert!(!norm_finiteness(&rec(&[1, 0, 1], &[0, 1])));
        // Case IV with α > 0 grows at both ends.
        assert!(!norm_finiteness(&rec(&[1], &[0, 1])));
    }
}

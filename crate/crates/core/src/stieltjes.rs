//! The truncated moment problem on the half-line `[0, inf)`.
//!
//! Realizability is governed by the Hankel matrices `C_j` (`A(k)` for
//! `j = 2k`, `B(k)` for `j = 2k + 1`). At the first singular `C_j` the
//! moments obey a linear recurrence with coefficients `phi`, and the
//! realizing measure is unique, supported on the roots of
//! `x^r - sum phi_i x^i`.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hankel::{hankel, hankel_linsolve, psd_classify, PositivityClass};
use crate::measure::StieltjesMeasure;
use crate::moments::MomentVector;
use crate::poly::RationalPolynomial;
use crate::rational::{self, int, Rational};

/// Why a vector is not a half-line moment vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StieltjesWitness {
    /// `v^T C_j v < 0`.
    Indefinite {
        #[serde(with = "rational::serde_rational::vec")]
        direction: Vec<Rational>,
        #[serde(with = "rational::serde_rational")]
        value: Rational,
    },
    /// The recurrence forced by the singular `C_j` fails at `m_moment`.
    Recurrence {
        moment: usize,
        #[serde(with = "rational::serde_rational")]
        forced: Rational,
        #[serde(with = "rational::serde_rational")]
        actual: Rational,
    },
}

#[derive(Debug, Clone)]
pub enum StieltjesVerdict {
    IRealizable,
    /// `C_index` is the first singular Hankel matrix.
    BRealizable { index: usize, phi: Vec<Rational>, measure: StieltjesMeasure },
    NotRealizable { index: usize, witness: StieltjesWitness },
}

impl StieltjesVerdict {
    pub fn is_realizable(&self) -> bool {
        !matches!(self, StieltjesVerdict::NotRealizable { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            StieltjesVerdict::IRealizable => "I",
            StieltjesVerdict::BRealizable { .. } => "B",
            StieltjesVerdict::NotRealizable { .. } => "Not",
        }
    }
}

/// The recurrence coefficients at a singular `C_j` whose predecessors are
/// positive definite. Returns `(phi_0, ..., phi_{r-1})` with
/// `r = floor((j + 1) / 2)`; `phi_0 = 0` for odd `j`.
pub fn dependence_coefficients(m: &MomentVector, j: usize) -> Result<Vec<Rational>> {
    let r = j.div_ceil(2);
    if j.is_multiple_of(2) {
        let a = hankel(m, j - 2)?;
        let rhs: Vec<Rational> = (r..2 * r).map(|i| m.at(i)).collect();
        hankel_linsolve(&a, &rhs).map_err(|_| Error::Precondition("A(r-1) is singular".into()))
    } else {
        let mut phi = vec![Rational::zero()];
        if r > 1 {
            let b = hankel(m, j - 2)?;
            let rhs: Vec<Rational> = (r..=2 * r - 2).map(|i| m.at(i)).collect();
            phi.extend(
                hankel_linsolve(&b, &rhs).map_err(|_| Error::Precondition("B(r-2) is singular".into()))?,
            );
        }
        Ok(phi)
    }
}

/// `x^r - sum_i phi_i x^i`.
pub fn recurrence_polynomial(phi: &[Rational]) -> RationalPolynomial {
    let mut coeffs: Vec<Rational> = phi.iter().map(|c| -c).collect();
    coeffs.push(Rational::one());
    RationalPolynomial::from_coeffs(coeffs)
}

/// Classifies `m` for the half-line problem as interior, boundary, or not
/// realizable.
pub fn stieltjes_classify(m: &MomentVector) -> StieltjesVerdict {
    let n = m.len();
    for j in 1..=n {
        let c = hankel(m, j).expect("j <= n");
        match psd_classify(&c) {
            PositivityClass::PositiveDefinite => continue,
            PositivityClass::Indefinite { direction } => {
                let value = c.quadratic_form(&direction);
                return StieltjesVerdict::NotRealizable {
                    index: j,
                    witness: StieltjesWitness::Indefinite { direction, value },
                };
            }
            PositivityClass::PositiveSemidefiniteSingular { .. } => {
                let phi = dependence_coefficients(m, j).expect("earlier Hankel matrices are definite");
                let r = phi.len();
                for k in 0..=n - r {
                    let forced: Rational = phi.iter().enumerate().map(|(i, p)| p * m.at(k + i)).sum();
                    let actual = m.at(r + k);
                    if forced != actual {
                        return StieltjesVerdict::NotRealizable {
                            index: j,
                            witness: StieltjesWitness::Recurrence { moment: r + k, forced, actual },
                        };
                    }
                }
                let g = recurrence_polynomial(&phi);
                let measure = StieltjesMeasure::from_support_polynomial(&g, m)
                    .expect("a singular positive semidefinite Hankel prefix determines its measure");
                return StieltjesVerdict::BRealizable { index: j, phi, measure };
            }
        }
    }
    StieltjesVerdict::IRealizable
}

fn require_interior(m: &MomentVector) -> Result<()> {
    for j in 1..=m.len() {
        if !psd_classify(&hankel(m, j)?).is_definite() {
            return Err(Error::Precondition(format!(
                "prefix is not interior for the half-line problem (C_{j} is not positive definite)"
            )));
        }
    }
    Ok(())
}

/// The polynomial whose roots carry the boundary measure extending
/// `m = m^(n-1)` with the smallest admissible `m_n`. For odd `n` it has the
/// factor `x`.
pub fn support_polynomial(m: &MomentVector, n: usize) -> Result<RationalPolynomial> {
    if n < 2 || m.len() + 1 < n {
        return Err(Error::Arity { needed: n.saturating_sub(1), available: m.len() });
    }
    let k = n / 2;
    if n.is_multiple_of(2) {
        let a = hankel(m, n - 2)?;
        let rhs: Vec<Rational> = (k..n).map(|i| m.at(i)).collect();
        let phi = hankel_linsolve(&a, &rhs).map_err(|_| Error::Precondition("A(k-1) is singular".into()))?;
        Ok(recurrence_polynomial(&phi))
    } else {
        let b = hankel(m, n - 2)?;
        let rhs: Vec<Rational> = (k + 1..n).map(|i| m.at(i)).collect();
        let phi = hankel_linsolve(&b, &rhs).map_err(|_| Error::Precondition("B(k-1) is singular".into()))?;
        let mut full = vec![Rational::zero()];
        full.extend(phi);
        Ok(recurrence_polynomial(&full))
    }
}

/// The smallest `m_n` keeping `(m, m_n)` a half-line moment vector, and the
/// unique measure realizing it. `m` must be an interior prefix.
pub fn minimal_stieltjes_extension(m: &MomentVector) -> Result<(Rational, StieltjesMeasure)> {
    let n = m.len() + 1;
    require_interior(m)?;
    if n == 1 {
        let g = RationalPolynomial::monomial(1);
        return Ok((Rational::zero(), StieltjesMeasure::from_support_polynomial(&g, m)?));
    }
    // det C_n is affine in m_n with positive slope det C_{n-2}
    let d0 = hankel(&m.extended(Rational::zero()), n)?.determinant();
    let d1 = hankel(&m.extended(int(1)), n)?.determinant();
    let slope = &d1 - &d0;
    if rational::sign(&slope) != Ordering::Greater {
        return Err(Error::InvariantViolation("det C_n does not increase with m_n".into()));
    }
    let next = -d0 / slope;
    let g = support_polynomial(m, n)?;
    let measure = StieltjesMeasure::from_support_polynomial(&g, m)?;
    Ok((next, measure))
}

//! Finitely supported probability measures, with rational atoms or with the
//! algebraic atoms that boundary measures of the half-line problem can have.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hankel::{solve_dense, solve_vandermonde};
use crate::moments::MomentVector;
use crate::poly::RationalPolynomial;
use crate::rational::{self, format_rational, int, Rational};
use crate::roots::{isolate_roots, AlgebraicNumber};

/// A probability measure `sum_i w_i delta_{x_i}` with rational atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AtomicMeasure {
    #[serde(with = "rational::serde_rational::vec")]
    atoms: Vec<Rational>,
    #[serde(with = "rational::serde_rational::vec")]
    weights: Vec<Rational>,
}

impl AtomicMeasure {
    /// Validates sorted distinct atoms and positive weights summing to 1.
    pub fn new(atoms: Vec<Rational>, weights: Vec<Rational>) -> Result<Self> {
        let m = Self { atoms, weights };
        m.validate()?;
        Ok(m)
    }

    /// Sorts the atoms (carrying weights along) and merges duplicates.
    pub fn from_unsorted(pairs: Vec<(Rational, Rational)>) -> Result<Self> {
        let mut pairs = pairs;
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut atoms: Vec<Rational> = Vec::new();
        let mut weights: Vec<Rational> = Vec::new();
        for (x, w) in pairs {
            if atoms.last() == Some(&x) {
                *weights.last_mut().expect("paired with atom") += w;
            } else {
                atoms.push(x);
                weights.push(w);
            }
        }
        Self::new(atoms, weights)
    }

    pub fn dirac(x: Rational) -> Self {
        Self { atoms: vec![x], weights: vec![int(1)] }
    }

    /// Equal weights on the given distinct points.
    pub fn uniform(points: &[Rational]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("uniform measure needs at least one point".into()));
        }
        let w = Rational::new(1.into(), points.len().into());
        Self::from_unsorted(points.iter().map(|p| (p.clone(), w.clone())).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.atoms.is_empty() || self.atoms.len() != self.weights.len() {
            return Err(Error::Domain("measure needs matching nonempty atoms and weights".into()));
        }
        if self.atoms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("atoms must be strictly increasing".into()));
        }
        if self.weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::Domain("weights must be positive".into()));
        }
        if self.weights.iter().sum::<Rational>() != int(1) {
            return Err(Error::Domain("weights must sum to 1".into()));
        }
        Ok(())
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `E[X^k]`.
    pub fn moment(&self, k: usize) -> Rational {
        self.atoms
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * rational::pow(x, k))
            .sum()
    }

    /// `(m_1, ..., m_n)`.
    pub fn moments(&self, n: usize) -> MomentVector {
        MomentVector::new((1..=n).map(|k| self.moment(k)).collect())
    }

    /// `E[p(X)]`.
    pub fn expectation(&self, p: &RationalPolynomial) -> Rational {
        self.atoms.iter().zip(&self.weights).map(|(x, w)| w * p.eval(x)).sum()
    }

    /// Image under `x -> c x`.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Self::from_unsorted(
            self.atoms
                .iter()
                .zip(&self.weights)
                .map(|(x, w)| (x * c, w.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for AtomicMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .atoms
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| format!("{}*delta({})", format_rational(w), format_rational(x)))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Recovers the measure on `points` matching `m_0, ..., m_{p-1}` (and any
/// further moments supplied). Zero weights are dropped; a negative weight is
/// an invariant violation because callers only pass supports of genuine
/// realizing measures.
pub fn recover_measure(points: &[Rational], m: &MomentVector) -> Result<AtomicMeasure> {
    let target = m.with_m0();
    let weights = solve_vandermonde(points, &target)?;
    let mut pairs = Vec::new();
    for (x, w) in points.iter().zip(weights) {
        match rational::sign(&w) {
            Ordering::Greater => pairs.push((x.clone(), w)),
            Ordering::Equal => {}
            Ordering::Less => {
                return Err(Error::InvariantViolation(format!(
                    "negative recovered weight {} at {}",
                    format_rational(&w),
                    format_rational(x)
                )))
            }
        }
    }
    AtomicMeasure::from_unsorted(pairs)
}

/// Power sums `p_s = sum_i y_i^s` over the roots of a monic polynomial, for
/// `s = 0..count`, by Newton's identities.
pub fn power_sums(monic: &RationalPolynomial, count: usize) -> Vec<Rational> {
    let r = monic.degree().unwrap_or(0);
    let c = monic.coeffs();
    let mut p: Vec<Rational> = Vec::with_capacity(count);
    for s in 0..count {
        if s == 0 {
            p.push(int(r as i64));
            continue;
        }
        let mut acc = Rational::zero();
        for i in 1..=s.min(r) {
            if i < s {
                acc -= &c[r - i] * &p[s - i];
            } else {
                acc -= &c[r - i] * int(s as i64);
            }
        }
        p.push(acc);
    }
    p
}

/// A measure whose atoms are the (distinct, real, nonnegative) roots of a
/// rational polynomial `g`. The weight at atom `y` is `W(y)` for a rational
/// polynomial `W` of degree below `deg g`, so all moments stay rational.
#[derive(Debug, Clone)]
pub struct StieltjesMeasure {
    support_polynomial: RationalPolynomial,
    atoms: Vec<AlgebraicNumber>,
    weight_polynomial: RationalPolynomial,
}

impl StieltjesMeasure {
    /// The unique measure on the roots of `g` matching `m_0 .. m_{r-1}`,
    /// `r = deg g`.
    pub fn from_support_polynomial(g: &RationalPolynomial, m: &MomentVector) -> Result<Self> {
        let g = g.monic();
        let r = g.degree().unwrap_or(0);
        if r == 0 {
            return Err(Error::Domain("support polynomial must be nonconstant".into()));
        }
        let target = m.with_m0();
        if target.len() < r {
            return Err(Error::Arity { needed: r - 1, available: m.len() });
        }
        let atoms = isolate_roots(&g)?;
        if atoms.len() != r {
            return Err(Error::InvariantViolation(format!(
                "support polynomial {g} has {} nonnegative roots, expected {r}",
                atoms.len()
            )));
        }
        let p = power_sums(&g, 2 * r);
        let rows: Vec<Vec<Rational>> =
            (0..r).map(|k| (0..r).map(|j| p[j + k].clone()).collect()).collect();
        let w = solve_dense(rows, target[..r].to_vec())?;
        let measure = Self {
            support_polynomial: g,
            atoms,
            weight_polynomial: RationalPolynomial::from_coeffs(w),
        };
        for y in &measure.atoms {
            if y.sign_of(&measure.weight_polynomial).is_le() {
                return Err(Error::InvariantViolation("nonpositive weight in boundary measure".into()));
            }
        }
        Ok(measure)
    }

    pub fn support_polynomial(&self) -> &RationalPolynomial {
        &self.support_polynomial
    }

    pub fn weight_polynomial(&self) -> &RationalPolynomial {
        &self.weight_polynomial
    }

    pub fn atoms(&self) -> &[AlgebraicNumber] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.atoms.first().and_then(|a| a.as_rational()).is_some_and(|r| r.is_zero())
    }

    /// `(m_1, ..., m_n)`, computed from power sums of the roots.
    pub fn moments(&self, n: usize) -> MomentVector {
        let w = self.weight_polynomial.coeffs();
        let p = power_sums(&self.support_polynomial, n + w.len());
        MomentVector::new(
            (1..=n)
                .map(|k| w.iter().enumerate().map(|(j, wj)| wj * &p[j + k]).sum())
                .collect(),
        )
    }

    /// Rational weights, when every atom is rational.
    pub fn as_rational(&self) -> Option<AtomicMeasure> {
        let atoms: Option<Vec<Rational>> =
            self.atoms.iter().map(|a| a.as_rational().cloned()).collect();
        let atoms = atoms?;
        let weights = atoms.iter().map(|x| self.weight_polynomial.eval(x)).collect();
        AtomicMeasure::new(atoms, weights).ok()
    }
}

impl fmt::Display for StieltjesMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.as_rational() {
            return write!(f, "{m}");
        }
        let atoms: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(
            f,
            "weights W(y) = {} at the roots y of {} ({})",
            self.weight_polynomial,
            self.support_polynomial,
            atoms.join(", ")
        )
    }
}

/// `true` when `m` matches the leading moments of `measure` exactly.
pub fn matches_moments(measure: &AtomicMeasure, m: &MomentVector) -> bool {
    (1..=m.len()).all(|k| measure.moment(k) == m.at(k))
}

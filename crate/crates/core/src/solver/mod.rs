//! Realizability on the nonnegative integers (or a general grid) by the
//! inductive procedure: each prefix is interior, boundary, or not
//! realizable, and the next moment is tested against the minimizing
//! polynomial or the value forced by the boundary measure.

mod explicit;
mod recursion;

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::measure::{recover_measure, AtomicMeasure};
use crate::moments::MomentVector;
use crate::poly::{lform_eval, RationalPolynomial};
use crate::rational::{self, format_rational, int, Rational};

pub use explicit::{breakpoints, explicit_min_poly, Breakpoints};
pub use recursion::{extend_to_candidate, reduce_moments, support_set};

/// How minimizing polynomials are built for `n = 4, 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Closed forms for `n <= 5`, recursion above.
    #[default]
    Explicit,
    /// The recursion for every `n >= 4`.
    Recursive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Soft limit on the number of moments; the recursion fans out like
    /// `floor(n/2)!`.
    pub n_max: usize,
    pub strategy: Strategy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { n_max: 12, strategy: Strategy::Explicit }
    }
}

/// The minimizing polynomial and its value `L_P(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinPolyCertificate {
    pub polynomial: RationalPolynomial,
    #[serde(with = "rational::serde_rational")]
    pub value: Rational,
}

/// The unique realizing measure of a boundary vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCertificate {
    pub measure: AtomicMeasure,
    /// Nonnegative on the grid, of degree `n` or `n - 1`, with `L_P(m) = 0`.
    pub polynomial: RationalPolynomial,
    /// The first prefix length at which the vector reached the boundary.
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NegativityWitness {
    /// `polynomial` is nonnegative on the grid but `L_P(m^(index)) < 0`.
    Negative {
        index: usize,
        polynomial: RationalPolynomial,
        #[serde(with = "rational::serde_rational")]
        value: Rational,
    },
    /// The prefix `m^(index - 1)` is a boundary vector, so `m_index` is
    /// forced by `L_{x^shift P}(m) = 0`, and the supplied value differs.
    ForcedMismatch {
        index: usize,
        polynomial: RationalPolynomial,
        shift: usize,
        #[serde(with = "rational::serde_rational")]
        forced: Rational,
        #[serde(with = "rational::serde_rational")]
        actual: Rational,
    },
}

impl NegativityWitness {
    pub fn index(&self) -> usize {
        match self {
            NegativityWitness::Negative { index, .. } | NegativityWitness::ForcedMismatch { index, .. } => *index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "certificate")]
pub enum Verdict {
    #[serde(rename = "I")]
    IRealizable(MinPolyCertificate),
    #[serde(rename = "B")]
    BRealizable(BoundaryCertificate),
    #[serde(rename = "Not")]
    NotRealizable(NegativityWitness),
}

impl Verdict {
    pub fn is_realizable(&self) -> bool {
        !matches!(self, Verdict::NotRealizable(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::IRealizable(_) => "I",
            Verdict::BRealizable(_) => "B",
            Verdict::NotRealizable(_) => "Not",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::IRealizable(c) => write!(
                f,
                "I-realizable: L_P(m) = {} > 0 for P = {}",
                format_rational(&c.value),
                c.polynomial
            ),
            Verdict::BRealizable(c) => write!(
                f,
                "B-realizable (boundary from m_{}): unique measure {}; L_P(m) = 0 for P = {}",
                c.index, c.measure, c.polynomial
            ),
            Verdict::NotRealizable(NegativityWitness::Negative { index, polynomial, value }) => write!(
                f,
                "not realizable: L_P(m^({index})) = {} < 0 for P = {polynomial}",
                format_rational(value)
            ),
            Verdict::NotRealizable(NegativityWitness::ForcedMismatch { index, polynomial, shift, forced, actual }) => {
                write!(
                    f,
                    "not realizable: m_{index} is forced to {} by x^{shift} ({polynomial}), got {}",
                    format_rational(forced),
                    format_rational(actual)
                )
            }
        }
    }
}

fn check_grid(grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    if let GridSpec::Nn { .. } = grid {
        return Err(Error::Domain(
            "bounded grids {0..N} are decided by the finite condition oracle, not by classify".into(),
        ));
    }
    Ok(())
}

/// The minimizing polynomial `P_n` for a vector whose prefix `m^(n-1)` is
/// interior on the grid. Only `m_1 .. m_{n-1}` are read.
pub fn min_poly(m: &MomentVector, n: usize, grid: &GridSpec, strategy: Strategy) -> Result<RationalPolynomial> {
    check_grid(grid)?;
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let m = m.prefix(n - 1)?;
    match n {
        1 => Ok(RationalPolynomial::monomial(1)),
        2 => {
            let (l, u) = grid.bracket(&m.at(1))?;
            Ok(RationalPolynomial::from_roots(&[l, u], int(1)))
        }
        3 => {
            let m1 = m.at(1);
            if rational::sign(&m1) != Ordering::Greater {
                return Err(Error::Precondition("m_1 must be positive".into()));
            }
            let (l, u) = grid.bracket(&(m.at(2) / m1))?;
            if l.is_zero() {
                return Err(Error::Precondition("m_2 / m_1 must exceed the first positive grid point".into()));
            }
            Ok(RationalPolynomial::from_roots(&[Rational::zero(), l, u], int(1)))
        }
        4 | 5 if strategy == Strategy::Explicit => explicit_min_poly(&m, n, grid),
        _ => {
            let support = support_set(&m, n, grid)?;
            extend_to_candidate(&support, n, grid)
        }
    }
}

/// The smallest `m_n` making `(m, m_n)` realizable, and the unique measure
/// realizing that extension. `m = m^(n-1)` must be interior.
pub fn minimal_extension(m: &MomentVector, grid: &GridSpec, strategy: Strategy) -> Result<(Rational, AtomicMeasure)> {
    let n = m.len() + 1;
    let p = min_poly(m, n, grid, strategy)?;
    let next = -lform_eval(&p, &m.extended(Rational::zero()))?;
    let roots = p.roots().expect("minimizing polynomials carry roots");
    let mu = recover_measure(roots, m)?;
    if mu.moment(n) != next {
        return Err(Error::InvariantViolation("recovered measure misses the extension".into()));
    }
    Ok((next, mu))
}

/// The `m_n` forced by `L_{x^i P}(m) = 0`, where `P` has degree `n - i`.
pub fn forced_extension(m: &MomentVector, p: &RationalPolynomial, i: usize) -> Result<Rational> {
    let q = p.shift_up(i);
    let n = q.degree().ok_or_else(|| Error::Domain("zero polynomial".into()))?;
    if n == 0 {
        return Err(Error::Domain("constant polynomial forces nothing".into()));
    }
    let base = m.prefix(n - 1)?.extended(Rational::zero());
    Ok(-lform_eval(&q, &base)? / q.leading())
}

enum Prefix {
    Interior(MinPolyCertificate),
    Boundary(BoundaryCertificate),
}

/// A polynomial of degree `j` (else `j - 1`) with an admissible pattern
/// vanishing on the measure's support.
fn boundary_polynomial(mu: &AtomicMeasure, j: usize, grid: &GridSpec) -> Result<RationalPolynomial> {
    match extend_to_candidate(mu.atoms(), j, grid) {
        Ok(p) => Ok(p),
        Err(Error::Domain(_)) => extend_to_candidate(mu.atoms(), j - 1, grid),
        Err(e) => Err(e),
    }
}

pub fn classify(m: &MomentVector, grid: &GridSpec) -> Result<Verdict> {
    classify_with(m, grid, &SolverConfig::default())
}

/// Decides realizability of `m` on the grid.
///
/// Errors are reserved for bad input (empty vector, bounded grid, `n` above
/// the limit), explicit grids too short for the computation, and internal
/// invariant failures.
pub fn classify_with(m: &MomentVector, grid: &GridSpec, config: &SolverConfig) -> Result<Verdict> {
    check_grid(grid)?;
    let n = m.len();
    if n == 0 {
        return Err(Error::Domain("at least one moment is required".into()));
    }
    if n > config.n_max {
        return Err(Error::LimitExceeded { n, limit: config.n_max });
    }
    let x = RationalPolynomial::monomial(1);
    let m1 = m.at(1);
    let mut state = match rational::sign(&m1) {
        Ordering::Greater => Prefix::Interior(MinPolyCertificate { polynomial: x, value: m1 }),
        Ordering::Equal => Prefix::Boundary(BoundaryCertificate {
            measure: AtomicMeasure::dirac(Rational::zero()),
            polynomial: x,
            index: 1,
        }),
        Ordering::Less => {
            return Ok(Verdict::NotRealizable(NegativityWitness::Negative { index: 1, polynomial: x, value: m1 }))
        }
    };
    for j in 2..=n {
        let mj = m.prefix(j)?;
        state = match state {
            Prefix::Interior(_) => {
                let p = min_poly(m, j, grid, config.strategy)?;
                let value = lform_eval(&p, &mj)?;
                match rational::sign(&value) {
                    Ordering::Greater => Prefix::Interior(MinPolyCertificate { polynomial: p, value }),
                    Ordering::Equal => {
                        let roots = p.roots().expect("minimizing polynomials carry roots");
                        let measure = recover_measure(roots, &mj)?;
                        Prefix::Boundary(BoundaryCertificate { measure, polynomial: p, index: j })
                    }
                    Ordering::Less => {
                        return Ok(Verdict::NotRealizable(NegativityWitness::Negative {
                            index: j,
                            polynomial: p,
                            value,
                        }))
                    }
                }
            }
            Prefix::Boundary(cert) => {
                let deg = cert.polynomial.degree().expect("nonzero");
                let shift = j - deg;
                let forced = forced_extension(m, &cert.polynomial, shift)?;
                let actual = m.at(j);
                if forced != actual {
                    return Ok(Verdict::NotRealizable(NegativityWitness::ForcedMismatch {
                        index: j,
                        polynomial: cert.polynomial,
                        shift,
                        forced,
                        actual,
                    }));
                }
                let polynomial = boundary_polynomial(&cert.measure, j, grid)?;
                Prefix::Boundary(BoundaryCertificate { polynomial, ..cert })
            }
        };
    }
    Ok(match state {
        Prefix::Interior(c) => Verdict::IRealizable(c),
        Prefix::Boundary(c) => Verdict::BRealizable(c),
    })
}

#[cfg(test)]
mod tests;

//! Ground truth for testing: the finite condition set deciding
//! realizability on `{0, ..., N}`, the counterexample fixtures showing no
//! condition can be dropped, and independent certificate checks.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{polynomial_pattern_check, GridSpec, RootPattern};
use crate::measure::AtomicMeasure;
use crate::moments::MomentVector;
use crate::poly::{lform_eval, RationalPolynomial};
use crate::rational::{self, int, Rational};
use crate::solver::{NegativityWitness, Verdict};

fn pairs_from(k: usize, from: u64, top: u64, out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
    if k == 0 {
        out.push(cur.clone());
        return;
    }
    // the remaining k - 1 pairs need 2(k - 1) points above this one
    let mut a = from;
    while a + 1 + 2 * (k as u64 - 1) <= top {
        cur.push(a);
        cur.push(a + 1);
        pairs_from(k - 1, a + 2, top, out, cur);
        cur.truncate(cur.len() - 2);
        a += 1;
    }
}

fn patterns_up_to(n: usize, top: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        pairs_from(n / 2, 0, top, &mut out, &mut Vec::new());
    } else {
        pairs_from(n / 2, 1, top, &mut out, &mut vec![0]);
    }
    out
}

fn to_pattern(alpha: &[u64]) -> RootPattern {
    let alpha = alpha.iter().map(|&a| int(a as i64)).collect();
    RootPattern::new(alpha, &GridSpec::Nn0).expect("enumerated patterns are admissible")
}

/// Every admissible integer pattern of length `n` with largest entry `<= N`,
/// in lexicographic order.
pub fn enumerate_patterns(n: usize, big_n: u64) -> Result<Vec<RootPattern>> {
    if big_n < n as u64 {
        return Err(Error::Domain(format!("need N >= n, got N = {big_n} < n = {n}")));
    }
    Ok(patterns_up_to(n, big_n).iter().map(|a| to_pattern(a)).collect())
}

/// The polynomials `(N - x) P_alpha` with `alpha` of length `n - 1` and
/// largest entry `<= N - 1`.
pub fn enumerate_upper_family(n: usize, big_n: u64) -> Result<Vec<RationalPolynomial>> {
    if big_n < n as u64 || n == 0 {
        return Err(Error::Domain(format!("need N >= n >= 1, got N = {big_n}, n = {n}")));
    }
    let r = RationalPolynomial::from_coeffs(vec![int(big_n as i64), int(-1)]);
    Ok(patterns_up_to(n - 1, big_n - 1)
        .iter()
        .map(|a| &r * &to_pattern(a).polynomial())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub polynomial: RationalPolynomial,
    #[serde(with = "rational::serde_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Violation>,
}

/// Realizability on `{0, ..., N}`: every `L_P(m)` over the finite families
/// must be nonnegative. Stops at the first violation.
#[allow(non_snake_case)]
pub fn realizable_on_NN(m: &MomentVector, big_n: u64) -> Result<ConditionReport> {
    let n = m.len();
    let check = |p: RationalPolynomial| -> Result<Option<Violation>> {
        let value = lform_eval(&p, m)?;
        Ok(value.is_negative().then_some(Violation { polynomial: p, value }))
    };
    for pattern in enumerate_patterns(n, big_n)? {
        if let Some(v) = check(pattern.polynomial())? {
            return Ok(ConditionReport { satisfied: false, first_violation: Some(v) });
        }
    }
    for q in enumerate_upper_family(n, big_n)? {
        if let Some(v) = check(q)? {
            return Ok(ConditionReport { satisfied: false, first_violation: Some(v) });
        }
    }
    Ok(ConditionReport { satisfied: true, first_violation: None })
}

/// The three families of non-realizable vectors that pass all but one
/// condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureCase {
    /// Last moment lowered by `1/(2n)`; `alpha` has length `n`.
    A,
    /// Next-to-last moment lowered by `1/(2(n-1))`; `alpha` has length `n - 1`.
    B,
    /// Last moment raised by a constant; `alpha` has length `n - 1`.
    C,
}

impl std::str::FromStr for FixtureCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(FixtureCase::A),
            "b" => Ok(FixtureCase::B),
            "c" => Ok(FixtureCase::C),
            other => Err(Error::Parse(format!("unknown fixture case {other:?}; use a, b or c"))),
        }
    }
}

/// A fixture built from the uniform measure on `alpha`, with constant 1 in
/// case C.
pub fn fixture(alpha: &RootPattern, case: FixtureCase, n: usize) -> Result<MomentVector> {
    fixture_with_constant(alpha, case, n, &int(1))
}

pub fn fixture_with_constant(alpha: &RootPattern, case: FixtureCase, n: usize, c: &Rational) -> Result<MomentVector> {
    let expected = match case {
        FixtureCase::A => n,
        FixtureCase::B | FixtureCase::C => n.saturating_sub(1),
    };
    if n < 2 || alpha.len() != expected {
        return Err(Error::Domain(format!(
            "case {case:?} with n = {n} needs a pattern of length {expected}, got {}",
            alpha.len()
        )));
    }
    if !c.is_positive() {
        return Err(Error::Domain("the case C constant must be positive".into()));
    }
    let v = AtomicMeasure::uniform(alpha.alpha())?.moments(n);
    let mut m = v.as_slice().to_vec();
    match case {
        FixtureCase::A => m[n - 1] -= Rational::new(1.into(), (2 * n).into()),
        FixtureCase::B => m[n - 2] -= Rational::new(1.into(), (2 * (n - 1)).into()),
        FixtureCase::C => m[n - 1] += c,
    }
    Ok(MomentVector::new(m))
}

/// Re-checks a verdict from scratch. Never errors: any failure is `false`.
pub fn verify_certificate(m: &MomentVector, verdict: &Verdict, grid: &GridSpec) -> bool {
    verify_inner(m, verdict, grid).unwrap_or(false)
}

fn verify_inner(m: &MomentVector, verdict: &Verdict, grid: &GridSpec) -> Result<bool> {
    let n = m.len();
    Ok(match verdict {
        Verdict::IRealizable(c) => {
            c.polynomial.degree() == Some(n)
                && polynomial_pattern_check(&c.polynomial, grid)
                && lform_eval(&c.polynomial, m)? == c.value
                && c.value.is_positive()
        }
        Verdict::BRealizable(c) => {
            let deg = c.polynomial.degree().unwrap_or(0);
            c.measure.validate().is_ok()
                && c.measure.atoms().iter().all(|x| grid.contains(x))
                && (1..=n).all(|k| c.measure.moment(k) == m.at(k))
                && (deg == n || deg + 1 == n)
                && polynomial_pattern_check(&c.polynomial, grid)
                && lform_eval(&c.polynomial, m)?.is_zero()
        }
        Verdict::NotRealizable(NegativityWitness::Negative { index, polynomial, value }) => {
            *index >= 1
                && *index <= n
                && polynomial.degree().is_some_and(|d| d >= 1 && d <= *index)
                && polynomial_pattern_check(polynomial, grid)
                && lform_eval(polynomial, &m.prefix(*index)?)? == *value
                && value.is_negative()
        }
        Verdict::NotRealizable(NegativityWitness::ForcedMismatch { index, polynomial, shift, forced, actual }) => {
            let Some(deg) = polynomial.degree() else {
                return Ok(false);
            };
            *index >= 2
                && *index <= n
                && *shift >= 1
                && deg + shift == *index
                && polynomial_pattern_check(polynomial, grid)
                && lform_eval(polynomial, &m.prefix(*index - 1)?)?.is_zero()
                && &m.at(*index) == actual
                && crate::solver::forced_extension(m, polynomial, *shift)? == *forced
                && forced != actual
        }
    })
}

//! Closed-form minimizing polynomials for `n <= 5`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::moments::MomentVector;
use crate::poly::RationalPolynomial;
use crate::rational::{int, Rational};
use crate::roots::{grid_bracket, isolate_roots, AlgebraicNumber, GridBracket};
use crate::stieltjes::support_polynomial;

use super::recursion::extend_to_candidate;

/// Intermediate quantities of the closed-form `n = 4, 5` construction.
#[derive(Debug, Clone)]
pub struct Breakpoints {
    /// Positive roots `y_1 < y_2` of the support polynomial.
    pub roots: Vec<AlgebraicNumber>,
    pub brackets: Vec<GridBracket>,
    pub t: (Rational, Rational),
    /// Grid floors of `t_1`, `t_2`.
    pub floors: (Rational, Rational),
}

fn ratio(m: &MomentVector, shift: usize, b: &GridBracket) -> Result<Rational> {
    let s = &b.lower + &b.upper;
    let p = &b.lower * &b.upper;
    let num = m.at(shift + 2) - &s * m.at(shift + 1) + &p * m.at(shift);
    let den = m.at(shift + 1) - &s * m.at(shift) + &p * m.at(shift - 1);
    if !den.is_positive() {
        return Err(Error::InvariantViolation("nonpositive denominator in t".into()));
    }
    Ok(num / den)
}

/// `None` when every atom of the half-line boundary measure is a grid point
/// (the two problems then coincide); otherwise the brackets and `t`, `T`
/// values for `n = 4` or `5`.
pub fn breakpoints(m: &MomentVector, n: usize, grid: &GridSpec) -> Result<Option<Breakpoints>> {
    if n != 4 && n != 5 {
        return Err(Error::Domain("closed forms exist for n = 4 and 5 only".into()));
    }
    let m = m.prefix(n - 1)?;
    let g = support_polynomial(&m, n)?;
    let all = isolate_roots(&g)?;
    if all.iter().all(|y| y.as_rational().is_some_and(|r| grid.contains(r))) {
        return Ok(None);
    }
    let roots: Vec<AlgebraicNumber> = all
        .into_iter()
        .filter(|y| y.as_rational().is_none_or(|r| !r.is_zero()))
        .collect();
    if roots.len() != 2 {
        return Err(Error::InvariantViolation(format!(
            "expected two positive support roots, found {}",
            roots.len()
        )));
    }
    let brackets = vec![grid_bracket(&roots[0], grid)?, grid_bracket(&roots[1], grid)?];
    let shift = n - 3;
    let t1 = ratio(&m, shift, &brackets[1])?;
    let t2 = ratio(&m, shift, &brackets[0])?;
    let floors = (grid.floor(&t1)?, grid.floor(&t2)?);
    Ok(Some(Breakpoints { roots, brackets, t: (t1, t2), floors }))
}

/// Minimizing polynomial for `n = 4` or `5` from the closed forms.
pub fn explicit_min_poly(m: &MomentVector, n: usize, grid: &GridSpec) -> Result<RationalPolynomial> {
    let Some(bp) = breakpoints(m, n, grid)? else {
        let g = support_polynomial(&m.prefix(n - 1)?, n)?;
        let atoms: Vec<Rational> =
            isolate_roots(&g)?.iter().map(|y| y.as_rational().cloned().expect("grid atoms")).collect();
        return extend_to_candidate(&atoms, n, grid);
    };
    let (t1, t2) = &bp.floors;
    let u1 = grid.above(t1)?;
    let mut roots = if t2 > &u1 {
        vec![t1.clone(), u1, t2.clone(), grid.above(t2)?]
    } else if t2 == &u1 {
        let a = grid.above(t2)?;
        let b = grid.above(&a)?;
        vec![t1.clone(), t2.clone(), a, b]
    } else {
        return Err(Error::InvariantViolation("T_2 < T_1 + 1".into()));
    };
    if n == 5 {
        if t1.is_zero() {
            return Err(Error::InvariantViolation("T_1 = 0 for n = 5".into()));
        }
        roots.insert(0, Rational::zero());
    }
    Ok(RationalPolynomial::from_roots(&roots, int(1)))
}

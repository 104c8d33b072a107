//! The recursive support computation for the minimal extension measure.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::measure::recover_measure;
use crate::moments::MomentVector;
use crate::poly::{lform_eval, RationalPolynomial};
use crate::rational::{format_rational, Rational};
use crate::roots::{grid_bracket, isolate_roots};
use crate::stieltjes::support_polynomial;

/// `M_i = c (m_{i+2} - (l+u) m_{i+1} + l u m_i)`, normalized so `M_0 = 1`.
///
/// These are the moments of `c (x - l)(x - u) dsigma` when `m` are the
/// moments of `sigma`. The result is two entries shorter than `m`.
pub fn reduce_moments(m: &MomentVector, pair: (&Rational, &Rational)) -> Result<MomentVector> {
    if m.len() < 2 {
        return Err(Error::Arity { needed: 2, available: m.len() });
    }
    let (l, u) = pair;
    let s = l + u;
    let p = l * u;
    let raw = |i: usize| m.at(i + 2) - &s * m.at(i + 1) + &p * m.at(i);
    let norm = raw(0);
    if !norm.is_positive() {
        return Err(Error::Precondition(format!(
            "reduction normalizer {} is not positive for the pair ({}, {})",
            format_rational(&norm),
            format_rational(l),
            format_rational(u)
        )));
    }
    Ok(MomentVector::new((1..=m.len() - 2).map(|i| raw(i) / &norm).collect()))
}

/// A monic degree-`n` polynomial with an admissible root pattern whose roots
/// include every point of `required`.
///
/// Uncovered points are paired greedily from the left with their grid
/// successor (predecessor when the successor is unavailable); for odd `n`
/// the root 0 is always included. Remaining roots are filled with adjacent
/// pairs starting two grid steps above the largest root used.
pub fn extend_to_candidate(required: &[Rational], n: usize, grid: &GridSpec) -> Result<RationalPolynomial> {
    let mut req = required.to_vec();
    req.sort();
    req.dedup();
    for p in &req {
        grid.require_member(p)?;
    }
    let no_fit = || {
        Error::Domain(format!(
            "no admissible degree-{n} pattern contains {{{}}}",
            req.iter().map(format_rational).collect::<Vec<_>>().join(", ")
        ))
    };
    if req.len() > n {
        return Err(no_fit());
    }
    let mut roots: Vec<Rational> = Vec::with_capacity(n);
    if n % 2 == 1 {
        roots.push(Rational::zero());
    }
    for p in &req {
        if roots.contains(p) {
            continue;
        }
        let succ = match grid.above(p) {
            Ok(s) if !roots.contains(&s) => Some(s),
            Ok(_) | Err(Error::GridExhausted(_)) | Err(Error::Domain(_)) => None,
            Err(e) => return Err(e),
        };
        let partner = match succ {
            Some(s) => s,
            None => match grid.predecessor(p)? {
                Some(q) if !roots.contains(&q) => q,
                _ => return Err(no_fit()),
            },
        };
        roots.push(p.clone());
        roots.push(partner);
    }
    if roots.len() > n {
        return Err(no_fit());
    }
    if roots.len() == n {
        roots.sort();
        return Ok(RationalPolynomial::from_roots(&roots, Rational::from_integer(1.into())));
    }
    let mut next = match roots.iter().max() {
        Some(top) => {
            let above = grid.above(top)?;
            grid.above(&above)?
        }
        None => Rational::zero(),
    };
    while roots.len() < n {
        let partner = grid.above(&next)?;
        roots.push(next);
        next = grid.above(&partner)?;
        roots.push(partner);
    }
    roots.sort();
    Ok(RationalPolynomial::from_roots(&roots, Rational::from_integer(1.into())))
}

/// The support of the minimal extension measure of `m = m^(n-1)`, which must
/// be interior on the grid.
pub fn support_set(m: &MomentVector, n: usize, grid: &GridSpec) -> Result<Vec<Rational>> {
    let m = m.prefix(n - 1)?;
    match n {
        0 | 1 => Err(Error::Domain("support sets are defined for n >= 2".into())),
        2 => {
            let m1 = m.at(1);
            if grid.contains(&m1) {
                Ok(vec![m1])
            } else {
                let (l, u) = grid.bracket(&m1)?;
                Ok(vec![l, u])
            }
        }
        3 => {
            let m1 = m.at(1);
            if !m1.is_positive() {
                return Err(Error::Precondition("m_1 must be positive".into()));
            }
            let y = m.at(2) / m1;
            if grid.contains(&y) {
                Ok(vec![Rational::zero(), y])
            } else {
                let (l, u) = grid.bracket(&y)?;
                Ok(vec![Rational::zero(), l, u])
            }
        }
        _ => {
            let g = support_polynomial(&m, n)?;
            let ys = isolate_roots(&g)?;
            let on_grid: Option<Vec<Rational>> = ys
                .iter()
                .map(|y| y.as_rational().filter(|r| grid.contains(r)).cloned())
                .collect();
            if let Some(points) = on_grid {
                return Ok(points);
            }
            let candidates: Vec<_> = ys
                .iter()
                .filter(|y| y.cmp_rational(&Rational::zero()) == Ordering::Greater)
                .collect();
            let mut best: Option<(Rational, RationalPolynomial)> = None;
            let mut exhausted = None;
            for y in candidates {
                match branch(&m, n, grid, y) {
                    Ok(q) => {
                        let value = lform_eval(&q, &m.extended(Rational::zero()))?;
                        if best.as_ref().is_none_or(|(v, _)| &value < v) {
                            best = Some((value, q));
                        }
                    }
                    Err(e @ Error::GridExhausted(_)) => exhausted = Some(e),
                    Err(Error::LimitExceeded { n, limit }) => return Err(Error::LimitExceeded { n, limit }),
                    Err(_) => {}
                }
            }
            let Some((_, q)) = best else {
                return Err(exhausted.unwrap_or_else(|| {
                    Error::InvariantViolation(format!("every reduction branch was rejected at n = {n}"))
                }));
            };
            let roots = q.roots().expect("candidates are built from roots");
            let mu = recover_measure(roots, &m)?;
            Ok(mu.atoms().to_vec())
        }
    }
}

/// One reduction branch: bracket `y`, reduce, recurse, and build `Q_l`.
fn branch(
    m: &MomentVector,
    n: usize,
    grid: &GridSpec,
    y: &crate::roots::AlgebraicNumber,
) -> Result<RationalPolynomial> {
    let b = grid_bracket(y, grid)?;
    let reduced = reduce_moments(m, (&b.lower, &b.upper))?;
    let inner = support_set(&reduced, n - 2, grid)?;
    if inner.iter().any(|p| p == &b.lower || p == &b.upper) {
        return Err(Error::Domain("reduced support meets the bracketing pair".into()));
    }
    let mut required = inner;
    required.push(b.lower);
    required.push(b.upper);
    extend_to_candidate(&required, n, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::AtomicMeasure;
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn reduce_examples() {
        let mu = AtomicMeasure::uniform(&ints(&[0, 1, 3])).unwrap();
        let m = mu.moments(4);
        let reduced = reduce_moments(&m, (&int(0), &int(1))).unwrap();
        assert_eq!(reduced.at(1), int(3));
        // only the atom 3 survives the weight (x)(x - 1)
        assert_eq!(reduced, MomentVector::new(ints(&[3, 9])));
        let degenerate = AtomicMeasure::uniform(&ints(&[2, 3])).unwrap().moments(3);
        assert!(matches!(
            reduce_moments(&degenerate, (&int(2), &int(3))),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reduce_matches_weighted_measure() {
        let mu = AtomicMeasure::new(ints(&[0, 2, 5, 7]), vec![frac(1, 8), frac(1, 4), frac(1, 2), frac(1, 8)])
            .unwrap();
        let m = mu.moments(6);
        let (l, u) = (int(3), int(4));
        let dens: Vec<(Rational, Rational)> = mu
            .atoms()
            .iter()
            .zip(mu.weights())
            .map(|(x, w)| (x.clone(), w * (x - &l) * (x - &u)))
            .collect();
        let total: Rational = dens.iter().map(|(_, w)| w.clone()).sum();
        let sigma =
            AtomicMeasure::from_unsorted(dens.into_iter().map(|(x, w)| (x, w / &total)).collect()).unwrap();
        assert_eq!(reduce_moments(&m, (&l, &u)).unwrap(), sigma.moments(4));
    }

    #[test]
    fn candidate_examples() {
        let g = GridSpec::Nn0;
        let p = extend_to_candidate(&ints(&[0, 1, 3]), 4, &g).unwrap();
        assert_eq!(p.roots().unwrap(), &ints(&[0, 1, 3, 4])[..]);
        let p = extend_to_candidate(&ints(&[1, 2]), 2, &g).unwrap();
        assert_eq!(p.roots().unwrap(), &ints(&[1, 2])[..]);
        let p = extend_to_candidate(&ints(&[0, 2, 3]), 5, &g).unwrap();
        assert_eq!(p.roots().unwrap(), &ints(&[0, 2, 3, 5, 6])[..]);
        assert!(extend_to_candidate(&ints(&[1, 3, 5]), 4, &g).is_err());
        let top = GridSpec::lattice(&int(1), 4).unwrap();
        let p = extend_to_candidate(&ints(&[4]), 2, &top).unwrap();
        assert_eq!(p.roots().unwrap(), &ints(&[3, 4])[..]);
    }

    #[test]
    fn support_examples() {
        let g = GridSpec::Nn0;
        assert_eq!(support_set(&MomentVector::from_ratios(&[(3, 2)]), 2, &g).unwrap(), ints(&[1, 2]));
        assert_eq!(
            support_set(&MomentVector::from_ratios(&[(3, 2), (5, 2)]), 3, &g).unwrap(),
            ints(&[0, 1, 2])
        );
        assert_eq!(
            support_set(&MomentVector::from_ratios(&[(4, 3), (10, 3), (28, 3)]), 4, &g).unwrap(),
            ints(&[0, 1, 3])
        );
    }
}

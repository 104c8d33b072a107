//! Exact real-root isolation with Sturm sequences, and grid bracketing of
//! the roots found.
//!
//! Roots are never approximated by floating point. An irrational root is
//! carried as its square-free defining polynomial plus an isolating interval
//! `(lower, upper]`; every comparison against a rational is settled by exact
//! sign evaluations and Sturm counts.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::poly::RationalPolynomial;
use crate::rational::{self, format_rational, from_bigint, int, Rational};

/// A Sturm sequence together with integer forms used for fast sign counts.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<RationalPolynomial>,
    ints: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn polys(&self) -> &[RationalPolynomial] {
        &self.polys
    }

    /// Number of sign changes in the chain evaluated at `x` (zeros skipped).
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut prev = Ordering::Equal;
        for ints in &self.ints {
            let s = RationalPolynomial::sign_at_fast(ints, x);
            if s == Ordering::Equal {
                continue;
            }
            if prev != Ordering::Equal && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Sturm sequence of the square-free part of `p`.
pub fn sturm_chain(p: &RationalPolynomial) -> Result<SturmChain> {
    if p.is_zero() {
        return Err(Error::Domain("Sturm sequence of the zero polynomial".into()));
    }
    let q = p.square_free();
    let mut polys = vec![q.clone()];
    let dq = q.derivative();
    if !dq.is_zero() {
        polys.push(dq);
        loop {
            let n = polys.len();
            let r = polys[n - 2].rem(&polys[n - 1])?;
            if r.is_zero() {
                break;
            }
            polys.push(-&r);
        }
    }
    let ints = polys.iter().map(|p| p.primitive_integer()).collect();
    Ok(SturmChain { polys, ints })
}

/// A real algebraic number: either an exact rational, or an irrational root
/// of a square-free polynomial isolated in `(lower, upper]`.
#[derive(Debug, Clone)]
pub enum AlgebraicNumber {
    Rational(Rational),
    Irrational(IsolatedRoot),
}

#[derive(Debug, Clone)]
pub struct IsolatedRoot {
    poly: RationalPolynomial,
    ints: Vec<BigInt>,
    chain: SturmChain,
    lower: Rational,
    upper: Rational,
}

impl IsolatedRoot {
    pub fn polynomial(&self) -> &RationalPolynomial {
        &self.poly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lower, &self.upper)
    }

    fn sign_at(&self, x: &Rational) -> Ordering {
        RationalPolynomial::sign_at_fast(&self.ints, x)
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        let mid = (&self.lower + &self.upper) / int(2);
        let su = self.sign_at(&self.upper);
        let sm = self.sign_at(&mid);
        debug_assert!(sm != Ordering::Equal && su != Ordering::Equal, "irrational root hit exactly");
        if sm != su {
            self.lower = mid;
        } else {
            self.upper = mid;
        }
    }

    /// Compares the root with a rational. Never `Equal`: the root is irrational.
    pub fn cmp_rational(&self, c: &Rational) -> Ordering {
        if c <= &self.lower {
            return Ordering::Greater;
        }
        if c >= &self.upper {
            return Ordering::Less;
        }
        if self.chain.count(&self.lower, c) == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl AlgebraicNumber {
    pub fn rational(r: Rational) -> Self {
        AlgebraicNumber::Rational(r)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            AlgebraicNumber::Rational(r) => Some(r),
            AlgebraicNumber::Irrational(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Rational bounds `(a, b)` with `a <= self <= b`.
    pub fn bounds(&self) -> (Rational, Rational) {
        match self {
            AlgebraicNumber::Rational(r) => (r.clone(), r.clone()),
            AlgebraicNumber::Irrational(root) => (root.lower.clone(), root.upper.clone()),
        }
    }

    pub fn refine(&mut self) {
        if let AlgebraicNumber::Irrational(root) = self {
            root.refine();
        }
    }

    pub fn cmp_rational(&self, c: &Rational) -> Ordering {
        match self {
            AlgebraicNumber::Rational(r) => r.cmp(c),
            AlgebraicNumber::Irrational(root) => root.cmp_rational(c),
        }
    }

    /// Exact sign of `w(self)`.
    pub fn sign_of(&self, w: &RationalPolynomial) -> Ordering {
        match self {
            AlgebraicNumber::Rational(r) => w.sign_at(r),
            AlgebraicNumber::Irrational(root) => {
                if w.is_zero() {
                    return Ordering::Equal;
                }
                let g = root.poly.gcd(w);
                if g.degree().unwrap_or(0) > 0 {
                    let gc = sturm_chain(&g).expect("nonzero gcd");
                    if gc.count(&root.lower, &root.upper) == 1 {
                        return Ordering::Equal;
                    }
                }
                let wc = sturm_chain(w).expect("nonzero polynomial");
                let mut r = root.clone();
                while wc.count(&r.lower, &r.upper) > 0 || w.sign_at(&r.upper).is_eq() {
                    r.refine();
                }
                w.sign_at(&r.upper)
            }
        }
    }

    /// The value truncated to `digits` decimal places, produced by exact
    /// refinement. For display only.
    pub fn approx_decimal(&self, digits: usize) -> String {
        let scale = from_bigint(num_traits::pow(BigInt::from(10), digits));
        let truncated = match self {
            AlgebraicNumber::Rational(r) => rational::floor(&(r * &scale)),
            AlgebraicNumber::Irrational(root) => {
                let mut r = root.clone();
                loop {
                    let lo = rational::floor(&(&r.lower * &scale));
                    if lo == rational::floor(&(&r.upper * &scale)) {
                        break lo;
                    }
                    r.refine();
                }
            }
        };
        let neg = truncated.is_negative();
        let digits_str = truncated.abs().to_string();
        let padded = format!("{:0>width$}", digits_str, width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (AlgebraicNumber::Rational(a), AlgebraicNumber::Rational(b)) => a == b,
            (AlgebraicNumber::Irrational(a), AlgebraicNumber::Irrational(b)) => {
                // both are isolated roots of the same square-free polynomial
                a.poly == b.poly && a.lower < b.upper && b.lower < a.upper
            }
            _ => false,
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicNumber::Rational(r) => write!(f, "{}", format_rational(r)),
            AlgebraicNumber::Irrational(_) => write!(f, "~{}", self.approx_decimal(6)),
        }
    }
}

fn cauchy_bound(monic: &RationalPolynomial) -> Rational {
    let deg = monic.degree().unwrap_or(0);
    let max = monic.coeffs()[..deg]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    from_bigint(rational::floor(&max)) + int(2)
}

/// All distinct real roots `>= 0` of `p`, sorted increasingly.
///
/// Rational roots come back as [`AlgebraicNumber::Rational`]; an
/// `Irrational` entry is guaranteed irrational.
pub fn isolate_roots(p: &RationalPolynomial) -> Result<Vec<AlgebraicNumber>> {
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let q = p.square_free();
    if q.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(&q)?;
    let ints = q.primitive_integer();
    let lead = ints.last().expect("nonconstant").abs();
    let mut found = Vec::new();
    if q.eval(&Rational::zero()).is_zero() {
        found.push(AlgebraicNumber::Rational(Rational::zero()));
    }
    let bound = cauchy_bound(&q);
    let mut stack = vec![(Rational::zero(), bound)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        match chain.count(&lo, &hi) {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    let lead_r = from_bigint(lead.clone());
    for (mut lo, mut hi) in isolated {
        // a rational root of the primitive form has the shape z / lead
        let mut exact = None;
        loop {
            if RationalPolynomial::sign_at_fast(&ints, &hi).is_eq() {
                exact = Some(hi.clone());
                break;
            }
            if (&hi - &lo) * &lead_r < int(1) {
                let z = rational::floor(&(&hi * &lead_r));
                let cand = Rational::new(z, lead.clone());
                if cand > lo && RationalPolynomial::sign_at_fast(&ints, &cand).is_eq() {
                    exact = Some(cand);
                }
                break;
            }
            let mid = (&lo + &hi) / int(2);
            let sm = RationalPolynomial::sign_at_fast(&ints, &mid);
            if sm.is_eq() {
                exact = Some(mid);
                break;
            }
            if sm != RationalPolynomial::sign_at_fast(&ints, &hi) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        found.push(match exact {
            Some(r) => AlgebraicNumber::Rational(r),
            None => AlgebraicNumber::Irrational(IsolatedRoot {
                poly: q.clone(),
                ints: ints.clone(),
                chain: chain.clone(),
                lower: lo,
                upper: hi,
            }),
        });
    }
    found.sort_by(|a, b| a.bounds().0.cmp(&b.bounds().0));
    Ok(found)
}

/// `l(y)` and `u(y)`: the consecutive grid points with `l(y) <= y < u(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridBracket {
    pub lower: Rational,
    pub upper: Rational,
    /// `y` is itself a grid point (then `lower == y`).
    pub member: bool,
}

/// Brackets `y` between consecutive grid points using exact comparisons only.
pub fn grid_bracket(y: &AlgebraicNumber, grid: &GridSpec) -> Result<GridBracket> {
    match y {
        AlgebraicNumber::Rational(r) => {
            let (lower, upper) = grid.bracket(r)?;
            Ok(GridBracket { member: &lower == r, lower, upper })
        }
        AlgebraicNumber::Irrational(root) => {
            if root.cmp_rational(&Rational::zero()) == Ordering::Less {
                return Err(Error::Domain("root lies below the grid".into()));
            }
            let lo_idx = grid.floor_index(&root.lower.clone().max(Rational::zero()))?;
            let hi_idx = match grid.floor_index(&root.upper) {
                Ok(i) => i,
                Err(Error::GridExhausted(_)) => {
                    let GridSpec::Explicit { points } = grid else {
                        unreachable!("only explicit grids run out")
                    };
                    let last = points.last().expect("validated grid");
                    if root.cmp_rational(last) == Ordering::Greater {
                        return Err(Error::GridExhausted(y.approx_decimal(6)));
                    }
                    BigInt::from(points.len() - 1)
                }
                Err(e) => return Err(e),
            };
            // largest index whose point lies below y
            let (mut lo, mut hi) = (lo_idx, hi_idx);
            while &hi - &lo > BigInt::one() {
                let mid: BigInt = (&lo + &hi) / 2;
                if root.cmp_rational(&grid.point(&mid)?) == Ordering::Greater {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if root.cmp_rational(&grid.point(&hi)?) == Ordering::Greater {
                lo = hi;
            }
            let lower = grid.point(&lo)?;
            let upper = grid.above(&lower)?;
            Ok(GridBracket { lower, upper, member: false })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(c)
    }

    #[test]
    fn sturm_examples() {
        let chain = sturm_chain(&poly(&[-2, 0, 1])).unwrap();
        // x^2 - 2, 2x, 2 up to positive scaling
        assert_eq!(chain.polys().len(), 3);
        assert_eq!(chain.count(&int(0), &int(2)), 1);
        assert_eq!(chain.count(&int(-2), &int(2)), 2);
        let chain = sturm_chain(&poly(&[-5, 1])).unwrap();
        assert_eq!(chain.count(&int(4), &int(6)), 1);
        let chain = sturm_chain(&poly(&[1, 0, 1])).unwrap();
        assert_eq!(chain.count(&int(-100), &int(100)), 0);
    }

    #[test]
    fn isolate_examples() {
        let roots = isolate_roots(&poly(&[6, -22, 7])).unwrap();
        assert_eq!(roots.len(), 2);
        let (a0, b0) = roots[0].bounds();
        let (a1, b1) = roots[1].bounds();
        assert!(a0 >= int(0) && b0 <= int(1));
        assert!(a1 >= int(2) && b1 <= int(3));
        assert!(!roots[0].is_rational() && !roots[1].is_rational());

        let roots = isolate_roots(&poly(&[2, -3, 1])).unwrap();
        let exact: Vec<_> = roots.iter().map(|r| r.as_rational().cloned().unwrap()).collect();
        assert_eq!(exact, vec![int(1), int(2)]);

        let roots = isolate_roots(&poly(&[0, 12, -7, 1])).unwrap();
        let exact: Vec<_> = roots.iter().map(|r| r.as_rational().cloned().unwrap()).collect();
        assert_eq!(exact, vec![int(0), int(3), int(4)]);
    }

    #[test]
    fn negative_roots_are_ignored() {
        let p = RationalPolynomial::from_roots(&[int(-3), frac(1, 2)], int(2));
        let roots = isolate_roots(&p).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].as_rational(), Some(&frac(1, 2)));
    }

    #[test]
    fn bracket_examples() {
        let sqrt2 = isolate_roots(&poly(&[-2, 0, 1])).unwrap().remove(0);
        let b = grid_bracket(&sqrt2, &GridSpec::Nn0).unwrap();
        assert_eq!((b.lower, b.upper, b.member), (int(1), int(2), false));

        let b = grid_bracket(&AlgebraicNumber::rational(int(3)), &GridSpec::Nn0).unwrap();
        assert_eq!((b.lower, b.upper, b.member), (int(3), int(4), true));

        let y2 = isolate_roots(&poly(&[6, -22, 7])).unwrap().remove(1);
        let b = grid_bracket(&y2, &GridSpec::Nn0).unwrap();
        assert_eq!((b.lower, b.upper), (int(2), int(3)));

        let half = GridSpec::lattice(&frac(1, 2), 20).unwrap();
        let b = grid_bracket(&sqrt2, &half).unwrap();
        assert_eq!((b.lower, b.upper), (int(1), frac(3, 2)));
    }

    #[test]
    fn signs_at_algebraic_points() {
        let sqrt2 = isolate_roots(&poly(&[-2, 0, 1])).unwrap().remove(0);
        assert_eq!(sqrt2.sign_of(&poly(&[-3, 2])), Ordering::Less); // 2 sqrt2 - 3 < 0
        assert_eq!(sqrt2.sign_of(&poly(&[-7, 5])), Ordering::Greater); // 5 sqrt2 > 7
        assert_eq!(sqrt2.sign_of(&poly(&[-2, 0, 1, 0])), Ordering::Equal);
        assert_eq!(sqrt2.approx_decimal(5), "1.41421");
        assert_eq!(AlgebraicNumber::rational(frac(-1, 4)).approx_decimal(1), "-0.3");
    }

    proptest! {
        #[test]
        fn rational_root_sets_come_back_exactly(
            roots in prop::collection::btree_set((0i64..40, 1i64..7), 1..6),
            extra in prop::collection::vec(-9i64..0, 0..2),
        ) {
            let mut rs: Vec<Rational> = roots.iter().map(|&(p, q)| frac(p, q)).collect();
            rs.sort();
            rs.dedup();
            let mut all = rs.clone();
            all.extend(extra.iter().map(|&e| int(e)));
            let p = RationalPolynomial::from_roots(&all, frac(3, 5));
            let got = isolate_roots(&p).unwrap();
            let exact: Vec<Rational> = got.iter().map(|r| r.as_rational().cloned().expect("rational")).collect();
            prop_assert_eq!(exact, rs);
        }

        #[test]
        fn counts_match_real_rooted_products(
            roots in prop::collection::btree_set(1i64..30, 1..4),
            quad in prop::collection::btree_set(2i64..50, 0..3),
        ) {
            // (x - r_i) times (x^2 - q) for non-square q: known positive root count
            let rs: Vec<Rational> = roots.iter().map(|&r| int(r)).collect();
            let mut p = RationalPolynomial::from_roots(&rs, int(1));
            let mut expected = rs.len();
            for &q in &quad {
                let s = (1..8i64).take_while(|s| s * s <= q).last().unwrap_or(0);
                prop_assume!(s * s != q);
                p = &p * &poly(&[-q, 0, 1]);
                expected += 1;
            }
            let got = isolate_roots(&p).unwrap();
            prop_assert_eq!(got.len(), expected);
            for (i, mut y) in got.into_iter().enumerate() {
                let b = grid_bracket(&y, &GridSpec::Nn0).unwrap();
                for _ in 0..(i % 4) * 5 {
                    y.refine();
                }
                if b.member {
                    prop_assert_eq!(y.as_rational(), Some(&b.lower));
                } else {
                    prop_assert_eq!(y.cmp_rational(&b.lower), Ordering::Greater);
                    prop_assert_eq!(y.cmp_rational(&b.upper), Ordering::Less);
                    prop_assert_eq!(&b.upper - &b.lower, int(1));
                }
            }
        }
    }
}

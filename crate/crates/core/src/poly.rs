//! Dense univariate polynomials over exact rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::MomentVector;
use crate::rational::{self, format_rational, int, Rational};

/// A polynomial stored as coefficients, lowest degree first.
///
/// When built from a root list the (sorted) roots are kept alongside the
/// coefficients; arithmetic that cannot track roots drops them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalPolynomial {
    #[serde(with = "rational::serde_rational::vec")]
    coeffs: Vec<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "rational::serde_rational::opt_vec"
    )]
    roots: Option<Vec<Rational>>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new(), roots: None }
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![int(0); k + 1];
        coeffs[k] = int(1);
        Self { coeffs, roots: Some(vec![int(0); k]) }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, roots: None }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `leading * prod (x - r_i)`, keeping the sorted roots.
    pub fn from_roots(roots: &[Rational], leading: Rational) -> Self {
        if leading.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![leading];
        for r in roots {
            // multiply by (x - r)
            let mut next = vec![int(0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        let mut sorted = roots.to_vec();
        sorted.sort();
        Self { coeffs, roots: Some(sorted) }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn roots(&self) -> Option<&[Rational]> {
        self.roots.as_deref()
    }

    /// Attaches a root list after checking it reproduces the coefficients.
    pub fn with_roots(self, roots: Vec<Rational>) -> Result<Self> {
        let rebuilt = Self::from_roots(&roots, self.leading());
        if rebuilt.coeffs != self.coeffs {
            return Err(Error::Domain("root list does not match coefficients".into()));
        }
        Ok(rebuilt)
    }

    pub fn without_roots(mut self) -> Self {
        self.roots = None;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        rational::sign(&self.eval(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            roots: self.roots.clone(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// `x^k * self`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![int(0); k];
        coeffs.extend(self.coeffs.iter().cloned());
        let roots = self.roots.as_ref().map(|r| {
            let mut all = vec![int(0); k];
            all.extend(r.iter().cloned());
            all.sort();
            all
        });
        Self { coeffs, roots }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::Domain("division by the zero polynomial".into()))?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), Self::from_coeffs(rem)));
        }
        let mut quot = vec![int(0); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone().without_roots(), other.clone().without_roots());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.monic()
    }

    /// Divides out the factor `(x - root)`, failing if it is not a root.
    pub fn divide_out_root(&self, root: &Rational) -> Result<Self> {
        let (q, r) = self.div_rem(&Self::from_roots(std::slice::from_ref(root), int(1)))?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("{} is not a root", format_rational(root))));
        }
        let roots = self.roots.as_ref().map(|rs| {
            let mut rs = rs.clone();
            if let Some(pos) = rs.iter().position(|x| x == root) {
                rs.remove(pos);
            }
            rs
        });
        Ok(Self { roots, ..q })
    }

    /// `p(c * x)`; roots are divided by `c`.
    pub fn compose_scale(&self, c: &Rational) -> Self {
        let mut power = int(1);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power *= c;
        }
        let mut out = Self::from_coeffs(coeffs);
        if !c.is_zero() {
            out.roots = self.roots.as_ref().map(|rs| {
                let mut rs: Vec<Rational> = rs.iter().map(|r| r / c).collect();
                rs.sort();
                rs
            });
        }
        out
    }

    /// `p(x + c)`.
    pub fn compose_shift(&self, c: &Rational) -> Self {
        let mut acc = Self::zero();
        let lin = Self::from_coeffs(vec![c.clone(), int(1)]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc.roots = self.roots.as_ref().map(|rs| rs.iter().map(|r| r - c).collect());
        acc
    }

    /// Integer coefficients of a positive multiple of `self` with content 1.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Sign of the polynomial at `x`, computed with integer arithmetic only.
    pub fn sign_at_fast(ints: &[BigInt], x: &Rational) -> Ordering {
        // sign of sum c_i p^i q^(d-i) equals sign of p(x) since q > 0
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in ints.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        acc.cmp(&BigInt::zero())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        self.scale(&int(-1))
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut coeffs = vec![int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let roots = match (&self.roots, &rhs.roots) {
            (Some(a), Some(b)) => {
                let mut all: Vec<Rational> = a.iter().chain(b.iter()).cloned().collect();
                all.sort();
                Some(all)
            }
            _ => None,
        };
        RationalPolynomial { coeffs, roots }
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(roots) = &self.roots {
            let lead = self.leading();
            if !lead.is_one() {
                write!(f, "{}*", format_rational(&lead))?;
            }
            if roots.is_empty() {
                return write!(f, "1");
            }
            for r in roots {
                if r.is_zero() {
                    write!(f, "x")?;
                } else if r.is_negative() {
                    write!(f, "(x+{})", format_rational(&-r))?;
                } else {
                    write!(f, "(x-{})", format_rational(r))?;
                }
            }
            return Ok(());
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&a))?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `L_P(m) = sum_k p_k m_k` with `m_0 = 1`.
pub fn lform_eval(p: &RationalPolynomial, m: &MomentVector) -> Result<Rational> {
    let Some(deg) = p.degree() else {
        return Ok(Rational::zero());
    };
    if deg > m.len() {
        return Err(Error::Arity { needed: deg, available: m.len() });
    }
    let mut acc = Rational::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += c * m.at(k);
        }
    }
    Ok(acc)
}

/// Expands `leading * prod (x - r_i)`.
pub fn poly_from_roots(roots: &[Rational], leading: Rational) -> RationalPolynomial {
    RationalPolynomial::from_roots(roots, leading)
}

//! Discrete, bounded-below support sets and the admissible root patterns on them.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;
use crate::rational::{self, format_rational, from_bigint, int, Rational};

/// The support set a measure must live on.
///
/// `Explicit` lists a strictly increasing prefix of an infinite grid that
/// starts at 0; queries that would need points beyond the listed prefix fail
/// with [`Error::GridExhausted`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GridSpec {
    /// The nonnegative integers.
    Nn0,
    /// `{0, 1, ..., N}`.
    Nn {
        #[serde(rename = "N")]
        n: u64,
    },
    Explicit {
        #[serde(with = "rational::serde_rational::vec")]
        points: Vec<Rational>,
    },
}

impl GridSpec {
    pub fn explicit(points: Vec<Rational>) -> Result<Self> {
        let grid = GridSpec::Explicit { points };
        grid.validate()?;
        Ok(grid)
    }

    /// `{0, step, 2 step, ..., count * step}`.
    pub fn lattice(step: &Rational, count: usize) -> Result<Self> {
        Self::explicit((0..=count).map(|k| step * int(k as i64)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if let GridSpec::Explicit { points } = self {
            match points.first() {
                Some(p) if p.is_zero() => {}
                _ => return Err(Error::Domain("explicit grid must start at 0".into())),
            }
            if points.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Domain("explicit grid must be strictly increasing".into()));
            }
        }
        Ok(())
    }

    /// Parses `nn0`, `nn:N`, or `explicit:p0,p1,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("nn0") {
            return Ok(GridSpec::Nn0);
        }
        if let Some(rest) = text.strip_prefix("nn:") {
            let n = rest
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad bound in grid `{text}`")))?;
            return Ok(GridSpec::Nn { n });
        }
        if let Some(rest) = text.strip_prefix("explicit:") {
            return Self::explicit(rational::parse_rational_list(rest)?);
        }
        Err(Error::Parse(format!(
            "unknown grid `{text}`; expected nn0, nn:N or explicit:p0,p1,..."
        )))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            GridSpec::Nn0 => rational::is_integer(x) && !x.is_negative(),
            GridSpec::Nn { n } => {
                rational::is_integer(x) && !x.is_negative() && x <= &from_bigint(BigInt::from(*n))
            }
            GridSpec::Explicit { points } => points.binary_search(x).is_ok(),
        }
    }

    fn last_index(&self) -> Option<BigInt> {
        match self {
            GridSpec::Nn0 => None,
            GridSpec::Nn { n } => Some(BigInt::from(*n)),
            GridSpec::Explicit { points } => Some(BigInt::from(points.len() - 1)),
        }
    }

    /// The grid point with the given index (0 is the smallest point).
    pub fn point(&self, index: &BigInt) -> Result<Rational> {
        if index.is_negative() {
            return Err(Error::Domain("negative grid index".into()));
        }
        match self {
            GridSpec::Nn0 => Ok(from_bigint(index.clone())),
            GridSpec::Nn { n } => {
                if index > &BigInt::from(*n) {
                    Err(Error::Domain(format!("{index} lies beyond N = {n}")))
                } else {
                    Ok(from_bigint(index.clone()))
                }
            }
            GridSpec::Explicit { points } => index
                .to_usize()
                .and_then(|i| points.get(i).cloned())
                .ok_or_else(|| exhausted_at(index)),
        }
    }

    /// Index of the largest grid point `<= y`.
    pub fn floor_index(&self, y: &Rational) -> Result<BigInt> {
        if y.is_negative() {
            return Err(Error::Domain(format!(
                "{} lies below the smallest grid point 0",
                format_rational(y)
            )));
        }
        match self {
            GridSpec::Nn0 => Ok(rational::floor(y)),
            GridSpec::Nn { n } => Ok(rational::floor(y).min(BigInt::from(*n))),
            GridSpec::Explicit { points } => {
                let idx = match points.binary_search(y) {
                    Ok(i) => i,
                    Err(i) => {
                        if i == points.len() {
                            return Err(Error::GridExhausted(format_rational(y)));
                        }
                        i - 1
                    }
                };
                Ok(BigInt::from(idx))
            }
        }
    }

    /// `l(y)`: the largest grid point not greater than `y`.
    pub fn floor(&self, y: &Rational) -> Result<Rational> {
        self.point(&self.floor_index(y)?)
    }

    /// `u(y)`: the smallest grid point strictly greater than `y`.
    pub fn above(&self, y: &Rational) -> Result<Rational> {
        if y.is_negative() {
            return Ok(int(0));
        }
        let idx = self.floor_index(y)? + 1;
        if let Some(last) = self.last_index() {
            if idx > last {
                return match self {
                    GridSpec::Nn { n } => Err(Error::Domain(format!(
                        "no grid point above {} in {{0..{n}}}",
                        format_rational(y)
                    ))),
                    _ => Err(Error::GridExhausted(format_rational(y))),
                };
            }
        }
        self.point(&idx)
    }

    /// The grid neighbour immediately below a grid point, if any.
    pub fn predecessor(&self, x: &Rational) -> Result<Option<Rational>> {
        let idx = self.floor_index(x)?;
        let below = if &self.point(&idx)? == x { idx - 1 } else { idx };
        if below.is_negative() {
            Ok(None)
        } else {
            self.point(&below).map(Some)
        }
    }

    /// `(l(y), u(y))` for a rational `y`.
    pub fn bracket(&self, y: &Rational) -> Result<(Rational, Rational)> {
        Ok((self.floor(y)?, self.above(y)?))
    }

    pub fn require_member(&self, x: &Rational) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{} is not a grid point", format_rational(x))))
        }
    }

    /// Short human-readable form, eliding long explicit lists.
    pub fn describe(&self) -> String {
        match self {
            GridSpec::Nn0 => "nn0".to_string(),
            GridSpec::Nn { n } => format!("nn:{n}"),
            GridSpec::Explicit { points } => {
                let shown: Vec<String> = points.iter().take(6).map(format_rational).collect();
                format!(
                    "explicit:{}{}",
                    shown.join(","),
                    if points.len() > 6 { ",..." } else { "" }
                )
            }
        }
    }
}

fn exhausted_at(index: &BigInt) -> Error {
    Error::GridExhausted(format!("index {index}"))
}

/// A root tuple `alpha` whose monic product `P_alpha` is nonnegative on the
/// grid: consecutive grid points paired up, plus a leading 0 for odd length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootPattern {
    alpha: Vec<Rational>,
}

impl RootPattern {
    pub fn new(alpha: Vec<Rational>, grid: &GridSpec) -> Result<Self> {
        if !pattern_check(&alpha, grid)? {
            let shown: Vec<String> = alpha.iter().map(format_rational).collect();
            return Err(Error::Domain(format!(
                "({}) is not an admissible root pattern",
                shown.join(", ")
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.alpha.len() % 2 == 1
    }

    pub fn polynomial(&self) -> RationalPolynomial {
        RationalPolynomial::from_roots(&self.alpha, int(1))
    }
}

/// Whether `alpha` is an admissible root pattern on `grid`.
///
/// Fails with a domain error if some entry is not a grid point.
pub fn pattern_check(alpha: &[Rational], grid: &GridSpec) -> Result<bool> {
    for a in alpha {
        grid.require_member(a)?;
    }
    if alpha.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(false);
    }
    let start = if alpha.len() % 2 == 1 {
        if !alpha[0].is_zero() {
            return Ok(false);
        }
        1
    } else {
        0
    };
    for pair in alpha[start..].chunks(2) {
        if grid.above(&pair[0])? != pair[1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a polynomial is monic with an admissible root pattern on `grid`.
///
/// Stored roots are checked against the coefficients; without them the
/// roots are recomputed exactly.
pub fn polynomial_pattern_check(p: &RationalPolynomial, grid: &GridSpec) -> bool {
    if !p.is_monic() {
        return false;
    }
    let roots: Vec<Rational> = match p.roots() {
        Some(r) => r.to_vec(),
        None => {
            let Ok(found) = crate::roots::isolate_roots(p) else {
                return false;
            };
            let exact: Option<Vec<Rational>> = found.iter().map(|y| y.as_rational().cloned()).collect();
            match exact {
                Some(r) => r,
                None => return false,
            }
        }
    };
    if RationalPolynomial::from_roots(&roots, int(1)).coeffs() != p.coeffs() {
        return false;
    }
    pattern_check(&roots, grid).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn half_grid() -> GridSpec {
        GridSpec::lattice(&frac(1, 2), 40).unwrap()
    }

    #[test]
    fn pattern_examples() {
        assert!(pattern_check(&ints(&[1, 2, 4, 5]), &GridSpec::Nn0).unwrap());
        assert!(pattern_check(&ints(&[0, 3, 4]), &GridSpec::Nn0).unwrap());
        assert!(!pattern_check(&ints(&[1, 3, 4]), &GridSpec::Nn0).unwrap());
        assert!(!pattern_check(&ints(&[1, 3]), &GridSpec::Nn0).unwrap());
        assert!(pattern_check(&[int(0), frac(1, 2), int(1)], &half_grid()).unwrap());
        assert!(pattern_check(&[int(0), int(1), frac(3, 2)], &half_grid()).unwrap());
        assert!(!pattern_check(&ints(&[0, 1, 2]), &half_grid()).unwrap());
    }

    #[test]
    fn pattern_rejects_non_grid_points() {
        assert!(matches!(
            pattern_check(&[frac(1, 2), int(1)], &GridSpec::Nn0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn brackets() {
        assert_eq!(GridSpec::Nn0.bracket(&frac(7, 3)).unwrap(), (int(2), int(3)));
        assert_eq!(GridSpec::Nn0.bracket(&int(3)).unwrap(), (int(3), int(4)));
        assert_eq!(half_grid().bracket(&frac(4, 5)).unwrap(), (frac(1, 2), int(1)));
        assert!(GridSpec::Nn0.floor(&frac(-1, 2)).is_err());
        assert!(matches!(half_grid().above(&int(20)), Err(Error::GridExhausted(_))));
        assert_eq!(GridSpec::Nn { n: 5 }.floor(&int(9)).unwrap(), int(5));
        assert_eq!(GridSpec::Nn0.predecessor(&int(3)).unwrap(), Some(int(2)));
        assert_eq!(GridSpec::Nn0.predecessor(&int(0)).unwrap(), None);
    }

    #[test]
    fn parse_grids() {
        assert_eq!(GridSpec::parse("nn0").unwrap(), GridSpec::Nn0);
        assert_eq!(GridSpec::parse("nn:12").unwrap(), GridSpec::Nn { n: 12 });
        let g = GridSpec::parse("explicit:0,1/2,1").unwrap();
        assert!(g.contains(&frac(1, 2)));
        assert!(GridSpec::parse("explicit:1,2").is_err());
        assert!(GridSpec::parse("explicit:0,2,1").is_err());
    }

    #[test]
    fn grid_json_shape() {
        let json = serde_json::to_string(&GridSpec::Nn { n: 4 }).unwrap();
        assert_eq!(json, r#"{"kind":"nn","N":4}"#);
        let g: GridSpec = serde_json::from_str(r#"{"kind":"explicit","points":["0","1/2"]}"#).unwrap();
        assert!(g.contains(&frac(1, 2)));
    }
}

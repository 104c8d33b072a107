use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

/// Power moments `(m_1, ..., m_n)` of a would-be probability measure.
///
/// The zeroth moment is fixed at 1 and is not stored; [`MomentVector::get`]
/// answers index 0 with 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MomentVector {
    #[serde(with = "rational::serde_rational::vec")]
    moments: Vec<Rational>,
}

impl MomentVector {
    /// Builds a vector from `(m_1, ..., m_n)`. An empty list is allowed and
    /// represents the trivial prefix `m^(0)`.
    pub fn new(moments: Vec<Rational>) -> Self {
        Self { moments }
    }

    pub fn from_ratios(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(p, q)| rational::frac(p, q)).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("moment list is empty".into()));
        }
        Ok(Self::new(rational::parse_rational_list(text)?))
    }

    /// Number of stored moments `n`.
    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    /// `m_k`, with `m_0 = 1`.
    pub fn get(&self, k: usize) -> Result<Rational> {
        if k == 0 {
            return Ok(int(1));
        }
        self.moments.get(k - 1).cloned().ok_or(Error::Arity {
            needed: k,
            available: self.moments.len(),
        })
    }

    /// `m_k` for `k <= len()`. Panics otherwise.
    pub fn at(&self, k: usize) -> Rational {
        self.get(k).expect("moment index out of range")
    }

    /// `(m_0, m_1, ..., m_n)` including the implicit leading 1.
    pub fn with_m0(&self) -> Vec<Rational> {
        std::iter::once(int(1)).chain(self.moments.iter().cloned()).collect()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.moments
    }

    /// The prefix `m^(j) = (m_1, ..., m_j)`.
    pub fn prefix(&self, j: usize) -> Result<MomentVector> {
        if j > self.moments.len() {
            return Err(Error::Arity {
                needed: j,
                available: self.moments.len(),
            });
        }
        Ok(Self::new(self.moments[..j].to_vec()))
    }

    /// Appends `m_{n+1}`.
    pub fn extended(&self, next: Rational) -> MomentVector {
        let mut moments = self.moments.clone();
        moments.push(next);
        Self::new(moments)
    }

    /// Replaces the last moment.
    pub fn with_last(&self, last: Rational) -> MomentVector {
        let mut moments = self.moments.clone();
        if let Some(slot) = moments.last_mut() {
            *slot = last;
        }
        Self::new(moments)
    }

    pub fn last(&self) -> Option<&Rational> {
        self.moments.last()
    }
}

impl std::fmt::Display for MomentVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.moments.iter().map(rational::format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl From<Vec<Rational>> for MomentVector {
    fn from(v: Vec<Rational>) -> Self {
        Self::new(v)
    }
}

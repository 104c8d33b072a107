//! A fast sufficient test for interior realizability on the nonnegative
//! integers, through the shifted Hankel symmetrizations `D_j`.

use num_integer::binomial;
use num_traits::Zero;

use crate::error::Result;
use crate::hankel::{hankel, psd_classify, PositivityClass, SymmetricRationalMatrix};
use crate::moments::MomentVector;
use crate::rational::{int, Rational};

/// `H(k)`: coefficients of `V(x)` map to those of `V(x - 1)` via `b = H c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftMatrix {
    entries: Vec<Vec<Rational>>,
}

impl ShiftMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, l: usize) -> &Rational {
        &self.entries[i][l]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn apply(&self, c: &[Rational]) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(c).map(|(h, x)| h * x).sum())
            .collect()
    }
}

pub fn shift_matrix(k: usize) -> ShiftMatrix {
    let entries = (0..=k)
        .map(|i| {
            (0..=k)
                .map(|l| {
                    if i > l {
                        Rational::zero()
                    } else {
                        let b = int(binomial(l as i64, i as i64));
                        if (l - i) % 2 == 0 {
                            b
                        } else {
                            -b
                        }
                    }
                })
                .collect()
        })
        .collect();
    ShiftMatrix { entries }
}

/// `D_j = (H(k)^T C_j + C_j H(k)) / 2` with `k = floor(j/2)`.
pub fn d_matrix(m: &MomentVector, j: usize) -> Result<SymmetricRationalMatrix> {
    let c = hankel(m, j)?;
    let h = shift_matrix(j / 2);
    let dim = c.dim();
    let ch = |i: usize, l: usize| -> Rational { (0..dim).map(|t| c.get(i, t) * h.get(t, l)).sum() };
    Ok(SymmetricRationalMatrix::from_fn(dim, |i, l| (ch(i, l) + ch(l, i)) / int(2)))
}

/// `D_1, ..., D_n` with their positivity classes.
pub fn sufficiency_report(m: &MomentVector) -> Result<Vec<(SymmetricRationalMatrix, PositivityClass)>> {
    (1..=m.len())
        .map(|j| {
            let d = d_matrix(m, j)?;
            let class = psd_classify(&d);
            Ok((d, class))
        })
        .collect()
}

/// `true` when every `D_j` is positive definite, which guarantees interior
/// realizability. `false` is inconclusive.
pub fn sufficient_check(m: &MomentVector) -> bool {
    (1..=m.len()).all(|j| psd_classify(&d_matrix(m, j).expect("j <= n")).is_definite())
}

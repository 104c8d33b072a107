//! Hankel moment matrices, exact positivity classification and small exact
//! linear solves.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::MomentVector;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricRationalMatrix {
    dim: usize,
    #[serde(with = "rational::serde_rational::vec")]
    entries: Vec<Rational>,
}

impl SymmetricRationalMatrix {
    /// Builds a matrix from row-major entries, rejecting asymmetric input.
    pub fn new(dim: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Domain(format!(
                "{} entries cannot form a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        for i in 0..dim {
            for j in 0..i {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::Domain(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from `f(i, j)`, evaluated for `i <= j` and mirrored.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[j * dim + i] = v.clone();
                entries[i * dim + j] = v;
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { int(1) } else { int(0) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(|r| r.to_vec()).collect()
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                acc += &v[i] * self.get(i, j) * &v[j];
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        determinant(self.rows())
    }

    /// Principal submatrix on the given index set.
    pub fn principal(&self, idx: &[usize]) -> SymmetricRationalMatrix {
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }
}

/// Outcome of [`psd_classify`], with an exact certificate for the two
/// non-definite cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositivityClass {
    PositiveDefinite,
    /// Positive semidefinite and singular; `kernel` is a nonzero null vector.
    PositiveSemidefiniteSingular { kernel: Vec<Rational> },
    /// Not positive semidefinite; `direction` satisfies `v^T M v < 0`.
    Indefinite { direction: Vec<Rational> },
}

impl PositivityClass {
    pub fn is_definite(&self) -> bool {
        matches!(self, PositivityClass::PositiveDefinite)
    }

    pub fn is_semidefinite(&self) -> bool {
        !matches!(self, PositivityClass::Indefinite { .. })
    }
}

/// The Hankel matrix `C_j`: `A(k) = (m_{i+l})` when `j = 2k`, `B(k) = (m_{i+l+1})`
/// when `j = 2k + 1`, both indexed `0..=k`.
pub fn hankel(m: &MomentVector, j: usize) -> Result<SymmetricRationalMatrix> {
    if j > m.len() {
        return Err(Error::Arity { needed: j, available: m.len() });
    }
    let k = j / 2;
    let shift = j % 2;
    Ok(SymmetricRationalMatrix::from_fn(k + 1, |a, b| m.at(a + b + shift)))
}

/// Classifies a symmetric matrix by exact symmetric elimination with
/// diagonal pivoting.
pub fn psd_classify(matrix: &SymmetricRationalMatrix) -> PositivityClass {
    let n = matrix.dim();
    let mut schur = matrix.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots: Vec<usize> = Vec::new();

    loop {
        if active.is_empty() {
            return PositivityClass::PositiveDefinite;
        }
        if let Some(&i) = active.iter().find(|&&i| schur[i][i].is_negative()) {
            let direction = lift(matrix, &pivots, &[(i, int(1))]);
            return PositivityClass::Indefinite { direction };
        }
        // largest positive diagonal
        let best = active
            .iter()
            .copied()
            .filter(|&i| schur[i][i].is_positive())
            .max_by(|&a, &b| schur[a][a].cmp(&schur[b][b]).then(b.cmp(&a)));
        match best {
            Some(p) => {
                let others: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
                let piv = schur[p][p].clone();
                for &r in &others {
                    if schur[r][p].is_zero() {
                        continue;
                    }
                    let factor = &schur[r][p] / &piv;
                    for &c in &others {
                        let delta = &factor * &schur[p][c];
                        schur[r][c] -= delta;
                    }
                }
                active.retain(|&i| i != p);
                pivots.push(p);
            }
            None => {
                // every remaining diagonal entry is zero
                for (a, &i) in active.iter().enumerate() {
                    for &j in &active[a + 1..] {
                        let s = &schur[i][j];
                        if !s.is_zero() {
                            let t = if s.is_positive() { int(-1) } else { int(1) };
                            let direction = lift(matrix, &pivots, &[(i, t), (j, int(1))]);
                            return PositivityClass::Indefinite { direction };
                        }
                    }
                }
                let kernel = lift(matrix, &pivots, &[(active[0], int(1))]);
                return PositivityClass::PositiveSemidefiniteSingular { kernel };
            }
        }
    }
}

/// Extends a vector given on non-pivot coordinates to the full space by
/// minimizing the quadratic form over the pivot coordinates.
fn lift(
    matrix: &SymmetricRationalMatrix,
    pivots: &[usize],
    free: &[(usize, Rational)],
) -> Vec<Rational> {
    let n = matrix.dim();
    let mut v = vec![Rational::zero(); n];
    for (i, val) in free {
        v[*i] = val.clone();
    }
    if pivots.is_empty() {
        return v;
    }
    let sub = matrix.principal(pivots).rows();
    let rhs: Vec<Rational> = pivots
        .iter()
        .map(|&p| -free.iter().map(|(i, val)| matrix.get(p, *i) * val).sum::<Rational>())
        .collect();
    let x = solve_dense(sub, rhs).expect("pivot block is positive definite");
    for (&p, xv) in pivots.iter().zip(x) {
        v[p] = xv;
    }
    v
}

/// Solves `A x = b` exactly by Gaussian elimination.
pub fn solve_dense(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Domain("system shape mismatch".into()));
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Ok(x)
}

pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = int(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Solves `M x = rhs` for a nonsingular symmetric `M`.
pub fn hankel_linsolve(matrix: &SymmetricRationalMatrix, rhs: &[Rational]) -> Result<Vec<Rational>> {
    if rhs.len() != matrix.dim() {
        return Err(Error::Domain("right-hand side has the wrong length".into()));
    }
    solve_dense(matrix.rows(), rhs.to_vec())
}

/// Weights `c_j` with `sum_j c_j x_j^k = target[k]` for every listed `k`.
///
/// `target` starts at `k = 0`. The first `points.len()` equations determine
/// the weights; any further equations are checked and a mismatch is reported
/// as [`Error::Inconsistent`].
pub fn solve_vandermonde(points: &[Rational], target: &[Rational]) -> Result<Vec<Rational>> {
    let p = points.len();
    if target.len() < p {
        return Err(Error::Arity { needed: p, available: target.len() });
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain("Vandermonde points must be distinct".into()));
    }
    if p == 0 {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<Rational>> = (0..p)
        .map(|k| points.iter().map(|x| rational::pow(x, k)).collect())
        .collect();
    let weights = solve_dense(rows, target[..p].to_vec())?;
    for (k, t) in target.iter().enumerate().skip(p) {
        let got: Rational = points
            .iter()
            .zip(&weights)
            .map(|(x, c)| c * rational::pow(x, k))
            .sum();
        if &got != t {
            return Err(Error::Inconsistent { equation: k });
        }
    }
    Ok(weights)
}

/// Sign of the determinant, for callers that only need the sign.
pub fn det_sign(matrix: &SymmetricRationalMatrix) -> Ordering {
    rational::sign(&matrix.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn sym(rows: &[&[(i64, i64)]]) -> SymmetricRationalMatrix {
        let dim = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().map(|&(p, q)| frac(p, q))).collect();
        SymmetricRationalMatrix::new(dim, entries).unwrap()
    }

    #[test]
    fn hankel_examples() {
        let m = MomentVector::from_ratios(&[(1, 1), (1, 1)]);
        assert_eq!(hankel(&m, 2).unwrap(), sym(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]));
        let m = MomentVector::from_ratios(&[(3, 2), (5, 2), (9, 2)]);
        assert_eq!(hankel(&m, 2).unwrap(), sym(&[&[(1, 1), (3, 2)], &[(3, 2), (5, 2)]]));
        assert_eq!(hankel(&m, 3).unwrap(), sym(&[&[(3, 2), (5, 2)], &[(5, 2), (9, 2)]]));
        assert_eq!(hankel(&m, 1).unwrap(), sym(&[&[(3, 2)]]));
        assert_eq!(hankel(&m, 0).unwrap(), sym(&[&[(1, 1)]]));
        assert!(matches!(hankel(&m, 4), Err(Error::Arity { .. })));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            psd_classify(&SymmetricRationalMatrix::identity(3)),
            PositivityClass::PositiveDefinite
        );
        let ones = sym(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        match psd_classify(&ones) {
            PositivityClass::PositiveSemidefiniteSingular { kernel } => {
                // proportional to (1, -1)
                assert_eq!(&kernel[0] + &kernel[1], int(0));
                assert!(!kernel[0].is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad = sym(&[&[(1, 1), (3, 2)], &[(3, 2), (11, 5)]]);
        assert_eq!(bad.determinant(), frac(-1, 20));
        match psd_classify(&bad) {
            PositivityClass::Indefinite { direction } => {
                assert!(bad.quadratic_form(&direction).is_negative())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_diagonal_with_offdiagonal_is_indefinite() {
        let m = sym(&[&[(0, 1), (1, 1)], &[(1, 1), (5, 1)]]);
        match psd_classify(&m) {
            PositivityClass::Indefinite { direction } => {
                assert!(m.quadratic_form(&direction).is_negative())
            }
            other => panic!("unexpected {other:?}"),
        }
        let m = sym(&[&[(0, 1), (0, 1)], &[(0, 1), (0, 1)]]);
        assert!(matches!(
            psd_classify(&m),
            PositivityClass::PositiveSemidefiniteSingular { .. }
        ));
        // zero row after a pivot, nonzero coupling left in the residual
        let m = sym(&[
            &[(1, 1), (1, 1), (0, 1)],
            &[(1, 1), (1, 1), (2, 1)],
            &[(0, 1), (2, 1), (9, 1)],
        ]);
        match psd_classify(&m) {
            PositivityClass::Indefinite { direction } => {
                assert!(m.quadratic_form(&direction).is_negative())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn vandermonde_examples() {
        let w = solve_vandermonde(&[int(1), int(2)], &[int(1), frac(3, 2)]).unwrap();
        assert_eq!(w, vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(solve_vandermonde(&[int(2)], &[int(1), int(2)]).unwrap(), vec![int(1)]);
        let w = solve_vandermonde(&[int(0), int(1), int(3)], &[int(1), frac(4, 3), frac(10, 3)])
            .unwrap();
        assert_eq!(w, vec![frac(1, 3); 3]);
        assert!(matches!(
            solve_vandermonde(&[int(2)], &[int(1), int(2), int(5)]),
            Err(Error::Inconsistent { equation: 2 })
        ));
        assert!(solve_vandermonde(&[int(2), int(2)], &[int(1), int(2)]).is_err());
    }

    #[test]
    fn linsolve_examples() {
        let rhs = vec![frac(2, 3), int(-5)];
        assert_eq!(
            hankel_linsolve(&SymmetricRationalMatrix::identity(2), &rhs).unwrap(),
            rhs
        );
        // Phi A(1) = (m2, m3) for m = (4/3, 10/3, 28/3)
        let m = MomentVector::from_ratios(&[(4, 3), (10, 3), (28, 3)]);
        let a1 = hankel(&m, 2).unwrap();
        let phi = hankel_linsolve(&a1, &[m.at(2), m.at(3)]).unwrap();
        // g(x) = x^2 - phi_1 x - phi_0 is proportional to 14/9 x^2 - 44/9 x + 12/9
        assert_eq!(phi, vec![frac(-6, 7), frac(22, 7)]);
        let singular = sym(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        assert_eq!(hankel_linsolve(&singular, &[int(1), int(1)]), Err(Error::Singular));
    }

    /// Independent oracle: PD iff every principal minor is positive, PSD iff
    /// every principal minor is nonnegative.
    fn minors_oracle(m: &SymmetricRationalMatrix) -> (bool, bool) {
        let n = m.dim();
        let (mut pd, mut psd) = (true, true);
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let d = m.principal(&idx).determinant();
            if !d.is_positive() {
                pd = false;
            }
            if d.is_negative() {
                psd = false;
            }
        }
        (pd, psd)
    }

    fn random_symmetric() -> impl Strategy<Value = SymmetricRationalMatrix> {
        (2usize..=5).prop_flat_map(|n| {
            // Gram-style matrices hit the PSD-singular case often
            prop::collection::vec(prop::collection::vec(-3i64..4, n), 1..=n + 1).prop_flat_map(
                move |factors| {
                    let gram = SymmetricRationalMatrix::from_fn(n, |i, j| {
                        factors.iter().map(|f| int(f[i] * f[j])).sum()
                    });
                    prop::collection::vec((-2i64..3, 1i64..3), n * n).prop_map(move |noise| {
                        SymmetricRationalMatrix::from_fn(n, |i, j| {
                            let (p, q) = noise[i * n + j];
                            if p.abs() == 2 {
                                gram.get(i, j) + frac(p.signum(), q)
                            } else {
                                gram.get(i, j).clone()
                            }
                        })
                    })
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn classification_matches_minor_oracle(m in random_symmetric()) {
            let (pd, psd) = minors_oracle(&m);
            match psd_classify(&m) {
                PositivityClass::PositiveDefinite => prop_assert!(pd),
                PositivityClass::PositiveSemidefiniteSingular { kernel } => {
                    prop_assert!(psd && !pd);
                    prop_assert!(kernel.iter().any(|k| !k.is_zero()));
                    prop_assert!(m.mul_vec(&kernel).iter().all(|v| v.is_zero()));
                    prop_assert!(m.determinant().is_zero());
                }
                PositivityClass::Indefinite { direction } => {
                    prop_assert!(!psd);
                    prop_assert!(m.quadratic_form(&direction).is_negative());
                }
            }
        }

        #[test]
        fn measure_hankels_are_psd(
            atoms in prop::collection::vec((0i64..20, 1i64..5, 1i64..7), 1..5),
            q in prop::collection::vec(-4i64..5, 3),
        ) {
            let total: i64 = atoms.iter().map(|a| a.2).sum();
            let n = 5;
            let point = |a: &(i64, i64, i64)| frac(a.0, a.1);
            let moments: Vec<Rational> = (1..=n)
                .map(|k| atoms.iter().map(|a| frac(a.2, total) * rational::pow(&point(a), k)).sum())
                .collect();
            let m = MomentVector::new(moments);
            for j in 0..=n {
                let c = hankel(&m, j).unwrap();
                prop_assert!(psd_classify(&c).is_semidefinite());
                // q^T C_j q = E[x^(j mod 2) (q . X)^2]
                let k = j / 2;
                let qv: Vec<Rational> = q.iter().take(k + 1).map(|&v| int(v)).collect();
                let direct: Rational = atoms.iter().map(|a| {
                    let x = point(a);
                    let s: Rational = qv.iter().enumerate().map(|(i, c)| c * rational::pow(&x, i)).sum();
                    frac(a.2, total) * rational::pow(&x, j % 2) * &s * &s
                }).sum();
                let mut padded = qv.clone();
                padded.resize(k + 1, int(0));
                prop_assert_eq!(c.quadratic_form(&padded), direct);
            }
        }

        #[test]
        fn vandermonde_round_trip(
            pts in prop::collection::btree_set(-6i64..12, 1..5),
            ws in prop::collection::vec((-5i64..6, 1i64..5), 5),
        ) {
            let points: Vec<Rational> = pts.iter().map(|&p| frac(p, 2)).collect();
            let weights: Vec<Rational> = ws.iter().take(points.len()).map(|&(p, q)| frac(p, q)).collect();
            let target: Vec<Rational> = (0..points.len() + 2)
                .map(|k| points.iter().zip(&weights).map(|(x, w)| w * rational::pow(x, k)).sum())
                .collect();
            prop_assert_eq!(solve_vandermonde(&points, &target).unwrap(), weights);
        }
    }
}

//! Square matrices of polynomials and their exact determinants.

use super::{Poly, Rational};

/// Threshold below which cofactor expansion beats setting up elimination.
/// Pattern systems rarely have more than a handful of competitors.
const COFACTOR_LIMIT: usize = 6;

/// Square `m x m` matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    entries: Vec<Poly>,
    m: usize,
}

impl PolyMatrix {
    /// Panics if `rows` is empty or not square.
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let m = rows.len();
        assert!(m >= 1, "matrix must have at least one row");
        assert!(
            rows.iter().all(|r| r.len() == m),
            "matrix must be square"
        );
        PolyMatrix {
            entries: rows.into_iter().flatten().collect(),
            m,
        }
    }

    pub fn identity(m: usize) -> Self {
        assert!(m >= 1);
        let mut entries = vec![Poly::zero(); m * m];
        for i in 0..m {
            entries[i * m + i] = Poly::one();
        }
        PolyMatrix { entries, m }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.m + j]
    }

    /// Copy with column `j` replaced by `col`.
    pub fn with_column(&self, j: usize, col: &[Poly]) -> PolyMatrix {
        assert_eq!(col.len(), self.m, "replacement column has wrong length");
        let mut out = self.clone();
        for (i, c) in col.iter().enumerate() {
            out.entries[i * self.m + j] = c.clone();
        }
        out
    }

    /// Exact determinant: cofactor expansion for small matrices,
    /// fraction-free Bareiss elimination over the polynomial ring above that.
    pub fn det(&self) -> Poly {
        if self.m <= COFACTOR_LIMIT {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    fn det_cofactor(&self) -> Poly {
        fn expand(grid: &[Vec<&Poly>]) -> Poly {
            let n = grid.len();
            if n == 1 {
                return grid[0][0].clone();
            }
            let mut acc = Poly::zero();
            for (i, row) in grid.iter().enumerate() {
                if row[0].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<&Poly>> = grid
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != i)
                    .map(|(_, r)| r[1..].to_vec())
                    .collect();
                let term = row[0] * &expand(&minor);
                if i % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }

        let grid: Vec<Vec<&Poly>> = (0..self.m)
            .map(|i| (0..self.m).map(|j| self.entry(i, j)).collect())
            .collect();
        expand(&grid)
    }

    /// Bareiss elimination: each inner division by the previous pivot is
    /// exact in the polynomial ring, so no rational-function entries appear.
    fn det_bareiss(&self) -> Poly {
        let n = self.m;
        let mut a: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Poly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev);
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign_flip {
            -det
        } else {
            det
        }
    }
}

/// Exact determinant of a square grid of rationals by Gaussian elimination.
///
/// Lives here so scalar-matrix callers do not have to wrap constants in
/// polynomials; the polynomial and scalar routes stay separate code paths.
pub(crate) fn det_rational(grid: &[Vec<Rational>]) -> Rational {
    use num_traits::{One, Zero};

    let n = grid.len();
    assert!(n >= 1 && grid.iter().all(|r| r.len() == n));
    let mut a: Vec<Vec<Rational>> = grid.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&r| !a[r][k].is_zero()) {
            Some(r) => r,
            None => return Rational::zero(),
        };
        if pivot != k {
            a.swap(k, pivot);
            det = -det;
        }
        det *= a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let (top, bottom) = a.split_at_mut(i);
            let row_k = &top[k];
            let row_i = &mut bottom[0];
            let factor = &row_i[k] / &row_k[k];
            for (x, y) in row_i[k..].iter_mut().zip(&row_k[k..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

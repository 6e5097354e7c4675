//! The star-number route to the same race quantities.
//!
//! The scalar matrix `C` with entry `(i, j) = A_j * A_i` gives win
//! probabilities and the expected waiting time through plain rational
//! determinants, with no polynomials involved. Because it shares only the
//! correlation primitive with the solver, exact agreement between the two
//! routes is a real cross-check.

use num_traits::{One, Zero};

use crate::exactmath::{det_rational, rat_int, Rational};
use crate::patterns::{correlation_poly, pattern_prob, Distribution, Pattern, PatternSystem};
use crate::solver::SolverError;

/// `a_j * a_i`: the sum of reciprocal prefix probabilities of `a_i` over
/// the positions `k` where the length-`k` prefix of `a_i` equals the
/// length-`k` suffix of `a_j`. Computed directly from that sum, not via
/// the correlation polynomial (their equality is a tested property).
pub fn star_number(dist: &Distribution, a_j: &Pattern, a_i: &Pattern) -> Rational {
    let li = a_i.len();
    let lj = a_j.len();
    let mut prefix_prob = Rational::one();
    let mut total = Rational::zero();
    for k in 1..=li.min(lj) {
        prefix_prob *= dist.prob(a_i.symbols()[k - 1]);
        if a_i.symbols()[..k] == a_j.symbols()[lj - k..] {
            total += Rational::one() / &prefix_prob;
        }
    }
    total
}

/// The matrix `C` of star numbers together with its determinant and the
/// determinants of the variants `C^j` (column `j` replaced by all ones).
#[derive(Clone, Debug)]
pub struct StarMatrix {
    entries: Vec<Vec<Rational>>,
    c_det: Rational,
    cj_dets: Vec<Rational>,
}

impl StarMatrix {
    pub fn build(sys: &PatternSystem) -> StarMatrix {
        let dist = sys.distribution();
        let entries: Vec<Vec<Rational>> = sys
            .patterns()
            .iter()
            .map(|a_i| {
                sys.patterns()
                    .iter()
                    .map(|a_j| star_number(dist, a_j, a_i))
                    .collect()
            })
            .collect();
        let c_det = det_rational(&entries);
        let cj_dets = (0..sys.len())
            .map(|j| {
                let mut grid = entries.clone();
                for row in &mut grid {
                    row[j] = Rational::one();
                }
                det_rational(&grid)
            })
            .collect();
        StarMatrix {
            entries,
            c_det,
            cj_dets,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entry `(i, j) = A_j * A_i`.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn c_det(&self) -> &Rational {
        &self.c_det
    }

    pub fn cj_dets(&self) -> &[Rational] {
        &self.cj_dets
    }
}

/// Win probabilities and expected waiting time via the `C` determinants:
/// `Pr(winner = i) = det C^i / sum_j det C^j` and
/// `E(wait) = det C / sum_j det C^j`.
pub fn star_analysis(sys: &PatternSystem) -> Result<(Vec<Rational>, Rational), SolverError> {
    let star = StarMatrix::build(sys);
    let total: Rational = star.cj_dets.iter().sum();
    if total.is_zero() {
        return Err(SolverError::DegenerateDenominator);
    }
    let wins = star.cj_dets.iter().map(|d| d / &total).collect();
    let expected = &star.c_det / &total;
    Ok((wins, expected))
}

/// Residuals `det C - sum_j (A_j * A_i) det C^j`, one per row `i`. All are
/// exactly zero for a correct star matrix; a nonzero entry is evidence of
/// a defect, so callers inspect rather than unwrap.
pub fn verify_li_identity(sys: &PatternSystem) -> Vec<Rational> {
    let star = StarMatrix::build(sys);
    star.entries
        .iter()
        .map(|row| {
            let mix: Rational = row.iter().zip(&star.cj_dets).map(|(e, d)| e * d).sum();
            &star.c_det - mix
        })
        .collect()
}

/// When `B(s)` is the identity matrix (no self- or cross-overlap besides
/// each pattern matching itself in full), conditional waits collapse to
/// `E(wait) + l_i - sum_k l_k Pr(A_k) / sum_k Pr(A_k)` with
/// `E(wait) = 1 / sum_k Pr(A_k)`. Returns `None` when `B` is not the
/// identity; the check is structural, on the polynomials themselves.
pub fn identity_b_shortcut(sys: &PatternSystem) -> Option<Vec<Rational>> {
    let dist = sys.distribution();
    for (i, a) in sys.patterns().iter().enumerate() {
        for (j, b) in sys.patterns().iter().enumerate() {
            let w = correlation_poly(dist, a, b);
            let is_identity_entry = if i == j { w.is_one() } else { w.is_zero() };
            if !is_identity_entry {
                return None;
            }
        }
    }
    let probs: Vec<Rational> = sys
        .patterns()
        .iter()
        .map(|a| pattern_prob(dist, a))
        .collect();
    let total: Rational = probs.iter().sum();
    let expected = Rational::one() / &total;
    let mean_len = sys
        .patterns()
        .iter()
        .zip(&probs)
        .map(|(a, p)| rat_int(a.len() as i64) * p)
        .sum::<Rational>()
        / &total;
    Some(
        sys.patterns()
            .iter()
            .map(|a| &expected + rat_int(a.len() as i64) - &mean_len)
            .collect(),
    )
}

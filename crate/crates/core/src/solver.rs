//! From a validated pattern system to generating functions, win
//! probabilities, expected and conditional waiting times.
//!
//! Everything rests on the correlation matrix `B(s)` with entry
//! `(i, j) = w_{A_i}^{A_j}(s)` and its replaced-column variants `B^j(s)`:
//! the race's generating functions are ratios of their determinants, and
//! the first moments fall out by exact evaluation at `s = 1`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::{Poly, PolyMatrix, RatFn, Rational};
use crate::patterns::{correlation_poly, pattern_prob, Distribution, Pattern, PatternSystem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    /// The replaced-column determinants sum to zero at `s = 1`. Believed
    /// impossible for validated systems; surfaced rather than divided by.
    #[error("DegenerateDenominator: replaced-column determinants sum to zero at s = 1")]
    DegenerateDenominator,
    #[error("ZeroWinProbability: pattern {index} ('{label}') has win probability 0")]
    ZeroWinProbability { index: usize, label: String },
}

/// The generating functions of one race, all over the common unreduced
/// denominator `sum_j det B^j(s) + (1 - s) det B(s)`.
#[derive(Clone, Debug)]
pub struct GeneratingBundle {
    gfs: Vec<RatFn>,
    tail_gf: RatFn,
    b_det: Poly,
    bj_dets: Vec<Poly>,
}

impl GeneratingBundle {
    /// Per-pattern generating functions of first occurrence at time `n`.
    pub fn gfs(&self) -> &[RatFn] {
        &self.gfs
    }

    pub fn gf(&self, i: usize) -> &RatFn {
        &self.gfs[i]
    }

    /// Generating function of the tail probabilities `Pr(wait > n)`.
    pub fn tail_gf(&self) -> &RatFn {
        &self.tail_gf
    }

    pub fn b_det(&self) -> &Poly {
        &self.b_det
    }

    pub fn bj_dets(&self) -> &[Poly] {
        &self.bj_dets
    }

    /// The shared denominator of every generating function in the bundle.
    pub fn denominator(&self) -> &Poly {
        self.tail_gf.denom()
    }
}

/// Exact first-moment summary of one race.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    win_probs: Vec<Rational>,
    expected_wait: Rational,
    conditional_waits: Vec<Rational>,
    bundle: GeneratingBundle,
}

impl AnalysisReport {
    /// `Pr(pattern i appears before all others)`, summing exactly to 1.
    pub fn win_probs(&self) -> &[Rational] {
        &self.win_probs
    }

    /// Expected number of letters until some pattern occurs.
    pub fn expected_wait(&self) -> &Rational {
        &self.expected_wait
    }

    /// Expected waiting time given that pattern `i` wins the race.
    pub fn conditional_waits(&self) -> &[Rational] {
        &self.conditional_waits
    }

    pub fn bundle(&self) -> &GeneratingBundle {
        &self.bundle
    }
}

/// Builds `B(s)` plus the `m` variants with column `j` replaced by the
/// column of `Pr(A_i) s^{l_i}`.
pub fn build_matrices(sys: &PatternSystem) -> (PolyMatrix, Vec<PolyMatrix>) {
    let dist = sys.distribution();
    let rows: Vec<Vec<Poly>> = sys
        .patterns()
        .iter()
        .map(|a| {
            sys.patterns()
                .iter()
                .map(|b| correlation_poly(dist, a, b))
                .collect()
        })
        .collect();
    let b = PolyMatrix::from_rows(rows);
    let col = occurrence_column(sys);
    let bjs = (0..sys.len()).map(|j| b.with_column(j, &col)).collect();
    (b, bjs)
}

fn occurrence_column(sys: &PatternSystem) -> Vec<Poly> {
    sys.patterns()
        .iter()
        .map(|a| Poly::monomial(pattern_prob(sys.distribution(), a), a.len()))
        .collect()
}

fn determinants(sys: &PatternSystem) -> (Poly, Vec<Poly>) {
    let (b, bjs) = build_matrices(sys);
    (b.det(), bjs.iter().map(PolyMatrix::det).collect())
}

fn common_denominator(b_det: &Poly, bj_dets: &[Poly]) -> Poly {
    let sum_bj = bj_dets.iter().fold(Poly::zero(), |acc, p| &acc + p);
    let one_minus_s = Poly::new(vec![Rational::one(), -Rational::one()]);
    &sum_bj + &(&one_minus_s * b_det)
}

/// Exact generating functions of the race. Denominators are kept unreduced
/// so the stored closed form matches the determinant solution verbatim.
pub fn generating_functions(sys: &PatternSystem) -> GeneratingBundle {
    let (b_det, bj_dets) = determinants(sys);
    let denom = common_denominator(&b_det, &bj_dets);
    let gfs = bj_dets
        .iter()
        .map(|n| RatFn::new(n.clone(), denom.clone()))
        .collect();
    let tail_gf = RatFn::new(b_det.clone(), denom);
    GeneratingBundle {
        gfs,
        tail_gf,
        b_det,
        bj_dets,
    }
}

fn sum_at_one(bj_dets: &[Poly]) -> Result<(Poly, Rational), SolverError> {
    let d_poly = bj_dets.iter().fold(Poly::zero(), |acc, p| &acc + p);
    let d1 = d_poly.eval(&Rational::one());
    if d1.is_zero() {
        return Err(SolverError::DegenerateDenominator);
    }
    Ok((d_poly, d1))
}

fn win_probs_from(bj_dets: &[Poly]) -> Result<Vec<Rational>, SolverError> {
    let (_, d1) = sum_at_one(bj_dets)?;
    Ok(bj_dets
        .iter()
        .map(|n| n.eval(&Rational::one()) / &d1)
        .collect())
}

fn expected_wait_from(b_det: &Poly, bj_dets: &[Poly]) -> Result<Rational, SolverError> {
    let (_, d1) = sum_at_one(bj_dets)?;
    Ok(b_det.eval(&Rational::one()) / d1)
}

/// Conditional expectations by the quotient rule: with `N = det B^i` and
/// `D = sum_j det B^j`, the correction term is `(N'D - ND')/D^2` at `s = 1`
/// scaled by the reciprocal win probability.
fn conditional_waits_from(
    sys: &PatternSystem,
    b_det: &Poly,
    bj_dets: &[Poly],
) -> Result<Vec<Rational>, SolverError> {
    let (d_poly, d1) = sum_at_one(bj_dets)?;
    let d1_prime = d_poly.derivative().eval(&Rational::one());
    let expected = b_det.eval(&Rational::one()) / &d1;
    let mut out = Vec::with_capacity(bj_dets.len());
    for (i, n_poly) in bj_dets.iter().enumerate() {
        let n1 = n_poly.eval(&Rational::one());
        if n1.is_zero() {
            return Err(SolverError::ZeroWinProbability {
                index: i,
                label: sys.pattern(i).label().to_string(),
            });
        }
        let n1_prime = n_poly.derivative().eval(&Rational::one());
        let ratio_derivative = (&n1_prime * &d1 - &n1 * &d1_prime) / (&d1 * &d1);
        let win = &n1 / &d1;
        out.push(&expected + ratio_derivative / win);
    }
    Ok(out)
}

/// `Pr(pattern i precedes all others)` for every pattern, exactly.
pub fn win_probabilities(sys: &PatternSystem) -> Result<Vec<Rational>, SolverError> {
    let (_, bj_dets) = determinants(sys);
    win_probs_from(&bj_dets)
}

/// Expected waiting time until some pattern occurs.
pub fn expected_wait(sys: &PatternSystem) -> Result<Rational, SolverError> {
    let (b_det, bj_dets) = determinants(sys);
    expected_wait_from(&b_det, &bj_dets)
}

/// Expected waiting time for a single pattern as the sum of reciprocal
/// prefix probabilities over self-overlap positions.
///
/// Requires every letter of `a` to have positive probability.
pub fn solovev_wait(dist: &Distribution, a: &Pattern) -> Rational {
    let l = a.len();
    let mut prefix_prob = Rational::one();
    let mut total = Rational::zero();
    for k in 1..=l {
        prefix_prob *= dist.prob(a.symbols()[k - 1]);
        if a.symbols()[..k] == a.symbols()[l - k..] {
            total += Rational::one() / &prefix_prob;
        }
    }
    total
}

/// Expected waiting time given each pattern wins, exactly.
pub fn conditional_waits(sys: &PatternSystem) -> Result<Vec<Rational>, SolverError> {
    let (b_det, bj_dets) = determinants(sys);
    conditional_waits_from(sys, &b_det, &bj_dets)
}

/// Runs the whole pipeline once: generating functions, win probabilities,
/// expected and conditional waiting times.
pub fn analyze(sys: &PatternSystem) -> Result<AnalysisReport, SolverError> {
    let bundle = generating_functions(sys);
    let win_probs = win_probs_from(&bundle.bj_dets)?;
    let expected_wait = expected_wait_from(&bundle.b_det, &bundle.bj_dets)?;
    let conditional_waits = conditional_waits_from(sys, &bundle.b_det, &bundle.bj_dets)?;
    Ok(AnalysisReport {
        win_probs,
        expected_wait,
        conditional_waits,
        bundle,
    })
}

/// Cleared-denominator residuals of the linear system the generating
/// functions solve. The first entry checks the stored common denominator
/// against its defining sum; the rest check, row by row, that
/// `Pr(A_i) s^{l_i} det B(s) = sum_j w_{A_i}^{A_j}(s) det B^j(s)`.
/// Every residual is identically zero exactly when the determinant solution
/// satisfies the system.
pub fn system_residuals(sys: &PatternSystem) -> (Poly, Vec<Poly>) {
    let bundle = generating_functions(sys);
    let rebuilt = common_denominator(&bundle.b_det, &bundle.bj_dets);
    let tail_residual = &rebuilt - bundle.denominator();

    let dist = sys.distribution();
    let row_residuals = sys
        .patterns()
        .iter()
        .map(|a| {
            let lhs = &Poly::monomial(pattern_prob(dist, a), a.len()) * &bundle.b_det;
            let rhs = sys
                .patterns()
                .iter()
                .zip(&bundle.bj_dets)
                .fold(Poly::zero(), |acc, (b, det)| {
                    &acc + &(&correlation_poly(dist, a, b) * det)
                });
            &lhs - &rhs
        })
        .collect();
    (tail_residual, row_residuals)
}

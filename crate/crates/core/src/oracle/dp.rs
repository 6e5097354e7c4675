//! Exact first-occurrence distribution by stepping a rational state
//! distribution through the matching automaton.

use num_traits::{One, Zero};

use super::automaton::MatchAutomaton;
use crate::exactmath::Rational;
use crate::patterns::PatternSystem;

/// `p(n, i)` = probability that pattern `i` wins the race exactly at step
/// `n`; `q(n)` = probability that no pattern has occurred through step `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    p: Vec<Vec<Rational>>,
    q: Vec<Rational>,
}

impl DpTable {
    pub fn n_max(&self) -> usize {
        self.p.len() - 1
    }

    pub fn pattern_count(&self) -> usize {
        self.p[0].len()
    }

    pub fn p(&self, n: usize, i: usize) -> &Rational {
        &self.p[n][i]
    }

    pub fn q(&self, n: usize) -> &Rational {
        &self.q[n]
    }
}

/// Exact table of `p(n, i)` and `q(n)` for `n` up to `n_max`.
///
/// Mass flows from the root through prefix states; whatever enters an
/// accepting state at step `n` is booked to that pattern and removed, so
/// `q(n)` is the mass still in flight.
pub fn dp_distribution(sys: &PatternSystem, n_max: usize) -> DpTable {
    assert!(n_max >= 1, "n_max must be at least 1");
    let automaton = MatchAutomaton::build(sys);
    let dist = sys.distribution();
    let m = sys.len();

    let mut state_mass = vec![Rational::zero(); automaton.state_count()];
    state_mass[automaton.start()] = Rational::one();
    let mut p = vec![vec![Rational::zero(); m]];
    let mut q = vec![Rational::one()];

    for n in 1..=n_max {
        let mut next = vec![Rational::zero(); automaton.state_count()];
        let mut row = vec![Rational::zero(); m];
        for (s, mass) in state_mass.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            for (c, prob) in dist.probs().iter().enumerate() {
                if prob.is_zero() {
                    continue;
                }
                let t = automaton.step(s, c);
                let flow = mass * prob;
                match automaton.accepting(t) {
                    Some(i) => row[i] += flow,
                    None => next[t] += flow,
                }
            }
        }
        let spent: Rational = row.iter().sum();
        q.push(&q[n - 1] - spent);
        p.push(row);
        state_mass = next;
    }
    DpTable { p, q }
}

//! Exact analysis of pattern races: several patterns compete to appear first
//! in an i.i.d. stream of letters, and this crate computes which one wins
//! with what probability, how long the race takes in expectation, and the
//! full generating functions behind those numbers.
//!
//! All results are exact rationals derived from determinants of correlation
//! polynomial matrices. Two independent ground-truth engines, an exact
//! automaton dynamic program and a seeded Monte Carlo simulator, validate
//! the closed forms.
//!
//! ```
//! use patrace_core::exactmath::rat;
//! use patrace_core::patterns::{Alphabet, Distribution, Pattern, PatternSystem};
//!
//! let alphabet = Alphabet::new(["H", "T"]).unwrap();
//! let dist = Distribution::uniform(alphabet);
//! let patterns = ["THH", "HTH", "HHT"]
//!     .iter()
//!     .map(|w| Pattern::parse(dist.alphabet(), w).unwrap())
//!     .collect();
//! let sys = PatternSystem::new(dist, patterns).unwrap();
//!
//! let report = patrace_core::solver::analyze(&sys).unwrap();
//! assert_eq!(report.win_probs()[0], rat(5, 12)); // THH beats HTH and HHT
//! assert_eq!(*report.expected_wait(), rat(31, 6));
//! ```

pub mod exactmath;
pub mod li;
pub mod oracle;
pub mod patterns;
pub mod solver;

pub use exactmath::{Poly, PolyMatrix, RatFn, Rational};
pub use patterns::{Alphabet, Distribution, Pattern, PatternSystem, ValidationError};
pub use solver::{analyze, AnalysisReport, SolverError};

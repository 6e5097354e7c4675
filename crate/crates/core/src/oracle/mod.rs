//! Ground-truth engines that never touch the determinant formulas: an
//! exact dynamic program over a matching automaton and a seeded Monte
//! Carlo simulator. Their whole purpose is to disagree loudly if the
//! closed forms are wrong.

mod automaton;
mod dp;
mod sim;

pub use automaton::MatchAutomaton;
pub use dp::{dp_distribution, DpTable};
#[cfg(feature = "parallel")]
pub use sim::simulate_parallel;
pub use sim::{simulate, simulate_sequential, SimConfig, SimError, SimReport};

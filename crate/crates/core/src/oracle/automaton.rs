//! Deterministic matching automaton over pattern prefixes.
//!
//! States are the proper prefixes of all patterns plus a root; missing
//! edges follow the longest suffix that is again a pattern prefix. States
//! completing a pattern are absorbing, which is exactly first-occurrence
//! semantics for the race.

use std::collections::VecDeque;

use crate::patterns::PatternSystem;

#[derive(Clone, Debug)]
pub struct MatchAutomaton {
    /// `transitions[state][letter]`, total over all (state, letter) pairs.
    transitions: Vec<Vec<usize>>,
    /// Winning pattern index for accepting states.
    accepting: Vec<Option<usize>>,
}

impl MatchAutomaton {
    pub fn build(sys: &PatternSystem) -> MatchAutomaton {
        let k = sys.alphabet().len();
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
        let mut accepting: Vec<Option<usize>> = vec![None];
        for (idx, pat) in sys.patterns().iter().enumerate() {
            let mut node = 0;
            for &c in pat.symbols() {
                node = match children[node][c] {
                    Some(next) => next,
                    None => {
                        children.push(vec![None; k]);
                        accepting.push(None);
                        let next = children.len() - 1;
                        children[node][c] = Some(next);
                        next
                    }
                };
            }
            accepting[node] = Some(idx);
        }

        let n = children.len();
        let mut transitions = vec![vec![0usize; k]; n];
        let mut fail = vec![0usize; n];
        let mut queue = VecDeque::new();
        for c in 0..k {
            if let Some(next) = children[0][c] {
                transitions[0][c] = next;
                queue.push_back(next);
            }
        }
        while let Some(u) = queue.pop_front() {
            // a pattern ending strictly inside this word ends the race too;
            // in a reduced system this never fires
            if accepting[u].is_none() {
                accepting[u] = accepting[fail[u]];
            }
            for c in 0..k {
                match children[u][c] {
                    Some(v) => {
                        fail[v] = transitions[fail[u]][c];
                        transitions[u][c] = v;
                        queue.push_back(v);
                    }
                    None => {
                        transitions[u][c] = transitions[fail[u]][c];
                    }
                }
            }
        }

        for (s, row) in transitions.iter_mut().enumerate() {
            if accepting[s].is_some() {
                row.fill(s);
            }
        }
        MatchAutomaton {
            transitions,
            accepting,
        }
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.transitions[state][letter]
    }

    /// Index of the pattern this state completes, if any.
    pub fn accepting(&self, state: usize) -> Option<usize> {
        self.accepting[state]
    }

    /// Runs the automaton over a letter sequence; returns the winning
    /// pattern and the 1-based step of its first completion.
    pub fn feed<I>(&self, letters: I) -> Option<(usize, u64)>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut state = self.start();
        for (steps, c) in letters.into_iter().enumerate() {
            state = self.step(state, c);
            if let Some(winner) = self.accepting(state) {
                return Some((winner, steps as u64 + 1));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::patterns::{validate_system, Alphabet, Distribution, Pattern};

    fn coin_system(words: &[&str]) -> PatternSystem {
        let alphabet = Alphabet::new(["H", "T"]).unwrap();
        let d = Distribution::new(alphabet, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let patterns = words
            .iter()
            .map(|w| Pattern::parse(d.alphabet(), w).unwrap())
            .collect();
        validate_system(d, patterns).unwrap()
    }

    fn letters(sys: &PatternSystem, text: &str) -> Vec<usize> {
        Pattern::parse(sys.alphabet(), text).unwrap().symbols().to_vec()
    }

    #[test]
    fn state_count_is_bounded_by_total_pattern_length() {
        for words in [
            vec!["THH", "HTH", "HHT"],
            vec!["HH", "TT"],
            vec!["H"],
            vec!["HTHTH"],
        ] {
            let sys = coin_system(&words);
            let automaton = MatchAutomaton::build(&sys);
            let bound = 1 + sys.patterns().iter().map(Pattern::len).sum::<usize>();
            assert!(automaton.state_count() <= bound);
        }
        // shared prefix H of HTH and HHT saves exactly one state
        let automaton = MatchAutomaton::build(&coin_system(&["THH", "HTH", "HHT"]));
        assert_eq!(automaton.state_count(), 9);
    }

    #[test]
    fn feed_finds_first_occurrences() {
        let sys = coin_system(&["THH", "HTH", "HHT"]);
        let automaton = MatchAutomaton::build(&sys);
        assert_eq!(automaton.feed(letters(&sys, "HTH")), Some((1, 3)));
        assert_eq!(automaton.feed(letters(&sys, "THTHH")), Some((1, 4)));
        assert_eq!(automaton.feed(letters(&sys, "TTTHH")), Some((0, 5)));
        assert_eq!(automaton.feed(letters(&sys, "HHHHT")), Some((2, 5)));
        assert_eq!(automaton.feed(letters(&sys, "TTTTT")), None);
    }

    #[test]
    fn overlapping_prefixes_are_reused_not_restarted() {
        // after HH, a T completes HHT even though the H run was long
        let sys = coin_system(&["HHT"]);
        let automaton = MatchAutomaton::build(&sys);
        assert_eq!(automaton.feed(letters(&sys, "HHHHHT")), Some((0, 6)));
        // after failing HTH at HTT, the trailing T is dead weight
        let sys = coin_system(&["HTH"]);
        let automaton = MatchAutomaton::build(&sys);
        assert_eq!(automaton.feed(letters(&sys, "HTTHTH")), Some((0, 6)));
    }

    #[test]
    fn accepting_states_absorb() {
        let sys = coin_system(&["HTH", "TT"]);
        let automaton = MatchAutomaton::build(&sys);
        for s in 0..automaton.state_count() {
            if automaton.accepting(s).is_some() {
                for c in 0..sys.alphabet().len() {
                    assert_eq!(automaton.step(s, c), s);
                }
            }
        }
    }

    #[test]
    fn every_transition_stays_in_range() {
        let sys = coin_system(&["THH", "HTH", "HHT"]);
        let automaton = MatchAutomaton::build(&sys);
        for s in 0..automaton.state_count() {
            for c in 0..sys.alphabet().len() {
                assert!(automaton.step(s, c) < automaton.state_count());
            }
        }
    }

    #[test]
    fn single_letter_pattern_accepts_immediately() {
        let sys = coin_system(&["H"]);
        let automaton = MatchAutomaton::build(&sys);
        assert_eq!(automaton.feed([1, 1, 0, 0].to_vec()), Some((0, 3)));
    }
}

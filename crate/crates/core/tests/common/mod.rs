//! Seeded random pattern systems shared by the integration suites.
//! Each suite compiles its own copy, so not every helper is used in all.
#![allow(dead_code)]

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use patrace_core::exactmath::Rational;
use patrace_core::patterns::{validate_system, Alphabet, Distribution, Pattern, PatternSystem};

/// Deterministic random system: alphabet of 2 to 4 letters with a random
/// rational distribution (integer weights 1..=9), and 1 to 4 mutually
/// substring-free patterns of length 2..=6 (length 1 allowed when alone).
pub fn random_system(seed: u64) -> PatternSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = random_distribution(&mut rng);
    let k = dist.alphabet().len();

    let m = rng.random_range(1..=4usize);
    let mut patterns: Vec<Pattern> = Vec::new();
    let mut attempts = 0;
    while patterns.len() < m && attempts < 200 {
        attempts += 1;
        let len = if m == 1 && rng.random_range(0..8u32) == 0 {
            1
        } else {
            rng.random_range(2..=6usize)
        };
        let symbols: Vec<usize> = (0..len).map(|_| rng.random_range(0..k)).collect();
        let candidate = Pattern::from_ids(dist.alphabet(), symbols).unwrap();
        let reduced = patterns
            .iter()
            .all(|p| !p.contains(&candidate) && !candidate.contains(p));
        if reduced {
            patterns.push(candidate);
        }
    }
    validate_system(dist, patterns).unwrap()
}

/// Deterministic random single-pattern system, pattern length 1..=6.
pub fn random_single_pattern_system(seed: u64) -> PatternSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5151_5151_5151_5151);
    let dist = random_distribution(&mut rng);
    let k = dist.alphabet().len();
    let len = rng.random_range(1..=6usize);
    let symbols: Vec<usize> = (0..len).map(|_| rng.random_range(0..k)).collect();
    let pattern = Pattern::from_ids(dist.alphabet(), symbols).unwrap();
    validate_system(dist, vec![pattern]).unwrap()
}

fn random_distribution(rng: &mut ChaCha8Rng) -> Distribution {
    let k = rng.random_range(2..=4usize);
    let letters: Vec<String> = (0..k)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    let alphabet = Alphabet::new(letters).unwrap();
    let weights: Vec<u64> = (0..k).map(|_| rng.random_range(1..=9u64)).collect();
    let total: u64 = weights.iter().sum();
    let probs: Vec<Rational> = weights
        .iter()
        .map(|&w| Rational::new(w.into(), total.into()))
        .collect();
    debug_assert!(probs.iter().sum::<Rational>().is_one());
    Distribution::new(alphabet, probs).unwrap()
}

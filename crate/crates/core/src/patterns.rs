//! Alphabets, i.i.d. letter distributions, patterns and reduced pattern
//! systems, plus the correlation polynomials that drive the solver.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::{Poly, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("alphabet has no letters")]
    EmptyAlphabet,
    #[error("duplicate letter '{0}' in alphabet")]
    DuplicateLetter(String),
    #[error("letter '{0}' is not in the alphabet")]
    UnknownLetter(String),
    #[error("pattern '{0}' is empty")]
    EmptyPattern(String),
    #[error("BadDistribution: {0}")]
    BadDistribution(String),
    #[error("NotReduced: '{contained_label}' is a substring of '{container_label}'")]
    NotReduced {
        /// Index of the pattern that contains the other.
        container: usize,
        /// Index of the contained pattern.
        contained: usize,
        container_label: String,
        contained_label: String,
    },
    #[error("DuplicatePattern: '{0}' appears more than once")]
    DuplicatePattern(String),
    #[error("ZeroProbabilityLetter: letter '{letter}' in pattern '{pattern}' has probability 0")]
    ZeroProbabilityLetter { letter: String, pattern: String },
}

/// Ordered set of distinct letters. Letters are short strings, so
/// multi-character tokens work the same as single characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self, ValidationError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(ValidationError::EmptyAlphabet);
        }
        for (i, l) in letters.iter().enumerate() {
            if letters[..i].contains(l) {
                return Err(ValidationError::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, id: usize) -> &str {
        &self.letters[id]
    }

    pub fn id_of(&self, letter: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == letter)
    }

    /// True when every letter is a single character, so an unseparated word
    /// like "THH" can be split unambiguously.
    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }
}

/// An i.i.d. letter law: one exact probability per alphabet letter,
/// summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    alphabet: Alphabet,
    probs: Vec<Rational>,
}

impl Distribution {
    /// Probabilities indexed like the alphabet letters.
    pub fn new(alphabet: Alphabet, probs: Vec<Rational>) -> Result<Self, ValidationError> {
        if probs.len() != alphabet.len() {
            return Err(ValidationError::BadDistribution(format!(
                "{} probabilities for {} letters",
                probs.len(),
                alphabet.len()
            )));
        }
        for (l, p) in alphabet.letters().iter().zip(&probs) {
            if p < &Rational::zero() || p > &Rational::one() {
                return Err(ValidationError::BadDistribution(format!(
                    "probability of '{l}' is {p}, outside [0, 1]"
                )));
            }
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(ValidationError::BadDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Distribution { alphabet, probs })
    }

    /// Probabilities given as (letter, probability) pairs, one per letter.
    pub fn from_pairs<S: AsRef<str>>(
        alphabet: Alphabet,
        pairs: &[(S, Rational)],
    ) -> Result<Self, ValidationError> {
        let mut probs: Vec<Option<Rational>> = vec![None; alphabet.len()];
        for (letter, p) in pairs {
            let letter = letter.as_ref();
            let id = alphabet
                .id_of(letter)
                .ok_or_else(|| ValidationError::UnknownLetter(letter.to_string()))?;
            if probs[id].is_some() {
                return Err(ValidationError::BadDistribution(format!(
                    "letter '{letter}' given more than one probability"
                )));
            }
            probs[id] = Some(p.clone());
        }
        if let Some(missing) = probs.iter().position(Option::is_none) {
            return Err(ValidationError::BadDistribution(format!(
                "no probability given for letter '{}'",
                alphabet.letter(missing)
            )));
        }
        Distribution::new(alphabet, probs.into_iter().flatten().collect())
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        let p = Rational::new(1.into(), (n as i64).into());
        Distribution {
            alphabet,
            probs: vec![p; n],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn prob(&self, letter: usize) -> &Rational {
        &self.probs[letter]
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }
}

/// A word over the alphabet, stored as letter indices plus a display label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    symbols: Vec<usize>,
    label: String,
}

impl Pattern {
    /// Builds a pattern from letter indices; the label defaults to the
    /// joined letters.
    pub fn from_ids(alphabet: &Alphabet, symbols: Vec<usize>) -> Result<Self, ValidationError> {
        if symbols.is_empty() {
            return Err(ValidationError::EmptyPattern(String::new()));
        }
        let mut label = String::new();
        for &id in &symbols {
            if id >= alphabet.len() {
                return Err(ValidationError::UnknownLetter(format!("#{id}")));
            }
            label.push_str(alphabet.letter(id));
        }
        Ok(Pattern { symbols, label })
    }

    /// Parses a pattern written either as whitespace-separated letters
    /// ("T H H") or, when all letters are single characters, as one word
    /// ("THH").
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, ValidationError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(ValidationError::EmptyPattern(text.to_string()));
        }
        let mut symbols = Vec::new();
        for tok in tokens {
            if let Some(id) = alphabet.id_of(tok) {
                symbols.push(id);
            } else if alphabet.single_char() {
                for ch in tok.chars() {
                    let id = alphabet
                        .id_of(&ch.to_string())
                        .ok_or_else(|| ValidationError::UnknownLetter(ch.to_string()))?;
                    symbols.push(id);
                }
            } else {
                return Err(ValidationError::UnknownLetter(tok.to_string()));
            }
        }
        Pattern::from_ids(alphabet, symbols)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when `other` occurs in `self` as a contiguous substring.
    /// Lengths here are tiny, so a naive scan is the right tool.
    pub fn contains(&self, other: &Pattern) -> bool {
        let (n, k) = (self.symbols.len(), other.symbols.len());
        if k > n {
            return false;
        }
        self.symbols.windows(k).any(|w| w == other.symbols)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// A validated problem instance: a distribution plus a reduced set of
/// distinct patterns, each possible under the distribution.
#[derive(Clone, Debug)]
pub struct PatternSystem {
    dist: Distribution,
    patterns: Vec<Pattern>,
}

impl PatternSystem {
    pub fn new(dist: Distribution, patterns: Vec<Pattern>) -> Result<Self, ValidationError> {
        validate_system(dist, patterns)
    }

    pub fn distribution(&self) -> &Distribution {
        &self.dist
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dist.alphabet()
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn pattern(&self, i: usize) -> &Pattern {
        &self.patterns[i]
    }

    /// Number of competing patterns.
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

/// Checks every invariant of a pattern system. Substring containment is
/// checked for every ordered pair, so the reducedness verdict does not
/// depend on pattern order.
pub fn validate_system(
    dist: Distribution,
    patterns: Vec<Pattern>,
) -> Result<PatternSystem, ValidationError> {
    if patterns.is_empty() {
        return Err(ValidationError::EmptyPattern(
            "pattern system has no patterns".into(),
        ));
    }
    for p in &patterns {
        for &id in p.symbols() {
            if id >= dist.alphabet().len() {
                return Err(ValidationError::UnknownLetter(format!("#{id}")));
            }
            if dist.prob(id).is_zero() {
                return Err(ValidationError::ZeroProbabilityLetter {
                    letter: dist.alphabet().letter(id).to_string(),
                    pattern: p.label().to_string(),
                });
            }
        }
    }
    for (i, a) in patterns.iter().enumerate() {
        for (j, b) in patterns.iter().enumerate() {
            if i == j {
                continue;
            }
            if a.symbols() == b.symbols() {
                return Err(ValidationError::DuplicatePattern(a.label().to_string()));
            }
            if a.contains(b) {
                return Err(ValidationError::NotReduced {
                    container: i,
                    contained: j,
                    container_label: a.label().to_string(),
                    contained_label: b.label().to_string(),
                });
            }
        }
    }
    Ok(PatternSystem { dist, patterns })
}

/// Probability that the next `a.len()` letters spell out `a`: the product
/// of letter probabilities under the i.i.d. law.
pub fn pattern_prob(dist: &Distribution, a: &Pattern) -> Rational {
    a.symbols()
        .iter()
        .map(|&id| dist.prob(id))
        .product()
}

/// Correlation polynomial `w_a^b(s)`.
///
/// For each `k` where the first `k` letters of `a` equal the last `k`
/// letters of `b`, the polynomial gains the term
/// `Pr(last len(a)-k letters of a) * s^(len(a)-k)`. The `k = len(a)` term
/// contributes the constant 1 via the empty product.
pub fn correlation_poly(dist: &Distribution, a: &Pattern, b: &Pattern) -> Poly {
    let la = a.len();
    let lb = b.len();
    let mut coeffs = vec![Rational::zero(); la];
    for k in 1..=la.min(lb) {
        if a.symbols()[..k] == b.symbols()[lb - k..] {
            let tail_prob: Rational = a.symbols()[k..]
                .iter()
                .map(|&id| dist.prob(id))
                .product();
            coeffs[la - k] += tail_prob;
        }
    }
    Poly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};

    pub(crate) fn coin(p: Rational) -> Distribution {
        let alphabet = Alphabet::new(["H", "T"]).unwrap();
        let q = Rational::one() - &p;
        Distribution::new(alphabet, vec![p, q]).unwrap()
    }

    fn pat(dist: &Distribution, text: &str) -> Pattern {
        Pattern::parse(dist.alphabet(), text).unwrap()
    }

    #[test]
    fn correlation_polynomials_of_thh_and_thth() {
        for p in [rat(1, 2), rat(1, 3), rat(3, 7)] {
            let d = coin(p.clone());
            let a = pat(&d, "THH");
            let b = pat(&d, "THTH");
            let q = Rational::one() - &p;

            assert_eq!(correlation_poly(&d, &a, &b), Poly::monomial(p.clone(), 1));
            assert_eq!(correlation_poly(&d, &b, &a), Poly::zero());
            assert_eq!(correlation_poly(&d, &a, &a), Poly::one());
            let pq = &p * &q;
            assert_eq!(
                correlation_poly(&d, &b, &b),
                Poly::new(vec![Rational::one(), Rational::zero(), pq])
            );
        }
    }

    #[test]
    fn correlation_entry_2_1_of_coin_race() {
        // w_{HTH}^{THH} = pq s^2
        let d = coin(rat(1, 2));
        let a = pat(&d, "HTH");
        let b = pat(&d, "THH");
        assert_eq!(correlation_poly(&d, &a, &b), Poly::monomial(rat(1, 4), 2));
    }

    #[test]
    fn self_correlation_has_constant_term_one() {
        let d = coin(rat(2, 5));
        for w in ["H", "HT", "THH", "HTHTH", "TTTT"] {
            let a = pat(&d, w);
            assert_eq!(correlation_poly(&d, &a, &a).coeff(0), rat_int(1));
        }
    }

    #[test]
    fn cross_correlation_of_reduced_pair_has_zero_constant_term() {
        let d = coin(rat(1, 2));
        let sys = validate_system(
            d.clone(),
            vec![pat(&d, "THH"), pat(&d, "HTH"), pat(&d, "HHT")],
        )
        .unwrap();
        for (i, a) in sys.patterns().iter().enumerate() {
            for (j, b) in sys.patterns().iter().enumerate() {
                if i != j {
                    assert!(correlation_poly(&d, a, b).coeff(0).is_zero());
                }
            }
        }
    }

    #[test]
    fn pattern_prob_examples() {
        let d = coin(rat(1, 2));
        assert_eq!(pattern_prob(&d, &pat(&d, "THH")), rat(1, 8));
        let dna = Distribution::uniform(Alphabet::new(["A", "C", "G", "T"]).unwrap());
        assert_eq!(pattern_prob(&dna, &pat(&dna, "ACG")), rat(1, 64));
        let d3 = coin(rat(2, 7));
        assert_eq!(pattern_prob(&d3, &pat(&d3, "H")), rat(2, 7));
    }

    #[test]
    fn pattern_prob_is_multiplicative_under_concatenation() {
        let d = coin(rat(3, 11));
        let a = pat(&d, "THT");
        let b = pat(&d, "HH");
        let ab = pat(&d, "THTHH");
        assert_eq!(
            pattern_prob(&d, &ab),
            pattern_prob(&d, &a) * pattern_prob(&d, &b)
        );
    }

    #[test]
    fn validates_the_coin_race() {
        let d = coin(rat(1, 2));
        let sys = validate_system(
            d.clone(),
            vec![pat(&d, "THH"), pat(&d, "HTH"), pat(&d, "HHT")],
        );
        assert!(sys.is_ok());
    }

    #[test]
    fn validates_dna_motifs_with_ag_not_contiguous() {
        // AG is a subsequence but not a contiguous substring of ACG/ATG
        let dna = Distribution::uniform(Alphabet::new(["A", "C", "G", "T"]).unwrap());
        let sys = validate_system(
            dna.clone(),
            vec![pat(&dna, "ACG"), pat(&dna, "ATG"), pat(&dna, "AG")],
        );
        assert!(sys.is_ok());
    }

    #[test]
    fn rejects_substring_containment() {
        let d = coin(rat(1, 2));
        let err = validate_system(d.clone(), vec![pat(&d, "TH"), pat(&d, "THH")]).unwrap_err();
        match &err {
            ValidationError::NotReduced {
                container,
                contained,
                ..
            } => {
                assert_eq!((*container, *contained), (1, 0));
            }
            other => panic!("expected NotReduced, got {other:?}"),
        }
        assert_eq!(err.to_string(), "NotReduced: 'TH' is a substring of 'THH'");

        // order of the pair must not matter
        let err = validate_system(d.clone(), vec![pat(&d, "THH"), pat(&d, "TH")]).unwrap_err();
        assert!(matches!(err, ValidationError::NotReduced { .. }));
        // interior containment, not just prefix/suffix
        let err = validate_system(d.clone(), vec![pat(&d, "HTHH"), pat(&d, "TH")]).unwrap_err();
        assert!(matches!(err, ValidationError::NotReduced { .. }));
    }

    #[test]
    fn rejects_duplicates_and_zero_probability_letters() {
        let d = coin(rat(1, 2));
        let err = validate_system(d.clone(), vec![pat(&d, "TH"), pat(&d, "TH")]).unwrap_err();
        assert!(matches!(err, ValidationError::DuplicatePattern(_)));

        let degenerate = coin(rat_int(1)); // Pr(T) = 0
        let p = pat(&degenerate, "TH");
        let err = validate_system(degenerate, vec![p]).unwrap_err();
        assert!(matches!(
            err,
            ValidationError::ZeroProbabilityLetter { .. }
        ));
    }

    #[test]
    fn rejects_bad_distributions() {
        let alphabet = Alphabet::new(["H", "T"]).unwrap();
        let err = Distribution::new(alphabet.clone(), vec![rat(1, 2), rat(1, 3)]).unwrap_err();
        assert!(matches!(err, ValidationError::BadDistribution(_)));
        let err = Distribution::new(alphabet.clone(), vec![rat(3, 2), rat(-1, 2)]).unwrap_err();
        assert!(matches!(err, ValidationError::BadDistribution(_)));
        let err = Distribution::from_pairs(alphabet, &[("H", rat(1, 2)), ("X", rat(1, 2))])
            .unwrap_err();
        assert!(matches!(err, ValidationError::UnknownLetter(_)));
    }

    #[test]
    fn multi_character_letters_parse_when_separated() {
        let alphabet = Alphabet::new(["AU", "GG", "C"]).unwrap();
        let d = Distribution::uniform(alphabet);
        let p = Pattern::parse(d.alphabet(), "AU GG C").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.label(), "AUGGC");
        assert!(Pattern::parse(d.alphabet(), "AUGG").is_err());
    }

    #[test]
    fn length_one_patterns_are_allowed() {
        let d = coin(rat(1, 2));
        let sys = validate_system(d.clone(), vec![pat(&d, "H")]).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(
            correlation_poly(&d, sys.pattern(0), sys.pattern(0)),
            Poly::one()
        );
    }
}

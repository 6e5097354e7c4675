//! Line-oriented problem files. One directive per line, `#` starts a
//! comment, blank lines are skipped:
//!
//! ```text
//! alphabet: H T
//! prob: H = 1/2
//! prob: T = 1/2
//! pattern: THH
//! pattern: HTH = middle
//! ```
//!
//! Rational literals are fractions (`1/2`), integers (`1`) or terminating
//! decimals (`0.25`), all converted exactly. Repeating-decimal notations
//! are rejected rather than approximated.
//!
//! Grammar problems are [`CliError::Parse`] (exit 2); files that parse but
//! describe an invalid system fail in [`ProblemFile::build`] with
//! [`CliError::Validation`] (exit 3).

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use patrace_core::patterns::validate_system;
use patrace_core::{Alphabet, Distribution, Pattern, PatternSystem, Rational, ValidationError};

use crate::CliError;

/// The raw content of a problem file after the grammar pass: letters,
/// exact probabilities in file order, pattern texts with optional labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    alphabet: Vec<String>,
    probabilities: Vec<(String, Rational)>,
    patterns: Vec<(String, Option<String>)>,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<ProblemFile, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        ProblemFile::parse(&text)
    }

    pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
        let mut alphabet: Option<Vec<String>> = None;
        let mut probabilities: Vec<(String, Rational)> = Vec::new();
        let mut patterns: Vec<(String, Option<String>)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let n = idx + 1;
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(n, "expected 'key: value'"))?;
            let rest = rest.trim();
            match key.trim() {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(parse_err(n, "second alphabet line"));
                    }
                    let letters: Vec<String> =
                        rest.split_whitespace().map(str::to_string).collect();
                    if letters.is_empty() {
                        return Err(parse_err(n, "alphabet line lists no letters"));
                    }
                    alphabet = Some(letters);
                }
                "prob" => {
                    let (letter, literal) = rest.split_once('=').ok_or_else(|| {
                        parse_err(n, "expected 'prob: LETTER = VALUE'")
                    })?;
                    let letter = letter.trim();
                    let literal = literal.trim();
                    if letter.is_empty() {
                        return Err(parse_err(n, "probability line names no letter"));
                    }
                    if probabilities.iter().any(|(l, _)| l == letter) {
                        return Err(parse_err(
                            n,
                            &format!("second probability for letter '{letter}'"),
                        ));
                    }
                    let value = parse_rational_literal(literal).map_err(|msg| {
                        parse_err(n, &format!("bad rational literal '{literal}': {msg}"))
                    })?;
                    probabilities.push((letter.to_string(), value));
                }
                "pattern" => {
                    let (text, label) = match rest.split_once('=') {
                        Some((t, l)) => {
                            let label = l.trim();
                            if label.is_empty() {
                                return Err(parse_err(n, "pattern label is empty"));
                            }
                            (t.trim(), Some(label.to_string()))
                        }
                        None => (rest, None),
                    };
                    if text.is_empty() {
                        return Err(parse_err(n, "pattern line lists no letters"));
                    }
                    patterns.push((text.to_string(), label));
                }
                other => {
                    return Err(parse_err(
                        n,
                        &format!("unknown key '{other}' (expected alphabet, prob or pattern)"),
                    ));
                }
            }
        }

        let alphabet =
            alphabet.ok_or_else(|| CliError::Parse("problem file has no alphabet line".into()))?;
        if patterns.is_empty() {
            return Err(CliError::Parse("problem file lists no patterns".into()));
        }
        Ok(ProblemFile {
            alphabet,
            probabilities,
            patterns,
        })
    }

    /// Semantic pass: build and validate the pattern system.
    pub fn build(&self) -> Result<PatternSystem, CliError> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        for (letter, _) in &self.probabilities {
            if alphabet.id_of(letter).is_none() {
                return Err(ValidationError::UnknownLetter(letter.clone()).into());
            }
        }
        let mut probs = Vec::with_capacity(alphabet.len());
        for letter in alphabet.letters() {
            let value = self
                .probabilities
                .iter()
                .find(|(l, _)| l == letter)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| {
                    ValidationError::BadDistribution(format!(
                        "no probability given for letter '{letter}'"
                    ))
                })?;
            probs.push(value);
        }
        let dist = Distribution::new(alphabet, probs)?;
        let mut patterns = Vec::with_capacity(self.patterns.len());
        for (text, label) in &self.patterns {
            let mut pattern = Pattern::parse(dist.alphabet(), text)?;
            if let Some(label) = label {
                pattern = pattern.with_label(label.clone());
            }
            patterns.push(pattern);
        }
        validate_system(dist, patterns).map_err(Into::into)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn probabilities(&self) -> &[(String, Rational)] {
        &self.probabilities
    }

    pub fn patterns(&self) -> &[(String, Option<String>)] {
        &self.patterns
    }
}

fn parse_err(line: usize, msg: &str) -> CliError {
    CliError::Parse(format!("line {line}: {msg}"))
}

/// Parses `a/b`, an integer, or a terminating decimal, exactly.
pub fn parse_rational_literal(text: &str) -> Result<Rational, String> {
    if text.is_empty() {
        return Err("empty value".into());
    }
    if text.contains("...") || text.contains('(') || text.contains(')') || text.contains('\u{2026}')
    {
        return Err(
            "repeating decimals cannot be represented exactly; write a fraction such as 1/3"
                .into(),
        );
    }
    if let Some((numer, denom)) = text.split_once('/') {
        let numer = parse_int(numer.trim())?;
        let denom = parse_int(denom.trim())?;
        if denom.is_zero() {
            return Err("denominator is zero".into());
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let (sign, whole) = match whole.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if !is_digits(whole) || !is_digits(frac) || (whole.is_empty() && frac.is_empty()) {
            return Err("not a terminating decimal".into());
        }
        let digits = format!("{whole}{frac}");
        let numer = BigInt::from_str(&digits).expect("digit strings parse") * sign;
        let denom = BigInt::from(10).pow(frac.len() as u32);
        return Ok(Rational::new(numer, denom));
    }
    Ok(Rational::from_integer(parse_int(text)?))
}

fn is_digits(s: &str) -> bool {
    s.chars().all(|c| c.is_ascii_digit())
}

fn parse_int(text: &str) -> Result<BigInt, String> {
    BigInt::from_str(text).map_err(|_| format!("'{text}' is not an integer"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use patrace_core::exactmath::{rat, rat_int};

    const COIN: &str = "\
# fair coin race
alphabet: H T
prob: H = 1/2
prob: T = 1/2   # tails
pattern: THH
pattern: HTH = middle
pattern: HHT
";

    #[test]
    fn parses_the_coin_file() {
        let file = ProblemFile::parse(COIN).unwrap();
        assert_eq!(file.alphabet(), ["H", "T"]);
        assert_eq!(
            file.probabilities(),
            [("H".to_string(), rat(1, 2)), ("T".to_string(), rat(1, 2))]
        );
        assert_eq!(file.patterns().len(), 3);
        assert_eq!(file.patterns()[1].1.as_deref(), Some("middle"));

        let sys = file.build().unwrap();
        assert_eq!(sys.len(), 3);
        assert_eq!(sys.pattern(1).label(), "middle");
    }

    #[test]
    fn literal_forms() {
        assert_eq!(parse_rational_literal("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational_literal("3/10").unwrap(), rat(3, 10));
        assert_eq!(parse_rational_literal("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational_literal("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational_literal(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational_literal("2.").unwrap(), rat_int(2));
        assert_eq!(parse_rational_literal("2").unwrap(), rat_int(2));
        assert_eq!(parse_rational_literal("-3/6").unwrap(), rat(-1, 2));
    }

    #[test]
    fn repeating_decimals_are_rejected() {
        for bad in ["0.(3)", "0.333...", "0.1(6)"] {
            let err = parse_rational_literal(bad).unwrap_err();
            assert!(err.contains("repeating"), "message for {bad}: {err}");
        }
    }

    #[test]
    fn junk_literals_are_rejected() {
        for bad in ["", "x", "1/0", "1//2", "1.2.3", "0x10", "."] {
            assert!(parse_rational_literal(bad).is_err(), "accepted {bad}");
        }
    }

    #[test]
    fn grammar_errors_name_the_line() {
        let err = ProblemFile::parse("alphabet: H T\nwat: 1\n").unwrap_err();
        assert!(matches!(err, CliError::Parse(_)));
        assert!(err.to_string().contains("line 2"));
        assert!(err.to_string().contains("unknown key"));

        let err = ProblemFile::parse("alphabet: H T\nprob: H 1/2\n").unwrap_err();
        assert!(err.to_string().contains("prob: LETTER = VALUE"));

        let err =
            ProblemFile::parse("alphabet: H T\nprob: H = 1/2\nprob: H = 1/2\npattern: H\n")
                .unwrap_err();
        assert!(err.to_string().contains("second probability"));

        let err = ProblemFile::parse("prob: H = 1/2\npattern: H\n").unwrap_err();
        assert!(err.to_string().contains("no alphabet"));
    }

    #[test]
    fn build_classifies_semantic_problems_as_validation() {
        let file =
            ProblemFile::parse("alphabet: H T\nprob: H = 1/2\nprob: X = 1/2\npattern: H\n")
                .unwrap();
        match file.build() {
            Err(CliError::Validation(ValidationError::UnknownLetter(l))) => assert_eq!(l, "X"),
            other => panic!("expected UnknownLetter, got {other:?}"),
        }

        let file = ProblemFile::parse("alphabet: H T\nprob: H = 1/2\npattern: H\n").unwrap();
        match file.build() {
            Err(CliError::Validation(ValidationError::BadDistribution(msg))) => {
                assert!(msg.contains("'T'"));
            }
            other => panic!("expected BadDistribution, got {other:?}"),
        }

        let file = ProblemFile::parse(
            "alphabet: H T\nprob: H = 1/2\nprob: T = 1/2\npattern: TH\npattern: THH\n",
        )
        .unwrap();
        match file.build() {
            Err(CliError::Validation(e)) => assert_eq!(
                e.to_string(),
                "NotReduced: 'TH' is a substring of 'THH'"
            ),
            other => panic!("expected NotReduced, got {other:?}"),
        }
    }

    #[test]
    fn multi_character_letters_need_separated_patterns() {
        let text = "\
alphabet: aa b
prob: aa = 0.5
prob: b = 0.5
pattern: aa b aa
";
        let sys = ProblemFile::parse(text).unwrap().build().unwrap();
        assert_eq!(sys.pattern(0).len(), 3);
        assert_eq!(sys.pattern(0).label(), "aabaa");
    }
}

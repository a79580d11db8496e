use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Alphabet, EpConfig, Word};
use crate::error::{Error, Result};

/// An `m`-step shift of finite type: the bi-infinite sequences all of whose
/// windows of length `m + 1` belong to `allowed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpec {
    alphabet: Alphabet,
    step: usize,
    allowed: BTreeSet<Word>,
}

impl SftSpec {
    pub fn new(
        alphabet: Alphabet,
        step: usize,
        allowed: impl IntoIterator<Item = Word>,
    ) -> Result<Self> {
        let allowed: BTreeSet<Word> = allowed.into_iter().collect();
        for w in &allowed {
            if w.len() != step + 1 {
                return Err(Error::WrongLength {
                    word: alphabet.format_word(w),
                    expected: step + 1,
                    found: w.len(),
                });
            }
            if w.iter().any(|&s| s >= alphabet.len()) {
                return Err(Error::UnknownSymbol(w.to_string()));
            }
        }
        Ok(SftSpec {
            alphabet,
            step,
            allowed,
        })
    }

    /// Builds a spec from its forbidden windows by complementation.
    pub fn from_forbidden(
        alphabet: Alphabet,
        step: usize,
        forbidden: impl IntoIterator<Item = Word>,
    ) -> Result<Self> {
        let forbidden: BTreeSet<Word> = forbidden.into_iter().collect();
        for w in &forbidden {
            if w.len() != step + 1 {
                return Err(Error::WrongLength {
                    word: alphabet.format_word(w),
                    expected: step + 1,
                    found: w.len(),
                });
            }
        }
        let allowed: Vec<Word> = alphabet
            .all_words(step + 1)
            .filter(|w| !forbidden.contains(w))
            .collect();
        SftSpec::new(alphabet, step, allowed)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn allowed(&self) -> &BTreeSet<Word> {
        &self.allowed
    }

    pub fn is_allowed_window(&self, w: &[usize]) -> bool {
        self.allowed.contains(&Word::from(w))
    }

    /// True when no bi-infinite sequence satisfies the constraints.
    pub fn is_empty(&self) -> bool {
        super::higher_block_recode(self).is_empty()
    }

    /// Checks that every window of length `step + 1` of a finite word is allowed.
    pub fn admits_word(&self, w: &[usize]) -> bool {
        let n = self.step + 1;
        w.len() < n || w.windows(n).all(|win| self.is_allowed_window(win))
    }

    /// Checks that an eventually periodic configuration lies in the shift.
    pub fn admits(&self, x: &EpConfig) -> bool {
        let n = self.step as i64 + 1;
        let lo = x.offset() - x.left().len() as i64 - n;
        let hi = x.offset() + (x.bridge().len() + x.right().len()) as i64;
        (lo..=hi).all(|start| {
            let win: Vec<usize> = (start..start + n).map(|i| x.at(i)).collect();
            self.is_allowed_window(&win)
        })
    }

    /// Renders the spec in `.sft` form. `parse_spec` of the output yields `self`.
    pub fn to_sft_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "alphabet {}", self.alphabet.symbols().join(" "));
        let _ = writeln!(out, "step {}", self.step);
        for w in &self.allowed {
            let _ = writeln!(out, "allowed {}", self.alphabet.format_word(w));
        }
        out
    }
}

/// Parses `.sft` text.
///
/// ```text
/// # Weiss shift
/// alphabet 0 1 2
/// step 1
/// allowed 0.0 1.1 2.2 0.1 1.2
/// ```
pub fn parse_spec(text: &str) -> Result<SftSpec> {
    let mut alphabet: Option<Alphabet> = None;
    let mut step: Option<usize> = None;
    let mut allowed: Vec<(usize, String)> = Vec::new();
    let mut forbidden: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let directive = toks.next().unwrap_or_default();
        let rest: Vec<&str> = toks.collect();
        match directive {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(line_no, "`alphabet` given twice"));
                }
                alphabet = Some(Alphabet::new(rest.iter().copied()).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(line_no, message),
                    other => other,
                })?);
            }
            "step" => {
                if step.is_some() {
                    return Err(Error::parse(line_no, "`step` given twice"));
                }
                let [value] = rest[..] else {
                    return Err(Error::parse(line_no, "`step` takes one integer"));
                };
                step = Some(
                    value
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad step `{value}`")))?,
                );
            }
            "allowed" => allowed.extend(rest.iter().map(|w| (line_no, w.to_string()))),
            "forbidden" => forbidden.extend(rest.iter().map(|w| (line_no, w.to_string()))),
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::parse(0, "missing `alphabet`"))?;
    let step = step.ok_or_else(|| Error::parse(0, "missing `step`"))?;
    let words = match (allowed.is_empty(), forbidden.is_empty()) {
        (false, true) => &allowed,
        (true, false) => &forbidden,
        _ => {
            return Err(Error::parse(
                0,
                "exactly one of `allowed` or `forbidden` must be given",
            ))
        }
    };
    let mut parsed = Vec::with_capacity(words.len());
    for (line_no, text) in words {
        let w = alphabet
            .parse_word(text)
            .map_err(|e| Error::parse(*line_no, e.to_string()))?;
        if w.len() != step + 1 {
            let e = Error::WrongLength {
                word: text.clone(),
                expected: step + 1,
                found: w.len(),
            };
            return Err(Error::parse(*line_no, e.to_string()));
        }
        parsed.push(w);
    }
    if forbidden.is_empty() {
        SftSpec::new(alphabet, step, parsed)
    } else {
        SftSpec::from_forbidden(alphabet, step, parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_weiss() {
        let spec = parse_spec("alphabet 0 1 2\nstep 1\nallowed 0.0 1.1 2.2 0.1 1.2\n").unwrap();
        assert_eq!(spec.step(), 1);
        assert_eq!(spec.allowed().len(), 5);
        assert!(spec.is_allowed_window(&[1, 2]));
        assert!(!spec.is_allowed_window(&[0, 2]));
        assert!(!spec.is_empty());
    }

    #[test]
    fn parses_full_shift() {
        let spec = parse_spec("alphabet 0 1\nstep 0\nallowed 0 1").unwrap();
        assert_eq!(spec.allowed().len(), 2);
        assert_eq!(spec.step(), 0);
    }

    #[test]
    fn forbidden_only_transition_gives_empty_shift() {
        let spec = parse_spec("alphabet a\nstep 1\nforbidden a.a").unwrap();
        assert!(spec.allowed().is_empty());
        assert!(spec.is_empty());
    }

    #[test]
    fn forbidden_is_complemented() {
        let spec = parse_spec("alphabet 0 1 # golden mean\nstep 1\nforbidden 1.1").unwrap();
        let words: Vec<_> = spec.allowed().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["0.0", "0.1", "1.0"]);
    }

    #[test]
    fn directives_may_repeat_across_lines() {
        let spec =
            parse_spec("alphabet 0 1 2\nstep 1\nallowed 0.0 1.1\nallowed 2.2 0.1 1.2").unwrap();
        assert_eq!(spec.allowed().len(), 5);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_spec("alphabet 0 0\nstep 0\nallowed 0"),
            Err(Error::DuplicateSymbol("0".into()))
        );
        assert_eq!(
            parse_spec("alphabet 0 1\nstep 1\nallowed 0"),
            Err(Error::parse(3, "word `0` has length 1, expected 2"))
        );
        assert_eq!(
            parse_spec("alphabet 0 1\nstep 0\nallowed 2"),
            Err(Error::parse(3, "unknown symbol `2`"))
        );
        assert!(parse_spec("alphabet 0 1\nstep 0\nallowed 0\nforbidden 1").is_err());
        assert!(parse_spec("alphabet 0 1\nstep 0").is_err());
        assert!(matches!(
            parse_spec("alphabet 0 1\nstep x\nallowed 0"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_spec("alphabet 0 1\nstep 0\nstep 0\nallowed 0"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let spec = parse_spec("alphabet a b\nstep 1\nforbidden b.b").unwrap();
        assert_eq!(parse_spec(&spec.to_sft_text()).unwrap(), spec);
    }
}

//! Erasure patterns: one boolean per transmitted scalar symbol, true where
//! the symbol was erased. The text form uses '.' for received, 'x' for
//! erased, with optional '|' separators between time steps.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasurePattern {
    erased: Vec<bool>,
    /// Group size implied by '|' separators in the parsed text, if any.
    group: Option<usize>,
}

impl ErasurePattern {
    pub fn from_bools(erased: Vec<bool>) -> ErasurePattern {
        ErasurePattern { erased, group: None }
    }

    pub fn len(&self) -> usize {
        self.erased.len()
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }

    pub fn is_erased(&self, i: usize) -> bool {
        self.erased[i]
    }

    pub fn bools(&self) -> &[bool] {
        &self.erased
    }

    pub fn erased_count(&self) -> usize {
        self.erased.iter().filter(|&&e| e).count()
    }

    pub fn group(&self) -> Option<usize> {
        self.group
    }

    /// Renders with a '|' between groups of n symbols.
    pub fn render_grouped(&self, n: usize) -> String {
        let mut out = String::new();
        for (i, &e) in self.erased.iter().enumerate() {
            if i > 0 && n > 0 && i % n == 0 {
                out.push('|');
            }
            out.push(if e { 'x' } else { '.' });
        }
        out
    }
}

/// Flat text form without separators.
impl fmt::Display for ErasurePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.erased {
            f.write_str(if e { "x" } else { "." })?;
        }
        Ok(())
    }
}

/// Parses '.'/'x' with optional '|' separators and whitespace. When
/// separators are present every group must have the same length.
pub fn parse_pattern(text: &str) -> Result<ErasurePattern> {
    let mut erased = Vec::new();
    let mut group_sizes = Vec::new();
    let mut current = 0usize;
    let mut saw_bar = false;
    for ch in text.chars() {
        match ch {
            '.' => {
                erased.push(false);
                current += 1;
            }
            'x' | 'X' => {
                erased.push(true);
                current += 1;
            }
            '|' => {
                saw_bar = true;
                group_sizes.push(current);
                current = 0;
            }
            c if c.is_whitespace() => {}
            c => return Err(Error::BadPattern(format!("unexpected character {c:?}"))),
        }
    }
    let group = if saw_bar {
        group_sizes.push(current);
        let first = group_sizes[0];
        if first == 0 || group_sizes.iter().any(|&g| g != first) {
            return Err(Error::BadPattern("separator groups have unequal lengths".into()));
        }
        Some(first)
    } else {
        None
    };
    Ok(ErasurePattern { erased, group })
}

/// How to generate a pattern.
#[derive(Clone, Debug, PartialEq)]
pub enum PatternSpec {
    /// Each symbol erased independently with the given rate.
    Iid { rate: f64 },
    /// Exactly the symbols start..start+len erased.
    Burst { start: usize, len: usize },
    /// A literal pattern text.
    Explicit(String),
}

impl PatternSpec {
    /// Parses "iid:0.25", "burst:4,2" or a literal '.'/'x' pattern.
    pub fn parse(text: &str) -> Result<PatternSpec> {
        if let Some(rate) = text.strip_prefix("iid:") {
            let rate: f64 = rate
                .parse()
                .map_err(|_| Error::BadPattern(format!("bad iid rate {rate:?}")))?;
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::BadPattern(format!("iid rate {rate} outside [0, 1]")));
            }
            return Ok(PatternSpec::Iid { rate });
        }
        if let Some(args) = text.strip_prefix("burst:") {
            let (start, len) = args
                .split_once(',')
                .ok_or_else(|| Error::BadPattern("burst needs start,len".into()))?;
            let start = start
                .trim()
                .parse()
                .map_err(|_| Error::BadPattern(format!("bad burst start {start:?}")))?;
            let len = len
                .trim()
                .parse()
                .map_err(|_| Error::BadPattern(format!("bad burst length {len:?}")))?;
            return Ok(PatternSpec::Burst { start, len });
        }
        Ok(PatternSpec::Explicit(text.to_string()))
    }
}

/// Deterministic pattern generation: the same spec, length and seed always
/// produce the same pattern.
pub fn gen_pattern(spec: &PatternSpec, length: usize, seed: u64) -> Result<ErasurePattern> {
    match spec {
        PatternSpec::Iid { rate } => {
            let mut rng = SplitMix64::new(seed);
            Ok(ErasurePattern::from_bools(
                (0..length).map(|_| rng.chance(*rate)).collect(),
            ))
        }
        PatternSpec::Burst { start, len } => {
            if start + len > length {
                return Err(Error::BadPattern(format!(
                    "burst {start}+{len} exceeds length {length}"
                )));
            }
            let mut erased = vec![false; length];
            for slot in erased.iter_mut().skip(*start).take(*len) {
                *slot = true;
            }
            Ok(ErasurePattern::from_bools(erased))
        }
        PatternSpec::Explicit(text) => {
            let pattern = parse_pattern(text)?;
            if pattern.len() != length {
                return Err(Error::BadPattern(format!(
                    "explicit pattern has {} symbols, expected {length}",
                    pattern.len()
                )));
            }
            Ok(pattern)
        }
    }
}

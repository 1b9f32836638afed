//! Binary digit words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite word over the digit alphabet `{0, 1}`.
///
/// Displays as an unseparated string like `0100011`; serializes to JSON as an
/// integer array.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DigitWord(Vec<u8>);

impl DigitWord {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d > 1) {
            return Err(Error::BadDigit((b'0' + d.min(9)) as char));
        }
        Ok(DigitWord(digits))
    }

    pub fn empty() -> Self {
        DigitWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, digit: u8) {
        debug_assert!(digit <= 1);
        self.0.push(digit);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }

    /// Digit at 1-based position `k`.
    pub fn digit(&self, k: usize) -> Option<u8> {
        self.0.get(k.checked_sub(1)?).copied()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u8> {
        self.0.iter()
    }

    /// The suffix starting at 1-based position `k`.
    pub fn suffix(&self, k: usize) -> DigitWord {
        DigitWord(self.0[k - 1..].to_vec())
    }

    /// Prefix of the first `n` digits (or the whole word if shorter).
    pub fn prefix(&self, n: usize) -> DigitWord {
        DigitWord(self.0[..n.min(self.0.len())].to_vec())
    }

    /// The periodic word `(01)^... ` truncated to `n` digits, starting with 0.
    /// This is the alternate-order maximal sequence.
    pub fn zero_one(n: usize) -> DigitWord {
        DigitWord((0..n).map(|k| (k % 2) as u8).collect())
    }

    /// The periodic word `(10)^...` truncated to `n` digits.
    pub fn one_zero(n: usize) -> DigitWord {
        DigitWord((0..n).map(|k| ((k + 1) % 2) as u8).collect())
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::BadDigit(other)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(DigitWord)
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DigitWord({self})")
    }
}

impl FromIterator<u8> for DigitWord {
    fn from_iter<T: IntoIterator<Item = u8>>(iter: T) -> Self {
        DigitWord(iter.into_iter().collect())
    }
}

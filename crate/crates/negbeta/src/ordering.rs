//! The alternate order on digit strings and the order-theoretic
//! admissibility test.
//!
//! Because digits at odd positions carry negative weight, the usual
//! lexicographic order does not match the order of the represented points.
//! The alternate order flips the comparison at odd positions: at the first
//! index `n` where two words differ, the word with the larger digit is
//! *smaller* when `n` is odd and larger when `n` is even. Under this order
//! the digit map is monotone, and a word is realizable precisely when every
//! tail sits between the words of the relevant region endpoints.

use serde::Serialize;

use crate::error::Result;
use crate::params::ExpansionParams;
use crate::transforms::{digits_alt, digits_r};
use crate::word::DigitWord;

/// Outcome of comparing two words in the alternate order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AltRelation {
    Lt,
    Gt,
    /// The words agree on their whole common length.
    EqPrefix,
}

/// Comparison result with the 1-based position of the first difference.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltVerdict {
    pub relation: AltRelation,
    pub first_diff: Option<usize>,
}

/// Compare two words in the alternate order over their common length.
///
/// At the first index `n` (1-based) where they differ, the result is `Lt`
/// iff `(-1)^n (b_n - d_n) < 0`; if no index differs within the common
/// length the result is `EqPrefix`.
pub fn alt_compare(b: &DigitWord, d: &DigitWord) -> AltVerdict {
    let common = b.len().min(d.len());
    for n in 1..=common {
        let (bn, dn) = (b.digit(n).unwrap() as i32, d.digit(n).unwrap() as i32);
        if bn != dn {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let relation = if sign * (bn - dn) < 0 {
                AltRelation::Lt
            } else {
                AltRelation::Gt
            };
            return AltVerdict { relation, first_diff: Some(n) };
        }
    }
    AltVerdict { relation: AltRelation::EqPrefix, first_diff: None }
}

/// The four reference words the admissibility test compares tails against.
///
/// `b_*` are generated with digit 0 at the cut, `d_alpha` with the
/// alternating tie rule; `d_alpha` is the supremum of the digit strings of
/// points below the cut, which is why the bound against it is strict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceSequences {
    pub b_m_minus: DigitWord,
    pub b_m_plus: DigitWord,
    pub b_alpha: DigitWord,
    pub d_alpha: DigitWord,
}

/// Compute the reference words to `depth` digits.
pub fn reference_sequences(params: &ExpansionParams, depth: usize) -> Result<ReferenceSequences> {
    Ok(ReferenceSequences {
        b_m_minus: digits_r(params, params.m_minus, depth)?.digits,
        b_m_plus: digits_r(params, params.m_plus, depth)?.digits,
        b_alpha: digits_r(params, params.alpha, depth)?.digits,
        d_alpha: digits_alt(params, params.alpha, depth)?.digits,
    })
}

/// Admissibility verdict for a finite word.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdmissibilityVerdict {
    Admissible,
    Inadmissible,
    /// Every comparison ran off the end of a word while still equal, so no
    /// condition could be decided either way.
    UndecidedAtDepth,
}

/// Which of the four tail bounds a word violated.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FailedBound {
    /// Tail starting with 1 fell below the word of the left endpoint.
    #[serde(rename = "lower-1")]
    Lower1,
    /// Tail starting with 1 reached or exceeded the alternating word of the cut.
    #[serde(rename = "upper-1")]
    Upper1,
    /// Tail starting with 0 fell below the word of the cut.
    #[serde(rename = "lower-0")]
    Lower0,
    /// Tail starting with 0 exceeded the word of the right endpoint.
    #[serde(rename = "upper-0")]
    Upper0,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub verdict: AdmissibilityVerdict,
    /// 1-based position whose tail condition failed.
    pub failing_index: Option<usize>,
    pub failing_condition: Option<FailedBound>,
}

impl AdmissibilityReport {
    fn admissible() -> Self {
        AdmissibilityReport {
            verdict: AdmissibilityVerdict::Admissible,
            failing_index: None,
            failing_condition: None,
        }
    }
}

/// Check every tail of `w` against the reference words computed to `depth`.
///
/// For each position `n`: a tail starting with digit 1 must lie at or above
/// the word of the left domain endpoint and strictly below the alternating
/// word of the cut; a tail starting with digit 0 must lie between the words
/// of the cut and the right domain endpoint (both inclusive). Only
/// comparisons decided within the available prefixes count: the first
/// decided violation yields `Inadmissible`, and if no comparison decides
/// anything at all the verdict is `UndecidedAtDepth`. The strict upper bound
/// in particular can never be *violated* by a mere shared prefix.
pub fn is_admissible(
    params: &ExpansionParams,
    w: &DigitWord,
    depth: usize,
) -> Result<AdmissibilityReport> {
    if w.is_empty() {
        return Ok(AdmissibilityReport::admissible());
    }
    let refs = reference_sequences(params, depth)?;
    let mut any_decided = false;
    for n in 1..=w.len() {
        let tail = w.suffix(n);
        let (lower, upper, lower_bound, upper_bound) = if w.digit(n) == Some(1) {
            (&refs.b_m_minus, &refs.d_alpha, FailedBound::Lower1, FailedBound::Upper1)
        } else {
            (&refs.b_alpha, &refs.b_m_plus, FailedBound::Lower0, FailedBound::Upper0)
        };
        let low = alt_compare(&tail, lower);
        let high = alt_compare(&tail, upper);
        any_decided |= low.relation != AltRelation::EqPrefix;
        any_decided |= high.relation != AltRelation::EqPrefix;
        let violated = if low.relation == AltRelation::Lt {
            Some(lower_bound)
        } else if high.relation == AltRelation::Gt {
            Some(upper_bound)
        } else {
            None
        };
        if let Some(bound) = violated {
            return Ok(AdmissibilityReport {
                verdict: AdmissibilityVerdict::Inadmissible,
                failing_index: Some(n),
                failing_condition: Some(bound),
            });
        }
    }
    if any_decided {
        Ok(AdmissibilityReport::admissible())
    } else {
        Ok(AdmissibilityReport {
            verdict: AdmissibilityVerdict::UndecidedAtDepth,
            failing_index: None,
            failing_condition: None,
        })
    }
}

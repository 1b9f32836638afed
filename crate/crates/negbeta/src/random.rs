//! The coin-driven random expansion system, exhaustive expansion
//! enumeration, the parity greedy algorithm, and uniqueness classification.
//!
//! Outside the switch region the digit is forced by the domain itself; a
//! point inside the switch region admits both digits, and the random system
//! resolves the choice by consuming one coin per visit. Every expansion of a
//! point arises from some coin word, the greedy (alternate-order maximal)
//! expansion arises from the parity rule "0 on even steps, 1 on odd steps",
//! and a point has a unique expansion precisely when its forced orbit never
//! visits the switch region.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{clamp_to_domain, domain_constants, Region};
use crate::word::DigitWord;

/// Where a coin stream gets its coins.
#[derive(Clone, Debug)]
pub enum CoinSource {
    /// An explicit finite coin word; after it runs out, `default` is used
    /// when present, otherwise the stream errors.
    Word { coins: Vec<u8>, default: Option<u8> },
    /// Reproducible pseudo-random coins.
    Seeded { seed: u64 },
}

/// A stateful coin supply; one coin is consumed per switch-region visit.
#[derive(Clone, Debug)]
pub struct CoinStream {
    source: CoinSource,
    rng: Option<ChaCha8Rng>,
    consumed: usize,
}

impl CoinStream {
    pub fn new(source: CoinSource) -> Self {
        let rng = match &source {
            CoinSource::Seeded { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
            CoinSource::Word { .. } => None,
        };
        CoinStream { source, rng, consumed: 0 }
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }

    fn next_coin(&mut self) -> Result<u8> {
        let coin = match &mut self.source {
            CoinSource::Word { coins, default } => match coins.get(self.consumed) {
                Some(&c) => c,
                None => default.ok_or(Error::CoinsExhausted { consumed: self.consumed })?,
            },
            CoinSource::Seeded { .. } => self.rng.as_mut().unwrap().gen_range(0..2u8),
        };
        self.consumed += 1;
        Ok(coin)
    }
}

/// Point plus coin usage of the random system.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct RandomState {
    pub x: f64,
    pub coins_consumed: usize,
}

fn region_of(beta: f64, x: f64) -> Result<Region> {
    let (_, _, s_lo, s_hi) = domain_constants(beta)?;
    Ok(if x < s_lo {
        Region::U1
    } else if x <= s_hi {
        Region::Switch
    } else {
        Region::U0
    })
}

/// One step of the random system: forced digit outside the switch region,
/// next coin inside it (consuming the coin).
pub fn k_step(beta: f64, state: RandomState, coins: &mut CoinStream) -> Result<(u8, RandomState)> {
    let x = clamp_to_domain(beta, state.x)?;
    let digit = match region_of(beta, x)? {
        Region::U1 => 1,
        Region::U0 => 0,
        Region::Switch => coins.next_coin()?,
    };
    let next = clamp_to_domain(beta, -beta * x - digit as f64)?;
    Ok((digit, RandomState { x: next, coins_consumed: coins.consumed }))
}

/// An orbit of the random system together with its digits.
#[derive(Clone, Debug, Serialize)]
pub struct RandomRecord {
    pub digits: DigitWord,
    pub points: Vec<f64>,
    pub coins_consumed: usize,
}

/// Run `n` steps of the random system from `x` with the given coins.
pub fn random_digits(beta: f64, x: f64, coins: &mut CoinStream, n: usize) -> Result<RandomRecord> {
    let mut state = RandomState { x: clamp_to_domain(beta, x)?, coins_consumed: coins.consumed };
    let mut digits = DigitWord::empty();
    let mut points = vec![state.x];
    for _ in 0..n {
        let (d, next) = k_step(beta, state, coins)?;
        digits.push(d);
        points.push(next.x);
        state = next;
    }
    Ok(RandomRecord { digits, points, coins_consumed: coins.consumed })
}

/// All length-`n` digit words realizable from `x`, up to `cap` of them.
#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub words: Vec<DigitWord>,
    /// Set when the cap cut the search short.
    pub truncated: bool,
}

/// Enumerate every expansion prefix of `x` by branching exactly where both
/// digits are feasible. Words come out in lexicographic order (digit 0
/// explored first); the search stops early once `cap` words are collected.
pub fn enumerate_expansions(beta: f64, x: f64, n: usize, cap: usize) -> Result<Enumeration> {
    let (_, _, s_lo, s_hi) = domain_constants(beta)?;
    let x = clamp_to_domain(beta, x)?;
    let mut out = Enumeration { words: Vec::new(), truncated: false };
    let mut prefix = DigitWord::empty();
    descend(beta, s_lo, s_hi, x, n, cap, &mut prefix, &mut out)?;
    Ok(out)
}

fn descend(
    beta: f64,
    s_lo: f64,
    s_hi: f64,
    x: f64,
    remaining: usize,
    cap: usize,
    prefix: &mut DigitWord,
    out: &mut Enumeration,
) -> Result<()> {
    if out.words.len() >= cap {
        out.truncated = true;
        return Ok(());
    }
    if remaining == 0 {
        out.words.push(prefix.clone());
        return Ok(());
    }
    for digit in [0u8, 1] {
        let feasible = if digit == 0 { x >= s_lo } else { x <= s_hi };
        if !feasible {
            continue;
        }
        let next = clamp_to_domain(beta, -beta * x - digit as f64)?;
        prefix.push(digit);
        descend(beta, s_lo, s_hi, next, remaining - 1, cap, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// A switch-region visit during the greedy run.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchEvent {
    /// 0-based step at which the visit happened.
    pub step: usize,
    /// 1-based index of the digit the visit chose (`step + 1`).
    pub digit_index: usize,
    /// The coin the parity rule dictates at this visit.
    pub coin: u8,
}

/// Digits, orbit, switch visits and the visit counter of a greedy run.
#[derive(Clone, Debug, Serialize)]
pub struct GreedyTrace {
    pub digits: DigitWord,
    pub points: Vec<f64>,
    pub switch_events: Vec<SwitchEvent>,
    /// `ell[k]` = number of switch visits among steps `0..=k`.
    pub ell: Vec<usize>,
}

/// The alternate-order maximal expansion of `x`, computed without any cut:
/// forced digits outside the switch region, and inside it digit 0 on even
/// steps, digit 1 on odd steps.
///
/// The parity matches the sign with which a digit enters the value: choosing
/// 0 at an even step (odd digit index, negative weight) and 1 at an odd step
/// both push the remaining orbit as high as possible, which in the alternate
/// order is exactly maximality.
pub fn greedy_digits(beta: f64, x: f64, n: usize) -> Result<GreedyTrace> {
    let mut y = clamp_to_domain(beta, x)?;
    let mut trace = GreedyTrace {
        digits: DigitWord::empty(),
        points: vec![y],
        switch_events: Vec::new(),
        ell: Vec::new(),
    };
    let mut visits = 0usize;
    for step in 0..n {
        let digit = match region_of(beta, y)? {
            Region::U1 => 1,
            Region::U0 => 0,
            Region::Switch => {
                let coin = if step % 2 == 0 { 0 } else { 1 };
                visits += 1;
                trace.switch_events.push(SwitchEvent {
                    step,
                    digit_index: step + 1,
                    coin,
                });
                coin
            }
        };
        y = clamp_to_domain(beta, -beta * y - digit as f64)?;
        trace.digits.push(digit);
        trace.points.push(y);
        trace.ell.push(visits);
    }
    Ok(trace)
}

/// A point where a fixed-cut expansion disagrees with the greedy one.
#[derive(Clone, Debug, Serialize)]
pub struct GreedyWitness {
    pub alpha: f64,
    pub x: f64,
    pub greedy: DigitWord,
    pub cut_word: DigitWord,
    /// 1-based first index at which the two words differ.
    pub mismatch_index: usize,
}

/// For every cut position on a `grid` over the switch region, find a point
/// whose cut-map expansion differs from the greedy expansion within the
/// first two digits — demonstrating that no single cut reproduces greedy.
///
/// For a cut above the left end of the switch region, any switch point left
/// of the cut gets digit 1 from the cut map but digit 0 from greedy's first
/// (even) step. For the cut *at* the left end the two agree on the first
/// digit everywhere, so the witness is routed through a pullback: a point
/// whose image lands mid-switch, where greedy's second (odd) step picks 1
/// while the cut map picks 0.
pub fn refute_single_alpha_greedy(beta: f64, grid: usize) -> Result<Vec<GreedyWitness>> {
    let (m_minus, m_plus, s_lo, s_hi) = domain_constants(beta)?;
    let points = grid.max(1);
    let mut witnesses = Vec::with_capacity(points);
    for i in 0..points {
        let alpha = if points == 1 {
            s_lo
        } else {
            (s_lo + (s_hi - s_lo) * i as f64 / (points - 1) as f64).clamp(s_lo, s_hi)
        };
        let params = crate::params::ExpansionParams::new(beta, crate::params::AlphaSpec::Value(alpha))?;
        let s_mid = 0.5 * (s_lo + s_hi);
        let mut candidates = vec![
            0.5 * (s_lo + alpha),
            -s_mid / beta,
            (-s_mid - 1.0) / beta,
        ];
        candidates.retain(|x| *x >= m_minus && *x <= m_plus);
        candidates.extend((0..=1024).map(|k| m_minus + (m_plus - m_minus) * k as f64 / 1024.0));
        let mut found = None;
        for x in candidates {
            let greedy = greedy_digits(beta, x, 2)?;
            let cut_word = crate::transforms::digits_r(&params, x, 2)?.digits;
            if let Some(mismatch_index) =
                (1..=2).find(|&k| greedy.digits.digit(k) != cut_word.digit(k))
            {
                found = Some(GreedyWitness {
                    alpha,
                    x,
                    greedy: greedy.digits,
                    cut_word,
                    mismatch_index,
                });
                break;
            }
        }
        match found {
            Some(w) => witnesses.push(w),
            None => return Err(Error::WitnessNotFound { alpha }),
        }
    }
    Ok(witnesses)
}

/// Whether a point's expansion is provably unique, provably not, or open at
/// the horizon.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniquenessVerdict {
    /// The forced orbit closed an exact cycle without a switch visit.
    Unique { period: usize, entered_at: usize },
    /// The forced orbit entered the switch region, where both digits work.
    NotUnique { switch_step: usize },
    UndecidedAtHorizon,
}

/// Classify `x` by following its forced orbit up to `horizon` steps.
///
/// `Unique` is certified only by an exact floating-point revisit of an
/// earlier orbit point; no tolerance is applied, so the verdict is never an
/// artifact of near-misses. A switch-region visit certifies `NotUnique`
/// because both continuations stay inside the domain.
pub fn classify_uniqueness(beta: f64, x: f64, horizon: usize) -> Result<UniquenessVerdict> {
    let mut y = clamp_to_domain(beta, x)?;
    let mut seen: HashMap<u64, usize> = HashMap::new();
    // identify -0.0 with +0.0 so the bit key matches numeric equality
    let key = |v: f64| if v == 0.0 { 0u64 } else { v.to_bits() };
    for step in 0..horizon {
        if let Some(&entered_at) = seen.get(&key(y)) {
            return Ok(UniquenessVerdict::Unique { period: step - entered_at, entered_at });
        }
        seen.insert(key(y), step);
        let digit = match region_of(beta, y)? {
            Region::U1 => 1.0,
            Region::U0 => 0.0,
            Region::Switch => return Ok(UniquenessVerdict::NotUnique { switch_step: step }),
        };
        y = clamp_to_domain(beta, -beta * y - digit)?;
    }
    Ok(UniquenessVerdict::UndecidedAtHorizon)
}

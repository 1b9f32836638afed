//! Bases, cut points and the region structure of the digit space.
//!
//! For `1 < beta < 2` every point of `[m_minus, m_plus]` admits an expansion
//! `x = sum (-1)^k b_k / beta^k`. Digit 0 can start an expansion of `x` iff
//! `x >= s_lo`, digit 1 iff `x <= s_hi`; on the switch region
//! `S = [s_lo, s_hi]` both digits work, left of it digit 1 is forced, right
//! of it digit 0 is forced. A generating map is fixed by choosing a cut point
//! `alpha` inside `S`.

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::word::DigitWord;
use crate::EPS_NUM;

/// Named choices of the cut point `alpha`, all expressed in `beta`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AlphaPreset {
    /// `1/(beta+1) - 1/beta`: the cut of the classical negative-beta map.
    ItoSadahiro,
    /// `-1/(beta(beta^2-1))`: the left endpoint of the switch region; the
    /// cut whose map the odd-greedy recursion reproduces.
    OddGreedy,
    /// `-1/(2(beta+1))`: the midpoint of the switch region.
    Midpoint,
    /// Left endpoint of the switch region (same value as `OddGreedy`).
    SwitchLeft,
    /// `1/(beta^2-1) - 1/beta`: the right endpoint of the switch region.
    SwitchRight,
}

impl AlphaPreset {
    pub fn name(&self) -> &'static str {
        match self {
            AlphaPreset::ItoSadahiro => "ito-sadahiro",
            AlphaPreset::OddGreedy => "odd-greedy",
            AlphaPreset::Midpoint => "midpoint",
            AlphaPreset::SwitchLeft => "s-left",
            AlphaPreset::SwitchRight => "s-right",
        }
    }
}

impl FromStr for AlphaPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ito-sadahiro" => Ok(AlphaPreset::ItoSadahiro),
            "odd-greedy" => Ok(AlphaPreset::OddGreedy),
            "midpoint" => Ok(AlphaPreset::Midpoint),
            "s-left" => Ok(AlphaPreset::SwitchLeft),
            "s-right" => Ok(AlphaPreset::SwitchRight),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}

/// A cut point given either numerically or as a named preset.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum AlphaSpec {
    Value(f64),
    Preset(AlphaPreset),
}

impl FromStr for AlphaSpec {
    type Err = Error;

    /// A number parses as a literal cut; anything else must be a preset name.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(v) = s.parse::<f64>() {
            return Ok(AlphaSpec::Value(v));
        }
        s.parse::<AlphaPreset>().map(AlphaSpec::Preset)
    }
}

/// Which of the three digit-availability regions a point falls in.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    /// `[m_minus, s_lo)`: digit 1 forced.
    U1,
    /// `[s_lo, s_hi]`: both digits available (closed on both sides).
    Switch,
    /// `(s_hi, m_plus]`: digit 0 forced.
    U0,
}

/// A validated base `beta` together with a cut point `alpha` and the derived
/// domain constants.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionParams {
    pub beta: f64,
    pub alpha: f64,
    /// Left end of the domain, `-beta/(beta^2-1)`.
    pub m_minus: f64,
    /// Right end of the domain, `1/(beta^2-1)`.
    pub m_plus: f64,
    /// Left end of the switch region, `-1/(beta(beta^2-1))`.
    pub s_lo: f64,
    /// Right end of the switch region, `1/(beta^2-1) - 1/beta`.
    pub s_hi: f64,
}

/// Validates `beta` and returns `(m_minus, m_plus, s_lo, s_hi)`.
///
/// `m_minus` is computed as `-(beta * m_plus)` rather than `-beta/(beta^2-1)`
/// so that the digit-0 step applied to `m_plus` reproduces `m_minus` exactly
/// in floating point; the two closed forms agree to one ulp.
pub fn domain_constants(beta: f64) -> Result<(f64, f64, f64, f64)> {
    if !(beta > 1.0 && beta < 2.0) {
        return Err(Error::BetaOutOfRange(beta));
    }
    let m_plus = 1.0 / (beta * beta - 1.0);
    let m_minus = -(beta * m_plus);
    let s_lo = -1.0 / (beta * (beta * beta - 1.0));
    let s_hi = m_plus - 1.0 / beta;
    Ok((m_minus, m_plus, s_lo, s_hi))
}

impl ExpansionParams {
    pub fn new(beta: f64, alpha: AlphaSpec) -> Result<ExpansionParams> {
        let (m_minus, m_plus, s_lo, s_hi) = domain_constants(beta)?;
        let alpha = match alpha {
            AlphaSpec::Value(a) => a,
            AlphaSpec::Preset(p) => match p {
                AlphaPreset::ItoSadahiro => 1.0 / (beta + 1.0) - 1.0 / beta,
                AlphaPreset::OddGreedy | AlphaPreset::SwitchLeft => s_lo,
                AlphaPreset::Midpoint => -1.0 / (2.0 * (beta + 1.0)),
                AlphaPreset::SwitchRight => s_hi,
            },
        };
        if !(alpha >= s_lo && alpha <= s_hi) {
            return Err(Error::AlphaOutsideSwitch { alpha, s_lo, s_hi });
        }
        Ok(ExpansionParams { beta, alpha, m_minus, m_plus, s_lo, s_hi })
    }

    /// The domain `[m_minus, m_plus]`.
    pub fn domain(&self) -> Interval {
        Interval { lo: self.m_minus, hi: self.m_plus }
    }

    /// The three regions `(U1, S, U0)`. All are returned as closed interval
    /// hulls; membership at the shared endpoints follows [`Region`]: `s_lo`
    /// and `s_hi` belong to the switch region.
    pub fn regions(&self) -> (Interval, Interval, Interval) {
        (
            Interval { lo: self.m_minus, hi: self.s_lo },
            Interval { lo: self.s_lo, hi: self.s_hi },
            Interval { lo: self.s_hi, hi: self.m_plus },
        )
    }

    /// Region membership by exact comparison against `s_lo` / `s_hi`.
    pub fn region_of(&self, x: f64) -> Region {
        if x < self.s_lo {
            Region::U1
        } else if x <= self.s_hi {
            Region::Switch
        } else {
            Region::U0
        }
    }

    /// Can `digit` start an expansion of `x`? Equivalent to
    /// `-beta*x - digit` landing back in `[m_minus, m_plus]`.
    pub fn digit_feasible(&self, digit: u8, x: f64) -> bool {
        match digit {
            0 => x >= self.s_lo,
            _ => x <= self.s_hi,
        }
    }

    /// Accepts points up to [`EPS_NUM`] outside the domain and projects them
    /// back onto it; farther out is a hard error.
    pub fn clamp_domain(&self, x: f64) -> Result<f64> {
        if x < self.m_minus - EPS_NUM || x > self.m_plus + EPS_NUM || x.is_nan() {
            return Err(Error::XOutOfDomain { x, lo: self.m_minus, hi: self.m_plus });
        }
        Ok(x.clamp(self.m_minus, self.m_plus))
    }

    /// The involution `theta(x) = -1/(beta+1) - x` conjugating the two tie
    /// conventions of the generating map.
    pub fn theta(&self, x: f64) -> f64 {
        -1.0 / (self.beta + 1.0) - x
    }

    /// The cut point of the conjugate map: `-1/(beta+1) - alpha`.
    pub fn conjugate_alpha(&self) -> f64 {
        -1.0 / (self.beta + 1.0) - self.alpha
    }

    /// Same base, different cut.
    pub fn with_alpha(&self, alpha: f64) -> Result<ExpansionParams> {
        ExpansionParams::new(self.beta, AlphaSpec::Value(alpha))
    }
}

/// Project `x` onto `[m_minus, m_plus]` for the given base, tolerating
/// rounding overshoot up to [`EPS_NUM`]; see
/// [`ExpansionParams::clamp_domain`] for the parameterized form.
pub fn clamp_to_domain(beta: f64, x: f64) -> Result<f64> {
    let (m_minus, m_plus, ..) = domain_constants(beta)?;
    if x < m_minus - EPS_NUM || x > m_plus + EPS_NUM || x.is_nan() {
        return Err(Error::XOutOfDomain { x, lo: m_minus, hi: m_plus });
    }
    Ok(x.clamp(m_minus, m_plus))
}

/// Value of a finite digit word: `sum_{k=1..n} (-1)^k w_k / beta^k`, together
/// with the tail bound `max(|m_minus|, m_plus) / beta^n` valid for every
/// infinite continuation.
pub fn evaluate(beta: f64, w: &DigitWord) -> Result<(f64, f64)> {
    let (m_minus, m_plus, ..) = domain_constants(beta)?;
    let t = -1.0 / beta;
    let mut r = 0.0;
    for &d in w.iter().rev() {
        r = d as f64 + t * r;
    }
    let value = t * r;
    let bound = m_minus.abs().max(m_plus) * beta.powi(-(w.len() as i32));
    Ok((value, bound))
}

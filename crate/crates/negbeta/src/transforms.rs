//! The expanding maps `x -> -beta*x - digit` and the digit strings they
//! generate.
//!
//! A cut point `alpha` in the switch region fixes the branch: left of the cut
//! the digit is 1, right of it 0. The two maps `R` and `L` differ only in the
//! tie at the cut itself (`R` emits 0 there, `L` emits 1). The alternating
//! scheme interleaves the two tie rules and produces the sequence that is the
//! supremum of the alternate order over all points below a given one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::params::{domain_constants, ExpansionParams};
use crate::word::DigitWord;
use crate::EPS_NUM;

/// Tie-breaking at the cut point: which digit the map emits at `x == alpha`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TieRule {
    /// Digit 1 iff `x < alpha` (the `R` map).
    ZeroAtCut,
    /// Digit 1 iff `x <= alpha` (the `L` map).
    OneAtCut,
}

/// One application of the generating map: returns `(digit, next_point)`.
///
/// The next point is projected back onto `[m_minus, m_plus]` when rounding
/// pushes it out by at most [`EPS_NUM`]; beyond that the step fails. The
/// projection is what keeps the period-two orbit of the endpoints exact in
/// floating point.
pub fn step(params: &ExpansionParams, x: f64, tie: TieRule) -> Result<(u8, f64)> {
    let x = params.clamp_domain(x)?;
    let one = match tie {
        TieRule::ZeroAtCut => x < params.alpha,
        TieRule::OneAtCut => x <= params.alpha,
    };
    let digit = one as u8;
    let next = params.clamp_domain(-params.beta * x - digit as f64)?;
    Ok((digit, next))
}

/// Step of the map emitting digit 0 at the cut.
pub fn step_r(params: &ExpansionParams, x: f64) -> Result<(u8, f64)> {
    step(params, x, TieRule::ZeroAtCut)
}

/// Step of the map emitting digit 1 at the cut.
pub fn step_l(params: &ExpansionParams, x: f64) -> Result<(u8, f64)> {
    step(params, x, TieRule::OneAtCut)
}

/// An orbit prefix together with the digits it emitted:
/// `points[0] = x`, `points[k+1]` is the image of `points[k]`, and
/// `digits` has one digit per step (`points.len() == digits.len() + 1`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub points: Vec<f64>,
    pub digits: DigitWord,
}

impl OrbitRecord {
    /// Defect of the telescoping identity
    /// `x = sum_{k<=n} (-1)^k b_k/beta^k + (-1)^n points[n]/beta^n`.
    pub fn telescoping_defect(&self, beta: f64) -> f64 {
        let n = self.digits.len() as i32;
        let (value, _) = crate::params::evaluate(beta, &self.digits).expect("validated beta");
        let tail = (-1f64).powi(n) * self.points[n as usize] * beta.powi(-n);
        (self.points[0] - value - tail).abs()
    }
}

/// First `n` digits of `x` under the map with digit 0 at the cut.
pub fn digits_r(params: &ExpansionParams, x: f64, n: usize) -> Result<OrbitRecord> {
    orbit(params, x, n, |_| TieRule::ZeroAtCut)
}

/// First `n` digits of `x` under the map with digit 1 at the cut.
pub fn digits_l(params: &ExpansionParams, x: f64, n: usize) -> Result<OrbitRecord> {
    orbit(params, x, n, |_| TieRule::OneAtCut)
}

/// First `n` digits of the alternating scheme: odd steps use the
/// digit-1-at-cut rule, even steps the digit-0-at-cut rule.
///
/// The resulting sequence agrees with `digits_r` whenever the orbit never
/// hits the cut; where it does, it is the limit of the digit strings of
/// points increasing to `x`.
pub fn digits_alt(params: &ExpansionParams, x: f64, n: usize) -> Result<OrbitRecord> {
    orbit(params, x, n, |k| {
        if k % 2 == 0 {
            TieRule::OneAtCut // steps 0,2,.. emit digits 1,3,.. (odd positions)
        } else {
            TieRule::ZeroAtCut
        }
    })
}

fn orbit(
    params: &ExpansionParams,
    x: f64,
    n: usize,
    tie_at: impl Fn(usize) -> TieRule,
) -> Result<OrbitRecord> {
    let mut points = Vec::with_capacity(n + 1);
    let mut digits = DigitWord::empty();
    let mut y = params.clamp_domain(x)?;
    points.push(y);
    for k in 0..n {
        let (d, next) = step(params, y, tie_at(k))?;
        digits.push(d);
        points.push(next);
        y = next;
    }
    Ok(OrbitRecord { points, digits })
}

/// Step of the classical negative-beta map on its attractor
/// `[-beta/(beta+1), 1/(beta+1)]`: digit 1 iff `x <= 1/(beta+1) - 1/beta`.
pub fn ito_sadahiro_step(beta: f64, x: f64) -> Result<(u8, f64)> {
    domain_constants(beta)?;
    let lo = -beta / (beta + 1.0);
    let hi = 1.0 / (beta + 1.0);
    let cut = hi - 1.0 / beta;
    let clamp = |y: f64| -> Result<f64> {
        if y < lo - EPS_NUM || y > hi + EPS_NUM || y.is_nan() {
            return Err(Error::XOutOfDomain { x: y, lo, hi });
        }
        Ok(y.clamp(lo, hi))
    };
    let x = clamp(x)?;
    let digit = (x <= cut) as u8;
    Ok((digit, clamp(-beta * x - digit as f64)?))
}

/// Digits of `x` by the odd-greedy recursion on partial sums: digit `b_n` is
/// the smallest choice keeping the partial sum plus the extremal alternating
/// tail on the correct side of `x` (below it after odd steps, above it after
/// even steps).
///
/// This is an independent route to the digits of the cut-at-`s_lo` map and is
/// kept deliberately separate from the orbit iteration.
pub fn odd_greedy_digits(beta: f64, x: f64, n: usize) -> Result<DigitWord> {
    let (m_minus, m_plus, ..) = domain_constants(beta)?;
    if x < m_minus - EPS_NUM || x > m_plus + EPS_NUM || x.is_nan() {
        return Err(Error::XOutOfDomain { x, lo: m_minus, hi: m_plus });
    }
    // the alternating tail sum_{k even} 1/beta^k scaled to start at position
    // n+.. equals m_plus / beta^n
    let mut digits = DigitWord::empty();
    let mut partial = 0.0f64;
    for k in 1..=n {
        let scale = beta.powi(-(k as i32));
        let tail = m_plus * scale;
        let digit = if k % 2 == 1 {
            // need partial' - tail <= x; try digit 0 first
            if partial - tail <= x {
                0u8
            } else {
                1
            }
        } else {
            // need partial' + tail >= x
            if partial + tail >= x {
                0u8
            } else {
                1
            }
        };
        if digit == 1 {
            partial += if k % 2 == 1 { -scale } else { scale };
        }
        digits.push(digit);
    }
    Ok(digits)
}

/// The closed cylinder of a digit word: the closure of the set of points
/// whose digit string under the cut map starts with `w`. Computed by pulling
/// `[m_minus, m_plus]` back through the affine branches and intersecting with
/// the branch half-lines at the cut; `None` when the word is unrealizable.
pub fn cylinder(params: &ExpansionParams, w: &DigitWord) -> Option<Interval> {
    let mut j = params.domain();
    for &d in w.as_slice().iter().rev() {
        // preimage of [a, b] under x -> -beta*x - d is [-(b+d)/beta, -(a+d)/beta]
        let pre = Interval::new(
            -(j.hi + d as f64) / params.beta,
            -(j.lo + d as f64) / params.beta,
        )?;
        let half = if d == 1 {
            Interval { lo: params.m_minus, hi: params.alpha }
        } else {
            Interval { lo: params.alpha, hi: params.m_plus }
        };
        j = pre.intersect(&half)?;
    }
    Some(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{AlphaPreset, AlphaSpec};

    const EPS: f64 = 1e-9;

    fn p15() -> ExpansionParams {
        ExpansionParams::new(1.5, AlphaSpec::Value(-0.2)).unwrap()
    }

    #[test]
    fn step_examples() {
        let p = p15();
        let (d, y) = step_r(&p, 0.5).unwrap();
        assert_eq!(d, 0);
        assert!((y - -0.75).abs() < EPS);
        // at the cut the two tie rules split
        let (d, y) = step_r(&p, -0.2).unwrap();
        assert_eq!(d, 0);
        assert!((y - 0.3).abs() < EPS);
        let (d, y) = step_l(&p, -0.2).unwrap();
        assert_eq!(d, 1);
        assert!((y - -0.7).abs() < EPS);
        let (d, y) = step_r(&p, -0.75).unwrap();
        assert_eq!(d, 1);
        assert!((y - 0.125).abs() < EPS);
    }

    #[test]
    fn step_rejects_far_outside() {
        let p = p15();
        assert!(matches!(step_r(&p, 0.9), Err(Error::XOutOfDomain { .. })));
        assert!(step_r(&p, p.m_plus + 0.5 * EPS_NUM).is_ok());
    }

    #[test]
    fn digits_r_frozen_example() {
        let orbit = digits_r(&p15(), 0.5, 7).unwrap();
        assert_eq!(orbit.digits.to_string(), "0100011");
        assert_eq!(orbit.points.len(), 8);
        assert!((orbit.points[1] - -0.75).abs() < EPS);
        assert!((orbit.points[2] - 0.125).abs() < EPS);
    }

    #[test]
    fn orbit_stays_in_domain_and_telescopes() {
        let p = p15();
        for i in 0..200 {
            let x = p.m_minus + (p.m_plus - p.m_minus) * i as f64 / 199.0;
            let orbit = digits_r(&p, x, 30).unwrap();
            for &y in &orbit.points {
                assert!(y >= p.m_minus - EPS_NUM && y <= p.m_plus + EPS_NUM);
            }
            assert!(orbit.telescoping_defect(p.beta) < 1e-9);
        }
    }

    #[test]
    fn alternating_scheme_golden_ratio_cut() {
        // at beta the golden ratio and the cut -1/beta^2 (the fixed point of
        // the digit-1 branch) the two schemes produce these classic strings
        let beta = (1.0 + 5f64.sqrt()) / 2.0;
        let alpha = -1.0 / (beta * beta);
        let p = ExpansionParams::new(beta, AlphaSpec::Value(alpha)).unwrap();
        let b = digits_r(&p, alpha, 12).unwrap();
        let d = digits_alt(&p, alpha, 12).unwrap();
        assert_eq!(b.digits.to_string(), "001010101010");
        assert_eq!(d.digits.to_string(), "100101010101");
    }

    #[test]
    fn alternating_agrees_off_the_cut_orbit() {
        let p = p15();
        for i in 0..100 {
            let x = p.m_minus + (p.m_plus - p.m_minus) * (i as f64 + 0.137) / 100.0;
            let r = digits_r(&p, x, 25).unwrap();
            if r.points.iter().all(|&y| y != p.alpha) {
                let a = digits_alt(&p, x, 25).unwrap();
                assert_eq!(r.digits, a.digits, "x={x}");
            }
        }
    }

    #[test]
    fn alt_telescoping_identity() {
        let p = p15();
        for x in [-1.1, -0.7, -0.2, 0.0, 0.33, 0.79] {
            let orbit = digits_alt(&p, x, 24).unwrap();
            assert!(orbit.telescoping_defect(p.beta) < 1e-9, "x={x}");
        }
    }

    #[test]
    fn ito_sadahiro_examples() {
        let (d, y) = ito_sadahiro_step(1.5, 0.3).unwrap();
        assert_eq!(d, 0);
        assert!((y - -0.45).abs() < EPS);
        let (d, y) = ito_sadahiro_step(1.5, -0.45).unwrap();
        assert_eq!(d, 1);
        assert!((y - -0.325).abs() < EPS);
        // right endpoint maps to left endpoint
        let (d, y) = ito_sadahiro_step(1.5, 0.4).unwrap();
        assert_eq!(d, 0);
        assert!((y - -0.6).abs() < EPS);
        // outside the attractor
        assert!(ito_sadahiro_step(1.5, 0.7).is_err());
    }

    #[test]
    fn ito_sadahiro_matches_l_map_with_its_cut() {
        let p = ExpansionParams::new(1.7, AlphaSpec::Preset(AlphaPreset::ItoSadahiro)).unwrap();
        let lo = -1.7 / 2.7;
        let hi = 1.0 / 2.7;
        for i in 0..500 {
            let x = lo + (hi - lo) * i as f64 / 499.0;
            let (d1, y1) = ito_sadahiro_step(1.7, x).unwrap();
            let (d2, y2) = step_l(&p, x).unwrap();
            assert_eq!(d1, d2, "x={x}");
            assert!((y1 - y2).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn odd_greedy_matches_cut_at_s_lo_orbit() {
        let p = ExpansionParams::new(1.5, AlphaSpec::Preset(AlphaPreset::OddGreedy)).unwrap();
        for i in 0..400 {
            let x = p.m_minus + (p.m_plus - p.m_minus) * (i as f64 + 0.5) / 400.0;
            let rec = odd_greedy_digits(1.5, x, 30).unwrap();
            let orb = digits_r(&p, x, 30).unwrap();
            assert_eq!(rec, orb.digits, "x={x}");
        }
    }

    #[test]
    fn odd_greedy_endpoint_words() {
        let (m_minus, m_plus, ..) = domain_constants(1.5).unwrap();
        assert_eq!(odd_greedy_digits(1.5, m_plus, 10).unwrap(), DigitWord::zero_one(10));
        assert_eq!(odd_greedy_digits(1.5, m_minus, 10).unwrap(), DigitWord::one_zero(10));
    }

    #[test]
    fn cylinder_examples() {
        let p = p15();
        let c0 = cylinder(&p, &"0".parse().unwrap()).unwrap();
        assert!((c0.lo - -0.2).abs() < EPS);
        assert!((c0.hi - 0.8).abs() < EPS);
        let c11 = cylinder(&p, &"11".parse().unwrap()).unwrap();
        assert!((c11.lo - -8.0 / 15.0).abs() < EPS);
        assert!((c11.hi - -0.2).abs() < EPS);
    }

    #[test]
    fn cylinder_width_shrinks_geometrically() {
        let p = p15();
        let span = p.m_plus - p.m_minus;
        for i in 0..50 {
            let x = p.m_minus + span * (i as f64 + 0.41) / 50.0;
            let w = digits_r(&p, x, 12).unwrap().digits;
            for n in 1..=w.len() {
                let c = cylinder(&p, &w.prefix(n)).expect("realized prefix");
                assert!(c.len() <= span * p.beta.powi(-(n as i32)) + 1e-12);
                assert!(c.contains(x) || c.dist(x) < 1e-9, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn unrealizable_word_has_empty_cylinder() {
        // the digit-1 branch has its fixed point at -1/(beta+1); with the cut
        // left of it, repeated 1s escape the digit-1 region and the cylinder
        // dies out ("11" already empty here)
        let p = ExpansionParams::new(1.5, AlphaSpec::Value(-0.5)).unwrap();
        assert!(cylinder(&p, &"1".parse().unwrap()).is_some());
        assert!(cylinder(&p, &"11".parse().unwrap()).is_none());
        assert!(cylinder(&p, &"110".parse().unwrap()).is_none());
    }

    #[test]
    fn theta_conjugates_the_two_tie_rules() {
        // use a cut that is not fixed by the conjugation
        let p = ExpansionParams::new(1.5, AlphaSpec::Value(-0.35)).unwrap();
        let q = p.with_alpha(p.conjugate_alpha()).unwrap();
        assert!((q.alpha - -0.05).abs() < EPS);
        for i in 0..1000 {
            let x = p.m_minus + (p.m_plus - p.m_minus) * (i as f64 + 0.29) / 1000.0;
            let (_, lx) = step_l(&p, x).unwrap();
            let (_, r_theta) = step_r(&q, p.theta(x)).unwrap();
            assert!((p.theta(lx) - r_theta).abs() < 1e-12, "x={x}");
        }
    }
}

//! Expansions of real numbers in a negative base `-beta` with digits `{0, 1}`,
//! for `1 < beta < 2`.
//!
//! Every `x` in `[m_minus, m_plus] = [-beta/(beta^2-1), 1/(beta^2-1)]` can be
//! written as `x = sum_{k>=1} (-1)^k b_k / beta^k` with `b_k` in `{0, 1}`.
//! The crate provides:
//!
//! * the one-parameter family of expanding maps that generate such digit
//!   strings, parameterized by a cut point `alpha` inside the switch region
//!   where both digits are available ([`params`], [`transforms`]);
//! * the alternate digit ordering, reference sequences and the admissibility
//!   test for digit words ([`ordering`]);
//! * invariant windows, supports of absolutely continuous invariant measures,
//!   a factor construction onto a single expanding map, and Ulam-type density
//!   estimates ([`measure`]);
//! * coin-driven random expansions, exhaustive enumeration of all expansions
//!   of a point, the greedy (alternate-order maximal) expansion, and a
//!   uniqueness classifier ([`random`]).
//!
//! ```
//! use negbeta::params::{AlphaSpec, ExpansionParams};
//! use negbeta::transforms::digits_r;
//!
//! let p = ExpansionParams::new(1.5, AlphaSpec::Value(-0.2)).unwrap();
//! let orbit = digits_r(&p, 0.5, 7).unwrap();
//! assert_eq!(orbit.digits.to_string(), "0100011");
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod error;
pub mod interval;
pub mod measure;
pub mod ordering;
pub mod params;
pub mod random;
pub mod transforms;
pub mod word;

pub use error::{Error, Result};
pub use interval::{Interval, IntervalSet};
pub use params::{AlphaPreset, AlphaSpec, ExpansionParams, Region};
pub use word::DigitWord;

/// Absolute tolerance for numeric domain checks: orbit points may drift
/// outside `[m_minus, m_plus]` by at most this much before the step aborts.
pub const EPS_NUM: f64 = 1e-9;

/// Intervals closer than this are merged when normalizing interval sets.
pub const MERGE_TOL: f64 = 1e-12;

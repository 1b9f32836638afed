//! Command-line front end: every library operation behind one subcommand,
//! with reproducible JSON (or, for tabular data, CSV) on stdout.
//!
//! Exit codes: 0 success, 1 domain error (reported on stderr with the error
//! name), 2 usage error.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::measure::{
    self, density_r_via_factor, factor_maps, invariant_window, r_map, support, ulam_density,
};
use crate::ordering::{alt_compare, is_admissible, reference_sequences};
use crate::params::{clamp_to_domain, domain_constants, AlphaSpec, ExpansionParams};
use crate::random::{
    classify_uniqueness, enumerate_expansions, greedy_digits, random_digits,
    refute_single_alpha_greedy, CoinSource, CoinStream, UniquenessVerdict,
};
use crate::transforms::{
    cylinder, digits_alt, digits_l, digits_r, ito_sadahiro_step, odd_greedy_digits,
};
use crate::word::DigitWord;

/// Which subcommand owns each library operation. `unique-scan` is the batch
/// (CSV) presentation of the operation owned by `unique` and therefore owns
/// none itself.
pub const OPERATION_TABLE: &[(&str, &str)] = &[
    ("make_params", "regions"),
    ("regions", "regions"),
    ("conjugate_alpha", "regions"),
    ("evaluate", "expand"),
    ("step_r", "expand"),
    ("step_l", "expand"),
    ("digits_r", "expand"),
    ("ito_sadahiro_step", "expand"),
    ("digits_alt", "expand-alt"),
    ("odd_greedy_digits", "odd-greedy"),
    ("alt_compare", "compare"),
    ("reference_sequences", "admissible"),
    ("is_admissible", "admissible"),
    ("cylinder", "cylinder"),
    ("invariant_window", "support"),
    ("support", "support"),
    ("factor_maps", "factor-check"),
    ("ulam_density", "density"),
    ("density_r_via_factor", "density"),
    ("k_step", "random"),
    ("random_digits", "random"),
    ("digit_feasible", "enumerate"),
    ("enumerate_expansions", "enumerate"),
    ("greedy_digits", "greedy"),
    ("refute_single_alpha_greedy", "refute-greedy"),
    ("classify_uniqueness", "unique"),
];

/// All subcommand names, for the coverage check.
pub const SUBCOMMANDS: &[&str] = &[
    "regions",
    "expand",
    "expand-alt",
    "odd-greedy",
    "compare",
    "admissible",
    "cylinder",
    "support",
    "density",
    "factor-check",
    "random",
    "enumerate",
    "greedy",
    "refute-greedy",
    "unique",
    "unique-scan",
];

#[derive(Parser, Debug)]
#[command(name = "negbeta", version, about = "Expansions in negative base -beta with digits 0 and 1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MapKind {
    /// Cut map with digit 0 at the cut.
    R,
    /// Cut map with digit 1 at the cut.
    L,
    /// The classical map on its own attractor (ignores the cut).
    Ito,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Discretize the cut map itself.
    Direct,
    /// Go through the unfolded symmetric map and push back.
    Factor,
}

#[derive(Args, Debug)]
struct BetaAlpha {
    /// Base (between 1 and 2, exclusive).
    #[arg(long)]
    beta: f64,
    /// Cut point: a number or one of
    /// ito-sadahiro|odd-greedy|midpoint|s-left|s-right.
    #[arg(long, default_value = "midpoint", allow_negative_numbers = true)]
    alpha: AlphaSpec,
}

impl BetaAlpha {
    fn params(&self) -> Result<ExpansionParams> {
        ExpansionParams::new(self.beta, self.alpha)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Domain endpoints, forced-digit regions and the switch region.
    Regions {
        #[command(flatten)]
        ba: BetaAlpha,
    },
    /// Expand a point into digits by iterating a map.
    Expand {
        #[command(flatten)]
        ba: BetaAlpha,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 32)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = MapKind::R)]
        map: MapKind,
    },
    /// Expand with the alternating tie rule (odd steps favor digit 1).
    ExpandAlt {
        #[command(flatten)]
        ba: BetaAlpha,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 32)]
        depth: usize,
    },
    /// Expand by the partial-sum recursion (no cut parameter).
    OddGreedy {
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 32)]
        depth: usize,
    },
    /// Compare two digit words in the alternate order.
    Compare {
        #[arg(long)]
        lhs: DigitWord,
        #[arg(long)]
        rhs: DigitWord,
    },
    /// Check a digit word against the tail admissibility conditions.
    Admissible {
        #[command(flatten)]
        ba: BetaAlpha,
        #[arg(long)]
        word: DigitWord,
        /// Reference-word depth; defaults to four times the word length.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Closed interval of points whose expansion starts with a word.
    Cylinder {
        #[command(flatten)]
        ba: BetaAlpha,
        #[arg(long)]
        word: DigitWord,
    },
    /// Support of the invariant density, grown from the cut.
    Support {
        #[command(flatten)]
        ba: BetaAlpha,
        #[arg(long, default_value_t = measure::SUPPORT_MAX_ITER)]
        max_iter: usize,
        #[arg(long, default_value_t = measure::SUPPORT_TOL)]
        tol: f64,
    },
    /// Invariant density histogram (CSV or JSON).
    Density {
        #[command(flatten)]
        ba: BetaAlpha,
        #[arg(long, default_value_t = 4096)]
        bins: usize,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
        #[arg(long, default_value_t = measure::POWER_TOL)]
        tol: f64,
        #[arg(long, default_value_t = measure::POWER_MAX_ITER)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify the conjugacy and fold identities of the factor maps on a grid.
    FactorCheck {
        #[command(flatten)]
        ba: BetaAlpha,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Coin-driven expansion: coins resolve the switch-region choices.
    Random {
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 32)]
        depth: usize,
        /// Explicit coin word such as 0110; otherwise --seed is used.
        #[arg(long)]
        coins: Option<DigitWord>,
        /// Coin used after an explicit word runs out (error if absent).
        #[arg(long)]
        coin_default: Option<u8>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// All digit words realizable from a point.
    Enumerate {
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// The alternate-order maximal expansion, by the parity rule.
    Greedy {
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 32)]
        depth: usize,
    },
    /// For every cut on a grid, a point where the cut map is not greedy.
    RefuteGreedy {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
    /// Classify one point: unique expansion, not unique, or undecided.
    Unique {
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
    },
    /// Classify a whole grid of points (CSV or JSON).
    UniqueScan {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Serialize)]
struct Meta {
    beta: Option<f64>,
    alpha: Option<f64>,
    command: &'static str,
    seed: Option<u64>,
    version: &'static str,
}

impl Meta {
    fn new(command: &'static str) -> Self {
        Meta {
            beta: None,
            alpha: None,
            command,
            seed: None,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    fn with_params(mut self, p: &ExpansionParams) -> Self {
        self.beta = Some(p.beta);
        self.alpha = Some(p.alpha);
        self
    }

    fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }
}

fn emit(meta: Meta, result: serde_json::Value) -> String {
    let doc = json!({ "meta": meta, "result": result });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn pair(i: &Interval) -> serde_json::Value {
    json!([i.lo, i.hi])
}

fn word_json(w: &DigitWord) -> serde_json::Value {
    json!({ "word": w.to_string(), "digits": w.as_slice() })
}

/// Run the CLI on explicit arguments; returns (exit code, stdout, stderr).
///
/// The process wrapper in the binary forwards these verbatim, which keeps
/// every code path testable in-process.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, rendered, String::new()),
                _ => (2, String::new(), rendered),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => (0, stdout, String::new()),
        Err(err) => (1, String::new(), format!("error: {}: {err}\n", err.name())),
    }
}

impl Error {
    /// Stable machine-readable variant name, echoed on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::BetaOutOfRange(_) => "BetaOutOfRange",
            Error::AlphaOutsideSwitch { .. } => "AlphaOutsideSwitch",
            Error::UnknownPreset(_) => "UnknownPreset",
            Error::XOutOfDomain { .. } => "XOutOfDomain",
            Error::BadDigit(_) => "BadDigit",
            Error::CoinsExhausted { .. } => "CoinsExhausted",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::WitnessNotFound { .. } => "WitnessNotFound",
            Error::Invalid(_) => "Invalid",
        }
    }
}

fn dispatch(command: Command) -> Result<String> {
    match command {
        Command::Regions { ba } => {
            let p = ba.params()?;
            let (u1, s, u0) = p.regions();
            let result = json!({
                "m_minus": p.m_minus,
                "m_plus": p.m_plus,
                "s_lo": p.s_lo,
                "s_hi": p.s_hi,
                "u1": pair(&u1),
                "switch": pair(&s),
                "u0": pair(&u0),
                "alpha": p.alpha,
                "alpha_conjugate": p.conjugate_alpha(),
            });
            Ok(emit(Meta::new("regions").with_params(&p), result))
        }
        Command::Expand { ba, x, depth, map } => {
            let p = ba.params()?;
            let orbit = match map {
                MapKind::R => digits_r(&p, x, depth)?,
                MapKind::L => digits_l(&p, x, depth)?,
                MapKind::Ito => {
                    let mut points = vec![x];
                    let mut digits = DigitWord::empty();
                    let mut y = x;
                    for _ in 0..depth {
                        let (d, next) = ito_sadahiro_step(p.beta, y)?;
                        digits.push(d);
                        points.push(next);
                        y = next;
                    }
                    crate::transforms::OrbitRecord { points, digits }
                }
            };
            let (value, error_bound) = crate::params::evaluate(p.beta, &orbit.digits)?;
            let mut result = word_json(&orbit.digits);
            let obj = result.as_object_mut().unwrap();
            obj.insert("points".into(), json!(orbit.points));
            obj.insert("value".into(), json!(value));
            obj.insert("error_bound".into(), json!(error_bound));
            obj.insert("residual".into(), json!((orbit.points[0] - value).abs()));
            Ok(emit(Meta::new("expand").with_params(&p), result))
        }
        Command::ExpandAlt { ba, x, depth } => {
            let p = ba.params()?;
            let orbit = digits_alt(&p, x, depth)?;
            let (value, error_bound) = crate::params::evaluate(p.beta, &orbit.digits)?;
            let mut result = word_json(&orbit.digits);
            let obj = result.as_object_mut().unwrap();
            obj.insert("points".into(), json!(orbit.points));
            obj.insert("value".into(), json!(value));
            obj.insert("error_bound".into(), json!(error_bound));
            Ok(emit(Meta::new("expand-alt").with_params(&p), result))
        }
        Command::OddGreedy { beta, x, depth } => {
            let digits = odd_greedy_digits(beta, x, depth)?;
            let (value, error_bound) = crate::params::evaluate(beta, &digits)?;
            let mut result = word_json(&digits);
            let obj = result.as_object_mut().unwrap();
            obj.insert("value".into(), json!(value));
            obj.insert("error_bound".into(), json!(error_bound));
            Ok(emit(Meta::new("odd-greedy").with_beta(beta), result))
        }
        Command::Compare { lhs, rhs } => {
            let verdict = alt_compare(&lhs, &rhs);
            let result = json!({
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
                "verdict": verdict,
            });
            Ok(emit(Meta::new("compare"), result))
        }
        Command::Admissible { ba, word, depth } => {
            let p = ba.params()?;
            let depth = depth.unwrap_or_else(|| (4 * word.len()).max(40));
            let report = is_admissible(&p, &word, depth)?;
            let refs = reference_sequences(&p, depth)?;
            let result = json!({
                "word": word.to_string(),
                "depth": depth,
                "report": report,
                "references": {
                    "b_m_minus": refs.b_m_minus.to_string(),
                    "b_m_plus": refs.b_m_plus.to_string(),
                    "b_alpha": refs.b_alpha.to_string(),
                    "d_alpha": refs.d_alpha.to_string(),
                },
            });
            Ok(emit(Meta::new("admissible").with_params(&p), result))
        }
        Command::Cylinder { ba, word } => {
            let p = ba.params()?;
            let result = match cylinder(&p, &word) {
                Some(c) => json!({ "word": word.to_string(), "interval": pair(&c), "width": c.len() }),
                None => json!({ "word": word.to_string(), "interval": null, "width": 0.0 }),
            };
            Ok(emit(Meta::new("cylinder").with_params(&p), result))
        }
        Command::Support { ba, max_iter, tol } => {
            let p = ba.params()?;
            let window = invariant_window(&p);
            let res = support(&p, max_iter, tol);
            let result = json!({
                "window": pair(&window),
                "parts": res.support.parts().iter().map(pair).collect::<Vec<_>>(),
                "measure": res.support.measure(),
                "iterations": res.iterations,
                "status": res.status,
                "invariance_residual": res.invariance_residual,
            });
            Ok(emit(Meta::new("support").with_params(&p), result))
        }
        Command::Density { ba, bins, route, tol, max_iter, format } => {
            let p = ba.params()?;
            let est = match route {
                Route::Direct => {
                    let hull = support(&p, measure::SUPPORT_MAX_ITER, measure::SUPPORT_TOL)
                        .support
                        .hull()
                        .ok_or_else(|| Error::Invalid("empty support".into()))?;
                    ulam_density(&r_map(&p, hull), hull, bins, tol, max_iter)?
                }
                Route::Factor => density_r_via_factor(&p, bins, tol, max_iter)?,
            };
            match format {
                Format::Csv => Ok(est.to_csv()),
                Format::Json => {
                    Ok(emit(Meta::new("density").with_params(&p), serde_json::to_value(&est).unwrap()))
                }
            }
        }
        Command::FactorCheck { ba, grid } => {
            let p = ba.params()?;
            let maps = factor_maps(&p);
            let grid = grid.max(2);
            let mut conjugacy_defect = 0.0f64;
            for i in 0..grid {
                let x = p.m_minus + (p.m_plus - p.m_minus) * (i as f64 + 0.5) / grid as f64;
                let (_, rx) = crate::transforms::step_r(&p, x)?;
                conjugacy_defect = conjugacy_defect.max((maps.w(maps.phi(x)) - maps.phi(rx)).abs());
            }
            let breakpoints = [maps.cut, maps.mid, 2.0 * maps.mid - maps.cut];
            let mut fold_defect = 0.0f64;
            let mut halves_swap = true;
            for i in 0..grid {
                let x = 2.0 * maps.mid * (i as f64 + 0.5) / grid as f64;
                if breakpoints.iter().any(|b| (x - b).abs() < 1e-8) {
                    continue;
                }
                fold_defect = fold_defect.max((maps.w(maps.tau(x)) - maps.tau(maps.t(x))).abs());
                let y = maps.t(x);
                halves_swap &= (x < maps.mid) == (y > maps.mid);
            }
            let result = json!({
                "shift": maps.shift,
                "cut": maps.cut,
                "mid": maps.mid,
                "grid": grid,
                "conjugacy_defect": conjugacy_defect,
                "fold_defect": fold_defect,
                "halves_swap": halves_swap,
            });
            Ok(emit(Meta::new("factor-check").with_params(&p), result))
        }
        Command::Random { beta, x, depth, coins, coin_default, seed } => {
            let (source, meta_seed) = match coins {
                Some(w) => (
                    CoinSource::Word { coins: w.as_slice().to_vec(), default: coin_default },
                    None,
                ),
                None => (CoinSource::Seeded { seed }, Some(seed)),
            };
            let mut stream = CoinStream::new(source);
            let rec = random_digits(beta, x, &mut stream, depth)?;
            let mut result = word_json(&rec.digits);
            let obj = result.as_object_mut().unwrap();
            obj.insert("points".into(), json!(rec.points));
            obj.insert("coins_consumed".into(), json!(rec.coins_consumed));
            let mut meta = Meta::new("random").with_beta(beta);
            meta.seed = meta_seed;
            Ok(emit(meta, result))
        }
        Command::Enumerate { beta, x, depth, cap } => {
            let e = enumerate_expansions(beta, x, depth, cap)?;
            let x0 = clamp_to_domain(beta, x)?;
            let (_, _, s_lo, s_hi) = domain_constants(beta)?;
            let result = json!({
                "count": e.words.len(),
                "truncated": e.truncated,
                "first_digit_feasible": { "0": x0 >= s_lo, "1": x0 <= s_hi },
                "words": e.words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            });
            Ok(emit(Meta::new("enumerate").with_beta(beta), result))
        }
        Command::Greedy { beta, x, depth } => {
            let trace = greedy_digits(beta, x, depth)?;
            let mut result = word_json(&trace.digits);
            let obj = result.as_object_mut().unwrap();
            obj.insert("points".into(), json!(trace.points));
            obj.insert("switch_events".into(), serde_json::to_value(&trace.switch_events).unwrap());
            obj.insert("ell".into(), json!(trace.ell));
            Ok(emit(Meta::new("greedy").with_beta(beta), result))
        }
        Command::RefuteGreedy { beta, grid } => {
            let witnesses = refute_single_alpha_greedy(beta, grid)?;
            let rows: Vec<_> = witnesses
                .iter()
                .map(|w| {
                    json!({
                        "alpha": w.alpha,
                        "x": w.x,
                        "greedy": w.greedy.to_string(),
                        "cut_word": w.cut_word.to_string(),
                        "mismatch_index": w.mismatch_index,
                    })
                })
                .collect();
            let result = json!({ "grid": witnesses.len(), "witnesses": rows });
            Ok(emit(Meta::new("refute-greedy").with_beta(beta), result))
        }
        Command::Unique { beta, x, horizon } => {
            let verdict = classify_uniqueness(beta, x, horizon)?;
            let result = json!({ "x": x, "horizon": horizon, "verdict": verdict });
            Ok(emit(Meta::new("unique").with_beta(beta), result))
        }
        Command::UniqueScan { beta, grid, horizon, format } => {
            let (m_minus, m_plus, ..) = domain_constants(beta)?;
            let grid = grid.max(2);
            let mut rows = Vec::with_capacity(grid);
            for i in 0..grid {
                let x = m_minus + (m_plus - m_minus) * i as f64 / (grid - 1) as f64;
                rows.push((x, classify_uniqueness(beta, x, horizon)?));
            }
            match format {
                Format::Csv => {
                    let mut out = String::from("x,verdict,detail\n");
                    for (x, v) in &rows {
                        let (name, detail) = match v {
                            UniquenessVerdict::Unique { period, .. } => {
                                ("unique", period.to_string())
                            }
                            UniquenessVerdict::NotUnique { switch_step } => {
                                ("not-unique", switch_step.to_string())
                            }
                            UniquenessVerdict::UndecidedAtHorizon => ("undecided", String::new()),
                        };
                        out.push_str(&format!("{x:.16e},{name},{detail}\n"));
                    }
                    Ok(out)
                }
                Format::Json => {
                    let result = json!({
                        "horizon": horizon,
                        "points": rows
                            .iter()
                            .map(|(x, v)| json!({ "x": x, "verdict": v }))
                            .collect::<Vec<_>>(),
                    });
                    Ok(emit(Meta::new("unique-scan").with_beta(beta), result))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn run_ok(args: &[&str]) -> String {
        let (code, out, err) = run(args.iter().map(|s| s.to_string()));
        assert_eq!(code, 0, "stderr: {err}");
        out
    }

    #[test]
    fn every_operation_has_exactly_one_owner() {
        let mut owners: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (op, cmd) in OPERATION_TABLE {
            owners.entry(op).or_default().push(cmd);
            assert!(SUBCOMMANDS.contains(cmd), "{cmd} is not a subcommand");
        }
        assert_eq!(owners.len(), 26);
        for (op, cmds) in owners {
            assert_eq!(cmds.len(), 1, "{op} owned by {cmds:?}");
        }
        // every subcommand but the batch presentation owns something
        let owning: BTreeSet<&str> = OPERATION_TABLE.iter().map(|(_, c)| *c).collect();
        for cmd in SUBCOMMANDS {
            if *cmd != "unique-scan" {
                assert!(owning.contains(cmd), "{cmd} owns no operation");
            }
        }
    }

    #[test]
    fn expand_frozen_example() {
        let out = run_ok(&[
            "negbeta", "expand", "--beta", "1.5", "--alpha", "midpoint", "--x", "0.5", "--depth",
            "7",
        ]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["word"], "0100011");
        assert_eq!(doc["meta"]["command"], "expand");
        assert_eq!(doc["meta"]["alpha"], -0.2);
        let value = doc["result"]["value"].as_f64().unwrap();
        let bound = doc["result"]["error_bound"].as_f64().unwrap();
        assert!((0.5 - value).abs() <= bound);
    }

    #[test]
    fn regions_reports_constants() {
        let out = run_ok(&["negbeta", "regions", "--beta", "1.5"]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        let (m_minus, m_plus, s_lo, _) = domain_constants(1.5).unwrap();
        assert_eq!(doc["result"]["m_minus"], m_minus);
        assert_eq!(doc["result"]["m_plus"], m_plus);
        assert_eq!(doc["result"]["s_lo"], s_lo);
        assert!((s_lo - -8.0 / 15.0).abs() < 1e-15);
        assert!((m_minus - -1.2).abs() < 1e-15);
    }

    #[test]
    fn unknown_command_is_a_usage_error() {
        let (code, _, err) = run(["negbeta", "unknown-cmd"].iter().map(|s| s.to_string()));
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn bad_flag_value_is_a_usage_error() {
        let (code, ..) =
            run(["negbeta", "expand", "--beta", "abc", "--x", "0"].iter().map(|s| s.to_string()));
        assert_eq!(code, 2);
    }

    #[test]
    fn domain_error_exits_one_and_names_the_error() {
        let (code, out, err) = run(
            ["negbeta", "expand", "--beta", "2.5", "--x", "0.5"].iter().map(|s| s.to_string()),
        );
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("BetaOutOfRange"), "{err}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(["negbeta", "--help"].iter().map(|s| s.to_string()));
        assert_eq!(code, 0);
        assert!(out.contains("unique-scan"));
    }

    #[test]
    fn identical_invocations_are_byte_identical() {
        for args in [
            vec!["negbeta", "random", "--beta", "1.5", "--x", "0.1", "--depth", "40", "--seed", "42"],
            vec!["negbeta", "density", "--beta", "1.5", "--alpha", "-0.2", "--bins", "64", "--format", "csv"],
            vec!["negbeta", "support", "--beta", "1.5", "--alpha", "-0.2"],
        ] {
            let a = run_ok(&args);
            let b = run_ok(&args);
            assert_eq!(a, b);
            assert!(!a.is_empty());
        }
    }

    #[test]
    fn seeded_random_reports_seed_in_meta() {
        let out = run_ok(&[
            "negbeta", "random", "--beta", "1.5", "--x", "0.0", "--depth", "10", "--seed", "7",
        ]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["meta"]["seed"], 7);
        // explicit coins: no seed in meta
        let out = run_ok(&[
            "negbeta", "random", "--beta", "1.5", "--x", "0.0", "--depth", "3", "--coins", "01",
            "--coin-default", "0",
        ]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["meta"]["seed"], serde_json::Value::Null);
    }

    #[test]
    fn exhausted_coins_surface_as_domain_error() {
        let (code, _, err) = run(
            ["negbeta", "random", "--beta", "1.5", "--x", "0.0", "--depth", "5", "--coins", "0"]
                .iter()
                .map(|s| s.to_string()),
        );
        assert_eq!(code, 1);
        assert!(err.contains("CoinsExhausted"), "{err}");
    }

    #[test]
    fn density_csv_has_bin_rows() {
        let out = run_ok(&[
            "negbeta", "density", "--beta", "1.5", "--alpha", "-0.2", "--bins", "32", "--format",
            "csv",
        ]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "bin_lo,bin_hi,density");
        assert_eq!(lines.len(), 33);
        // 17 significant digits
        assert!(lines[1].split(',').next().unwrap().contains('e'));
    }

    #[test]
    fn density_routes_agree_roughly() {
        let direct = run_ok(&[
            "negbeta", "density", "--beta", "1.5", "--alpha", "-0.2", "--bins", "256",
        ]);
        let factor = run_ok(&[
            "negbeta", "density", "--beta", "1.5", "--alpha", "-0.2", "--bins", "256", "--route",
            "factor",
        ]);
        let d: serde_json::Value = serde_json::from_str(&direct).unwrap();
        let f: serde_json::Value = serde_json::from_str(&factor).unwrap();
        let sum = |v: &serde_json::Value| -> f64 {
            v["result"]["mass"].as_array().unwrap().iter().map(|m| m.as_f64().unwrap()).sum()
        };
        assert!((sum(&d) - 1.0).abs() < 1e-9);
        assert!((sum(&f) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unique_scan_csv_shape() {
        let out = run_ok(&[
            "negbeta", "unique-scan", "--beta", "1.5", "--grid", "11", "--horizon", "1000",
        ]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "x,verdict,detail");
        assert_eq!(lines.len(), 12);
        // endpoints are the unique ones at this base
        assert!(lines[1].contains("unique"), "{}", lines[1]);
        assert!(lines[11].contains("unique"));
        assert!(lines[5].contains("not-unique"));
    }

    #[test]
    fn compare_verdict_round_trips() {
        let out = run_ok(&["negbeta", "compare", "--lhs", "10", "--rhs", "01"]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["verdict"]["relation"], "lt");
        assert_eq!(doc["result"]["verdict"]["first_diff"], 1);
    }

    #[test]
    fn admissible_defaults_depth_to_four_lengths() {
        // the depth-14 expansion of x = 0.5 at this cut, hence admissible
        let out = run_ok(&[
            "negbeta", "admissible", "--beta", "1.5", "--alpha", "-0.2", "--word",
            "01000111111100",
        ]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["depth"], 56);
        assert_eq!(doc["result"]["report"]["verdict"], "admissible");
    }

    #[test]
    fn cylinder_empty_is_null() {
        let out = run_ok(&[
            "negbeta", "cylinder", "--beta", "1.5", "--alpha", "-0.5", "--word", "11",
        ]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(doc["result"]["interval"].is_null());
    }

    #[test]
    fn factor_check_defects_are_tiny() {
        let out = run_ok(&[
            "negbeta", "factor-check", "--beta", "1.5", "--alpha", "-0.2", "--grid", "2000",
        ]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(doc["result"]["conjugacy_defect"].as_f64().unwrap() < 1e-12);
        assert!(doc["result"]["fold_defect"].as_f64().unwrap() < 1e-10);
        assert_eq!(doc["result"]["halves_swap"], true);
    }

    #[test]
    fn enumerate_reports_feasibility_and_words() {
        let out = run_ok(&[
            "negbeta", "enumerate", "--beta", "1.5", "--x", "0", "--depth", "3",
        ]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["count"], 4);
        assert_eq!(doc["result"]["first_digit_feasible"]["0"], true);
        assert_eq!(doc["result"]["first_digit_feasible"]["1"], true);
        assert_eq!(doc["result"]["words"][0], "000");
    }
}

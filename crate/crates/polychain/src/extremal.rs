//! Extremal analysis: the two regime-boundary roots, the alpha-interval
//! classifier, the named chain families, exhaustive extremal searches, and
//! the brute-force verifier for the predicted extremal table.

pub mod moves;

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

use crate::chain::{CanonicalKey, ChainError, LengthVector};
use crate::enumerate::{enumerate_chains, ChainRecord, EnumerationError, EnumerationRequest};
use crate::index::{chi_direct, f_val, g_val, Alpha, IndexError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtremalError {
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("alpha = 0 has no regime")]
    AlphaZero,
    #[error("move {mv} does not apply to length vector {lv}")]
    MoveNotApplicable { mv: String, lv: String },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Which boundary equation to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootTarget {
    /// f(a) = 0, separating the middle regimes near -3.1.
    F,
    /// f(a) + g(a) = 0, separating the deep-negative regimes near -5.5.
    FPlusG,
}

impl RootTarget {
    fn eval(self, a: f64) -> f64 {
        match self {
            RootTarget::F => f_val(a),
            RootTarget::FPlusG => f_val(a) + g_val(a),
        }
    }
}

pub const X0_BRACKET: (f64, f64) = (-4.0, -2.5);
pub const X1_BRACKET: (f64, f64) = (-6.0, -5.0);
const ROOT_WIDTH: f64 = 1e-12;

/// Bisection on [lo, hi] down to an interval of width 1e-12; returns the
/// midpoint. The endpoints must bracket a sign change.
pub fn find_root(target: RootTarget, lo: f64, hi: f64) -> Result<f64, ExtremalError> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = target.eval(lo);
    let fhi = target.eval(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(ExtremalError::NoSignChange { lo, hi });
    }
    while hi - lo > ROOT_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = target.eval(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of f = 0 in the default bracket, cached after the first call.
pub fn x0() -> f64 {
    static X0: OnceLock<f64> = OnceLock::new();
    *X0.get_or_init(|| {
        find_root(RootTarget::F, X0_BRACKET.0, X0_BRACKET.1).expect("f changes sign on the default bracket")
    })
}

/// Root of f + g = 0 in the default bracket, cached after the first call.
pub fn x1() -> f64 {
    static X1: OnceLock<f64> = OnceLock::new();
    *X1.get_or_init(|| {
        find_root(RootTarget::FPlusG, X1_BRACKET.0, X1_BRACKET.1)
            .expect("f + g changes sign on the default bracket")
    })
}

/// The six alpha intervals with distinct extremal behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegimeTag {
    PositiveAlpha,
    BetweenX0AndZero,
    AtX0,
    BetweenX1AndX0,
    AtX1,
    BelowX1,
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegimeTag::PositiveAlpha => "alpha > 0",
            RegimeTag::BetweenX0AndZero => "x0 < alpha < 0",
            RegimeTag::AtX0 => "alpha = x0",
            RegimeTag::BetweenX1AndX0 => "x1 < alpha < x0",
            RegimeTag::AtX1 => "alpha = x1",
            RegimeTag::BelowX1 => "alpha < x1",
        };
        f.write_str(s)
    }
}

pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

/// Classifies alpha against the computed roots; `tol` is how close alpha
/// must be to a root to count as sitting on the boundary.
pub fn regime_of(alpha: f64, tol: f64) -> Result<RegimeTag, ExtremalError> {
    if alpha == 0.0 || alpha.is_nan() {
        return Err(ExtremalError::AlphaZero);
    }
    if alpha > 0.0 {
        return Ok(RegimeTag::PositiveAlpha);
    }
    let (r0, r1) = (x0(), x1());
    if (alpha - r0).abs() <= tol {
        Ok(RegimeTag::AtX0)
    } else if (alpha - r1).abs() <= tol {
        Ok(RegimeTag::AtX1)
    } else if alpha > r0 {
        Ok(RegimeTag::BetweenX0AndZero)
    } else if alpha > r1 {
        Ok(RegimeTag::BetweenX1AndX0)
    } else {
        Ok(RegimeTag::BelowX1)
    }
}

/// Structural flags of a length vector, all decidable without realizing the
/// chain. Reversing the vector never changes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyTag {
    pub is_linear: bool,
    pub is_zigzag: bool,
    pub is_zdagger: bool,
    pub in_z_star_class: bool,
    pub in_z_class: bool,
    pub no_length_two: bool,
}

pub fn classify_family(lv: &LengthVector) -> FamilyTag {
    let ls = lv.lengths();
    let s = ls.len();
    let internals: &[usize] = if s >= 3 { &ls[1..s - 1] } else { &[] };
    let externals: &[usize] = if s >= 2 { &[ls[0], ls[s - 1]] } else { &ls[..1] };
    let external_twos = externals.iter().filter(|&&l| l == 2).count();
    let fours = ls.iter().filter(|&&l| l == 4).count();

    FamilyTag {
        is_linear: s == 1,
        is_zigzag: ls.iter().all(|&l| l == 2),
        is_zdagger: internals.iter().all(|&l| l == 3)
            && externals.iter().all(|&l| l <= 3)
            && external_twos <= 1,
        in_z_star_class: ls.iter().all(|&l| l == 3 || l == 4) && fours <= 1,
        in_z_class: internals.iter().all(|&l| l == 3 || l == 4)
            && externals.iter().all(|&l| l <= 4)
            && external_twos <= 1
            && fours <= 1
            && (!internals.contains(&4) || externals.iter().all(|&l| l == 3)),
        no_length_two: !ls.contains(&2),
    }
}

/// The family predicted extremal in one table cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyRule {
    Zigzag,
    Linear,
    NoLengthTwo,
    ZStarClass,
    ZClass,
    ZDagger,
}

impl FamilyRule {
    pub fn matches(self, tag: &FamilyTag) -> bool {
        match self {
            FamilyRule::Zigzag => tag.is_zigzag,
            FamilyRule::Linear => tag.is_linear,
            FamilyRule::NoLengthTwo => tag.no_length_two,
            FamilyRule::ZStarClass => tag.in_z_star_class,
            FamilyRule::ZClass => tag.in_z_class,
            FamilyRule::ZDagger => tag.is_zdagger,
        }
    }
}

impl fmt::Display for FamilyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyRule::Zigzag => "zigzag",
            FamilyRule::Linear => "linear",
            FamilyRule::NoLengthTwo => "chains with no length-2 segment",
            FamilyRule::ZStarClass => "Z* class",
            FamilyRule::ZClass => "Z class",
            FamilyRule::ZDagger => "Z-dagger",
        };
        f.write_str(s)
    }
}

/// Predicted (max, min) families per regime.
pub fn table1_prediction(regime: RegimeTag) -> (FamilyRule, FamilyRule) {
    match regime {
        RegimeTag::PositiveAlpha => (FamilyRule::Zigzag, FamilyRule::Linear),
        RegimeTag::BetweenX0AndZero => (FamilyRule::Linear, FamilyRule::Zigzag),
        RegimeTag::AtX0 => (FamilyRule::NoLengthTwo, FamilyRule::Zigzag),
        RegimeTag::BetweenX1AndX0 => (FamilyRule::ZStarClass, FamilyRule::Zigzag),
        RegimeTag::AtX1 => (FamilyRule::ZClass, FamilyRule::Zigzag),
        RegimeTag::BelowX1 => (FamilyRule::ZDagger, FamilyRule::Zigzag),
    }
}

/// How an observed extremal set compares against a predicted family set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SetMatch {
    Exact,
    ProperSubset,
    Mismatch,
}

impl fmt::Display for SetMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SetMatch::Exact => "exact",
            SetMatch::ProperSubset => "proper subset",
            SetMatch::Mismatch => "mismatch",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub omega_only: bool,
    /// Relative tolerance under which two chi values tie.
    pub tie_tol: f64,
    /// Tolerance for classifying alpha as sitting on x0 or x1.
    pub boundary_tol: f64,
    pub ceiling: usize,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            omega_only: true,
            tie_tol: 1e-9,
            boundary_tol: DEFAULT_BOUNDARY_TOL,
            ceiling: crate::enumerate::DEFAULT_CEILING,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalSide {
    pub value: f64,
    pub records: Vec<ChainRecord>,
}

/// Verdict of one table cell: per-side set comparison against the predicted
/// family. On the x1 boundary the predicted class is only guaranteed to
/// contain the maximizers, so a proper subset still passes there and the
/// report says which of the two happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub max_family: FamilyRule,
    pub min_family: FamilyRule,
    pub max_match: SetMatch,
    pub min_match: SetMatch,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub alpha: f64,
    pub regime: RegimeTag,
    pub omega_only: bool,
    pub universe_size: usize,
    pub max: ExtremalSide,
    pub min: ExtremalSide,
    pub verdict: Option<Verdict>,
}

/// Ranks every enumerated chain by the directly evaluated index and collects
/// the argmax/argmin tie sets. Against the omega universe the report also
/// carries the predicted-family comparison; outside it the extrema are
/// reported without a prediction.
pub fn extremal_search(
    n: usize,
    alpha: Alpha,
    opts: &SearchOptions,
) -> Result<ExtremalReport, ExtremalError> {
    let mut req = EnumerationRequest::new(n).omega_only(opts.omega_only);
    req.ceiling = opts.ceiling;
    let records = enumerate_chains(&req)?;
    search_records(&records, n, alpha, opts)
}

fn search_records(
    records: &[ChainRecord],
    n: usize,
    alpha: Alpha,
    opts: &SearchOptions,
) -> Result<ExtremalReport, ExtremalError> {
    let regime = regime_of(alpha.value(), opts.boundary_tol)?;
    let chis: Vec<f64> = records
        .par_iter()
        .map(|rec| rec.realize().map(|c| chi_direct(&c, alpha)))
        .collect::<Result<_, _>>()?;

    let max_value = chis.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_value = chis.iter().copied().fold(f64::INFINITY, f64::min);
    let ties = |extremum: f64| -> Vec<ChainRecord> {
        records
            .iter()
            .zip(&chis)
            .filter(|(_, &v)| (v - extremum).abs() <= opts.tie_tol * extremum.abs())
            .map(|(r, _)| r.clone())
            .collect()
    };
    let max_set = ties(max_value);
    let min_set = ties(min_value);

    let verdict = if opts.omega_only {
        let (max_family, min_family) = table1_prediction(regime);
        let max_match = compare_sets(&max_set, records, max_family);
        let min_match = compare_sets(&min_set, records, min_family);
        let max_ok = max_match == SetMatch::Exact
            || (regime == RegimeTag::AtX1 && max_match == SetMatch::ProperSubset);
        Some(Verdict {
            max_family,
            min_family,
            max_match,
            min_match,
            pass: max_ok && min_match == SetMatch::Exact,
        })
    } else {
        None
    };

    Ok(ExtremalReport {
        n,
        alpha: alpha.value(),
        regime,
        omega_only: opts.omega_only,
        universe_size: records.len(),
        max: ExtremalSide { value: max_value, records: max_set },
        min: ExtremalSide { value: min_value, records: min_set },
        verdict,
    })
}

fn compare_sets(observed: &[ChainRecord], universe: &[ChainRecord], family: FamilyRule) -> SetMatch {
    let observed_keys: BTreeSet<&CanonicalKey> = observed.iter().map(|r| &r.key).collect();
    let predicted_keys: BTreeSet<&CanonicalKey> = universe
        .iter()
        .filter(|r| family.matches(&classify_family(&r.length_vector)))
        .map(|r| &r.key)
        .collect();
    if observed_keys == predicted_keys {
        SetMatch::Exact
    } else if observed_keys.is_subset(&predicted_keys) {
        SetMatch::ProperSubset
    } else {
        SetMatch::Mismatch
    }
}

/// One labelled alpha sample for a verification run. The label is carried
/// into reports so boundary values print symbolically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaSample {
    pub label: String,
    pub value: f64,
}

impl AlphaSample {
    pub fn plain(value: f64) -> AlphaSample {
        AlphaSample { label: format!("{value}"), value }
    }

    pub fn labelled(label: &str, value: f64) -> AlphaSample {
        AlphaSample { label: label.to_string(), value }
    }
}

/// The default alpha samples: two per open regime plus both boundaries.
pub fn default_alpha_samples() -> Vec<AlphaSample> {
    vec![
        AlphaSample::plain(2.0),
        AlphaSample::plain(1.0),
        AlphaSample::plain(-0.5),
        AlphaSample::plain(-2.0),
        AlphaSample::labelled("x0", x0()),
        AlphaSample::plain(-4.0),
        AlphaSample::labelled("x1", x1()),
        AlphaSample::plain(-6.0),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Cell {
    pub alpha_label: String,
    pub report: ExtremalReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Summary {
    pub cells: Vec<Table1Cell>,
    pub pass: bool,
}

impl Table1Summary {
    pub fn failures(&self) -> impl Iterator<Item = &Table1Cell> {
        self.cells
            .iter()
            .filter(|c| !c.report.verdict.map(|v| v.pass).unwrap_or(false))
    }
}

/// Runs the extremal search for every (n, alpha) pair and compares observed
/// extremal sets against the predicted families.
pub fn verify_table1(
    ns: RangeInclusive<usize>,
    alphas: &[AlphaSample],
    opts: &SearchOptions,
) -> Result<Table1Summary, ExtremalError> {
    let mut cells = Vec::new();
    for n in ns {
        let mut req = EnumerationRequest::new(n).omega_only(true);
        req.ceiling = opts.ceiling;
        let records = enumerate_chains(&req)?;
        for sample in alphas {
            let alpha = Alpha::new(sample.value)?;
            let report = search_records(&records, n, alpha, &SearchOptions { omega_only: true, ..*opts })?;
            cells.push(Table1Cell { alpha_label: sample.label.clone(), report });
        }
    }
    let pass = cells
        .iter()
        .all(|c| c.report.verdict.map(|v| v.pass).unwrap_or(false));
    Ok(Table1Summary { cells, pass })
}

//! Extremum thresholds α₀, δ₋, δ₊ of the shifted roots φ±, the assembled
//! threshold bundle, and grid classifiers for curvature and monotonicity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::extremum::{golden_max, scan_then_refine, Extremum};
use crate::grid;
use crate::hyp2f1::hyp2f1_at;
use crate::phi::{
    aux_eval, c_threshold, f_ratio_second_derivative, phi, phi_plus_extended,
    phi_second_derivative, zb_value, ZbParams, PHI_PLUS_DIRECT_LIMIT,
};
use crate::special::{beta, ramanujan_r};

/// Coarse scan size for the φ± extrema.
pub const EXTREMA_SCAN: usize = 4096;
/// x-tolerance of the golden-section refinement.
pub const EXTREMA_XTOL: f64 = 1e-10;
/// Distance from {0, 1} of the curvature grids.
pub const CURVATURE_MARGIN: f64 = 1e-4;
/// Distance from {0, 1} of the monotonicity grids.
pub const MONOTONE_MARGIN: f64 = 1e-9;
/// Relative tolerance of second-derivative sign tests.
pub const CURVATURE_TOL: f64 = 1e-9;
/// Relative tolerance of first-difference sign tests.
pub const DIFFERENCE_TOL: f64 = 1e-12;
/// Smallest grid accepted by the classifiers.
pub const MIN_GRID: usize = 64;

/// α₀ = max φ₊, δ₋ = max φ₋, δ₊ = min φ₊ over [0, 1), with their locations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiPmExtrema {
    pub alpha0: f64,
    pub alpha0_at: f64,
    pub delta_minus: f64,
    pub delta_minus_at: f64,
    pub delta_plus: f64,
    pub delta_plus_at: f64,
}

fn require_unit_sum(params: &ZbParams) -> Result<()> {
    params.require_positive("extremum thresholds need a, b > 0")?;
    if !params.in_curvature_domain() {
        return Err(Error::Precondition(format!(
            "extremum thresholds need a + b <= 1, got a + b = {}",
            params.a() + params.b()
        )));
    }
    Ok(())
}

/// Extrema of φ± with the default scan size, run in parallel.
pub fn extrema_phi_pm(params: &ZbParams) -> Result<PhiPmExtrema> {
    extrema_phi_pm_with(params, EXTREMA_SCAN, Exec::default())
}

/// Extrema of φ± from an `n`-point scan refined by golden section.
///
/// φ₊ is scanned on [0, 1] including its limit R(a, b) at x = 1; φ₋ on
/// [0, 1 − 1e−6], since it tends to −∞ at x = 1.
pub fn extrema_phi_pm_with(params: &ZbParams, n: usize, exec: Exec) -> Result<PhiPmExtrema> {
    require_unit_sum(params)?;
    if n < 3 {
        return Err(Error::Precondition(format!(
            "extremum scan needs n >= 3, got {n}"
        )));
    }
    let xs = grid::uniform(0.0, PHI_PLUS_DIRECT_LIMIT, n);
    let evals = exec::map(exec, &xs, |&x| aux_eval(params, x));
    let mut plus = Vec::with_capacity(n + 1);
    let mut minus = Vec::with_capacity(n);
    for e in evals {
        let e = e?;
        plus.push(e.phi_plus);
        minus.push(e.phi_minus);
    }
    let mut xs_plus = xs.clone();
    xs_plus.push(1.0);
    plus.push(params.ramanujan()?);

    let phi_p = |x: f64| phi_plus_extended(params, x);
    let phi_m = |x: f64| aux_eval(params, x).map(|e| e.phi_minus);

    let max_plus = scan_then_refine(&xs_plus, &plus, |lo, hi| {
        golden_max(phi_p, lo, hi, EXTREMA_XTOL)
    })?;
    let neg_plus: Vec<f64> = plus.iter().map(|v| -v).collect();
    let min_plus = scan_then_refine(&xs_plus, &neg_plus, |lo, hi| {
        golden_max(|x| phi_p(x).map(|v| -v), lo, hi, EXTREMA_XTOL)
    })?;
    let max_minus = scan_then_refine(&xs, &minus, |lo, hi| {
        golden_max(phi_m, lo, hi, EXTREMA_XTOL)
    })?;
    let Extremum {
        x: dp_at,
        value: neg_dp,
        ..
    } = min_plus;
    Ok(PhiPmExtrema {
        alpha0: max_plus.value,
        alpha0_at: max_plus.x,
        delta_minus: max_minus.value,
        delta_minus_at: max_minus.x,
        delta_plus: -neg_dp,
        delta_plus_at: dp_at,
    })
}

/// Every threshold attached to a parameter pair.
///
/// The extremum thresholds are only defined for a + b ≤ 1 and are `None`
/// outside that range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdBundle {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub inv_sum: f64,
    pub c_ab: f64,
    pub alpha0: Option<f64>,
    pub delta_minus: Option<f64>,
    pub delta_plus: Option<f64>,
    pub g_ratio_up: f64,
    pub notes: Vec<String>,
}

/// (R(a, b) − R(a+½, b+½)) / B(a+½, b+½): below it G is increasing.
pub fn g_ratio_up(params: &ZbParams) -> Result<f64> {
    let r = params.ramanujan()?;
    let (a2, b2) = (params.a() + 0.5, params.b() + 0.5);
    Ok((r - ramanujan_r(a2, b2)?) / beta(a2, b2)?)
}

/// Assemble all thresholds for (a, b).
pub fn thresholds(params: &ZbParams) -> Result<ThresholdBundle> {
    thresholds_with(params, EXTREMA_SCAN, Exec::default())
}

pub fn thresholds_with(params: &ZbParams, n: usize, exec: Exec) -> Result<ThresholdBundle> {
    let r = params.ramanujan()?;
    let inv_sum = params.inv_sum()?;
    let c_ab = c_threshold(params)?;
    let up = g_ratio_up(params)?;
    let mut notes = vec!["c_ab is the root in c of the curvature numerator at x = 0".to_string()];
    let (alpha0, delta_minus, delta_plus) = if params.in_curvature_domain() {
        let e = extrema_phi_pm_with(params, n, exec)?;
        notes.push(format!(
            "alpha0 at x = {:.6}, delta_minus at x = {:.6}, delta_plus at x = {:.6}",
            e.alpha0_at, e.delta_minus_at, e.delta_plus_at
        ));
        (Some(e.alpha0), Some(e.delta_minus), Some(e.delta_plus))
    } else {
        notes.push("extremum thresholds need a + b <= 1".to_string());
        (None, None, None)
    };
    Ok(ThresholdBundle {
        a: params.a(),
        b: params.b(),
        r,
        inv_sum,
        c_ab,
        alpha0,
        delta_minus,
        delta_plus,
        g_ratio_up: up,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvatureTarget {
    Phi,
    FRatio,
}

impl std::str::FromStr for CurvatureTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(Self::Phi),
            "f_ratio" | "f" => Ok(Self::FRatio),
            other => Err(Error::Config(format!("unknown curvature target '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Curvature {
    Convex,
    Concave,
    Neither,
}

/// Outcome of a second-derivative sign test; `witness` is set iff the
/// verdict is `Neither`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureVerdict {
    pub verdict: Curvature,
    pub witness: Option<f64>,
    pub min_second: f64,
    pub max_second: f64,
}

fn require_grid(n: usize) -> Result<()> {
    if n < MIN_GRID {
        return Err(Error::Precondition(format!(
            "classifier grid needs n >= {MIN_GRID}, got {n}"
        )));
    }
    Ok(())
}

/// +1 / −1 when `v` is significantly positive / negative, else 0.
fn significant_sign(v: f64, tol: f64) -> i8 {
    if v > tol {
        1
    } else if v < -tol {
        -1
    } else {
        0
    }
}

pub fn classify_curvature(
    params: &ZbParams,
    c: f64,
    target: CurvatureTarget,
    n: usize,
) -> Result<CurvatureVerdict> {
    classify_curvature_with(params, c, target, n, Exec::default())
}

/// Sign test of the closed-form second derivative on a logit grid of
/// (1e−4, 1 − 1e−4).
pub fn classify_curvature_with(
    params: &ZbParams,
    c: f64,
    target: CurvatureTarget,
    n: usize,
    exec: Exec,
) -> Result<CurvatureVerdict> {
    require_grid(n)?;
    let xs = grid::logit(CURVATURE_MARGIN, n);
    let samples = exec::map(exec, &xs, |&x| match target {
        CurvatureTarget::Phi => phi_second_derivative(params, c, x),
        CurvatureTarget::FRatio => f_ratio_second_derivative(params, c, x),
    });
    let mut signs = Vec::with_capacity(n);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for d in samples {
        let d = d?;
        lo = lo.min(d.value);
        hi = hi.max(d.value);
        signs.push(significant_sign(d.value, CURVATURE_TOL * d.scale));
    }
    let (verdict, witness) = if signs.iter().all(|&s| s >= 0) {
        (Curvature::Convex, None)
    } else if signs.iter().all(|&s| s <= 0) {
        (Curvature::Concave, None)
    } else {
        (Curvature::Neither, sign_change_witness(&xs, &signs))
    };
    Ok(CurvatureVerdict {
        verdict,
        witness,
        min_second: lo,
        max_second: hi,
    })
}

/// First abscissa whose significant sign opposes the first significant sign.
fn sign_change_witness(xs: &[f64], signs: &[i8]) -> Option<f64> {
    let first = *signs.iter().find(|&&s| s != 0)?;
    signs.iter().position(|&s| s == -first).map(|i| xs[i])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Neither,
}

/// Observed monotonicity, the verdict implied by the thresholds, and a
/// witness abscissa when the function turns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub verdict: Monotonicity,
    pub expected: Option<Monotonicity>,
    pub witness: Option<f64>,
}

impl MonotonicityReport {
    /// True when a threshold prediction exists and the grid disagrees with it.
    pub fn contradicts_expectation(&self) -> bool {
        self.expected.is_some_and(|e| e != self.verdict)
    }
}

fn monotone_verdict(xs: &[f64], ys: &[f64]) -> (Monotonicity, Option<f64>) {
    let signs: Vec<i8> = ys
        .windows(2)
        .map(|w| significant_sign(w[1] - w[0], DIFFERENCE_TOL * w[0].abs().max(w[1].abs())))
        .collect();
    if signs.iter().all(|&s| s >= 0) {
        (Monotonicity::Increasing, None)
    } else if signs.iter().all(|&s| s <= 0) {
        (Monotonicity::Decreasing, None)
    } else {
        // report the right end of the first opposing difference
        let mids = &xs[1..];
        (Monotonicity::Neither, sign_change_witness(mids, &signs))
    }
}

fn sample(
    exec: Exec,
    xs: &[f64],
    f: impl Fn(f64) -> Result<f64> + Sync + Send,
) -> Result<Vec<f64>> {
    exec::map(exec, xs, |&x| f(x)).into_iter().collect()
}

pub fn classify_monotonicity(params: &ZbParams, c: f64, n: usize) -> Result<MonotonicityReport> {
    classify_monotonicity_with(params, c, n, Exec::default())
}

/// First-difference sign test of φ on a logit grid of (1e−9, 1 − 1e−9).
/// Expected: increasing iff c ≤ R(a, b), decreasing iff c ≥ 1/a + 1/b.
pub fn classify_monotonicity_with(
    params: &ZbParams,
    c: f64,
    n: usize,
    exec: Exec,
) -> Result<MonotonicityReport> {
    params.require_positive("monotonicity thresholds need a, b > 0")?;
    require_grid(n)?;
    let xs = grid::logit(MONOTONE_MARGIN, n);
    let ys = sample(exec, &xs, |x| phi(params, c, x))?;
    let (verdict, witness) = monotone_verdict(&xs, &ys);
    let expected = if c <= params.ramanujan()? {
        Monotonicity::Increasing
    } else if c >= params.inv_sum()? {
        Monotonicity::Decreasing
    } else {
        Monotonicity::Neither
    };
    Ok(MonotonicityReport {
        verdict,
        expected: Some(expected),
        witness,
    })
}

/// G(x) = (c + x ₂F₁(a+½, b+½; a+b+1; x)) / ₂F₁(a, b; a+b; x).
pub fn g_ratio(params: &ZbParams, c: f64, x: f64) -> Result<f64> {
    let (a, b) = (params.a(), params.b());
    let num = c + x * hyp2f1_at(a + 0.5, b + 0.5, a + b + 1.0, x)?;
    Ok(num / zb_value(params, x)?)
}

pub fn classify_g_ratio(params: &ZbParams, c: f64, n: usize) -> Result<MonotonicityReport> {
    classify_g_ratio_with(params, c, n, Exec::default())
}

/// First-difference sign test of G. Expected: decreasing iff c ≥ 1/a + 1/b,
/// increasing iff c < [`g_ratio_up`]; no prediction in between.
pub fn classify_g_ratio_with(
    params: &ZbParams,
    c: f64,
    n: usize,
    exec: Exec,
) -> Result<MonotonicityReport> {
    require_unit_sum(params)?;
    require_grid(n)?;
    // G is symmetric in (a, b)
    let params = params.sorted();
    let xs = grid::logit(MONOTONE_MARGIN, n);
    let ys = sample(exec, &xs, |x| g_ratio(&params, c, x))?;
    let (verdict, witness) = monotone_verdict(&xs, &ys);
    let expected = if c >= params.inv_sum()? {
        Some(Monotonicity::Decreasing)
    } else if c < g_ratio_up(&params)? {
        Some(Monotonicity::Increasing)
    } else {
        None
    };
    Ok(MonotonicityReport {
        verdict,
        expected,
        witness,
    })
}

//! Expansions of R(x) = R(x, 1−x) and B(x) = B(x, 1−x) in powers of
//! s = (1−2x)², the coefficient families of the two ratio combinations
//!
//!   f(x) = (1 + u − u²) B(x) − R(x),   g(x) = R(x) − B(x)/(1 + u),   u = x(1−x),
//!
//! the coefficients of H(x) = Γ(3/2−x)Γ(½+x)/x + ψ(x) − ψ(½+x) in powers of
//! ½ − x, and finite-difference complete-monotonicity probes.
//!
//! Coefficient families are formed from the excesses λ(n) − 1, β(n) − 1 and
//! η(n) − 1 so that the geometric decay of the tails survives in double
//! precision.

use serde::Serialize;

use crate::dirichlet::{
    beta_minus_one, dirichlet_beta, dirichlet_eta, dirichlet_lambda, eta_minus_one,
    lambda_minus_one,
};
use crate::error::{domain, Error, Result};
use crate::exec::{self, Exec};
use crate::fd;
use crate::special::{beta, digamma, ln_gamma, ramanujan_r, trigamma};

/// Largest table order accepted.
pub const MAX_ORDER: usize = 200;
/// Sign band, relative to max(1, |leading coefficient|).
pub const SIGN_TOL: f64 = 1e-14;
/// Value of b₁ quoted alongside the displayed formula.
pub const QUOTED_B1: f64 = 0.919;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoeffFamily {
    #[serde(rename = "R_series")]
    RSeries,
    #[serde(rename = "B_series")]
    BSeries,
    #[serde(rename = "f_final_b")]
    FRb,
    #[serde(rename = "g_final_d")]
    GRb,
    #[serde(rename = "H_gamma")]
    HGamma,
}

impl CoeffFamily {
    pub const ALL: [CoeffFamily; 5] = [
        Self::RSeries,
        Self::BSeries,
        Self::FRb,
        Self::GRb,
        Self::HGamma,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::RSeries => "R_series",
            Self::BSeries => "B_series",
            Self::FRb => "f_final_b",
            Self::GRb => "g_final_d",
            Self::HGamma => "H_gamma",
        }
    }
}

impl std::str::FromStr for CoeffFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown coefficient family '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
}

impl Sign {
    pub fn classify(v: f64, band: f64) -> Self {
        if v > band {
            Self::Positive
        } else if v < -band {
            Self::Negative
        } else {
            Self::Zero
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Positive => "+",
            Self::Negative => "-",
            Self::Zero => "0",
        }
    }
}

/// Coefficients 0..=order of one family with their sign verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffTable {
    pub family: CoeffFamily,
    pub order: usize,
    pub values: Vec<f64>,
    pub signs: Vec<Sign>,
    /// No coefficient is classified negative.
    pub all_nonnegative: bool,
}

impl CoeffTable {
    fn new(family: CoeffFamily, values: Vec<f64>) -> Self {
        let band = SIGN_TOL * values[0].abs().max(1.0);
        let signs: Vec<Sign> = values.iter().map(|&v| Sign::classify(v, band)).collect();
        let all_nonnegative = !signs.contains(&Sign::Negative);
        Self {
            family,
            order: values.len() - 1,
            values,
            signs,
            all_nonnegative,
        }
    }

    /// Σ values[n] · t^n.
    pub fn eval_power(&self, t: f64) -> f64 {
        self.values.iter().rev().fold(0.0, |acc, &v| acc * t + v)
    }

    /// Σ values[n] (1−2x)^{2n}; for H_gamma use [`Self::eval_power`] with ½ − x.
    pub fn eval_at(&self, x: f64) -> f64 {
        let t = 1.0 - 2.0 * x;
        self.eval_power(t * t)
    }

    /// CSV with columns index, value, sign; values at 17 significant digits.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Breakdown(format!("csv: {e}"));
        w.write_record(["index", "value", "sign"]).map_err(io)?;
        for (i, (v, s)) in self.values.iter().zip(&self.signs).enumerate() {
            w.write_record([i.to_string(), format!("{v:.16e}"), s.symbol().to_string()])
                .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Breakdown(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Breakdown(e.to_string()))
    }
}

fn require_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::Precondition(format!(
            "coefficient order {n} exceeds {MAX_ORDER}"
        )));
    }
    Ok(())
}

// Dirichlet orders passed below are at most 2·MAX_ORDER + 1, and ≥ 1 for β,
// ≥ 3 for λ; the constants cannot fail there.
fn beta_at(n: usize) -> f64 {
    dirichlet_beta(n as u32).expect("beta order >= 1")
}

fn beta_excess(n: usize) -> f64 {
    beta_minus_one(n as u32).expect("beta order >= 1")
}

fn lambda_at(n: usize) -> f64 {
    dirichlet_lambda(n as u32).expect("lambda order >= 3")
}

fn lambda_excess(n: usize) -> f64 {
    lambda_minus_one(n as u32).expect("lambda order >= 3")
}

/// Dense polynomials in s, lowest degree first.
mod poly {
    pub fn add(p: &[f64], q: &[f64]) -> Vec<f64> {
        let mut r = vec![0.0; p.len().max(q.len())];
        for (i, v) in p.iter().enumerate() {
            r[i] += v;
        }
        for (i, v) in q.iter().enumerate() {
            r[i] += v;
        }
        r
    }

    pub fn scale(p: &[f64], k: f64) -> Vec<f64> {
        p.iter().map(|v| v * k).collect()
    }

    pub fn mul(p: &[f64], q: &[f64]) -> Vec<f64> {
        let mut r = vec![0.0; p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        r
    }
}

/// u = x(1−x) = (1 − s)/4 with s = (1−2x)².
fn u_poly() -> Vec<f64> {
    vec![0.25, -0.25]
}

/// 1 + u − u² as a polynomial in s.
pub fn f_multiplier_poly() -> Vec<f64> {
    let u = u_poly();
    let u2 = poly::mul(&u, &u);
    poly::add(&poly::add(&[1.0], &u), &poly::scale(&u2, -1.0))
}

/// 1 + u as a polynomial in s (linear).
fn g_divisor_poly() -> Vec<f64> {
    poly::add(&[1.0], &u_poly())
}

/// Coefficients of R(x) and B(x) in powers of (1−2x)²:
/// R = log 16 + 4 Σ_{n≥1} λ(2n+1) s^n, B = 4 Σ_{n≥0} β(2n+1) s^n.
pub fn coeffs_r_b(order: usize) -> Result<(CoeffTable, CoeffTable)> {
    require_order(order)?;
    let r: Vec<f64> = (0..=order)
        .map(|n| {
            if n == 0 {
                16f64.ln()
            } else {
                4.0 * lambda_at(2 * n + 1)
            }
        })
        .collect();
    let b: Vec<f64> = (0..=order).map(|n| 4.0 * beta_at(2 * n + 1)).collect();
    Ok((
        CoeffTable::new(CoeffFamily::RSeries, r),
        CoeffTable::new(CoeffFamily::BSeries, b),
    ))
}

/// Coefficients b_n of f in powers of (1−2x)².
///
/// With P(s) = Σ p_j s^j = 1 + u − u², b_n = 4 Σ_j p_j β(2(n−j)+1) − r_n.
/// For n ≥ deg P the constant parts cancel (P(1) = 1) and the coefficient is
/// assembled from excesses only.
pub fn coeffs_f(order: usize) -> Result<CoeffTable> {
    require_order(order)?;
    let p = f_multiplier_poly();
    let deg = p.len() - 1;
    let p_sum: f64 = p.iter().sum();
    let values = (0..=order)
        .map(|n| {
            let terms = (0..=deg.min(n)).map(|j| (p[j], 2 * (n - j) + 1));
            if n == 0 {
                4.0 * p[0] * beta_at(1) - 16f64.ln()
            } else if n < deg {
                4.0 * terms.map(|(pj, k)| pj * beta_at(k)).sum::<f64>() - 4.0 * lambda_at(2 * n + 1)
            } else {
                let excess: f64 = terms.map(|(pj, k)| pj * beta_excess(k)).sum();
                4.0 * (p_sum - 1.0) + 4.0 * excess - 4.0 * lambda_excess(2 * n + 1)
            }
        })
        .collect();
    Ok(CoeffTable::new(CoeffFamily::FRb, values))
}

/// Coefficients d_n of g in powers of (1−2x)².
///
/// With 1/(1+u) = Σ q_j s^j (geometric, Σ q_j = 1),
/// d_n = r_n − 4 Σ_{m≤n} q_{n−m} β(2m+1)
///     = 4(λ(2n+1) − 1) + 4 Σ_{j>n} q_j − 4 Σ_{m≤n} q_{n−m}(β(2m+1) − 1)  for n ≥ 1.
pub fn coeffs_g(order: usize) -> Result<CoeffTable> {
    require_order(order)?;
    let den = g_divisor_poly();
    let (a0, a1) = (den[0], den[1]);
    let ratio = -a1 / a0;
    let q: Vec<f64> = (0..=order + 1).map(|j| ratio.powi(j as i32) / a0).collect();
    let values = (0..=order)
        .map(|n| {
            if n == 0 {
                return 16f64.ln() - 4.0 * q[0] * beta_at(1);
            }
            let tail = q[n + 1] / (1.0 - ratio);
            let mixed: f64 = (0..=n).map(|m| q[n - m] * beta_excess(2 * m + 1)).sum();
            4.0 * lambda_excess(2 * n + 1) + 4.0 * tail - 4.0 * mixed
        })
        .collect();
    Ok(CoeffTable::new(CoeffFamily::GRb, values))
}

/// Coefficients γ_n of H in powers of ½ − x:
/// γ_n = 2^{n+1} [(1 − η(n+1)) + Σ_{1≤k, 2k≤n} 2^{1−2k} η(2k)].
pub fn coeffs_h_gamma(order: usize) -> Result<CoeffTable> {
    require_order(order)?;
    let values = (0..=order)
        .map(|n| {
            let head = -eta_minus_one(n as u32 + 1)?;
            let mut even = 0.0;
            for k in 1..=n / 2 {
                even += 2f64.powi(1 - 2 * k as i32) * dirichlet_eta(2 * k as u32)?;
            }
            Ok(2f64.powi(n as i32 + 1) * (head + even))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(CoeffTable::new(CoeffFamily::HGamma, values))
}

/// Table for any family.
pub fn coeff_table(family: CoeffFamily, order: usize) -> Result<CoeffTable> {
    match family {
        CoeffFamily::RSeries => Ok(coeffs_r_b(order)?.0),
        CoeffFamily::BSeries => Ok(coeffs_r_b(order)?.1),
        CoeffFamily::FRb => coeffs_f(order),
        CoeffFamily::GRb => coeffs_g(order),
        CoeffFamily::HGamma => coeffs_h_gamma(order),
    }
}

fn require_unit_open(what: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain(what, x, "(0, 1)"));
    }
    Ok(())
}

/// R(x, 1−x) and B(x, 1−x).
fn r_b(x: f64) -> Result<(f64, f64)> {
    Ok((ramanujan_r(x, 1.0 - x)?, beta(x, 1.0 - x)?))
}

/// f(x) = (1 + x(1−x) − (x(1−x))²) B(x, 1−x) − R(x, 1−x).
pub fn eval_f_rb(x: f64) -> Result<f64> {
    require_unit_open("f x", x)?;
    let (r, b) = r_b(x)?;
    let u = x * (1.0 - x);
    Ok((1.0 + u - u * u) * b - r)
}

/// g(x) = R(x, 1−x) − B(x, 1−x)/(1 + x(1−x)).
pub fn eval_g_rb(x: f64) -> Result<f64> {
    require_unit_open("g x", x)?;
    let (r, b) = r_b(x)?;
    Ok(r - b / (1.0 + x * (1.0 - x)))
}

/// F(x) = B(½+x, 3/2−x)/(x(1−x)) + R(½+x, 3/2−x) − R(x, 1−x).
pub fn eval_f_sym(x: f64) -> Result<f64> {
    require_unit_open("F x", x)?;
    let (y, z) = (0.5 + x, 1.5 - x);
    Ok(beta(y, z)? / (x * (1.0 - x)) + ramanujan_r(y, z)? - ramanujan_r(x, 1.0 - x)?)
}

/// f_b(x) = (1/x + 1/b) B(½+x, ½+b) + R(½+x, ½+b) − R(x, b).
pub fn eval_f_b(b: f64, x: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(domain("f_b parameter b", b, "(0, inf)"));
    }
    if !(x > 0.0) {
        return Err(domain("f_b x", x, "(0, inf)"));
    }
    let (y, z) = (0.5 + x, 0.5 + b);
    Ok((1.0 / x + 1.0 / b) * beta(y, z)? + ramanujan_r(y, z)? - ramanujan_r(x, b)?)
}

/// H′_b(x) = B(x, b)(ψ(x) − ψ(x+b)) + ψ′(x), the derivative of B(x, b) − R(x, b).
pub fn h_b_prime(b: f64, x: f64) -> Result<f64> {
    Ok(beta(x, b)? * (digamma(x)? - digamma(x + b)?) + trigamma(x)?)
}

/// G_b(x) = B(x, b) − 1/x.
pub fn g_b(b: f64, x: f64) -> Result<f64> {
    Ok(beta(x, b)? - 1.0 / x)
}

/// H(x) = Γ(3/2−x)Γ(½+x)/x + ψ(x) − ψ(½+x) on (0, 3/2).
pub fn eval_h_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.5) {
        return Err(domain("H x", x, "(0, 3/2)"));
    }
    let gg = (ln_gamma(1.5 - x)? + ln_gamma(0.5 + x)?).exp();
    Ok(gg / x + digamma(x)? - digamma(0.5 + x)?)
}

/// b₁ from its displayed formula, from a Taylor oracle, and as quoted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct B1Report {
    /// (19/4)β(3) − ½β(1) − 4λ(3).
    pub displayed_formula: f64,
    /// f″(½)/8 from Richardson-extrapolated central differences.
    pub taylor_oracle: f64,
    pub taylor_error: f64,
    pub quoted: f64,
}

pub fn b1_three_ways() -> Result<B1Report> {
    let displayed = 4.75 * beta_at(3) - 0.5 * beta_at(1) - 4.0 * lambda_at(3);
    let d2 = fd::derivative(eval_f_rb, 0.5, 2, 0.05)?;
    Ok(B1Report {
        displayed_formula: displayed,
        taylor_oracle: d2.value / 8.0,
        taylor_error: d2.error / 8.0,
        quoted: QUOTED_B1,
    })
}

/// Functions probed for complete monotonicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CmTarget {
    /// H′_b on (0, ∞).
    HbPrime,
    /// G_b on (0, ∞).
    Gb,
    /// F on (0, ½).
    FSym,
    /// f_b on (0, 1 − b).
    Fb,
    /// f on (0, ½).
    FRb,
    /// g on (0, ½).
    GRb,
}

impl std::str::FromStr for CmTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h_b_prime" => Ok(Self::HbPrime),
            "g_b" => Ok(Self::Gb),
            "f_sym" => Ok(Self::FSym),
            "f_b" => Ok(Self::Fb),
            "f_rb" => Ok(Self::FRb),
            "g_rb" => Ok(Self::GRb),
            other => Err(Error::Config(format!("unknown probe target '{other}'"))),
        }
    }
}

/// Probes keep this distance from the ends of the stated domain.
pub const CM_DOMAIN_MARGIN: f64 = 1e-3;
/// Difference step as a fraction of the distance to the nearest singularity.
pub const CM_STEP_FRACTION: f64 = 0.05;
/// Highest derivative order probed.
pub const CM_MAX_ORDER: u32 = 4;

impl CmTarget {
    pub fn eval(self, b: f64, x: f64) -> Result<f64> {
        match self {
            Self::HbPrime => h_b_prime(b, x),
            Self::Gb => g_b(b, x),
            Self::FSym => eval_f_sym(x),
            Self::Fb => eval_f_b(b, x),
            Self::FRb => eval_f_rb(x),
            Self::GRb => eval_g_rb(x),
        }
    }

    /// Open domain on which the target is claimed completely monotonic.
    pub fn domain(self, b: f64) -> (f64, f64) {
        match self {
            Self::HbPrime | Self::Gb => (0.0, f64::INFINITY),
            Self::FSym | Self::FRb | Self::GRb => (0.0, 0.5),
            Self::Fb => (0.0, 1.0 - b),
        }
    }

    /// Distance from x to the nearest point where an ingredient is singular.
    fn singular_distance(self, x: f64) -> f64 {
        match self {
            Self::FSym => x.min(1.0 - x),
            _ => x,
        }
    }
}

/// Sign test outcome at one derivative order. `worst_margin` is the smallest
/// (−1)^m D_m(x) + err(x) over the grid; negative means a violation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub order: u32,
    pub pass: bool,
    pub worst_margin: f64,
    pub witness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmProbe {
    pub target: CmTarget,
    pub b: f64,
    pub orders: Vec<OrderVerdict>,
}

impl CmProbe {
    pub fn all_pass(&self) -> bool {
        self.orders.iter().all(|o| o.pass)
    }
}

pub fn cm_probe(target: CmTarget, b: f64, max_order: u32, grid: &[f64]) -> Result<CmProbe> {
    cm_probe_with(target, b, max_order, grid, Exec::default())
}

/// Check (−1)^m D_m ≥ 0 for m = 0..=max_order at every grid point.
pub fn cm_probe_with(
    target: CmTarget,
    b: f64,
    max_order: u32,
    grid: &[f64],
    exec: Exec,
) -> Result<CmProbe> {
    if max_order > CM_MAX_ORDER {
        return Err(Error::Precondition(format!(
            "probe order {max_order} exceeds {CM_MAX_ORDER}"
        )));
    }
    if !(b > 0.0) && !matches!(target, CmTarget::FSym | CmTarget::FRb | CmTarget::GRb) {
        return Err(domain("probe parameter b", b, "(0, inf)"));
    }
    let (lo, hi) = target.domain(b);
    if let Some(&x) = grid
        .iter()
        .find(|&&x| !(x >= lo + CM_DOMAIN_MARGIN && x <= hi - CM_DOMAIN_MARGIN))
    {
        return Err(domain("probe abscissa", x, "stated domain shrunk by 1e-3"));
    }
    let rows = exec::map(exec, grid, |&x| {
        let h = CM_STEP_FRACTION * target.singular_distance(x).min(1.0);
        (0..=max_order)
            .map(|m| {
                let d = fd::derivative(|t| target.eval(b, t), x, m, h)?;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                Ok(sign * d.value + d.error)
            })
            .collect::<Result<Vec<f64>>>()
    });
    let mut orders: Vec<OrderVerdict> = (0..=max_order)
        .map(|order| OrderVerdict {
            order,
            pass: true,
            worst_margin: f64::INFINITY,
            witness: None,
        })
        .collect();
    for (x, row) in grid.iter().zip(rows) {
        for (v, margin) in orders.iter_mut().zip(row?) {
            if margin < v.worst_margin {
                v.worst_margin = margin;
            }
            if margin < 0.0 && v.witness.is_none() {
                v.pass = false;
                v.witness = Some(*x);
            }
        }
    }
    Ok(CmProbe { target, b, orders })
}

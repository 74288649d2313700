//! Scalar kernels on the positive real axis: log-gamma, digamma, trigamma,
//! beta, rising factorials and the Ramanujan constant.

use std::sync::OnceLock;

use crate::dirichlet::zeta_minus_one;
use crate::error::{domain, Result};

/// Euler–Mascheroni constant to full double precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;
const ASYMPTOTIC_FROM: f64 = 10.0;
const NEAR_ONE_TERMS: usize = 48;

fn check_positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(what, x, "(0, inf)"))
    }
}

/// ζ(k) − 1 for k = 0..NEAR_ONE_TERMS (entries 0 and 1 unused).
fn zeta_excess_table() -> &'static [f64; NEAR_ONE_TERMS] {
    static TABLE: OnceLock<[f64; NEAR_ONE_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; NEAR_ONE_TERMS];
        for (k, slot) in t.iter_mut().enumerate().skip(2) {
            *slot = zeta_minus_one(k as u32).expect("order >= 2");
        }
        t
    })
}

/// ln Γ(1+z) for |z| ≤ 1/2, accurate relative to the (small) result.
fn ln_gamma_1p(z: f64) -> f64 {
    let table = zeta_excess_table();
    let mut sum = 0.0;
    let mut zk = z * z;
    for (k, excess) in table.iter().enumerate().skip(2) {
        let term = excess * zk / k as f64;
        sum += if k % 2 == 0 { term } else { -term };
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        zk *= z;
    }
    -EULER_GAMMA * z + (z - z.ln_1p()) + sum
}

fn stirling(y: f64) -> f64 {
    // Bernoulli terms B_{2k} / (2k(2k-1) y^{2k-1}), k = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in C.iter().rev() {
        series = series * inv2 + c;
    }
    (y - 0.5) * y.ln() - y + LN_SQRT_2PI + series * inv
}

/// Natural logarithm of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive("ln_gamma", x)?;
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) = Γ(1+x)/x, with z = x carried exactly
        return ln_gamma_1p(x) - x.ln();
    }
    if x <= 1.5 {
        return ln_gamma_1p(x - 1.0);
    }
    if x < 2.5 {
        let z = x - 2.0;
        return z.ln_1p() + ln_gamma_1p(z);
    }
    let mut y = x;
    let mut log_prod = 0.0;
    while y < ASYMPTOTIC_FROM {
        log_prod += y.ln();
        y += 1.0;
    }
    stirling(y) - log_prod
}

/// ψ(x) = Γ′(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("digamma", x)?;
    Ok(digamma_unchecked(x))
}

pub(crate) fn digamma_unchecked(x: f64) -> f64 {
    let mut y = x;
    let mut shift = 0.0;
    while y < ASYMPTOTIC_FROM {
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // B_{2k}/(2k) coefficients through y^-14
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32_760.0,
        1.0 / 12.0,
    ];
    let mut series = 0.0;
    for c in C.iter().rev() {
        series = series * inv2 + c;
    }
    y.ln() - 0.5 / y - series * inv2 - shift
}

/// ψ′(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive("trigamma", x)?;
    Ok(trigamma_unchecked(x))
}

pub(crate) fn trigamma_unchecked(x: f64) -> f64 {
    let mut y = x;
    let mut shift = 0.0;
    while y < ASYMPTOTIC_FROM {
        shift += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // B_{2k} y^{-(2k+1)}, k = 1..7
    const C: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let mut series = 0.0;
    for c in C.iter().rev() {
        series = series * inv2 + c;
    }
    inv + 0.5 * inv2 + series * inv2 * inv + shift
}

/// B(x, y) = Γ(x)Γ(y)/Γ(x+y).
pub fn beta(x: f64, y: f64) -> Result<f64> {
    check_positive("beta", x)?;
    check_positive("beta", y)?;
    Ok(beta_unchecked(x, y))
}

pub(crate) fn beta_unchecked(x: f64, y: f64) -> f64 {
    (ln_gamma_unchecked(x) + ln_gamma_unchecked(y) - ln_gamma_unchecked(x + y)).exp()
}

/// Rising factorial (x)_n = x(x+1)…(x+n−1); (x)_0 = 1.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + k as f64))
}

/// R(a, b) = −2γ − ψ(a) − ψ(b).
pub fn ramanujan_r(a: f64, b: f64) -> Result<f64> {
    check_positive("ramanujan_r", a)?;
    check_positive("ramanujan_r", b)?;
    Ok(ramanujan_r_unchecked(a, b))
}

pub(crate) fn ramanujan_r_unchecked(a: f64, b: f64) -> f64 {
    -2.0 * EULER_GAMMA - digamma_unchecked(a) - digamma_unchecked(b)
}

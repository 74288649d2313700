//! Dirichlet-type constants at positive integer order.
//!
//! Non-alternating sums (ζ, λ) are summed directly and closed with an
//! Euler–Maclaurin tail. Alternating sums (η, β) go through the
//! Cohen–Rodriguez Villegas–Zagier acceleration, which converges
//! geometrically for moment sequences such as `k^-n`.
//!
//! The `*_minus_one` variants return the excess over 1 without forming
//! `1 + small - 1`; the series coefficient tables rely on them to stay
//! accurate once the excess drops below machine epsilon.

use serde::Serialize;

use crate::error::{Error, Result};

const DIRECT_TERMS: u64 = 64;
const CVZ_TERMS: usize = 32;

/// λ(n), β(n), η(n), ζ(n) at one order `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirichletConstants {
    pub order: u32,
    pub lambda: f64,
    pub beta: f64,
    pub eta: f64,
    pub zeta: f64,
}

/// All four constants at order `n`. Fails for `n = 1`, where ζ and λ diverge.
pub fn dirichlet_constants(n: u32) -> Result<DirichletConstants> {
    Ok(DirichletConstants {
        order: n,
        lambda: dirichlet_lambda(n)?,
        beta: dirichlet_beta(n)?,
        eta: dirichlet_eta(n)?,
        zeta: riemann_zeta(n)?,
    })
}

fn require_convergent(name: &str, n: u32) -> Result<()> {
    match n {
        0 => Err(Error::Precondition(format!(
            "{name}: order must be positive"
        ))),
        1 => Err(Error::Divergent(format!("{name}(1)"))),
        _ => Ok(()),
    }
}

fn require_positive(name: &str, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition(format!(
            "{name}: order must be positive"
        )));
    }
    Ok(())
}

/// ζ(n) = Σ_{k≥1} k^-n.
pub fn riemann_zeta(n: u32) -> Result<f64> {
    Ok(1.0 + zeta_minus_one(n)?)
}

/// ζ(n) − 1 = Σ_{k≥2} k^-n.
pub fn zeta_minus_one(n: u32) -> Result<f64> {
    require_convergent("zeta", n)?;
    Ok(power_sum(2, 1.0, 0.0, n))
}

/// λ(n) = Σ_{k≥0} (2k+1)^-n.
pub fn dirichlet_lambda(n: u32) -> Result<f64> {
    Ok(1.0 + lambda_minus_one(n)?)
}

/// λ(n) − 1 = Σ_{k≥1} (2k+1)^-n.
pub fn lambda_minus_one(n: u32) -> Result<f64> {
    require_convergent("lambda", n)?;
    Ok(power_sum(1, 2.0, 1.0, n))
}

/// η(n) = Σ_{k≥1} (−1)^{k−1} k^-n.
pub fn dirichlet_eta(n: u32) -> Result<f64> {
    require_positive("eta", n)?;
    let s = n as i32;
    Ok(alternating_sum(|k| ((k + 1) as f64).powi(-s)))
}

/// η(n) − 1 = −Σ_{k≥0} (−1)^k (k+2)^-n.
pub fn eta_minus_one(n: u32) -> Result<f64> {
    require_positive("eta", n)?;
    let s = n as i32;
    Ok(-alternating_sum(|k| ((k + 2) as f64).powi(-s)))
}

/// β(n) = Σ_{k≥0} (−1)^k (2k+1)^-n.
pub fn dirichlet_beta(n: u32) -> Result<f64> {
    require_positive("beta", n)?;
    let s = n as i32;
    Ok(alternating_sum(|k| ((2 * k + 1) as f64).powi(-s)))
}

/// β(n) − 1 = −Σ_{k≥0} (−1)^k (2k+3)^-n.
pub fn beta_minus_one(n: u32) -> Result<f64> {
    require_positive("beta", n)?;
    let s = n as i32;
    Ok(-alternating_sum(|k| ((2 * k + 3) as f64).powi(-s)))
}

/// Σ_{k ≥ start} (step·k + offset)^-n for n ≥ 2.
fn power_sum(start: u64, step: f64, offset: f64, n: u32) -> f64 {
    let s = n as i32;
    let mut terms = Vec::with_capacity(DIRECT_TERMS as usize);
    let mut k = start;
    let mut converged = false;
    while k < start + DIRECT_TERMS {
        let t = (step * k as f64 + offset).powi(-s);
        terms.push(t);
        k += 1;
        // every term after this one is smaller still, and their total is
        // bounded by a geometric-like tail far below the running sum
        if t < 1e-18 * terms[0] {
            converged = true;
            break;
        }
    }
    // smallest first
    let mut sum: f64 = terms.iter().rev().sum();
    if !converged {
        sum += euler_maclaurin_tail(k as f64, step, offset, n as f64);
    }
    sum
}

/// Euler–Maclaurin estimate of Σ_{j ≥ k} (step·j + offset)^-s.
fn euler_maclaurin_tail(k: f64, step: f64, offset: f64, s: f64) -> f64 {
    let y = step * k + offset;
    let f = y.powf(-s);
    let integral = y * f / (step * (s - 1.0));
    let d1 = s * step * f / y;
    let d3 = s * (s + 1.0) * (s + 2.0) * step.powi(3) * f / y.powi(3);
    let d5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * step.powi(5) * f / y.powi(5);
    integral + 0.5 * f + d1 / 12.0 - d3 / 720.0 + d5 / 30240.0
}

/// Σ_{k≥0} (−1)^k a(k) for a completely monotone (moment) sequence.
fn alternating_sum(a: impl Fn(usize) -> f64) -> f64 {
    let n = CVZ_TERMS as f64;
    let mut d = (3.0 + 8f64.sqrt()).powi(CVZ_TERMS as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..CVZ_TERMS {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        b *= (kf + n) * (kf - n) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

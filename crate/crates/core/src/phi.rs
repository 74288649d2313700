//! The ratio φ(x) = (c − log(1−x)) / ₂F₁(a, b; a+b; x), its reciprocal f,
//! and the quadratic auxiliary system that locates the curvature
//! thresholds of f.
//!
//! Notation used throughout, with L = log(1−x) and U = c − L:
//! * F  = ₂F₁(a, b; a+b; x)      (the zero-balanced base function)
//! * F1 = ₂F₁(a, b; a+b+1; x)    (F′ = p F1 / (1−x))
//! * F2 = ₂F₁(a+1, b+1; a+b+2; x)
//! * p = ab/(a+b), q = (ab)²/((a+b)(a+b+1))
//! * h = q(1−x)F2 + p F1, g = −(2p F1 + F), Δ = g² − 8hF
//! * f″ = (hU² + gU + 2F) / ((1−x)² U³)

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::hyp2f1::hyp2f1_at;
use crate::special::{beta_unchecked, ramanujan_r_unchecked};

/// Last abscissa at which φ₊ is evaluated directly; beyond it the value is
/// interpolated towards its limit R(a, b) at x = 1.
pub const PHI_PLUS_DIRECT_LIMIT: f64 = 1.0 - 1e-6;

/// Parameter pair (a, b) of the zero-balanced function ₂F₁(a, b; a+b; ·).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZbParams {
    a: f64,
    b: f64,
}

impl ZbParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(domain("parameter a", a, "[0, inf)"));
        }
        if !(b >= 0.0 && b.is_finite()) {
            return Err(domain("parameter b", b, "[0, inf)"));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// The same pair with a ≤ b.
    pub fn sorted(&self) -> Self {
        Self {
            a: self.a.min(self.b),
            b: self.a.max(self.b),
        }
    }

    /// a + b ≤ 1, the hypothesis of the curvature characterisations.
    pub fn in_curvature_domain(&self) -> bool {
        self.a + self.b <= 1.0
    }

    /// a = 0 or b = 0: the hypergeometric factor is identically 1.
    pub fn is_degenerate(&self) -> bool {
        self.a == 0.0 || self.b == 0.0
    }

    pub(crate) fn require_positive(&self, what: &'static str) -> Result<()> {
        if self.is_degenerate() {
            return Err(Error::Degenerate {
                a: self.a,
                b: self.b,
                what,
            });
        }
        Ok(())
    }

    /// p = ab/(a+b); 0 for degenerate pairs.
    pub fn p(&self) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            self.a * self.b / (self.a + self.b)
        }
    }

    /// q = (ab)²/((a+b)(a+b+1)); 0 for degenerate pairs.
    pub fn q(&self) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            let s = self.a + self.b;
            (self.a * self.b).powi(2) / (s * (s + 1.0))
        }
    }

    /// R(a, b) = −2γ − ψ(a) − ψ(b).
    pub fn ramanujan(&self) -> Result<f64> {
        self.require_positive("R(a, b) is undefined")?;
        Ok(ramanujan_r_unchecked(self.a, self.b))
    }

    /// 1/a + 1/b.
    pub fn inv_sum(&self) -> Result<f64> {
        self.require_positive("1/a + 1/b is undefined")?;
        Ok(1.0 / self.a + 1.0 / self.b)
    }

    /// B(a, b), the limit of φ at x = 1.
    pub fn beta(&self) -> Result<f64> {
        self.require_positive("B(a, b) is undefined")?;
        Ok(beta_unchecked(self.a, self.b))
    }
}

/// The three contiguous functions needed by every derivative formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Contiguous {
    pub base: f64,
    pub raised_c: f64,
    pub raised_all: f64,
}

/// F, F1 and F2 at x ∈ [0, 1).
pub fn contiguous(params: &ZbParams, x: f64) -> Result<Contiguous> {
    if !(0.0..1.0).contains(&x) {
        return Err(domain("contiguous x", x, "[0, 1)"));
    }
    if params.is_degenerate() {
        return Ok(Contiguous {
            base: 1.0,
            raised_c: 1.0,
            raised_all: zb_raised_all_degenerate(params, x)?,
        });
    }
    let (a, b) = (params.a, params.b);
    Ok(Contiguous {
        base: hyp2f1_at(a, b, a + b, x)?,
        raised_c: hyp2f1_at(a, b, a + b + 1.0, x)?,
        raised_all: hyp2f1_at(a + 1.0, b + 1.0, a + b + 2.0, x)?,
    })
}

fn zb_raised_all_degenerate(params: &ZbParams, x: f64) -> Result<f64> {
    // only ever multiplied by q = 0; evaluated for completeness
    let (a, b) = (params.a, params.b);
    hyp2f1_at(a + 1.0, b + 1.0, a + b + 2.0, x)
}

/// F(x) = ₂F₁(a, b; a+b; x) for x ∈ [0, 1).
pub fn zb_value(params: &ZbParams, x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(domain("zero-balanced 2F1 x", x, "[0, 1)"));
    }
    if params.is_degenerate() {
        return Ok(1.0);
    }
    hyp2f1_at(params.a, params.b, params.a + params.b, x)
}

fn log_1m(x: f64) -> f64 {
    (-x).ln_1p()
}

/// φ(x) = (c − log(1−x)) / F(x) on (0, 1).
pub fn phi(params: &ZbParams, c: f64, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain("phi x", x, "(0, 1)"));
    }
    Ok((c - log_1m(x)) / zb_value(params, x)?)
}

/// f(x) = F(x) / (c − log(1−x)) on [0, 1); requires c > 0.
pub fn f_ratio(params: &ZbParams, c: f64, x: f64) -> Result<f64> {
    if c.is_nan() || c <= 0.0 {
        return Err(domain("f_ratio c", c, "(0, inf)"));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(domain("f_ratio x", x, "[0, 1)"));
    }
    Ok(zb_value(params, x)? / (c - log_1m(x)))
}

/// A derivative value with the magnitude of the terms that produced it,
/// so that sign tests can use a tolerance relative to the cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Derivative {
    pub value: f64,
    pub scale: f64,
}

/// φ′(x) = (F − p F1 U) / ((1−x) F²).
pub fn phi_first_derivative(params: &ZbParams, c: f64, x: f64) -> Result<Derivative> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain("phi' x", x, "(0, 1)"));
    }
    let k = contiguous(params, x)?;
    let u_cap = c - log_1m(x);
    let p = params.p();
    let w = 1.0 - x;
    let den = w * k.base * k.base;
    Ok(Derivative {
        value: (k.base - p * k.raised_c * u_cap) / den,
        scale: (k.base.abs() + (p * k.raised_c * u_cap).abs()) / den,
    })
}

/// φ″(x) from the contiguous relations:
/// [−q(1−x)F2·U·F − u(2p F1 − F)] / ((1−x)² F³), u = F − p F1 U.
pub fn phi_second_derivative(params: &ZbParams, c: f64, x: f64) -> Result<Derivative> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain("phi'' x", x, "(0, 1)"));
    }
    let k = contiguous(params, x)?;
    let (p, q) = (params.p(), params.q());
    let w = 1.0 - x;
    let u_cap = c - log_1m(x);
    let u = k.base - p * k.raised_c * u_cap;
    let first = -q * w * k.raised_all * u_cap * k.base;
    let second = -u * (2.0 * p * k.raised_c - k.base);
    let den = w * w * k.base.powi(3);
    let u_scale = k.base.abs() + (p * k.raised_c * u_cap).abs();
    Ok(Derivative {
        value: (first + second) / den,
        scale: (first.abs() + u_scale * (2.0 * p * k.raised_c + k.base).abs()) / den,
    })
}

/// Every auxiliary quantity at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuxEval {
    pub x: f64,
    pub base: f64,
    pub raised_c: f64,
    pub raised_all: f64,
    pub h: f64,
    pub g: f64,
    /// g² − 8hF as computed (may be a rounding-level negative near Δ = 0).
    pub delta: f64,
    pub omega_minus: f64,
    pub omega_plus: f64,
    pub phi_minus: f64,
    pub phi_plus: f64,
}

/// h, g, Δ, the roots ω± of h t² + g t + 2F and φ± = log(1−x) + ω±.
pub fn aux_eval(params: &ZbParams, x: f64) -> Result<AuxEval> {
    params.require_positive("auxiliary quadratic has h = 0")?;
    let k = contiguous(params, x)?;
    let (p, q) = (params.p(), params.q());
    let h = q * (1.0 - x) * k.raised_all + p * k.raised_c;
    let g = -(2.0 * p * k.raised_c + k.base);
    let delta = g * g - 8.0 * h * k.base;
    let root = if delta >= 0.0 {
        delta.sqrt()
    } else if -delta <= 1e-12 * g * g {
        0.0
    } else {
        return Err(Error::Breakdown(format!(
            "negative discriminant {delta:e} at x = {x}"
        )));
    };
    let omega_plus = (-g + root) / (2.0 * h);
    // product of the roots is 2F/h; avoids cancellation in −g − √Δ
    let omega_minus = 2.0 * k.base / (h * omega_plus);
    let l = log_1m(x);
    Ok(AuxEval {
        x,
        base: k.base,
        raised_c: k.raised_c,
        raised_all: k.raised_all,
        h,
        g,
        delta,
        omega_minus,
        omega_plus,
        phi_minus: l + omega_minus,
        phi_plus: l + omega_plus,
    })
}

/// φ₊ on the closed interval [0, 1], equal to R(a, b) at x = 1.
pub fn phi_plus_extended(params: &ZbParams, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("phi_plus x", x, "[0, 1]"));
    }
    let r = params.ramanujan()?;
    if x == 1.0 {
        return Ok(r);
    }
    if x <= PHI_PLUS_DIRECT_LIMIT {
        return Ok(aux_eval(params, x)?.phi_plus);
    }
    let x0 = PHI_PLUS_DIRECT_LIMIT;
    let v0 = aux_eval(params, x0)?.phi_plus;
    let t = (x - x0) / (1.0 - x0);
    Ok(v0 + t * (r - v0))
}

/// Closed-form curvature threshold
/// (a+b)(a+b−2ab)(a+b+1) / (ab((a+b+1)(a+b−2ab) + ab(a+b))).
pub fn c_threshold(params: &ZbParams) -> Result<f64> {
    params.require_positive("curvature threshold is undefined")?;
    let (a, b) = (params.a, params.b);
    let s = a + b;
    let m = a * b;
    Ok(s * (s - 2.0 * m) * (s + 1.0) / (m * ((s + 1.0) * (s - 2.0 * m) + m * s)))
}

/// Ψ(x) = h U² + g U + 2F with U = c − log(1−x).
pub fn psi_big(params: &ZbParams, c: f64, x: f64) -> Result<f64> {
    let aux = aux_eval(params, x)?;
    let u_cap = c - log_1m(x);
    Ok(aux.h * u_cap * u_cap + aux.g * u_cap + 2.0 * aux.base)
}

/// f″(x) = Ψ(x) / ((1−x)² U³), with the term magnitude for tolerances.
pub fn f_ratio_second_derivative(params: &ZbParams, c: f64, x: f64) -> Result<Derivative> {
    if c.is_nan() || c <= 0.0 {
        return Err(domain("f_ratio'' c", c, "(0, inf)"));
    }
    let aux = aux_eval(params, x)?;
    let u_cap = c - log_1m(x);
    let terms = [aux.h * u_cap * u_cap, aux.g * u_cap, 2.0 * aux.base];
    let den = (1.0 - x).powi(2) * u_cap.powi(3);
    Ok(Derivative {
        value: terms.iter().sum::<f64>() / den,
        scale: terms.iter().map(|t| t.abs()).sum::<f64>() / den.abs(),
    })
}

/// φ″(0) = (a+b−2ab)/(a+b) − c·ab((a+b+1)(a+b−2ab) + ab(a+b))/((a+b)²(a+b+1)),
/// whose root in c is the curvature threshold.
pub fn phi_second_deriv0(params: &ZbParams, c: f64) -> Result<f64> {
    params.require_positive("phi''(0) threshold form is undefined")?;
    let (a, b) = (params.a, params.b);
    let s = a + b;
    let m = a * b;
    Ok((s - 2.0 * m) / s - c * m * ((s + 1.0) * (s - 2.0 * m) + m * s) / (s * s * (s + 1.0)))
}

/// S(a, b, c) = 1 − a²b²/((a+b+1)(a+b)) − c·ab(a+1)(b+1)(a+b+ab+2)/((a+b)(a+b+1)(a+b+2)).
pub fn s_poly(params: &ZbParams, c: f64) -> Result<f64> {
    params.require_positive("S(a, b, c) is undefined")?;
    let (a, b) = (params.a, params.b);
    let s = a + b;
    let m = a * b;
    let slope = m * (a + 1.0) * (b + 1.0) * (s + m + 2.0) / (s * (s + 1.0) * (s + 2.0));
    Ok(1.0 - m * m / ((s + 1.0) * s) - slope * c)
}

/// A(x) = (1−x) F(x) F1(x), decreasing on (0, 1).
pub fn a_product(params: &ZbParams, x: f64) -> Result<f64> {
    let k = contiguous(params, x)?;
    Ok((1.0 - x) * k.base * k.raised_c)
}

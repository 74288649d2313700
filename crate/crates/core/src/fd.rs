//! Richardson-extrapolated central differences of order 0–4.

use crate::error::{domain, Error, Result};

/// Smallest usable difference step.
pub const MIN_STEP: f64 = 1e-9;

/// A finite-difference estimate with an error bound combining the
/// extrapolation residual and the rounding floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdEstimate {
    pub value: f64,
    pub error: f64,
}

// central stencils: (offsets in units of h, weights); divide by h^order
const STENCILS: [&[(f64, f64)]; 5] = [
    &[(0.0, 1.0)],
    &[(1.0, 0.5), (-1.0, -0.5)],
    &[(1.0, 1.0), (0.0, -2.0), (-1.0, 1.0)],
    &[(2.0, 0.5), (1.0, -1.0), (-1.0, 1.0), (-2.0, -0.5)],
    &[
        (2.0, 1.0),
        (1.0, -4.0),
        (0.0, 6.0),
        (-1.0, -4.0),
        (-2.0, 1.0),
    ],
];

fn stencil<F>(f: &F, x: f64, order: usize, h: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut sum = 0.0;
    let mut mag = 0.0;
    for &(k, w) in STENCILS[order] {
        let v = f(x + k * h)?;
        sum += w * v;
        mag += (w * v).abs();
    }
    let scale = h.powi(order as i32);
    Ok((sum / scale, mag / scale))
}

/// Derivative of the given order (≤ 4) at `x` with base step `h`; the
/// stencil reaches at most x ± 2h.
pub fn derivative<F>(f: F, x: f64, order: u32, h: f64) -> Result<FdEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    if order > 4 {
        return Err(Error::Precondition(format!(
            "finite-difference order {order} exceeds 4"
        )));
    }
    if !(h > 0.0) {
        return Err(domain("finite-difference step", h, "(0, inf)"));
    }
    if order == 0 {
        let v = f(x)?;
        return Ok(FdEstimate {
            value: v,
            error: 4.0 * f64::EPSILON * v.abs(),
        });
    }
    if h / 4.0 < MIN_STEP {
        return Err(Error::StepUnderflow { x, step: h / 4.0 });
    }
    let o = order as usize;
    let (d0, m0) = stencil(&f, x, o, h)?;
    let (d1, m1) = stencil(&f, x, o, h / 2.0)?;
    let (d2, m2) = stencil(&f, x, o, h / 4.0)?;
    let r0 = (4.0 * d1 - d0) / 3.0;
    let r1 = (4.0 * d2 - d1) / 3.0;
    let value = (16.0 * r1 - r0) / 15.0;
    // rounding in the finest stencil dominates; amplified by the extrapolation weights
    let rounding = 8.0 * f64::EPSILON * (m0 + m1 + m2) * 2.0;
    Ok(FdEstimate {
        value,
        error: (value - r1).abs() + rounding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_derivatives() {
        for order in 0..=4 {
            let d = derivative(|t| Ok((2.0 * t).exp()), 0.3, order, 0.05).unwrap();
            let want = 2f64.powi(order as i32) * 0.6f64.exp();
            assert!((d.value - want).abs() < 1e-8 * want, "order {order}");
            assert!(d.error < 1e-6 * want);
        }
    }

    #[test]
    fn reciprocal_fourth_derivative() {
        // d⁴/dx⁴ 1/x = 24/x⁵
        let x = 0.2;
        let d = derivative(|t| Ok(1.0 / t), x, 4, 0.05 * x).unwrap();
        let want = 24.0 / x.powi(5);
        assert!(((d.value - want) / want).abs() < 1e-6);
        assert!(derivative(Ok, 0.1, 5, 0.1).is_err());
        assert!(matches!(
            derivative(Ok, 0.1, 2, 1e-10),
            Err(Error::StepUnderflow { .. })
        ));
    }
}

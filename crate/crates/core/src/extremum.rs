//! Bounded scalar extremum search: coarse scan followed by golden-section
//! refinement of the bracketing cell.

use crate::error::Result;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Location and value of an extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    /// False when the extremum sits on the boundary of the scanned interval.
    pub interior: bool,
}

/// Maximise `f` on [lo, hi] by golden-section search, to an x-tolerance `tol`.
/// `f` is assumed unimodal on the interval.
pub fn golden_max<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x)?;
    // the midpoint can lose to a probe by rounding on flat tops
    let best = [(x, fx), (c, fc), (d, fd)]
        .into_iter()
        .fold((x, fx), |acc, p| if p.1 > acc.1 { p } else { acc });
    Ok(best)
}

/// Maximum of sampled values `ys` at abscissae `xs`, refined with `refine`
/// when it is interior. `refine(lo, hi)` returns the refined (x, value).
pub fn scan_then_refine<R>(xs: &[f64], ys: &[f64], refine: R) -> Result<Extremum>
where
    R: Fn(f64, f64) -> Result<(f64, f64)>,
{
    let (i, &y) = ys
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, &f64)>, (i, y)| match best {
            Some((_, b)) if b >= y => best,
            _ => Some((i, y)),
        })
        .expect("non-empty scan");
    if i == 0 || i + 1 == ys.len() {
        return Ok(Extremum {
            x: xs[i],
            value: y,
            interior: false,
        });
    }
    let (x, v) = refine(xs[i - 1], xs[i + 1])?;
    let (x, v) = if v >= y { (x, v) } else { (xs[i], y) };
    Ok(Extremum {
        x,
        value: v,
        interior: true,
    })
}

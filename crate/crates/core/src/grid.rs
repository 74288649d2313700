//! Abscissa grids on the unit interval.

/// `n` equally spaced points on [lo, hi], both endpoints included.
pub fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            let mut xs: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
            xs[n - 1] = hi;
            xs
        }
    }
}

/// `n` points on [margin, 1 − margin], equally spaced in logit(x) = log(x/(1−x)).
///
/// Both ends of (0, 1) get geometric resolution, which is where the
/// ratio functions turn over when the parameter sits close to a threshold.
pub fn logit(margin: f64, n: usize) -> Vec<f64> {
    let hi = ((1.0 - margin) / margin).ln();
    uniform(-hi, hi, n)
        .into_iter()
        .map(|s| {
            let x = 1.0 / (1.0 + (-s).exp());
            x.clamp(margin, 1.0 - margin)
        })
        .collect()
}

//! Power-law fitting for decay-rate summaries.

use crate::error::{Error, Result};

/// Least-squares fit of `f = prefactor * n^exponent` in log-log space.
///
/// Needs at least 3 points; all abscissas and values must be positive.
pub fn fit_power_law(ns: &[f64], fs: &[f64]) -> Result<(f64, f64)> {
    if ns.len() != fs.len() {
        return Err(Error::Dimension(format!(
            "{} abscissas vs {} values",
            ns.len(),
            fs.len()
        )));
    }
    if ns.len() < 3 {
        return Err(Error::Dimension(format!(
            "power-law fit needs at least 3 points, got {}",
            ns.len()
        )));
    }
    for (&n, &f) in ns.iter().zip(fs) {
        if !(n > 0.0) || !(f > 0.0) {
            return Err(Error::domain(
                "fit data",
                format!("log-log fit needs positive data, got ({n}, {f})"),
            ));
        }
    }
    let m = ns.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (&n, &f) in ns.iter().zip(fs) {
        let x = n.ln();
        let y = f.ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = m * sxx - sx * sx;
    if denom.abs() < 1e-12 * m * sxx.max(1.0) {
        return Err(Error::domain(
            "fit data",
            "abscissas are degenerate, slope is undetermined".to_string(),
        ));
    }
    let exponent = (m * sxy - sx * sy) / denom;
    let intercept = (sy - exponent * sx) / m;
    Ok((intercept.exp(), exponent))
}

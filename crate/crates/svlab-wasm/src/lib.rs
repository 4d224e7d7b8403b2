//! Browser bindings: three interactive views over the core library.
//!
//! Each export returns a flat numeric buffer that the page renders directly;
//! all sizing and layout conventions are documented on the functions. The
//! bindings stay thin wrappers over testable plain functions, so the numeric
//! behavior is covered by host-side tests without a wasm runtime.

use wasm_bindgen::prelude::*;

use svlab_core::gaussian::{a_from_squeezing, SymmetricGaussianState};
use svlab_core::parity::{landscape, optimize_settings, threshold};
use svlab_core::pseudospin::{
    cutoff_for_tail, ghz_state_fock, optimize_from_correlators, svetlichny_fixed_settings,
    TAIL_TOLERANCE,
};
use svlab_core::Result as CoreResult;

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Momentum landscape on a square grid over [-half_range, half_range]^2,
/// flattened p0-major: entry `i * grid + j` is S at (p0_i, p1_j).
pub fn landscape_values_impl(
    n: usize,
    a: f64,
    half_range: f64,
    grid: usize,
) -> CoreResult<Vec<f64>> {
    let axis = linspace(-half_range, half_range, grid);
    let cells = landscape(n, a, &axis, &axis)?;
    Ok(cells.into_iter().flatten().collect())
}

/// Optimized Svetlichny value on an a-grid; returns [a_0, s_0, a_1, s_1, ...].
pub fn scan_values_impl(n: usize, a_min: f64, a_max: f64, steps: usize) -> CoreResult<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * steps);
    for a in linspace(a_min, a_max, steps) {
        let state = SymmetricGaussianState::new(n, a)?;
        out.push(a);
        out.push(optimize_settings(&state).s_opt);
    }
    Ok(out)
}

/// Three-mode pseudospin curves on an r-grid; returns rows of
/// [r, s3_fixed, s3_optimized, s3_parity] flattened in grid order.
pub fn pseudospin_values_impl(r_max: f64, steps: usize) -> CoreResult<Vec<f64>> {
    let mut out = Vec::with_capacity(4 * steps);
    for r in linspace(0.0, r_max, steps) {
        let cutoff = cutoff_for_tail(r, TAIL_TOLERANCE)?;
        let st = ghz_state_fock(r, cutoff)?;
        let (u, v) = st.elementary();
        let fixed = svetlichny_fixed_settings(&st)?;
        let optimized = optimize_from_correlators(u, v)?.s_opt;
        let parity =
            optimize_settings(&SymmetricGaussianState::new(3, a_from_squeezing(r)?)?).s_opt;
        out.extend_from_slice(&[r, fixed, optimized, parity]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn landscape_values(
    n: usize,
    a: f64,
    half_range: f64,
    grid: usize,
) -> Result<Vec<f64>, JsError> {
    Ok(landscape_values_impl(n, a, half_range, grid)?)
}

#[wasm_bindgen]
pub fn scan_values(n: usize, a_min: f64, a_max: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    Ok(scan_values_impl(n, a_min, a_max, steps)?)
}

#[wasm_bindgen]
pub fn pseudospin_values(r_max: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    Ok(pseudospin_values_impl(r_max, steps)?)
}

/// Violation threshold for odd n; NaN when undefined (even n).
#[wasm_bindgen]
pub fn threshold_value(n: usize) -> f64 {
    threshold(n).unwrap_or(f64::NAN)
}
